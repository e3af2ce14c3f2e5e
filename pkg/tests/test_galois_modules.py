import random

import pytest
from hypothesis import given

from galbrauer.abgroups import AbStructure, FpAbGroup
from galbrauer.finite_group import cyclic_group, klein_four
from galbrauer.galois_modules import (
    ActionLawError,
    GammaHom,
    GammaMismatch,
    GammaModule,
    NotEquivariant,
    direct_sum,
    dual,
    invariants,
    minimal_module,
    norm_one_torus_module,
    regular_module,
    sign_module,
    trivial_module,
    zero_module,
)
from galbrauer.intmat import IntMatrix
from oracles import FiniteModule, h0_order
from strategies import modules

Z2, Z3 = cyclic_group(2), cyclic_group(3)


def test_trivial_module_examples():
    M = trivial_module(Z2, AbStructure(1))
    assert M.is_lattice and M.rank == 1 and all(A == IntMatrix.identity(1) for A in M.action)
    assert trivial_module(Z2, AbStructure(0)).n_generators == 0
    T = trivial_module(klein_four(), AbStructure(0, (2,)))
    assert T.carrier.structure() == AbStructure(0, (2,))


def test_regular_module_examples():
    R = regular_module(Z2)
    assert R.rank == 2 and R.action[1].to_list() == [[0, 1], [1, 0]]
    assert regular_module(cyclic_group(1)).rank == 1
    R3 = regular_module(Z3)
    assert R3.rank == 3 and R3.action[1] @ R3.action[1] @ R3.action[1] == IntMatrix.identity(3)


def test_norm_one_torus_examples():
    T = norm_one_torus_module(Z2)
    assert T.rank == 1 and T.action[1].to_list() == [[-1]]
    assert norm_one_torus_module(Z3).rank == 2
    assert norm_one_torus_module(klein_four()).rank == 3
    with pytest.raises(ValueError):
        norm_one_torus_module(cyclic_group(1))


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_norm_one_torus_has_no_invariants(m):
    for simplify in (True, False):
        assert invariants(norm_one_torus_module(cyclic_group(m), simplify)).structure().is_trivial


def test_unsimplified_norm_one_torus_presentation():
    T = norm_one_torus_module(Z3, simplify=False)
    assert T.n_generators == 3 and T.carrier.structure() == AbStructure(2, ())


def test_direct_sum_examples():
    M = norm_one_torus_module(Z3)
    S = direct_sum(M, zero_module(Z3))
    assert S.n_generators == M.n_generators and S.action == M.action
    N = regular_module(Z3)
    assert direct_sum(M, N).rank == M.rank + N.rank
    D = direct_sum(sign_module(Z2, [1, -1]), trivial_module(Z2, AbStructure(1)))
    assert D.action[1].to_list() == [[-1, 0], [0, 1]]
    with pytest.raises(GammaMismatch):
        direct_sum(M, regular_module(Z2))


def test_invariants_examples():
    assert invariants(sign_module(Z2, [1, -1])).structure().is_trivial
    assert invariants(trivial_module(Z2, AbStructure(1))).structure() == AbStructure(1, ())
    assert invariants(regular_module(Z2)).structure() == AbStructure(1, ())


@given(modules(torsion=True))
def test_invariants_of_finite_modules_by_enumeration(M):
    s = M.carrier.structure()
    if not s.is_finite or s.order > 64:
        return
    Mp, to, frm = minimal_module(M)
    moduli = [c for col in Mp.carrier.relations.columns_sparse() for c in col.values()]
    if len(moduli) != Mp.n_generators:
        return
    F = FiniteModule([abs(d) for d in moduli], [A.to_list() for A in Mp.action])
    assert invariants(M).structure().order == h0_order(M.gamma, F)


def test_action_law_violations_rejected():
    with pytest.raises(ActionLawError):
        GammaModule(Z2, FpAbGroup.free(1), [IntMatrix([[1]]), IntMatrix([[2]])])
    with pytest.raises(ActionLawError):
        GammaModule(Z3, FpAbGroup.free(1), [IntMatrix([[1]]), IntMatrix([[-1]]), IntMatrix([[-1]])])
    with pytest.raises(ActionLawError):
        # not an automorphism: 2 * 2 = 0 on Z/4
        GammaModule(Z2, FpAbGroup.cyclic(4), [IntMatrix([[1]]), IntMatrix([[2]])])
    with pytest.raises(ActionLawError):
        # does not respect the relation 2 e_2 = 0 of Z (+) Z/2
        carrier = FpAbGroup(2, IntMatrix([[0], [2]]))
        GammaModule(Z2, carrier, [IntMatrix.identity(2), IntMatrix([[1, 1], [0, 1]])])


def test_random_perturbation_is_rejected():
    rng = random.Random(11)
    base = regular_module(Z3)
    rejected = 0
    for _ in range(30):
        action = [A.to_list() for A in base.action]
        g = rng.randrange(1, 3)
        i, j = rng.randrange(3), rng.randrange(3)
        action[g][i][j] += rng.choice((-1, 1))
        try:
            GammaModule(Z3, base.carrier, [IntMatrix(a) for a in action])
        except ActionLawError:
            rejected += 1
    assert rejected == 30


def test_equivariance_check():
    R = regular_module(Z2)
    GammaHom(R, R, R.action[1])
    shear = IntMatrix([[1, 1], [0, 1]])
    with pytest.raises(NotEquivariant):
        GammaHom(R, R, R.action[1] @ shear)


def test_from_generators_closes_the_action():
    G = cyclic_group(4)
    M = GammaModule.from_generators(G, FpAbGroup.free(2), {1: IntMatrix([[0, -1], [1, 0]])})
    assert M.action[2].to_list() == [[-1, 0], [0, -1]]


def test_dual_of_lattice():
    T = norm_one_torus_module(Z3)
    D = dual(T)
    assert dual(D).action == T.action
    with pytest.raises(ValueError):
        dual(trivial_module(Z2, AbStructure(0, (2,))))


@given(modules())
def test_minimal_module_is_isomorphic(M):
    Mp, to, frm = minimal_module(M)
    assert Mp.carrier.structure() == M.carrier.structure()
    GammaModule(Mp.gamma, Mp.carrier, Mp.action)  # revalidates the action laws
    f, g = GammaHom(M, Mp, to), GammaHom(Mp, M, frm)
    assert f.compose(g).equals(Mp.identity_hom())
    assert g.compose(f).equals(M.identity_hom())
