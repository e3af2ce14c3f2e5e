import random

import pytest
from hypothesis import given, strategies as st

from galbrauer.abgroups import AbStructure, FpAbGroup
from galbrauer.corpus import corpus, corpus_names
from galbrauer.finite_group import cyclic_group, direct_product, klein_four, symmetric_group
from galbrauer.galois_modules import (
    GammaHom,
    GammaModule,
    invariants,
    minimal_module,
    regular_module,
    sign_module,
    trivial_module,
)
from galbrauer.group_cohomology import (
    NotCyclic,
    cochain_group,
    cohomology,
    cohomology_data,
    cohomology_structure,
    cyclic_oracle,
    differential,
    induced_map,
    product_cyclic_oracle,
)
from galbrauer.intmat import IntMatrix
from galbrauer.sampling import central_endomorphism, random_module
from oracles import FiniteModule, h1_order
from strategies import CYCLIC, SMALL, modules, seeds

Z2 = cyclic_group(2)
Zminus = sign_module(Z2, [1, -1])
Ztriv = trivial_module(Z2, AbStructure(1))


def s(text):
    return AbStructure.parse(text)


def test_differential_examples():
    assert differential(Z2, Ztriv, 0).is_zero()
    d0 = differential(Z2, Zminus, 0)
    # the coordinate for sigma is -2m, for the identity 0
    assert d0.to_list() == [[0], [-2]]
    R = regular_module(cyclic_group(3))
    assert (differential(R.gamma, R, 1) @ differential(R.gamma, R, 0)).is_zero()


def test_cochain_group_size():
    G = klein_four()
    M = trivial_module(G, AbStructure(0, (2,)))
    C = cochain_group(G, M, 2)
    assert C.n_generators == 16 and C.structure() == AbStructure(0, (2,) * 16)


@pytest.mark.parametrize(
    "M,n,want",
    [(Zminus, 1, "Z/2"), (Ztriv, 2, "Z/2"), (Zminus, 2, "0"), (Zminus, 0, "0"), (Ztriv, 0, "Z"), (Ztriv, 1, "0")],
)
def test_small_values(M, n, want):
    assert cohomology_structure(Z2, M, n) == s(want)


@pytest.mark.parametrize("G", [Z2, cyclic_group(3), klein_four()], ids=["Z2", "Z3", "V4"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_shapiro_vanishing(G, n):
    assert cohomology_structure(G, regular_module(G), n).is_trivial


def test_h0_is_invariants():
    rng = random.Random(8)
    for G in SMALL + [symmetric_group(3)]:
        for _ in range(3):
            M = random_module(G, rng)
            assert cohomology_structure(G, M, 0) == invariants(M).structure()


def test_cyclic_oracle_examples():
    assert cyclic_oracle(Z2, Zminus, 1).structure() == s("Z/2")
    assert cyclic_oracle(Z2, Zminus, 2).structure().is_trivial
    for m in (2, 3, 5):
        G = cyclic_group(m)
        assert all(cyclic_oracle(G, regular_module(G), n).structure().is_trivial for n in (1, 2, 3))
    with pytest.raises(NotCyclic):
        cyclic_oracle(klein_four(), trivial_module(klein_four(), AbStructure(1)), 1)


@given(modules(groups=CYCLIC), st.integers(0, 3))
def test_oracle_agreement(M, n):
    assert cohomology_structure(M.gamma, M, n) == cyclic_oracle(M.gamma, M, n).structure()


@given(modules(groups=[klein_four()], max_rank=2), st.integers(0, 3))
def test_product_oracle_agreement_klein(M, n):
    assert cohomology_structure(M.gamma, M, n) == product_cyclic_oracle(M.gamma, M, n, (2, 1)).structure()


def test_product_oracle_on_z2_times_z3():
    G = direct_product(Z2, cyclic_group(3))
    ok, _ = G.is_cyclic()
    assert ok
    a = next(g for g in G.elements() if G.element_order(g) == 2)
    b = next(g for g in G.elements() if G.element_order(g) == 3)
    Z = trivial_module(G, AbStructure(1))
    for n in range(4):
        assert cohomology_structure(G, Z, n) == product_cyclic_oracle(G, Z, n, (a, b)).structure()


@given(modules(), st.integers(1, 3))
def test_annihilation_by_group_order(M, n):
    h = cohomology_structure(M.gamma, M, n)
    assert h.free_rank == 0
    assert all(M.gamma.order % d == 0 for d in h.invariant_factors)


@given(modules(groups=SMALL, max_rank=2))
def test_h1_order_by_enumerating_crossed_homomorphisms(M):
    Mp, _, _ = minimal_module(M)
    st_ = Mp.carrier.structure()
    if not st_.is_finite or st_.is_trivial or st_.order ** M.gamma.order > 4096:
        return
    moduli = [0] * Mp.n_generators
    for col in Mp.carrier.relations.columns_sparse():
        for i, v in col.items():
            moduli[i] = abs(v)
    F = FiniteModule(moduli, [A.to_list() for A in Mp.action])
    assert cohomology_structure(M.gamma, M, 1).order == h1_order(M.gamma, F)


def test_lattice_fast_path_matches_kernel_route():
    rng = random.Random(21)
    for G in SMALL:
        for _ in range(3):
            M = random_module(G, rng, torsion=False)
            for n in range(3):
                assert cohomology_structure(G, M, n) == cohomology_data(G, M, n).structure()


def test_representatives_are_cocycles_and_coordinates_invert():
    rng = random.Random(3)
    for G in SMALL[1:]:
        M = random_module(G, rng, 3)
        for n in range(3):
            coh = cohomology_data(G, M, n)
            d = differential(G, M, n)
            C_next = cochain_group(G, M, n + 1)
            for j, z in enumerate(coh.representatives.columns_sparse()):
                assert not z or C_next.is_zero(d.apply_sparse(z))
                c = coh.coordinates(coh.representatives.col(j))
                e = [int(k == j) for k in range(coh.group.n_generators)]
                assert coh.group.is_zero([x - y for x, y in zip(c, e)])


@pytest.mark.parametrize("name", corpus_names())
def test_d_squared_zero_on_corpus_modules(name):
    e = corpus(name)
    for M in (e.G.T_G_hat, e.G.T_Gsc_hat, e.G.G_hat):
        G = M.gamma
        for n in range(3):
            DD = differential(G, M, n + 1) @ differential(G, M, n)
            C = cochain_group(G, M, n + 2)
            assert all(not c or C.is_zero(c) for c in DD.columns_sparse())


def test_torsion_coefficients():
    G = cyclic_group(4)
    M = trivial_module(G, AbStructure(0, (2,)))
    assert [str(cohomology_structure(G, M, n)) for n in range(4)] == ["Z/2"] * 4
    # Z/4 with the generator acting by -1
    N = GammaModule.from_generators(G, FpAbGroup.cyclic(4), {1: IntMatrix([[-1]])})
    for n in range(4):
        assert cohomology_structure(G, N, n) == cyclic_oracle(G, N, n).structure()


# ---------------------------------------------------------------------------
# functoriality


@given(st.sampled_from(SMALL), seeds, st.integers(0, 2))
def test_identity_induces_identity(G, seed, n):
    M = random_module(G, random.Random(seed), 2)
    h = induced_map(G, M.identity_hom(), n)
    assert h.equals(h.source.identity())


@given(st.sampled_from(SMALL), seeds, st.integers(0, 2))
def test_composition_induces_composition(G, seed, n):
    rng = random.Random(seed)
    M = random_module(G, rng, 2)
    f, g = central_endomorphism(M, rng), central_endomorphism(M, rng)
    lhs = induced_map(G, g.compose(f), n)
    rhs = induced_map(G, g, n).compose(induced_map(G, f, n))
    assert lhs.equals(rhs)


def test_multiplication_by_two_on_h2():
    h = induced_map(Z2, GammaHom(Ztriv, Ztriv, IntMatrix([[2]])), 2)
    assert h.source.structure() == s("Z/2") and h.is_zero()


def test_cohomology_rejects_negative_degree():
    with pytest.raises(ValueError):
        cohomology(Z2, Ztriv, -1)
