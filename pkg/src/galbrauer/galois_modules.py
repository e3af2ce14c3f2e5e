"""Galois modules: finitely generated abelian groups with a finite group action.

Action matrices act on column vectors of generator coordinates, and the
action is a left action: ``action(g) @ action(h) == action(g*h)`` as
endomorphisms of the carrier. Actions are stored for every element, which
makes the exhaustive law checks straightforward.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .abgroups import AbHom, AbStructure, FpAbGroup, IllDefinedMorphism, kernel, minimal_presentation
from .finite_group import FiniteGroup
from .intmat import IntMatrix, block_diag, hstack, vstack

__all__ = [
    "ActionLawError",
    "NotEquivariant",
    "GammaMismatch",
    "GammaModule",
    "GammaHom",
    "trivial_module",
    "zero_module",
    "regular_module",
    "norm_one_torus_module",
    "sign_module",
    "direct_sum",
    "invariants",
    "dual",
    "restrict",
    "is_minimally_presented",
    "minimal_module",
]


class ActionLawError(ValueError):
    """The proposed matrices do not define a group action on the carrier."""


class NotEquivariant(ValueError):
    pass


class GammaMismatch(ValueError):
    pass


def _same_endomorphism(carrier: FpAbGroup, A: IntMatrix, B: IntMatrix) -> bool:
    diff = A - B
    if diff.is_zero():
        return True
    if carrier.relations.ncols == 0:
        return False
    return all(not c or carrier.is_zero(c) for c in diff.columns_sparse())


class GammaModule:
    """A finitely presented abelian group with a validated action of ``gamma``."""

    __slots__ = ("gamma", "carrier", "action", "name", "_minimal")

    def __init__(
        self,
        gamma: FiniteGroup,
        carrier: FpAbGroup,
        action: Sequence[IntMatrix],
        name: str | None = None,
        check: bool = True,
    ):
        n = carrier.n_generators
        if len(action) != gamma.order:
            raise ActionLawError(f"need {gamma.order} action matrices, got {len(action)}")
        for g, A in enumerate(action):
            if A.shape != (n, n):
                raise ActionLawError(f"action of element {g} has shape {A.shape}, expected {(n, n)}")
        self.gamma = gamma
        self.carrier = carrier
        self.action = tuple(action)
        self.name = name
        self._minimal = None
        if check:
            self._validate()

    def _validate(self) -> None:
        G, C, act = self.gamma, self.carrier, self.action
        for g, A in enumerate(act):
            try:
                AbHom(C, C, A)
            except IllDefinedMorphism as exc:
                raise ActionLawError(f"action of element {g} does not respect relations") from exc
        if not _same_endomorphism(C, act[G.identity], IntMatrix.identity(C.n_generators)):
            raise ActionLawError("identity element does not act trivially")
        for g in range(G.order):
            for h in range(G.order):
                if not _same_endomorphism(C, act[g] @ act[h], act[G.mul(g, h)]):
                    raise ActionLawError(f"action({g}) action({h}) != action({g}*{h})")

    @classmethod
    def from_generators(
        cls,
        gamma: FiniteGroup,
        carrier: FpAbGroup,
        gen_action: Mapping[int, IntMatrix],
        name: str | None = None,
    ) -> "GammaModule":
        """Close an action given on generating elements of ``gamma``, then validate it."""
        gens = sorted(gen_action)
        if gamma.generated_by(gens) != set(gamma.elements()):
            raise ActionLawError(f"elements {gens} do not generate the group")
        n = carrier.n_generators
        act: dict[int, IntMatrix] = {gamma.identity: IntMatrix.identity(n)}
        frontier = [gamma.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = gamma.mul(g, x)
                    if y not in act:
                        act[y] = gen_action[g] @ act[x]
                        nxt.append(y)
            frontier = nxt
        return cls(gamma, carrier, [act[g] for g in gamma.elements()], name=name)

    @property
    def rank(self) -> int:
        return self.carrier.structure().free_rank

    @property
    def n_generators(self) -> int:
        return self.carrier.n_generators

    @property
    def is_lattice(self) -> bool:
        """True when the carrier is presented without relations."""
        return self.carrier.relations.ncols == 0 or self.carrier.relations.is_zero()

    def act(self, g: int, vec: Sequence[int]) -> list[int]:
        return self.action[g].apply(vec)

    def identity_hom(self) -> "GammaHom":
        return GammaHom(self, self, IntMatrix.identity(self.n_generators), check=False)

    def to_json(self) -> dict:
        out: dict = {"rank": self.n_generators}
        if self.carrier.relations.ncols:
            out["relations"] = self.carrier.relations.to_list()
        out["action"] = {str(g): A.to_list() for g, A in enumerate(self.action)}
        return out

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"GammaModule({label.strip() or self.carrier.structure()} over {self.gamma!r})"


class GammaHom:
    """A ``gamma``-equivariant homomorphism between module carriers."""

    __slots__ = ("source", "target", "f")

    def __init__(self, source: GammaModule, target: GammaModule, matrix: IntMatrix, check: bool = True):
        if source.gamma != target.gamma:
            raise GammaMismatch("source and target are modules over different groups")
        self.source = source
        self.target = target
        self.f = AbHom(source.carrier, target.carrier, matrix, check=check)
        if check:
            F = matrix
            for g in range(source.gamma.order):
                if not _same_endomorphism(
                    target.carrier, F @ source.action[g], target.action[g] @ F
                ):
                    raise NotEquivariant(f"map does not commute with the action of element {g}")

    @property
    def matrix(self) -> IntMatrix:
        return self.f.matrix

    @classmethod
    def zero(cls, source: GammaModule, target: GammaModule) -> "GammaHom":
        return cls(source, target, IntMatrix.zeros(target.n_generators, source.n_generators), check=False)

    def compose(self, inner: "GammaHom") -> "GammaHom":
        """``self o inner``."""
        return GammaHom(inner.source, self.target, self.matrix @ inner.matrix, check=False)

    def scale(self, c: int) -> "GammaHom":
        return GammaHom(self.source, self.target, self.matrix.scale(c), check=False)

    def __add__(self, other: "GammaHom") -> "GammaHom":
        return GammaHom(self.source, self.target, self.matrix + other.matrix, check=False)

    def __neg__(self) -> "GammaHom":
        return self.scale(-1)

    def __sub__(self, other: "GammaHom") -> "GammaHom":
        return self + (-other)

    def equals(self, other: "GammaHom") -> bool:
        return _same_endomorphism(self.target.carrier, self.matrix, other.matrix)

    def is_zero(self) -> bool:
        return self.f.is_zero()

    def __repr__(self) -> str:
        return f"GammaHom({self.source!r} -> {self.target!r})"


def trivial_module(gamma: FiniteGroup, structure: AbStructure | FpAbGroup, name: str | None = None) -> GammaModule:
    carrier = structure if isinstance(structure, FpAbGroup) else FpAbGroup.from_structure(structure)
    ident = IntMatrix.identity(carrier.n_generators)
    return GammaModule(gamma, carrier, [ident] * gamma.order, name=name, check=False)


def zero_module(gamma: FiniteGroup) -> GammaModule:
    return trivial_module(gamma, FpAbGroup.trivial(), name="0")


def regular_module(gamma: FiniteGroup) -> GammaModule:
    """``Z[gamma]`` with basis ``e_h`` and ``g . e_h = e_{gh}``."""
    n = gamma.order
    action = [
        IntMatrix.from_columns(n, [{gamma.mul(g, h): 1} for h in range(n)]) for g in range(n)
    ]
    return GammaModule(gamma, FpAbGroup.free(n), action, name="Z[G]", check=False)


def norm_one_torus_module(gamma: FiniteGroup, simplify: bool = True) -> GammaModule:
    """Character lattice ``Z[gamma] / Z.N`` of a norm-one torus, ``N = sum of all g``.

    With ``simplify`` the carrier is the free lattice on the classes of
    ``e_h`` for ``h != 1`` (the class of ``e_1`` is minus their sum);
    otherwise ``Z[gamma]`` with the single relator ``N``.
    """
    n = gamma.order
    if n == 1:
        raise ValueError("the norm-one torus of the trivial group is trivial; gamma must be nontrivial")
    if not simplify:
        carrier = FpAbGroup(n, IntMatrix.from_columns(n, [{i: 1 for i in range(n)}]))
        return GammaModule(gamma, carrier, regular_module(gamma).action, name="Z[G]/N")
    e = gamma.identity
    others = [h for h in range(n) if h != e]
    pos = {h: k for k, h in enumerate(others)}
    minus_all = {k: -1 for k in range(n - 1)}
    action = []
    for g in range(n):
        cols = []
        for h in others:
            gh = gamma.mul(g, h)
            cols.append(minus_all if gh == e else {pos[gh]: 1})
        action.append(IntMatrix.from_columns(n - 1, cols))
    return GammaModule(gamma, FpAbGroup.free(n - 1), action, name="Z[G]/N")


def sign_module(gamma: FiniteGroup, character: Sequence[int]) -> GammaModule:
    """Rank-one lattice on which ``g`` acts by ``character[g]`` in ``{+1, -1}``."""
    action = [IntMatrix([[int(c)]]) for c in character]
    return GammaModule(gamma, FpAbGroup.free(1), action, name="Z(chi)")


def direct_sum(*modules: GammaModule) -> GammaModule:
    """Block-diagonal action on the direct sum of carriers.

    >>> from galbrauer.finite_group import cyclic_group
    >>> G = cyclic_group(2)
    >>> M = direct_sum(sign_module(G, [1, -1]), trivial_module(G, AbStructure(1)))
    >>> M.action[1].to_list()
    [[-1, 0], [0, 1]]
    """
    if not modules:
        raise ValueError("direct sum of no modules needs a group; use zero_module")
    gamma = modules[0].gamma
    if any(M.gamma != gamma for M in modules):
        raise GammaMismatch("direct sum of modules over different groups")
    carrier = FpAbGroup.trivial()
    for M in modules:
        carrier = carrier.direct_sum(M.carrier)
    action = [block_diag([M.action[g] for M in modules]) for g in range(gamma.order)]
    return GammaModule(gamma, carrier, action, check=False)


def sum_inclusion(modules: Sequence[GammaModule], k: int, total: GammaModule) -> GammaHom:
    """Inclusion of the ``k``-th summand into ``total = direct_sum(*modules)``."""
    blocks = [
        IntMatrix.identity(M.n_generators) if i == k else IntMatrix.zeros(M.n_generators, modules[k].n_generators)
        for i, M in enumerate(modules)
    ]
    return GammaHom(modules[k], total, vstack(blocks, modules[k].n_generators), check=False)


def sum_projection(modules: Sequence[GammaModule], k: int, total: GammaModule) -> GammaHom:
    blocks = [
        IntMatrix.identity(M.n_generators) if i == k else IntMatrix.zeros(modules[k].n_generators, M.n_generators)
        for i, M in enumerate(modules)
    ]
    return GammaHom(total, modules[k], hstack(blocks, modules[k].n_generators), check=False)


def invariants(M: GammaModule) -> FpAbGroup:
    """``M^gamma`` as the kernel of the stacked map ``x -> (g.x - x)_g``."""
    return invariants_with_inclusion(M)[0]


def invariants_with_inclusion(M: GammaModule) -> tuple[FpAbGroup, AbHom]:
    n = M.n_generators
    ident = IntMatrix.identity(n)
    stacked = vstack([M.action[g] - ident for g in range(M.gamma.order)], n)
    target = FpAbGroup.trivial()
    for _ in range(M.gamma.order):
        target = target.direct_sum(M.carrier)
    return kernel(AbHom(M.carrier, target, stacked, check=False))


def dual(M: GammaModule) -> GammaModule:
    """Contragredient ``Hom(M, Z)`` of a lattice: ``g`` acts by ``action(g^-1)^T``."""
    if not M.is_lattice:
        raise ValueError("dual is only defined for torsion-free modules presented without relations")
    G = M.gamma
    action = [M.action[G.inverse(g)].transpose() for g in range(G.order)]
    return GammaModule(G, FpAbGroup.free(M.n_generators), action, check=False)


def restrict(M: GammaModule, elements: Sequence[int]) -> tuple[FiniteGroup, GammaModule]:
    """Restriction of ``M`` to the subgroup formed by ``elements`` (listed in the new numbering)."""
    G = M.gamma
    elements = list(elements)
    pos = {g: k for k, g in enumerate(elements)}
    try:
        table = [[pos[G.mul(a, b)] for b in elements] for a in elements]
    except KeyError:
        raise ValueError("elements are not closed under multiplication") from None
    H = FiniteGroup(table)
    return H, GammaModule(H, M.carrier, [M.action[g] for g in elements], check=False)


def is_minimally_presented(G: FpAbGroup) -> bool:
    """True for ``Z^r (+) Z/d_1 (+) ...`` on one generator per summand, every ``d_i > 1``."""
    seen = set()
    for c in G.relations.columns_sparse():
        if not c:
            continue
        if len(c) != 1:
            return False
        (i, v), = c.items()
        if abs(v) < 2 or i in seen:
            return False
        seen.add(i)
    return True


def _reduce_rows(A: IntMatrix, moduli: Sequence[int]) -> IntMatrix:
    """Reduce row ``i`` into ``(-d_i/2, d_i/2]`` where ``d_i > 0``."""
    rows = []
    for i in range(A.nrows):
        d = moduli[i]
        if not d:
            rows.append(dict(A.row_items(i)))
            continue
        r = {}
        for j, v in A.row_items(i):
            v %= d
            if 2 * v > d:
                v -= d
            if v:
                r[j] = v
        rows.append(r)
    return IntMatrix.from_row_dicts(A.nrows, A.ncols, rows)


def minimal_module(M: GammaModule) -> tuple[GammaModule, IntMatrix, IntMatrix]:
    """``(M', to, from)`` with ``M'`` on a minimal presentation of the carrier.

    ``to : M -> M'`` and ``from : M' -> M`` are mutually inverse equivariant
    isomorphisms; entries of ``to`` and of the action on ``M'`` are reduced
    modulo the torsion orders. Cached on ``M``.

    >>> from .finite_group import cyclic_group
    >>> M = GammaModule(cyclic_group(2), FpAbGroup(2, IntMatrix([[1, 0], [3, 5]])), [IntMatrix.identity(2)] * 2)
    >>> Mp, to, frm = minimal_module(M)
    >>> Mp.carrier.relations.to_list(), Mp.n_generators
    ([[5]], 1)
    """
    if M._minimal is not None:
        return M._minimal
    if is_minimally_presented(M.carrier):
        n = M.n_generators
        M._minimal = (M, IntMatrix.identity(n), IntMatrix.identity(n))
        return M._minimal
    P = minimal_presentation(M.carrier)
    r = P.group.n_generators
    moduli = [0] * r
    for c in P.group.relations.columns_sparse():
        for i, v in c.items():
            moduli[i] = abs(v)
    to = _reduce_rows(P.to_min, moduli)
    action = [_reduce_rows(to @ A @ P.from_min, moduli) for A in M.action]
    Mp = GammaModule(M.gamma, P.group, action, name=M.name, check=False)
    Mp._minimal = (Mp, IntMatrix.identity(r), IntMatrix.identity(r))
    M._minimal = (Mp, to, P.from_min)
    return M._minimal
