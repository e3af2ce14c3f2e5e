"""Group cohomology of finite groups via inhomogeneous bar cochains.

Cochains are not normalised. ``C^n(G, M)`` is ``|G|^n`` copies of the
presentation of ``M``; the copy for the tuple ``(g_1, ..., g_n)`` sits at
offset ``index * rank`` where ``index`` is the lexicographic position of the
tuple (element indices as digits, ``g_1`` most significant).

Two independent routes are provided for cross-checking:

* :func:`cyclic_oracle` -- the 2-periodic resolution of a cyclic group;
* :func:`product_cyclic_oracle` -- the tensor product of such resolutions,
  for a group given as a direct product of cyclic factors.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .abgroups import AbHom, AbStructure, FpAbGroup, Subquotient, minimal_presentation
from .finite_group import FiniteGroup
from .galois_modules import GammaHom, GammaModule, minimal_module
from .intmat import ColumnEchelon, IntMatrix, block_diag, elementary_divisors, hstack

__all__ = [
    "NotCyclic",
    "CochainCohomology",
    "TransportedCohomology",
    "cochain_group",
    "differential",
    "cohomology",
    "cohomology_data",
    "cohomology_structure",
    "induced_map",
    "cyclic_oracle",
    "product_cyclic_oracle",
]


class NotCyclic(ValueError):
    pass


@lru_cache(maxsize=64)
def _tuples(order: int, n: int) -> tuple[tuple[int, ...], ...]:
    """All ``n``-tuples of element indices in lexicographic order."""
    out: list[tuple[int, ...]] = [()]
    for _ in range(n):
        out = [t + (g,) for t in out for g in range(order)]
    return tuple(out)


def _repeat_relations(R: IntMatrix, copies: int) -> IntMatrix:
    if R.ncols == 0:
        return IntMatrix.zeros(R.nrows * copies, 0)
    return block_diag([R] * copies)


def cochain_group(gamma: FiniteGroup, M: GammaModule, n: int) -> FpAbGroup:
    """``C^n(gamma, M)`` as a finitely presented group."""
    copies = gamma.order ** n
    R = M.carrier.relations
    return FpAbGroup(M.n_generators * copies, _repeat_relations(R, copies))


def differential(gamma: FiniteGroup, M: GammaModule, n: int) -> IntMatrix:
    """Matrix of ``d^n : C^n -> C^{n+1}``.

    ``(d f)(g_1..g_{n+1}) = g_1 f(g_2..g_{n+1})
    + sum_{i=1}^{n} (-1)^i f(.., g_i g_{i+1}, ..) + (-1)^{n+1} f(g_1..g_n)``.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    if M.gamma != gamma:
        raise ValueError("module is over a different group")
    N = gamma.order
    a = M.n_generators
    mul = gamma.table
    # act_rows[g][i] = {j: A_g[i, j]}
    act_rows = [[dict(A.row_items(i)) for i in range(a)] for A in M.action]
    Nn = N ** n
    rows: list[dict] = []
    last_sign = -1 if (n + 1) % 2 else 1
    for t in _tuples(N, n + 1):
        s0 = 0
        for g in t[1:]:
            s0 = s0 * N + g
        s_last = 0
        for g in t[:-1]:
            s_last = s_last * N + g
        merged = []
        for i in range(1, n + 1):
            s = 0
            for k, g in enumerate(t):
                if k == i - 1:
                    s = s * N + mul[g][t[i]]
                elif k == i:
                    continue
                else:
                    s = s * N + g
            merged.append((s, -1 if i % 2 else 1))
        g1 = t[0]
        for i in range(a):
            row: dict[int, int] = {}
            base0 = s0 * a
            for j, v in act_rows[g1][i].items():
                row[base0 + j] = v
            for s, sign in merged:
                c = s * a + i
                row[c] = row.get(c, 0) + sign
            c = s_last * a + i
            row[c] = row.get(c, 0) + last_sign
            rows.append({k: v for k, v in row.items() if v})
    return IntMatrix.from_row_dicts(N * Nn * a, Nn * a, rows)


class CochainCohomology:
    """``ker(d_out) / im(d_in)`` for a stretch ``C_prev -> C -> C_next`` of f.p. groups.

    ``d_out`` is taken modulo the relations ``R_next`` of ``C_next``, and the
    boundaries include the relations ``R`` of ``C``. The generators of
    :attr:`group` are explicit cocycles (columns of :attr:`representatives`),
    and :meth:`coordinates` expresses any cocycle in them.
    """

    def __init__(
        self,
        n_mid: int,
        d_in: IntMatrix | None,
        d_out: IntMatrix | None,
        R: IntMatrix | None = None,
        R_next: IntMatrix | None = None,
    ):
        if R is None:
            R = IntMatrix.zeros(n_mid, 0)
        if d_out is None or d_out.nrows == 0:
            cocycles = IntMatrix.identity(n_mid)
        else:
            if d_out.ncols != n_mid:
                raise ValueError("outgoing differential has the wrong width")
            if R_next is None or R_next.ncols == 0:
                cocycles = ColumnEchelon(d_out).kernel()
            else:
                big = hstack([d_out, R_next], d_out.nrows)
                cocycles = ColumnEchelon(big).kernel().select_rows(range(n_mid))
        if d_in is None:
            d_in = IntMatrix.zeros(n_mid, 0)
        if d_in.nrows != n_mid:
            raise ValueError("incoming differential has the wrong height")
        self.n_mid = n_mid
        self._sq = Subquotient(cocycles, hstack([d_in, R], n_mid))
        self._min = minimal_presentation(self._sq.group)
        self.group = self._min.group
        self.representatives = self._sq.basis @ self._min.from_min

    def coordinates(self, cocycle: Sequence[int] | dict) -> list[int]:
        return self._min.to_min.apply(self._sq.coordinates(cocycle))

    def structure(self) -> AbStructure:
        return self.group.structure()


class TransportedCohomology:
    """Cohomology computed in a simpler coordinate system, read back in the original one.

    ``to`` and ``frm`` are mutually inverse cochain isomorphisms (as maps of
    presented groups) between the original cochains and those of ``inner``.
    """

    def __init__(self, inner: "CochainCohomology | TransportedCohomology", to: IntMatrix, frm: IntMatrix):
        self.inner = inner
        self.n_mid = to.ncols
        self._to = to
        self.group = inner.group
        self.representatives = frm @ inner.representatives

    def coordinates(self, cocycle: Sequence[int] | dict) -> list[int]:
        if isinstance(cocycle, dict):
            return self.inner.coordinates(self._to.apply_sparse(cocycle))
        return self.inner.coordinates(self._to.apply(cocycle))

    def structure(self) -> AbStructure:
        return self.group.structure()


def cohomology_data(gamma: FiniteGroup, M: GammaModule, n: int) -> CochainCohomology | TransportedCohomology:
    """``H^n(gamma, M)`` with explicit cocycle representatives.

    Torsion modules are first moved to a minimal presentation, which keeps
    the kernel computations small; results are reported in the cochain
    coordinates of ``M`` itself.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    Mp, to, frm = minimal_module(M)
    if Mp is not M:
        copies = gamma.order ** n
        inner = cohomology_data(gamma, Mp, n)
        return TransportedCohomology(inner, block_diag([to] * copies), block_diag([frm] * copies))
    N = gamma.order
    R = M.carrier.relations
    d_in = differential(gamma, M, n - 1) if n > 0 else None
    d_out = differential(gamma, M, n)
    return CochainCohomology(
        M.n_generators * N ** n,
        d_in,
        d_out,
        _repeat_relations(R, N ** n),
        _repeat_relations(R, N ** (n + 1)),
    )


def cohomology(gamma: FiniteGroup, M: GammaModule, n: int) -> FpAbGroup:
    """``H^n(gamma, M) = ker d^n / im d^{n-1}`` as a finitely presented group."""
    return cohomology_data(gamma, M, n).group


def cohomology_structure(gamma: FiniteGroup, M: GammaModule, n: int) -> AbStructure:
    """Structure of ``H^n(gamma, M)``.

    For lattices this never builds a kernel basis: ``ker d^n`` is saturated,
    so the torsion of ``H^n`` is the torsion of ``coker d^{n-1}`` and the free
    rank is ``dim C^n - rank d^n - rank d^{n-1}``.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    if not M.is_lattice:
        return cohomology(gamma, M, n).structure()
    dim = M.n_generators * gamma.order ** n
    rank_out = len(elementary_divisors(differential(gamma, M, n)))
    if n == 0:
        return AbStructure(dim - rank_out, ())
    divs_in = elementary_divisors(differential(gamma, M, n - 1))
    return AbStructure(dim - rank_out - len(divs_in), tuple(d for d in divs_in if d > 1))


def cochain_map_matrix(gamma: FiniteGroup, f: GammaHom, n: int) -> IntMatrix:
    """Pointwise application of ``f`` to ``n``-cochains."""
    return block_diag([f.matrix] * gamma.order ** n)


def induced_map(gamma: FiniteGroup, f: GammaHom, n: int) -> AbHom:
    """``H^n(f) : H^n(gamma, source) -> H^n(gamma, target)``."""
    src = cohomology_data(gamma, f.source, n)
    tgt = cohomology_data(gamma, f.target, n)
    F = cochain_map_matrix(gamma, f, n)
    cols = [tgt.coordinates(F.apply_sparse(z)) for z in src.representatives.columns_sparse()]
    mat = IntMatrix.from_columns(tgt.group.n_generators, cols)
    return AbHom(src.group, tgt.group, mat, check=False)


# ---------------------------------------------------------------------------
# Periodic-resolution oracles
# ---------------------------------------------------------------------------


def _endo(M: GammaModule, terms: Sequence[tuple[int, int]]) -> IntMatrix:
    """``sum c * action(g)`` over ``(c, g)`` pairs."""
    n = M.n_generators
    out = IntMatrix.zeros(n, n)
    for c, g in terms:
        out = out + M.action[g].scale(c)
    return out


def _cyclic_ops(G: FiniteGroup, M: GammaModule, sigma: int) -> tuple[IntMatrix, IntMatrix]:
    m = G.element_order(sigma)
    minus = _endo(M, [(1, sigma), (-1, G.identity)])
    norm = _endo(M, [(1, G.power(sigma, k)) for k in range(m)])
    return minus, norm


def cyclic_oracle(gamma: FiniteGroup, M: GammaModule, n: int) -> FpAbGroup:
    """Cohomology of a cyclic group from its 2-periodic resolution.

    ``H^0 = M^G``; for ``n >= 1`` even ``M^G / N M``; for ``n`` odd
    ``ker N / (sigma - 1) M``, with ``sigma`` a generator and ``N`` the norm.

    >>> from .finite_group import cyclic_group
    >>> from .galois_modules import sign_module
    >>> G = cyclic_group(2)
    >>> [str(cyclic_oracle(G, sign_module(G, (1, -1)), n).structure()) for n in range(4)]
    ['0', 'Z/2', '0', 'Z/2']
    """
    is_cyc, sigma = gamma.is_cyclic()
    if not is_cyc:
        raise NotCyclic("cyclic_oracle needs a cyclic group")
    if n < 0:
        raise ValueError("degree must be non-negative")
    R = M.carrier.relations
    a = M.n_generators
    minus, norm = _cyclic_ops(gamma, M, sigma)
    if n == 0 or n % 2 == 0:
        kill, boundary = minus, (norm if n > 0 else IntMatrix.zeros(a, 0))
    else:
        kill, boundary = norm, minus
    return CochainCohomology(a, boundary, kill, R, R).group


def product_cyclic_oracle(
    gamma: FiniteGroup, M: GammaModule, n: int, generators: Sequence[int]
) -> FpAbGroup:
    """Cohomology of ``gamma = C_1 x ... x C_r`` from the tensor product of periodic resolutions.

    ``generators`` are commuting elements generating the cyclic factors,
    with orders multiplying to ``|gamma|``. Degree ``n`` cochains are
    ``M`` indexed by multi-indices ``k`` with ``|k| = n``; the coboundary
    from ``k`` to ``k + e_i`` is ``(-1)^(k_1 + ... + k_{i-1})`` times
    ``sigma_i - 1`` when ``k_i + 1`` is odd and the norm of ``C_i`` when it is even.
    """
    gens = list(generators)
    order = 1
    for s in gens:
        order *= gamma.element_order(s)
    if order != gamma.order or gamma.generated_by(gens) != set(gamma.elements()):
        raise ValueError("generators do not split the group as a product of their cyclic subgroups")
    for s in gens:
        for t in gens:
            if gamma.mul(s, t) != gamma.mul(t, s):
                raise ValueError("generators do not commute")
    if n < 0:
        raise ValueError("degree must be non-negative")
    ops = [_cyclic_ops(gamma, M, s) for s in gens]
    r = len(gens)
    a = M.n_generators
    R = M.carrier.relations

    def multi(deg):
        if deg < 0:
            return []
        out = []

        def rec(prefix, left, slots):
            if slots == 1:
                out.append(prefix + (left,))
                return
            for k in range(left, -1, -1):
                rec(prefix + (k,), left - k, slots - 1)

        rec((), deg, r)
        return out

    def cobdry(deg):
        src, dst = multi(deg), multi(deg + 1)
        pos = {k: i for i, k in enumerate(dst)}
        rows: list[dict] = [{} for _ in range(len(dst) * a)]
        for si, k in enumerate(src):
            sign = 1
            for i in range(r):
                kk = k[:i] + (k[i] + 1,) + k[i + 1:]
                op = ops[i][0] if (k[i] + 1) % 2 else ops[i][1]
                di = pos[kk]
                for row in range(a):
                    for col, v in op.row_items(row):
                        rows[di * a + row][si * a + col] = rows[di * a + row].get(si * a + col, 0) + sign * v
                if k[i] % 2:
                    sign = -sign
        return IntMatrix.from_row_dicts(len(dst) * a, len(src) * a, [{c: v for c, v in rw.items() if v} for rw in rows])

    n_mid = len(multi(n))
    d_in = cobdry(n - 1) if n > 0 else None
    return CochainCohomology(
        n_mid * a,
        d_in,
        cobdry(n),
        _repeat_relations(R, n_mid),
        _repeat_relations(R, len(multi(n + 1))),
    ).group
