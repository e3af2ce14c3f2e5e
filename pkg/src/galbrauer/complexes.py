"""Bounded complexes of Galois modules and their hypercohomology.

Conventions (fixed once, used everywhere):

* ``C[k]^n = C^{n+k}`` with differential ``(-1)^k d``.
* ``Cone(f)^n = A^{n+1} (+) B^n`` with ``d(a, b) = (-d_A a, f(a) + d_B b)``.
* ``Tot^m = (+)_{p+q=m} C^p(gamma, K^q)`` with ``D = d_bar + (-1)^p d_K``.
  Blocks are ordered by increasing ``q``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .abgroups import AbHom, AbStructure, FpAbGroup, cokernel, kernel
from .finite_group import FiniteGroup
from .galois_modules import (
    GammaHom,
    GammaModule,
    GammaMismatch,
    _reduce_rows,
    direct_sum,
    minimal_module,
    zero_module,
)
from .group_cohomology import CochainCohomology, TransportedCohomology, _repeat_relations, differential
from .intmat import ColumnEchelon, IntMatrix, block_diag, elementary_divisors, hstack, vstack

__all__ = [
    "NotAComplex",
    "NotAChainMap",
    "ModComplex",
    "ChainMap",
    "TotalComplex",
    "shift",
    "shift_map",
    "cone",
    "hypercohomology",
    "hypercohomology_structure",
    "induced_map",
    "NodeReport",
    "LesReport",
    "check_exact",
    "check_cone_les",
    "is_quasi_isomorphism",
]


class NotAComplex(ValueError):
    pass


class NotAChainMap(ValueError):
    pass


class ModComplex:
    """A bounded cochain complex of modules over one finite group.

    ``terms`` maps degrees to modules; ``differentials[q]`` goes from degree
    ``q`` to ``q + 1`` and defaults to zero. ``d o d = 0`` is checked.
    """

    def __init__(
        self,
        gamma: FiniteGroup,
        terms: Mapping[int, GammaModule],
        differentials: Mapping[int, GammaHom] | None = None,
        check: bool = True,
    ):
        differentials = dict(differentials or {})
        self.gamma = gamma
        self._zero = zero_module(gamma)
        self.terms = {q: M for q, M in sorted(terms.items()) if M.n_generators}
        for q, M in terms.items():
            if M.gamma != gamma:
                raise GammaMismatch(f"term in degree {q} is over a different group")
        self.differentials: dict[int, GammaHom] = {}
        for q, d in sorted(differentials.items()):
            src, tgt = self.term(q), self.term(q + 1)
            if d.source.n_generators != src.n_generators or d.target.n_generators != tgt.n_generators:
                raise NotAComplex(f"differential in degree {q} has the wrong shape")
            if d.matrix.is_zero():
                continue
            self.differentials[q] = GammaHom(src, tgt, d.matrix, check=False) if (
                d.source is not src or d.target is not tgt
            ) else d
        if check:
            for q, d in self.differentials.items():
                GammaHom(d.source, d.target, d.matrix, check=True)
                nxt = self.differentials.get(q + 1)
                if nxt is not None and not nxt.compose(d).is_zero():
                    raise NotAComplex(f"d^{q + 1} o d^{q} != 0")

    def term(self, q: int) -> GammaModule:
        return self.terms.get(q, self._zero)

    def d(self, q: int) -> GammaHom:
        h = self.differentials.get(q)
        if h is None:
            return GammaHom.zero(self.term(q), self.term(q + 1))
        return h

    @property
    def degrees(self) -> list[int]:
        return sorted(self.terms)

    @property
    def min_degree(self) -> int | None:
        return min(self.terms) if self.terms else None

    @property
    def max_degree(self) -> int | None:
        return max(self.terms) if self.terms else None

    @classmethod
    def single(cls, M: GammaModule, degree: int = 0) -> "ModComplex":
        return cls(M.gamma, {degree: M})

    @classmethod
    def two_term(cls, f: GammaHom, degree: int = 0) -> "ModComplex":
        """``[source -f-> target]`` with the source in ``degree``."""
        return cls(f.source.gamma, {degree: f.source, degree + 1: f.target}, {degree: f})

    @property
    def is_lattice(self) -> bool:
        return all(M.is_lattice for M in self.terms.values())

    def identity_map(self) -> "ChainMap":
        return ChainMap(self, self, {q: self.term(q).identity_hom() for q in self.terms}, check=False)

    def to_json(self) -> dict:
        return {
            "terms": {str(q): M.to_json() for q, M in self.terms.items()},
            "differentials": {str(q): d.matrix.to_list() for q, d in self.differentials.items()},
        }

    def __repr__(self) -> str:
        parts = [f"{q}:{self.term(q).carrier.structure()}" for q in self.degrees]
        return f"ModComplex([{', '.join(parts)}])"


class ChainMap:
    """Degreewise equivariant maps commuting with the differentials."""

    def __init__(
        self,
        source: ModComplex,
        target: ModComplex,
        components: Mapping[int, GammaHom],
        check: bool = True,
    ):
        if source.gamma != target.gamma:
            raise GammaMismatch("chain map between complexes over different groups")
        self.source = source
        self.target = target
        self.components: dict[int, GammaHom] = {}
        for q, h in components.items():
            s, t = source.term(q), target.term(q)
            if h.matrix.shape != (t.n_generators, s.n_generators):
                raise NotAChainMap(f"component in degree {q} has the wrong shape")
            if s.n_generators and t.n_generators and not h.matrix.is_zero():
                self.components[q] = h if (h.source is s and h.target is t) else GammaHom(s, t, h.matrix, check=False)
        if check:
            for h in self.components.values():
                GammaHom(h.source, h.target, h.matrix, check=True)
            degs = set(source.degrees) | set(target.degrees)
            for q in sorted(degs):
                left = self.component(q + 1).compose(source.d(q))
                right = target.d(q).compose(self.component(q))
                if not (left - right).is_zero():
                    raise NotAChainMap(f"square in degree {q} does not commute")

    def component(self, q: int) -> GammaHom:
        h = self.components.get(q)
        if h is None:
            return GammaHom.zero(self.source.term(q), self.target.term(q))
        return h

    def compose(self, inner: "ChainMap") -> "ChainMap":
        """``self o inner``."""
        degs = set(inner.source.degrees)
        return ChainMap(
            inner.source,
            self.target,
            {q: self.component(q).compose(inner.component(q)) for q in degs},
            check=False,
        )


def shift(C: ModComplex, k: int) -> ModComplex:
    """``C[k]^n = C^{n+k}`` with the differential multiplied by ``(-1)^k``."""
    sign = -1 if k % 2 else 1
    terms = {q - k: M for q, M in C.terms.items()}
    diffs = {q - k: d.scale(sign) for q, d in C.differentials.items()}
    return ModComplex(C.gamma, terms, diffs, check=False)


def shift_map(f: ChainMap, k: int) -> ChainMap:
    """``f[k]`` with components ``f^{n+k}`` (no sign)."""
    src, tgt = shift(f.source, k), shift(f.target, k)
    return ChainMap(
        src, tgt, {q - k: GammaHom(src.term(q - k), tgt.term(q - k), h.matrix, check=False)
                   for q, h in f.components.items()}, check=False
    )


@dataclass
class Cone:
    complex: ModComplex
    incl: ChainMap  # target -> cone
    proj: ChainMap  # cone -> source[1]
    source: ModComplex
    target: ModComplex


def cone(f: ChainMap) -> tuple[ModComplex, ChainMap, ChainMap]:
    """Mapping cone of ``f : A -> B`` with ``B -> Cone(f)`` and ``Cone(f) -> A[1]``."""
    c = _cone(f)
    return c.complex, c.incl, c.proj


def _cone(f: ChainMap) -> Cone:
    A, B = f.source, f.target
    gamma = A.gamma
    degs = sorted({q - 1 for q in A.degrees} | set(B.degrees))
    terms: dict[int, GammaModule] = {}
    parts: dict[int, tuple[GammaModule, GammaModule]] = {}
    for n in degs:
        a, b = A.term(n + 1), B.term(n)
        parts[n] = (a, b)
        terms[n] = direct_sum(a, b)
    diffs = {}
    for n in degs:
        if n + 1 not in parts:
            continue
        a0, b0 = parts[n]
        a1, b1 = parts[n + 1]
        top = hstack([A.d(n + 1).matrix.scale(-1), IntMatrix.zeros(a1.n_generators, b0.n_generators)], a1.n_generators)
        bottom = hstack([f.component(n + 1).matrix, B.d(n).matrix], b1.n_generators)
        M = vstack([top, bottom], a0.n_generators + b0.n_generators)
        diffs[n] = GammaHom(terms[n], terms[n + 1], M, check=False)
    C = ModComplex(gamma, terms, diffs, check=False)
    A1 = shift(A, 1)
    incl, proj = {}, {}
    for n in degs:
        a, b = parts[n]
        incl[n] = GammaHom(
            B.term(n), C.term(n),
            vstack([IntMatrix.zeros(a.n_generators, b.n_generators), IntMatrix.identity(b.n_generators)], b.n_generators),
            check=False,
        )
        proj[n] = GammaHom(
            C.term(n), A1.term(n),
            hstack([IntMatrix.identity(a.n_generators), IntMatrix.zeros(a.n_generators, b.n_generators)], a.n_generators),
            check=False,
        )
    return Cone(
        C,
        ChainMap(B, C, incl, check=False),
        ChainMap(C, A1, proj, check=False),
        A,
        B,
    )


# ---------------------------------------------------------------------------
# Total complex of the bar double complex
# ---------------------------------------------------------------------------


class TotalComplex:
    """``Tot(C^*(gamma, K^*))`` with lazily built differentials."""

    def __init__(self, K: ModComplex, validate: bool = True):
        self.K = K
        self.gamma = K.gamma
        self.validate = validate
        self._bar: dict[tuple[int, int], IntMatrix] = {}
        self._D: dict[int, IntMatrix] = {}
        self._coh: dict[int, CochainCohomology | TransportedCohomology] = {}
        self._min: tuple | None = None

    def blocks(self, m: int) -> list[tuple[int, int, int, int]]:
        """``(p, q, offset, size)`` for each block of ``Tot^m``."""
        out = []
        off = 0
        N = self.gamma.order
        for q in self.K.degrees:
            p = m - q
            if p < 0:
                continue
            size = self.K.term(q).n_generators * N ** p
            out.append((p, q, off, size))
            off += size
        return out

    def dim(self, m: int) -> int:
        return sum(b[3] for b in self.blocks(m))

    def relations(self, m: int) -> IntMatrix:
        N = self.gamma.order
        parts = [
            _repeat_relations(self.K.term(q).carrier.relations, N ** p) for p, q, _, _ in self.blocks(m)
        ]
        if not parts:
            return IntMatrix.zeros(0, 0)
        return block_diag(parts)

    def group(self, m: int) -> FpAbGroup:
        return FpAbGroup(self.dim(m), self.relations(m))

    def _bar_matrix(self, q: int, p: int) -> IntMatrix:
        key = (q, p)
        if key not in self._bar:
            self._bar[key] = differential(self.gamma, self.K.term(q), p)
        return self._bar[key]

    def D(self, m: int) -> IntMatrix:
        """``D : Tot^m -> Tot^{m+1}``."""
        if m in self._D:
            return self._D[m]
        src = {(p, q): (off, size) for p, q, off, size in self.blocks(m)}
        dst = {(p, q): (off, size) for p, q, off, size in self.blocks(m + 1)}
        rows: list[dict] = [{} for _ in range(self.dim(m + 1))]
        N = self.gamma.order
        for (p, q), (coff, _) in src.items():
            if (p + 1, q) in dst:
                roff = dst[(p + 1, q)][0]
                _place(rows, self._bar_matrix(q, p), roff, coff, 1)
            if (p, q + 1) in dst:
                dK = self.K.d(q).matrix
                if not dK.is_zero():
                    roff = dst[(p, q + 1)][0]
                    sign = -1 if p % 2 else 1
                    _place_repeated(rows, dK, N ** p, roff, coff, sign)
        out = IntMatrix.from_row_dicts(len(rows), self.dim(m), rows)
        self._D[m] = out
        return out

    def check_square_zero(self, m: int) -> None:
        DD = self.D(m) @ self.D(m - 1)
        if DD.is_zero():
            return
        G = self.group(m + 1)
        for col in DD.columns_sparse():
            if col and not G.is_zero(col):
                raise NotAComplex(f"total differential does not square to zero in degree {m}")

    def _minimal(self) -> "tuple[TotalComplex, dict] | None":
        """The total complex of ``K`` moved onto minimal presentations, or None if already minimal."""
        if self._min is None:
            mins = {q: minimal_module(M) for q, M in self.K.terms.items()}
            if all(Mp is self.K.term(q) for q, (Mp, _, _) in mins.items()):
                self._min = (None, mins)
            else:
                terms = {q: Mp for q, (Mp, _, _) in mins.items()}
                diffs = {}
                for q, d in self.K.differentials.items():
                    _, to, _ = mins[q + 1]
                    _, _, frm = mins[q]
                    Sp, Tp = terms[q], terms[q + 1]
                    moduli = [0] * Tp.n_generators
                    for c in Tp.carrier.relations.columns_sparse():
                        for i, v in c.items():
                            moduli[i] = abs(v)
                    mat = _reduce_rows(to @ d.matrix @ frm, moduli)
                    diffs[q] = GammaHom(Sp, Tp, mat, check=False)
                Kp = ModComplex(self.gamma, terms, diffs, check=False)
                self._min = (TotalComplex(Kp, validate=False), mins)
        return self._min if self._min[0] is not None else None

    def _transport(self, m: int, which: int) -> IntMatrix:
        """Block matrix of the ``to`` (``which = 1``) or ``from`` (``which = 2``) maps in degree ``m``."""
        Tp, mins = self._minimal()
        N = self.gamma.order
        here = {(p, q): off for p, q, off, _ in self.blocks(m)}
        there = {(p, q): off for p, q, off, _ in Tp.blocks(m)}
        if which == 1:
            rows: list[dict] = [{} for _ in range(Tp.dim(m))]
            ncols = self.dim(m)
            for key, off in here.items():
                if key in there:
                    _place_repeated(rows, mins[key[1]][1], N ** key[0], there[key], off, 1)
        else:
            rows = [{} for _ in range(self.dim(m))]
            ncols = Tp.dim(m)
            for key, off in here.items():
                if key in there:
                    _place_repeated(rows, mins[key[1]][2], N ** key[0], off, there[key], 1)
        return IntMatrix.from_row_dicts(len(rows), ncols, rows)

    def cohomology(self, m: int) -> CochainCohomology | TransportedCohomology:
        if m not in self._coh:
            if self.validate:
                self.check_square_zero(m)
            simple = self._minimal()
            if simple is not None:
                inner = simple[0].cohomology(m)
                self._coh[m] = TransportedCohomology(inner, self._transport(m, 1), self._transport(m, 2))
            else:
                self._coh[m] = CochainCohomology(
                    self.dim(m), self.D(m - 1), self.D(m), self.relations(m), self.relations(m + 1)
                )
        return self._coh[m]

    def structure(self, m: int) -> AbStructure:
        """Structure of ``H^m``; lattice complexes avoid kernel bases entirely."""
        if m in self._coh or not self.K.is_lattice:
            return self.cohomology(m).structure()
        if self.validate:
            self.check_square_zero(m)
        dim = self.dim(m)
        rank_out = len(elementary_divisors(self.D(m)))
        divs_in = elementary_divisors(self.D(m - 1))
        return AbStructure(dim - rank_out - len(divs_in), tuple(d for d in divs_in if d > 1))


def _place(rows: list[dict], block: IntMatrix, roff: int, coff: int, sign: int) -> None:
    for i in range(block.nrows):
        r = rows[roff + i]
        for j, v in block.row_items(i):
            c = coff + j
            nv = r.get(c, 0) + sign * v
            if nv:
                r[c] = nv
            else:
                r.pop(c, None)


def _place_repeated(rows: list[dict], block: IntMatrix, copies: int, roff: int, coff: int, sign: int) -> None:
    h, w = block.shape
    items = [list(block.row_items(i)) for i in range(h)]
    for t in range(copies):
        for i in range(h):
            r = rows[roff + t * h + i]
            for j, v in items[i]:
                c = coff + t * w + j
                nv = r.get(c, 0) + sign * v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)


_TOTALS: dict[int, TotalComplex] = {}


def total(C: ModComplex) -> TotalComplex:
    """Memoised total complex (complexes are immutable once built)."""
    key = id(C)
    T = _TOTALS.get(key)
    if T is None or T.K is not C:
        T = TotalComplex(C)
        if len(_TOTALS) > 256:
            _TOTALS.clear()
        _TOTALS[key] = T
    return T


def hypercohomology(C: ModComplex, n: int) -> FpAbGroup:
    """``H^n(gamma, C)`` as the cohomology of the total complex."""
    return total(C).cohomology(n).group


def hypercohomology_structure(C: ModComplex, n: int) -> AbStructure:
    """Structure of ``H^n(gamma, C)``.

    >>> from .finite_group import cyclic_group
    >>> from .galois_modules import trivial_module
    >>> from .abgroups import AbStructure
    >>> Z = trivial_module(cyclic_group(2), AbStructure(1))
    >>> C = ModComplex.two_term(GammaHom(Z, Z, IntMatrix([[2]])))
    >>> [str(hypercohomology_structure(C, n)) for n in range(3)]
    ['0', 'Z/2', 'Z/2']
    """
    return total(C).structure(n)


def tot_map_matrix(f: ChainMap, m: int) -> IntMatrix:
    """Matrix of ``Tot^m(source) -> Tot^m(target)``: ``f^q`` applied pointwise on block ``(p, q)``."""
    Ts, Tt = total(f.source), total(f.target)
    N = f.source.gamma.order
    dst = {(p, q): off for p, q, off, _ in Tt.blocks(m)}
    rows: list[dict] = [{} for _ in range(Tt.dim(m))]
    for p, q, off, _ in Ts.blocks(m):
        if (p, q) in dst:
            _place_repeated(rows, f.component(q).matrix, N ** p, dst[(p, q)], off, 1)
    return IntMatrix.from_row_dicts(len(rows), Ts.dim(m), rows)


def _hom_from_cochain_map(F: IntMatrix, src: CochainCohomology, tgt: CochainCohomology) -> AbHom:
    cols = [tgt.coordinates(F.apply_sparse(z)) for z in src.representatives.columns_sparse()]
    mat = IntMatrix.from_columns(tgt.group.n_generators, cols)
    return AbHom(src.group, tgt.group, mat, check=False)


def induced_map(f: ChainMap, n: int) -> AbHom:
    """The map ``H^n(gamma, source) -> H^n(gamma, target)`` induced by ``f``."""
    src = total(f.source).cohomology(n)
    tgt = total(f.target).cohomology(n)
    return _hom_from_cochain_map(tot_map_matrix(f, n), src, tgt)


def connecting_map(c: Cone, n: int) -> AbHom:
    """``H^n(Cone) -> H^{n+1}(source)``: the projection followed by ``Tot(A[1])^n = Tot(A)^{n+1}``.

    The identification multiplies block ``(p, q)`` by ``(-1)^q``, ``q`` being
    the degree in ``A[1]``, so that it commutes with the total differentials.
    """
    A = c.source
    src = total(c.complex).cohomology(n)
    tgt = total(A).cohomology(n + 1)
    # proj components are the identity onto the A-part; reinterpret as degree q -> q+1 of A
    comps = {q: GammaHom(c.complex.term(q), A.term(q + 1), h.matrix, check=False)
             for q, h in c.proj.components.items()}
    fake = _ShiftedMap(c.complex, A, comps)
    F = _tot_shift_matrix(fake, n)
    return _hom_from_cochain_map(F, src, tgt)


@dataclass
class _ShiftedMap:
    source: ModComplex
    target: ModComplex
    components: dict


def _tot_shift_matrix(f: _ShiftedMap, m: int) -> IntMatrix:
    Ts, Tt = total(f.source), total(f.target)
    N = f.source.gamma.order
    dst = {(p, q): off for p, q, off, _ in Tt.blocks(m + 1)}
    rows: list[dict] = [{} for _ in range(Tt.dim(m + 1))]
    for p, q, off, _ in Ts.blocks(m):
        key = (p, q + 1)
        h = f.components.get(q)
        if h is None or key not in dst:
            continue
        sign = -1 if q % 2 else 1
        _place_repeated(rows, h.matrix, N ** p, dst[key], off, sign)
    return IntMatrix.from_row_dicts(len(rows), Ts.dim(m), rows)


# ---------------------------------------------------------------------------
# Exactness
# ---------------------------------------------------------------------------


@dataclass
class NodeReport:
    label: str
    structure: AbStructure
    composite_zero: bool
    kernel_in_image: bool

    @property
    def exact(self) -> bool:
        return self.composite_zero and self.kernel_in_image

    def to_json(self) -> dict:
        return {
            "node": self.label,
            "group": self.structure.to_json(),
            "exact": self.exact,
            "composite_zero": self.composite_zero,
            "kernel_in_image": self.kernel_in_image,
        }


@dataclass
class LesReport:
    nodes: list[NodeReport] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return all(n.exact for n in self.nodes)

    def failures(self) -> list[NodeReport]:
        return [n for n in self.nodes if not n.exact]

    def to_json(self) -> dict:
        return {"exact": self.exact, "nodes": [n.to_json() for n in self.nodes]}

    def __str__(self) -> str:
        lines = [f"{'ok  ' if n.exact else 'FAIL'} {n.label}: {n.structure}" for n in self.nodes]
        return "\n".join(lines)


def check_exact(alpha: AbHom, beta: AbHom) -> tuple[bool, bool]:
    """Exactness of ``X -alpha-> Y -beta-> Z`` at ``Y`` by double containment.

    Returns ``(beta o alpha == 0, ker beta within im alpha)``.
    """
    Y = alpha.target
    if beta.source.n_generators != Y.n_generators:
        raise ValueError("maps are not composable")
    composite_zero = beta.compose(alpha).is_zero()
    _, incl = kernel(beta)
    span = ColumnEchelon(hstack([alpha.matrix, Y.relations], Y.n_generators), track_transform=False)
    contained = all(span.coordinates(col) is not None for col in incl.matrix.columns_sparse() if col)
    return composite_zero, contained


def check_cone_les(f: ChainMap, degrees: Iterable[int]) -> LesReport:
    """Exactness of ``H^n(B) -> H^n(Cone f) -> H^{n+1}(A) -> H^{n+1}(B)`` for ``f : A -> B``.

    For each ``n`` the three middle nodes ``H^n(B)``, ``H^n(Cone)`` and
    ``H^{n+1}(A)`` are checked, each against its incoming and outgoing map.
    """
    c = _cone(f)
    report = LesReport()
    for n in degrees:
        f_n = induced_map(f, n)
        i_n = induced_map(c.incl, n)
        delta_n = connecting_map(c, n)
        f_n1 = induced_map(f, n + 1)
        for label, alpha, beta in (
            (f"H^{n}(target)", f_n, i_n),
            (f"H^{n}(cone)", i_n, delta_n),
            (f"H^{n + 1}(source)", delta_n, f_n1),
        ):
            z, k = check_exact(alpha, beta)
            report.nodes.append(NodeReport(label, alpha.target.structure(), z, k))
    return report


def is_isomorphism(h: AbHom) -> bool:
    K, _ = kernel(h)
    if not K.structure().is_trivial:
        return False
    C, _ = cokernel(h)
    return C.structure().is_trivial


def is_quasi_isomorphism(f: ChainMap, degrees: Iterable[int]) -> bool:
    """Whether ``f`` induces isomorphisms on hypercohomology in the given degrees."""
    return all(is_isomorphism(induced_map(f, n)) for n in degrees)
