"""Finitely presented abelian groups and their homomorphisms.

A group is ``Z^n / (column span of relations)``. Subgroups are never
abstract objects: they are lists of generator vectors in the ambient
presentation, and membership is integer solvability against those
generators together with the ambient relators.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .intmat import ColumnEchelon, IntMatrix, block_diag, elementary_divisors, hstack, snf_with_inverse

__all__ = [
    "AbStructure",
    "FpAbGroup",
    "AbHom",
    "Subquotient",
    "ContainmentFailure",
    "IllDefinedMorphism",
    "kernel",
    "image",
    "cokernel",
    "subquotient",
    "direct_sum",
    "MinimalPresentation",
    "minimal_presentation",
]


class IllDefinedMorphism(ValueError):
    """A matrix does not send relators of the source into the target's relations."""


class ContainmentFailure(ValueError):
    """A proposed subquotient ``Z/B`` has ``B`` not contained in ``Z``."""


@dataclass(frozen=True, order=True)
class AbStructure:
    """Canonical form ``Z^free_rank + Z/d_1 + ... + Z/d_k`` with ``d_i | d_{i+1}``.

    >>> str(AbStructure(1, (2, 4)))
    'Z (+) Z/2 (+) Z/4'
    >>> str(AbStructure(0, ()))
    '0'
    """

    free_rank: int
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", tuple(int(d) for d in self.invariant_factors))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        ds = self.invariant_factors
        if any(d < 2 for d in ds):
            raise ValueError(f"invariant factors must be >= 2, got {ds}")
        if any(b % a for a, b in zip(ds, ds[1:])):
            raise ValueError(f"invariant factors must form a divisibility chain, got {ds}")

    @classmethod
    def from_diagonal(cls, n_generators: int, diagonal: Sequence[int]) -> "AbStructure":
        """Structure of ``Z^n`` modulo a diagonal (already a divisibility chain, zeros omitted)."""
        nz = [abs(d) for d in diagonal if d]
        return cls(n_generators - len(nz), tuple(d for d in nz if d != 1))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def torsion_order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def order(self) -> int | None:
        return self.torsion_order if self.is_finite else None

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " (+) ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.invariant_factors)}

    @classmethod
    def parse(cls, text: str) -> "AbStructure":
        """Inverse of ``str``; also accepts ``Z^1``, ``0`` summands and any order of summands."""
        text = text.strip()
        if text == "0":
            return cls(0, ())
        free, diag = 0, []
        for part in text.split("(+)"):
            part = part.strip()
            if part == "0":
                continue
            if part == "Z":
                free += 1
            elif part.startswith("Z^"):
                free += int(part[2:])
            elif part.startswith("Z/"):
                diag.append(int(part[2:]))
            else:
                raise ValueError(f"cannot parse summand {part!r}")
        n = free + len(diag)
        return FpAbGroup(n, IntMatrix.diagonal(diag, n, len(diag))).structure()


class FpAbGroup:
    """The abelian group ``Z^n / span(relations)``.

    >>> G = FpAbGroup(2, IntMatrix([[2, 0], [0, 3]]))
    >>> str(G.structure())
    'Z/6'
    """

    __slots__ = ("n_generators", "relations", "_structure", "_echelon")

    def __init__(self, n_generators: int, relations: IntMatrix | Sequence[Sequence[int]] | None = None):
        if relations is None:
            relations = IntMatrix.zeros(n_generators, 0)
        elif not isinstance(relations, IntMatrix):
            relations = (
                IntMatrix(relations) if relations and relations[0] else IntMatrix.zeros(n_generators, 0)
            )
        if relations.nrows != n_generators:
            raise ValueError(
                f"relation matrix has {relations.nrows} rows for {n_generators} generators"
            )
        self.n_generators = n_generators
        self.relations = relations
        self._structure: AbStructure | None = None
        self._echelon: ColumnEchelon | None = None

    @classmethod
    def free(cls, n: int) -> "FpAbGroup":
        return cls(n)

    @classmethod
    def cyclic(cls, d: int) -> "FpAbGroup":
        """``Z/d``; ``d = 0`` gives ``Z``."""
        return cls(1, IntMatrix([[d]]) if d else None)

    @classmethod
    def trivial(cls) -> "FpAbGroup":
        return cls(0)

    @classmethod
    def from_structure(cls, s: AbStructure) -> "FpAbGroup":
        n = s.free_rank + len(s.invariant_factors)
        cols = [{s.free_rank + k: d} for k, d in enumerate(s.invariant_factors)]
        return cls(n, IntMatrix.from_columns(n, cols))

    def structure(self) -> AbStructure:
        if self._structure is None:
            self._structure = AbStructure.from_diagonal(
                self.n_generators, elementary_divisors(self.relations)
            )
        return self._structure

    def _relation_echelon(self) -> ColumnEchelon:
        if self._echelon is None:
            self._echelon = ColumnEchelon(self.relations, track_transform=False)
        return self._echelon

    def is_zero(self, vec: Sequence[int] | dict) -> bool:
        """Whether ``vec`` lies in the span of the relators."""
        if not isinstance(vec, dict) and len(vec) != self.n_generators:
            raise ValueError("vector length does not match generator count")
        return self._relation_echelon().coordinates(vec) is not None

    def equal(self, a: Sequence[int], b: Sequence[int]) -> bool:
        return self.is_zero([x - y for x, y in zip(a, b)])

    def direct_sum(self, other: "FpAbGroup") -> "FpAbGroup":
        return FpAbGroup(
            self.n_generators + other.n_generators, block_diag([self.relations, other.relations])
        )

    def identity(self) -> "AbHom":
        return AbHom(self, self, IntMatrix.identity(self.n_generators), check=False)

    def with_extra_relations(self, extra: IntMatrix) -> "FpAbGroup":
        return FpAbGroup(self.n_generators, hstack([self.relations, extra], self.n_generators))

    def __repr__(self) -> str:
        return f"FpAbGroup({self.n_generators} gens, {self.relations.ncols} rels: {self.structure()})"


class AbHom:
    """A homomorphism given by its matrix on generators (``target_gens x source_gens``)."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FpAbGroup, target: FpAbGroup, matrix: IntMatrix, check: bool = True):
        if matrix.shape != (target.n_generators, source.n_generators):
            raise ValueError(
                f"matrix shape {matrix.shape} does not match "
                f"{target.n_generators}x{source.n_generators}"
            )
        self.source = source
        self.target = target
        self.matrix = matrix
        if check:
            images = matrix @ source.relations
            for j, col in enumerate(images.columns_sparse()):
                if col and not target.is_zero(col):
                    raise IllDefinedMorphism(f"relator {j} of the source is not sent to zero")

    def __call__(self, vec: Sequence[int]) -> list[int]:
        return self.matrix.apply(vec)

    def compose(self, inner: "AbHom") -> "AbHom":
        """``self o inner``."""
        return AbHom(inner.source, self.target, self.matrix @ inner.matrix, check=False)

    def is_zero(self) -> bool:
        return all(not c or self.target.is_zero(c) for c in self.matrix.columns_sparse())

    def equals(self, other: "AbHom") -> bool:
        return (self.matrix - other.matrix).is_zero() or AbHom(
            self.source, self.target, self.matrix - other.matrix, check=False
        ).is_zero()

    def __repr__(self) -> str:
        return f"AbHom({self.source.structure()} -> {self.target.structure()})"


class Subquotient:
    """``(span(Z) + R) / (span(B) + R)`` inside ``ambient = Z^n / R``.

    The generators of :attr:`group` are the columns of :attr:`basis`, a basis
    of ``span(Z) + R`` in ambient coordinates; :meth:`coordinates` expresses
    an element of that lattice in those generators.
    """

    def __init__(
        self,
        Z: IntMatrix,
        B: IntMatrix,
        ambient: FpAbGroup | None = None,
    ):
        n = Z.nrows
        if B.nrows != n:
            raise ValueError("Z and B live in different ambients")
        R = ambient.relations if ambient is not None else IntMatrix.zeros(n, 0)
        if R.nrows != n:
            raise ValueError("ambient does not match generator vectors")
        self.echelon = ColumnEchelon(hstack([Z, R], n), track_transform=False)
        self.basis = self.echelon.image_basis()
        rel_cols = []
        for col in hstack([B, R], n).columns_sparse():
            c = self.echelon.coordinates(col)
            if c is None:
                raise ContainmentFailure("span(B) is not contained in span(Z)")
            if any(c):
                rel_cols.append({k: v for k, v in enumerate(c) if v})
        k = self.echelon.rank
        self.group = FpAbGroup(k, IntMatrix.from_columns(k, rel_cols))

    def coordinates(self, vec: Sequence[int] | dict) -> list[int]:
        c = self.echelon.coordinates(vec)
        if c is None:
            raise ContainmentFailure("vector is outside the numerator lattice")
        return c


def subquotient(Z: IntMatrix, B: IntMatrix, ambient: FpAbGroup | None = None) -> FpAbGroup:
    """``span(Z) / span(B)`` as subgroups of ``ambient`` (free if omitted).

    >>> str(subquotient(IntMatrix([[1], [1]]), IntMatrix([[3], [3]])).structure())
    'Z/3'
    """
    return Subquotient(Z, B, ambient).group


def kernel(f: AbHom) -> tuple[FpAbGroup, AbHom]:
    """Kernel of ``f`` with its inclusion into the source."""
    S, T = f.source, f.target
    ns = S.n_generators
    big = hstack([f.matrix, T.relations], T.n_generators)
    K = ColumnEchelon(big).kernel()
    gens = K.select_rows(range(ns))
    sq = Subquotient(gens, S.relations, None)
    incl = AbHom(sq.group, S, sq.basis, check=False)
    return sq.group, incl


def image(f: AbHom) -> tuple[FpAbGroup, AbHom]:
    """Image of ``f`` with its inclusion into the target."""
    T = f.target
    sq = Subquotient(f.matrix, IntMatrix.zeros(T.n_generators, 0), T)
    return sq.group, AbHom(sq.group, T, sq.basis, check=False)


def cokernel(f: AbHom) -> tuple[FpAbGroup, AbHom]:
    """``target / image(f)`` with the projection."""
    T = f.target
    C = T.with_extra_relations(f.matrix)
    return C, AbHom(T, C, IntMatrix.identity(T.n_generators), check=False)


def direct_sum(groups: Sequence[FpAbGroup]) -> FpAbGroup:
    out = FpAbGroup.trivial()
    for G in groups:
        out = out.direct_sum(G)
    return out


@dataclass(frozen=True)
class MinimalPresentation:
    """``group`` is ``Z^r (+) Z/d_1 (+) ...`` on one generator per summand.

    ``to_min`` rewrites a vector in the original generators, ``from_min``
    sends each new generator to a representative in the original ones.
    """

    group: FpAbGroup
    to_min: IntMatrix
    from_min: IntMatrix


def minimal_presentation(G: FpAbGroup) -> MinimalPresentation:
    """An isomorphic presentation with as few generators as possible.

    Relators with a unit coefficient eliminate a generator each (sparse
    Schur steps, recording the substitution); the small remaining core is
    put in Smith form with both transforms.

    >>> P = minimal_presentation(FpAbGroup(3, IntMatrix([[1, 0], [2, 4], [0, 6]])))
    >>> str(P.group.structure()), P.group.n_generators
    ('Z (+) Z/2', 2)
    """
    n = G.n_generators
    cols = [dict(c) for c in G.relations.columns_sparse() if c]
    rowsets: dict[int, set] = {i: set() for i in range(n)}
    for k, c in enumerate(cols):
        for i in c:
            rowsets[i].add(k)
    alive = set(range(len(cols)))
    eliminated: list[tuple[int, dict]] = []

    progress = True
    while progress:
        progress = False
        for k in sorted(alive, key=lambda k: (len(cols[k]), k)):
            if k not in alive:
                continue
            c = cols[k]
            units = [i for i, v in c.items() if v in (1, -1)]
            if not units:
                continue
            i = min(units, key=lambda i: (len(rowsets[i]), i))
            a = c[i]
            # e_i = -a * sum_{j != i} c_j e_j
            expr = {j: -a * v for j, v in c.items() if j != i}
            eliminated.append((i, expr))
            alive.discard(k)
            for j in c:
                rowsets[j].discard(k)
            for k2 in list(rowsets[i]):
                c2 = cols[k2]
                f = c2.pop(i)
                rowsets[i].discard(k2)
                for j, v in expr.items():
                    nv = c2.get(j, 0) + f * v
                    if nv:
                        if j not in c2:
                            rowsets[j].add(k2)
                        c2[j] = nv
                    elif j in c2:
                        del c2[j]
                        rowsets[j].discard(k2)
                if not c2:
                    alive.discard(k2)
            progress = True

    gone = {i for i, _ in eliminated}
    survivors = [i for i in range(n) if i not in gone]
    spos = {i: t for t, i in enumerate(survivors)}
    # express every original generator in survivors, resolving substitutions backwards
    final: dict[int, dict] = {}
    for i, expr in reversed(eliminated):
        out: dict = {}
        for j, v in expr.items():
            for t, w in (final[j].items() if j in final else ((spos[j], 1),)):
                nv = out.get(t, 0) + v * w
                if nv:
                    out[t] = nv
                else:
                    out.pop(t, None)
        final[i] = out
    s = len(survivors)
    core_cols = [{spos[j]: v for j, v in cols[k].items()} for k in sorted(alive)]
    core = IntMatrix.from_columns(s, core_cols)
    dec, Ui = snf_with_inverse(core)
    diag = dec.diagonal + [0] * (s - min(core.shape))
    keep = [t for t in range(s) if diag[t] != 1]
    # coordinates in the survivor basis
    P_rows: list[dict] = [{} for _ in range(s)]
    for i in range(n):
        src = final[i] if i in final else {spos[i]: 1}
        for t, v in src.items():
            P_rows[t][i] = v
    P = IntMatrix.from_row_dicts(s, n, P_rows)
    to_min = dec.U.select_rows(keep) @ P
    lift = IntMatrix.from_row_dicts(n, s, [{} if i in gone else {spos[i]: 1} for i in range(n)])
    from_min = lift @ Ui.select_columns(keep)
    r = len(keep)
    rel_cols = [{a: diag[t]} for a, t in enumerate(keep) if diag[t] > 1]
    return MinimalPresentation(FpAbGroup(r, IntMatrix.from_columns(r, rel_cols)), to_min, from_min)
