"""Exact integer matrices and the normal forms built on them.

Everything here works over Python's arbitrary-precision ``int``; there is
no floating point anywhere. Matrices are stored sparsely (one dict per
row) because the bar-resolution differentials are large but thin.

Two engines do the heavy lifting:

* :func:`elementary_divisors` -- sparse Schur elimination on unit pivots,
  followed by a dense diagonalisation of whatever non-unit core remains.
  It returns the Smith diagonal without transforms, which is all that is
  needed to read off the structure of a cokernel.
* :class:`ColumnEchelon` -- sparse unimodular column reduction with the
  transform tracked. It yields kernels (saturated), image bases and
  integer linear solves.

:func:`snf` and :func:`hnf` are the dense, transform-carrying normal forms
for moderate sizes.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator, Sequence

__all__ = [
    "IntMatrix",
    "SnfDecomposition",
    "ColumnEchelon",
    "snf",
    "snf_with_inverse",
    "hnf",
    "kernel_basis",
    "solve",
    "elementary_divisors",
    "rank",
    "hstack",
    "vstack",
    "block_diag",
    "xgcd",
]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(x, y, g)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


class IntMatrix:
    """An immutable ``nrows x ncols`` integer matrix with sparse row storage.

    >>> A = IntMatrix([[2, 4], [6, 8]])
    >>> A.shape, A[1, 0]
    ((2, 2), 6)
    >>> (A @ IntMatrix.identity(2)) == A
    True
    """

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, rows: Sequence[Sequence[int]] = (), ncols: int | None = None):
        rows = [list(r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        data = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError(f"ragged row: expected {ncols} entries, got {len(r)}")
            data.append({j: int(v) for j, v in enumerate(r) if v})
        self.nrows = len(rows)
        self.ncols = ncols
        self._rows = tuple(data)

    @classmethod
    def _wrap(cls, nrows: int, ncols: int, rows: Sequence[dict]) -> "IntMatrix":
        obj = cls.__new__(cls)
        obj.nrows = nrows
        obj.ncols = ncols
        obj._rows = tuple(rows)
        return obj

    @classmethod
    def from_row_dicts(cls, nrows: int, ncols: int, rows: Sequence[dict]) -> "IntMatrix":
        if len(rows) != nrows:
            raise ValueError("row count mismatch")
        clean = []
        for r in rows:
            d = {}
            for j, v in r.items():
                if not 0 <= j < ncols:
                    raise IndexError(f"column {j} out of range for {ncols} columns")
                if v:
                    d[j] = int(v)
            clean.append(d)
        return cls._wrap(nrows, ncols, clean)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[dict | Sequence[int]]) -> "IntMatrix":
        """Build from column vectors, each a dense sequence or a ``{row: value}`` dict."""
        rows: list[dict] = [{} for _ in range(nrows)]
        for j, col in enumerate(columns):
            items = col.items() if isinstance(col, dict) else enumerate(col)
            for i, v in items:
                if v:
                    rows[i][j] = int(v)
        return cls._wrap(nrows, len(columns), rows)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls._wrap(nrows, ncols, [{} for _ in range(nrows)])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls._wrap(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def diagonal(cls, entries: Sequence[int], nrows: int | None = None, ncols: int | None = None):
        nrows = len(entries) if nrows is None else nrows
        ncols = len(entries) if ncols is None else ncols
        rows: list[dict] = [{} for _ in range(nrows)]
        for i, v in enumerate(entries):
            if v:
                rows[i][i] = int(v)
        return cls._wrap(nrows, ncols, rows)

    # -- access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(f"entry {key} outside {self.shape}")
        return self._rows[i].get(j, 0)

    def row_items(self, i: int) -> Iterable[tuple[int, int]]:
        return self._rows[i].items()

    def row(self, i: int) -> list[int]:
        r = self._rows[i]
        return [r.get(j, 0) for j in range(self.ncols)]

    def col(self, j: int) -> list[int]:
        return [r.get(j, 0) for r in self._rows]

    def columns_sparse(self) -> list[dict]:
        cols: list[dict] = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def to_list(self) -> list[list[int]]:
        return [self.row(i) for i in range(self.nrows)]

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows)

    def is_zero(self) -> bool:
        return not any(self._rows)

    def max_abs(self) -> int:
        return max((abs(v) for r in self._rows for v in r.values()), default=0)

    # -- arithmetic -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, tuple(tuple(sorted(r.items())) for r in self._rows)))

    def __repr__(self) -> str:
        if self.nrows * self.ncols <= 64:
            return f"IntMatrix({self.to_list()})"
        return f"IntMatrix(<{self.nrows}x{self.ncols}, nnz={self.nnz()}>)"

    def transpose(self) -> "IntMatrix":
        return IntMatrix._wrap(self.ncols, self.nrows, self.columns_sparse())

    @property
    def T(self) -> "IntMatrix":
        return self.transpose()

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        brows = other._rows
        out = []
        for r in self._rows:
            acc: dict[int, int] = {}
            for k, a in r.items():
                for j, b in brows[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            out.append({j: v for j, v in acc.items() if v})
        return IntMatrix._wrap(self.nrows, other.ncols, out)

    def apply(self, vec: Sequence[int]) -> list[int]:
        """Matrix-vector product with a dense vector."""
        if len(vec) != self.ncols:
            raise ValueError(f"vector of length {len(vec)} for {self.ncols} columns")
        return [sum(v * vec[j] for j, v in r.items()) for r in self._rows]

    def apply_sparse(self, vec: dict) -> dict:
        cols = self.columns_sparse()
        acc: dict[int, int] = {}
        for j, x in vec.items():
            for i, v in cols[j].items():
                acc[i] = acc.get(i, 0) + v * x
        return {i: v for i, v in acc.items() if v}

    def _combine(self, other: "IntMatrix", sign: int) -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        out = []
        for a, b in zip(self._rows, other._rows):
            d = dict(a)
            for j, v in b.items():
                s = d.get(j, 0) + sign * v
                if s:
                    d[j] = s
                else:
                    d.pop(j, None)
            out.append(d)
        return IntMatrix._wrap(self.nrows, self.ncols, out)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self._combine(other, -1)

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, c: int) -> "IntMatrix":
        if c == 0:
            return IntMatrix.zeros(self.nrows, self.ncols)
        return IntMatrix._wrap(
            self.nrows, self.ncols, [{j: c * v for j, v in r.items()} for r in self._rows]
        )

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        pos = {c: k for k, c in enumerate(cols)}
        out = []
        for i in rows:
            out.append({pos[j]: v for j, v in self._rows[i].items() if j in pos})
        return IntMatrix._wrap(len(rows), len(cols), out)

    def select_columns(self, cols: Sequence[int]) -> "IntMatrix":
        return self.submatrix(range(self.nrows), cols)

    def select_rows(self, rows: Sequence[int]) -> "IntMatrix":
        return IntMatrix._wrap(len(rows), self.ncols, [dict(self._rows[i]) for i in rows])

    def det(self) -> int:
        """Exact determinant (fraction-free Bareiss elimination)."""
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return 1
        M = self.to_list()
        sign, prev = 1, 1
        for k in range(n - 1):
            if M[k][k] == 0:
                for i in range(k + 1, n):
                    if M[i][k]:
                        M[k], M[i] = M[i], M[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            prev = M[k][k]
        return sign * M[n - 1][n - 1]


def hstack(blocks: Sequence[IntMatrix], nrows: int | None = None) -> IntMatrix:
    if not blocks:
        if nrows is None:
            raise ValueError("empty hstack needs nrows")
        return IntMatrix.zeros(nrows, 0)
    n = blocks[0].nrows
    rows: list[dict] = [{} for _ in range(n)]
    off = 0
    for B in blocks:
        if B.nrows != n:
            raise ValueError("hstack row mismatch")
        for i, r in enumerate(B._rows):
            for j, v in r.items():
                rows[i][off + j] = v
        off += B.ncols
    return IntMatrix._wrap(n, off, rows)


def vstack(blocks: Sequence[IntMatrix], ncols: int | None = None) -> IntMatrix:
    if not blocks:
        if ncols is None:
            raise ValueError("empty vstack needs ncols")
        return IntMatrix.zeros(0, ncols)
    n = blocks[0].ncols
    rows: list[dict] = []
    for B in blocks:
        if B.ncols != n:
            raise ValueError("vstack column mismatch")
        rows.extend(dict(r) for r in B._rows)
    return IntMatrix._wrap(len(rows), n, rows)


def block_diag(blocks: Sequence[IntMatrix]) -> IntMatrix:
    rows: list[dict] = []
    ncols = sum(B.ncols for B in blocks)
    off = 0
    for B in blocks:
        for r in B._rows:
            rows.append({off + j: v for j, v in r.items()})
        off += B.ncols
    return IntMatrix._wrap(len(rows), ncols, rows)


# ---------------------------------------------------------------------------
# Smith normal form (dense, with transforms)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SnfDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.shape))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _identity_rows(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def snf(A: IntMatrix) -> SnfDecomposition:
    """Smith normal form with unimodular transforms.

    Pivoting takes the smallest nonzero absolute value in the remaining
    block, which keeps coefficient growth modest; ``D`` is canonical
    regardless of the pivot order.

    >>> snf(IntMatrix([[2, 4], [6, 8]])).diagonal
    [2, 4]
    """
    return snf_with_inverse(A)[0]


def snf_with_inverse(A: IntMatrix) -> tuple[SnfDecomposition, IntMatrix]:
    """:func:`snf` together with ``U^-1``, maintained alongside ``U``."""
    m, n = A.shape
    D = A.to_list()
    U = _identity_rows(m)
    Ui = _identity_rows(m)
    V = _identity_rows(n)

    def swap_rows(i, k):
        D[i], D[k] = D[k], D[i]
        U[i], U[k] = U[k], U[i]
        for row in Ui:
            row[i], row[k] = row[k], row[i]

    def swap_cols(j, k):
        for row in D:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):  # row_dst += q * row_src
        Ds, Dd = D[src], D[dst]
        for c in range(n):
            if Ds[c]:
                Dd[c] += q * Ds[c]
        Us, Ud = U[src], U[dst]
        for c in range(m):
            if Us[c]:
                Ud[c] += q * Us[c]
        for row in Ui:  # U^-1 <- U^-1 (I - q e_dst,src)
            if row[dst]:
                row[src] -= q * row[dst]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in D:
            if row[src]:
                row[dst] += q * row[src]
        for row in V:
            if row[src]:
                row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            Di = D[i]
            for j in range(t, n):
                v = Di[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // p
                    add_row(i, t, -q)
                    if D[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // p
                    add_col(j, t, -q)
                    if D[t][j]:
                        dirty = True
            if dirty:
                # a remainder smaller than the pivot exists; move it into place
                best = None
                for i in range(t, m):
                    if D[i][t] and (best is None or abs(D[i][t]) < best[0]):
                        best = (abs(D[i][t]), i, t)
                for j in range(t, n):
                    if D[t][j] and (best is None or abs(D[t][j]) < best[0]):
                        best = (abs(D[t][j]), t, j)
                _, i, j = best
                if i != t:
                    swap_rows(i, t)
                if j != t:
                    swap_cols(j, t)
                continue
            # pivot must divide the rest of the block
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-v for v in D[t]]
            U[t] = [-v for v in U[t]]
            for row in Ui:
                row[t] = -row[t]
        t += 1
    return SnfDecomposition(IntMatrix(U, m), IntMatrix(D, n), IntMatrix(V, n)), IntMatrix(Ui, m)


# ---------------------------------------------------------------------------
# Elementary divisors via sparse unit-pivot elimination
# ---------------------------------------------------------------------------


def _invariant_chain(diag: Iterable[int]) -> list[int]:
    """Turn an arbitrary diagonal into the divisibility chain of the same cokernel."""
    vals = sorted(abs(d) for d in diag if d)
    ones = 0
    rest = []
    for v in vals:
        if v == 1:
            ones += 1
        else:
            rest.append(v)
    k = len(rest)
    for i in range(k):
        for j in range(i + 1, k):
            a, b = rest[i], rest[j]
            if b % a:
                g = gcd(a, b)
                rest[i], rest[j] = g, a // g * b
    rest.sort()
    # gcd/lcm passes can create new units
    return [1] * ones + rest


def _dense_diagonal(M: list[list[int]]) -> list[int]:
    """Diagonalise a dense matrix by unimodular moves, without transforms."""
    m = len(M)
    n = len(M[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            Mi = M[i]
            for j in range(t, n):
                v = Mi[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        M[i], M[t] = M[t], M[i]
        if j != t:
            for row in M:
                row[j], row[t] = row[t], row[j]
        while True:
            p = M[t][t]
            dirty = False
            Mt = M[t]
            for i in range(t + 1, m):
                Mi = M[i]
                if Mi[t]:
                    q = Mi[t] // p
                    for c in range(t, n):
                        if Mt[c]:
                            Mi[c] -= q * Mt[c]
                    if Mi[t]:
                        dirty = True
            for j in range(t + 1, n):
                if Mt[j]:
                    q = Mt[j] // p
                    for row in M:
                        if row[t]:
                            row[j] -= q * row[t]
                    if Mt[j]:
                        dirty = True
            if not dirty:
                break
            best = None
            for i in range(t, m):
                if M[i][t] and (best is None or abs(M[i][t]) < best[0]):
                    best = (abs(M[i][t]), i, t)
            for j in range(t, n):
                if M[t][j] and (best is None or abs(M[t][j]) < best[0]):
                    best = (abs(M[t][j]), t, j)
            _, i, j = best
            M[i], M[t] = M[t], M[i]
            if j != t:
                for row in M:
                    row[j], row[t] = row[t], row[j]
        diag.append(abs(M[t][t]))
        t += 1
    return diag


def elementary_divisors(A: IntMatrix) -> list[int]:
    """Nonzero Smith invariants of ``A`` in divisibility order (units included).

    Agrees with ``snf(A).diagonal`` minus trailing zeros, but never forms the
    transforms and exploits sparsity.

    >>> elementary_divisors(IntMatrix([[2, 0], [0, 3]]))
    [1, 6]
    """
    rows = [dict(r) for r in A._rows]
    colsets: dict[int, set] = {}
    for i, r in enumerate(rows):
        for j in r:
            colsets.setdefault(j, set()).add(i)
    alive = set(i for i, r in enumerate(rows) if r)
    units = 0
    heap = [(len(rows[i]), i) for i in alive]
    heapq.heapify(heap)

    while heap:
        ln, i = heapq.heappop(heap)
        if i not in alive or ln != len(rows[i]):
            continue
        r = rows[i]
        best_j, best_c = None, None
        for j, v in r.items():
            if v == 1 or v == -1:
                c = len(colsets[j])
                if best_c is None or c < best_c:
                    best_j, best_c = j, c
                    if c == 1:
                        break
        if best_j is None:
            continue  # no unit here; the row waits for the dense core
        j = best_j
        a = r[j]
        alive.discard(i)
        rows[i] = {}
        for jj in r:
            colsets[jj].discard(i)
        others = colsets.pop(j)
        for k in others:
            rk = rows[k]
            f = rk[j] * a  # a is its own inverse
            for jj, v in r.items():
                nv = rk.get(jj, 0) - f * v
                if nv:
                    if jj not in rk:
                        colsets[jj].add(k)
                    rk[jj] = nv
                else:
                    if jj in rk:
                        del rk[jj]
                        if jj != j:
                            colsets[jj].discard(k)
            if rk:
                heapq.heappush(heap, (len(rk), k))
            else:
                alive.discard(k)
        units += 1

    core_rows = [i for i in sorted(alive) if rows[i]]
    core_cols = sorted({j for i in core_rows for j in rows[i]})
    if not core_rows:
        return [1] * units
    pos = {j: k for k, j in enumerate(core_cols)}
    M = [[0] * len(core_cols) for _ in core_rows]
    for a_i, i in enumerate(core_rows):
        for j, v in rows[i].items():
            M[a_i][pos[j]] = v
    return _invariant_chain([1] * units + _dense_diagonal(M))


def rank(A: IntMatrix) -> int:
    return len(elementary_divisors(A))


# ---------------------------------------------------------------------------
# Column echelon: kernels, images, solving
# ---------------------------------------------------------------------------


class ColumnEchelon:
    """Unimodular column reduction ``A @ V = [E | 0]`` computed sparsely.

    ``E`` has one pivot per column: pivot ``k`` sits in row ``pivot_rows[k]``
    and columns ``k+1, ...`` vanish on that row, which makes ``E``
    triangular with respect to the pivot order. The trailing zero columns
    of ``A @ V`` correspond to a basis of the integer kernel of ``A``.
    """

    def __init__(self, A: IntMatrix, track_transform: bool = True):
        self.nrows, self.ncols = A.shape
        cols = A.columns_sparse()
        V = [{j: 1} for j in range(self.ncols)] if track_transform else None
        rowsets: dict[int, set] = {}
        for j, c in enumerate(cols):
            for i in c:
                rowsets.setdefault(i, set()).add(j)
        active = set(range(self.ncols))
        heap = [(len(s), i) for i, s in rowsets.items()]
        heapq.heapify(heap)
        pivot_rows: list[int] = []
        pivot_cols: list[dict] = []
        pivot_V: list[dict] = []

        def axpy(dst: int, src: int, q: int) -> None:
            # cols[dst] += q * cols[src], tracked in V
            cd, cs = cols[dst], cols[src]
            for i, v in cs.items():
                nv = cd.get(i, 0) + q * v
                if nv:
                    if i not in cd:
                        rowsets[i].add(dst)
                    cd[i] = nv
                elif i in cd:
                    del cd[i]
                    rowsets[i].discard(dst)
            if V is not None:
                vd = V[dst]
                for i, v in V[src].items():
                    nv = vd.get(i, 0) + q * v
                    if nv:
                        vd[i] = nv
                    else:
                        vd.pop(i, None)

        while heap:
            ln, r = heapq.heappop(heap)
            s = rowsets.get(r)
            if not s or ln != len(s):
                if s:
                    heapq.heappush(heap, (len(s), r))
                continue
            # reduce row r to a single active nonzero by Euclid on columns
            while len(s) > 1:
                p = min(s, key=lambda j: (abs(cols[j][r]), len(cols[j]), j))
                pv = cols[p][r]
                for j in sorted(s):
                    if j == p:
                        continue
                    q = cols[j][r] // pv
                    axpy(j, p, -q)
                s = rowsets[r]
            (p,) = s
            if cols[p][r] < 0:
                cols[p] = {i: -v for i, v in cols[p].items()}
                if V is not None:
                    V[p] = {i: -v for i, v in V[p].items()}
            active.discard(p)
            for i in cols[p]:
                rowsets[i].discard(p)
                if i != r and rowsets[i]:
                    heapq.heappush(heap, (len(rowsets[i]), i))
            pivot_rows.append(r)
            pivot_cols.append(cols[p])
            if V is not None:
                pivot_V.append(V[p])

        self.pivot_rows = pivot_rows
        self.pivot_cols = pivot_cols
        self._pivot_V = pivot_V
        self._kernel_V = [V[j] for j in sorted(active)] if V is not None else None
        self.rank = len(pivot_rows)

    def kernel(self) -> IntMatrix:
        if self._kernel_V is None:
            raise ValueError("transform was not tracked")
        return IntMatrix.from_columns(self.ncols, self._kernel_V)

    def image_basis(self) -> IntMatrix:
        return IntMatrix.from_columns(self.nrows, self.pivot_cols)

    def coordinates(self, b: dict | Sequence[int]) -> list[int] | None:
        """Coefficients ``c`` with ``E @ c == b``, or ``None`` if ``b`` is outside the span."""
        rem = dict(b) if isinstance(b, dict) else {i: v for i, v in enumerate(b) if v}
        coeffs = []
        for r, col in zip(self.pivot_rows, self.pivot_cols):
            v = rem.get(r, 0)
            if v == 0:
                coeffs.append(0)
                continue
            q, m = divmod(v, col[r])
            if m:
                return None
            coeffs.append(q)
            for i, x in col.items():
                nv = rem.get(i, 0) - q * x
                if nv:
                    rem[i] = nv
                else:
                    rem.pop(i, None)
        if rem:
            return None
        return coeffs

    def solve(self, b: Sequence[int]) -> list[int] | None:
        c = self.coordinates(b)
        if c is None:
            return None
        if self._kernel_V is None:
            raise ValueError("transform was not tracked")
        x = [0] * self.ncols
        for ck, vk in zip(c, self._pivot_V):
            if ck:
                for i, v in vk.items():
                    x[i] += ck * v
        return x


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """Columns form a basis of ``{x : A x = 0}``; the span is saturated.

    >>> kernel_basis(IntMatrix([[2, -2]])).to_list()
    [[1], [1]]
    """
    return ColumnEchelon(A).kernel()


def solve(A: IntMatrix, b: Sequence[int]) -> list[int] | None:
    """Some integer ``x`` with ``A x == b``, or ``None`` when none exists.

    >>> solve(IntMatrix([[2]]), [3]) is None
    True
    """
    if len(b) != A.nrows:
        raise ValueError(f"right-hand side of length {len(b)} for {A.nrows} rows")
    return ColumnEchelon(A).solve(b)


def hnf(A: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Column-style Hermite normal form ``H = A @ U``.

    Pivots are positive, each pivot row is zero to the right of its pivot,
    and entries to the left of a pivot are reduced into ``[0, pivot)``.
    Zero columns are moved to the right. ``U`` is unimodular and the column
    span of ``H`` equals that of ``A``.
    """
    m, n = A.shape
    H = A.to_list()
    U = _identity_rows(n)

    def col_op(dst, src, q):
        for row in H:
            if row[src]:
                row[dst] += q * row[src]
        for row in U:
            if row[src]:
                row[dst] += q * row[src]

    def col_swap(a, b):
        for row in H:
            row[a], row[b] = row[b], row[a]
        for row in U:
            row[a], row[b] = row[b], row[a]

    def col_neg(a):
        for row in H:
            row[a] = -row[a]
        for row in U:
            row[a] = -row[a]

    k = 0  # next pivot column
    pivots = []
    for r in range(m):
        if k >= n:
            break
        while True:
            nz = [j for j in range(k, n) if H[r][j]]
            if not nz:
                break
            p = min(nz, key=lambda j: abs(H[r][j]))
            for j in nz:
                if j != p:
                    col_op(j, p, -(H[r][j] // H[r][p]))
            if len([j for j in range(k, n) if H[r][j]]) == 1:
                break
        nz = [j for j in range(k, n) if H[r][j]]
        if not nz:
            continue
        p = nz[0]
        if p != k:
            col_swap(p, k)
        if H[r][k] < 0:
            col_neg(k)
        for j in range(k):
            col_op(j, k, -(H[r][j] // H[r][k]))
        pivots.append((r, k))
        k += 1
    return IntMatrix(H, n), IntMatrix(U, n)


def iter_nonzero(A: IntMatrix) -> Iterator[tuple[int, int, int]]:
    for i, r in enumerate(A._rows):
        for j, v in sorted(r.items()):
            yield i, j, v
