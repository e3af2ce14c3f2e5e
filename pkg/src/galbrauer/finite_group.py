"""Explicit finite groups given by multiplication tables.

Elements are the indices ``0 .. order-1``. The group stands in for a
finite Galois quotient through which every action in a computation
factors, so only element arithmetic and a couple of predicates are
needed.
"""

from __future__ import annotations

import os
from typing import Sequence

__all__ = [
    "FiniteGroup",
    "GroupTableError",
    "NotAssociative",
    "NoIdentity",
    "NoInverse",
    "NotAPermutation",
    "OrderCapExceeded",
    "DEFAULT_ORDER_CAP",
    "order_cap",
    "cyclic_group",
    "klein_four",
    "symmetric_group",
    "direct_product",
]

DEFAULT_ORDER_CAP = 64


def order_cap() -> int:
    """Group-order cap, overridable through ``GALBRAUER_ORDER_CAP``."""
    raw = os.environ.get("GALBRAUER_ORDER_CAP")
    if raw is None:
        return DEFAULT_ORDER_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"GALBRAUER_ORDER_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError("GALBRAUER_ORDER_CAP must be positive")
    return cap


class GroupTableError(ValueError):
    """A proposed table or generating set does not define a group."""


class NotAssociative(GroupTableError):
    pass


class NoIdentity(GroupTableError):
    pass


class NoInverse(GroupTableError):
    pass


class NotAPermutation(GroupTableError):
    pass


class OrderCapExceeded(GroupTableError):
    pass


class FiniteGroup:
    """A finite group with a validated multiplication table.

    ``table[g][h]`` is the index of ``g*h``.

    >>> G = FiniteGroup.from_table([[0, 1], [1, 0]])
    >>> G.order, G.identity, G.inverse(1)
    (2, 0, 1)
    """

    __slots__ = ("table", "order", "identity", "_inverses", "_cyclic", "name")

    def __init__(self, table: Sequence[Sequence[int]], name: str | None = None):
        n = len(table)
        if n == 0:
            raise GroupTableError("empty table")
        rows = []
        for row in table:
            if len(row) != n:
                raise GroupTableError("table is not square")
            r = tuple(int(x) for x in row)
            if any(not 0 <= x < n for x in r):
                raise GroupTableError("table entry out of range")
            rows.append(r)
        self.table = tuple(rows)
        self.order = n
        self.name = name

        ident = None
        for e in range(n):
            if all(rows[e][g] == g and rows[g][e] == g for g in range(n)):
                ident = e
                break
        if ident is None:
            raise NoIdentity("no two-sided identity element")
        self.identity = ident

        inverses = []
        for g in range(n):
            for h in range(n):
                if rows[g][h] == ident and rows[h][g] == ident:
                    inverses.append(h)
                    break
            else:
                raise NoInverse(f"element {g} has no inverse")
        self._inverses = tuple(inverses)

        for g in range(n):
            rg = rows[g]
            for h in range(n):
                gh = rg[h]
                rgh = rows[gh]
                rh = rows[h]
                for k in range(n):
                    if rgh[k] != rg[rh[k]]:
                        raise NotAssociative(f"({g}*{h})*{k} != {g}*({h}*{k})")
        self._cyclic: tuple[bool, int | None] | None = None

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], name: str | None = None) -> "FiniteGroup":
        return cls(table, name=name)

    @classmethod
    def from_permutations(
        cls,
        gens: Sequence[Sequence[int]],
        cap: int | None = None,
        name: str | None = None,
    ) -> "FiniteGroup":
        """Closure of a set of permutations of ``{0..m-1}``.

        Element 0 is the identity; the remaining elements are numbered in
        breadth-first order of discovery, so the numbering is reproducible.

        >>> FiniteGroup.from_permutations([[1, 0, 3, 2], [2, 3, 0, 1]]).order
        4
        """
        cap = order_cap() if cap is None else cap
        perms = [tuple(int(x) for x in p) for p in gens]
        if not perms:
            return cls([[0]], name=name)
        m = len(perms[0])
        for p in perms:
            if len(p) != m or sorted(p) != list(range(m)):
                raise NotAPermutation(f"{list(p)} is not a permutation of 0..{m - 1}")
        ident = tuple(range(m))
        elements = [ident]
        index = {ident: 0}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for p in perms:
                    # x then p, composed as functions: (p o x)(i) = p[x[i]]
                    y = tuple(p[x[i]] for i in range(m))
                    if y not in index:
                        if len(elements) >= cap:
                            raise OrderCapExceeded(f"group order exceeds cap {cap}")
                        index[y] = len(elements)
                        elements.append(y)
                        nxt.append(y)
            frontier = nxt
        # g*h acts as "apply h then g"
        table = [
            [index[tuple(g[h[i]] for i in range(m))] for h in elements] for g in elements
        ]
        return cls(table, name=name)

    # -- arithmetic -------------------------------------------------------

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inverse(self, g: int) -> int:
        return self._inverses[g]

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inverse(g), -k
        x = self.identity
        for _ in range(k):
            x = self.table[x][g]
        return x

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.table[x][g]
            k += 1
        return k

    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[g][h] == t[h][g] for g in range(self.order) for h in range(g))

    def is_cyclic(self) -> tuple[bool, int | None]:
        """``(True, generator)`` if some element has order ``|G|``, else ``(False, None)``.

        The smallest such index is returned, so the choice is deterministic.
        """
        if self._cyclic is None:
            gen = next((g for g in range(self.order) if self.element_order(g) == self.order), None)
            self._cyclic = (gen is not None, gen)
        return self._cyclic

    def generated_by(self, gens: Sequence[int]) -> set[int]:
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    def __repr__(self) -> str:
        label = self.name or f"order {self.order}"
        return f"FiniteGroup({label})"

    def to_json(self) -> dict:
        return {"table": [list(r) for r in self.table]}


def cyclic_group(m: int) -> FiniteGroup:
    """``Z/m`` with element ``k`` the residue ``k``; 1 is a generator."""
    if m < 1:
        raise ValueError("order must be positive")
    return FiniteGroup([[(a + b) % m for b in range(m)] for a in range(m)], name=f"Z/{m}")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """Elements ``(g, h)`` are numbered ``g * |H| + h``."""
    n = H.order
    table = [
        [G.mul(a // n, b // n) * n + H.mul(a % n, b % n) for b in range(G.order * n)]
        for a in range(G.order * n)
    ]
    name = f"{G.name}x{H.name}" if G.name and H.name else None
    return FiniteGroup(table, name=name)


def klein_four() -> FiniteGroup:
    G = direct_product(cyclic_group(2), cyclic_group(2))
    G.name = "Klein four"
    return G


def symmetric_group(m: int) -> FiniteGroup:
    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        return FiniteGroup([[0]], name="S1")
    gens = [[1, 0] + list(range(2, m)), list(range(1, m)) + [0]]
    return FiniteGroup.from_permutations(gens, cap=max(order_cap(), 720), name=f"S{m}")
