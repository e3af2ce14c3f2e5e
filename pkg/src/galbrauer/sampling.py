"""Seeded random generators of validated modules, complexes and chain maps.

Modules are direct sums of standard blocks (trivial, sign, permutation
and norm-one lattices, small torsion modules) transported along a random
unimodular change of basis, so every sample is a genuine module without
rejection sampling. Equivariant endomorphisms are drawn from the centre
of the group ring, which also makes them commute with one another.
"""

from __future__ import annotations

import itertools
import random

from .abgroups import FpAbGroup
from .complexes import ChainMap, ModComplex
from .finite_group import FiniteGroup
from .galois_modules import GammaHom, GammaModule, direct_sum, norm_one_torus_module
from .intmat import IntMatrix

__all__ = [
    "random_matrix",
    "random_unimodular",
    "characters",
    "conjugacy_classes",
    "coset_module",
    "random_module",
    "central_endomorphism",
    "random_chain_map",
]


def random_matrix(rng: random.Random, nrows: int, ncols: int, lo: int = -9, hi: int = 9) -> IntMatrix:
    return IntMatrix([[rng.randint(lo, hi) for _ in range(ncols)] for _ in range(nrows)])


def random_unimodular(rng: random.Random, n: int, steps: int = 4) -> tuple[IntMatrix, IntMatrix]:
    """``(P, P^-1)`` built from ``steps`` elementary row operations with multipliers in ``{-1, 1}``."""
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    Q = [row[:] for row in P]
    if n < 2:
        s = rng.choice((1, -1))
        return IntMatrix([[s]] if n else []), IntMatrix([[s]] if n else [])
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.choice((1, -1))
        # P <- E P with E = I + c e_ij; P^-1 <- P^-1 E^-1
        P[i] = [a + c * b for a, b in zip(P[i], P[j])]
        for row in Q:
            row[j] -= c * row[i]
    return IntMatrix(P), IntMatrix(Q)


def characters(gamma: FiniteGroup) -> list[tuple[int, ...]]:
    """All homomorphisms ``gamma -> {+1, -1}``, the trivial one first."""
    n = gamma.order
    out = []
    for bits in itertools.product((1, -1), repeat=n):
        if bits[gamma.identity] != 1:
            continue
        if all(bits[gamma.mul(g, h)] == bits[g] * bits[h] for g in range(n) for h in range(n)):
            out.append(bits)
    return out


def conjugacy_classes(gamma: FiniteGroup) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for g in gamma.elements():
        if g in seen:
            continue
        cls = sorted({gamma.mul(gamma.mul(h, g), gamma.inverse(h)) for h in gamma.elements()})
        seen.update(cls)
        out.append(cls)
    return out


def _subgroups(gamma: FiniteGroup) -> list[frozenset[int]]:
    subs = {frozenset(gamma.generated_by([g, h])) for g in gamma.elements() for h in gamma.elements()}
    return sorted(subs, key=lambda s: (len(s), sorted(s)))


def coset_module(gamma: FiniteGroup, subgroup: frozenset[int]) -> GammaModule:
    """The permutation lattice ``Z[gamma / subgroup]`` on left cosets."""
    cosets: list[frozenset[int]] = []
    for g in gamma.elements():
        c = frozenset(gamma.mul(g, h) for h in subgroup)
        if c not in cosets:
            cosets.append(c)
    idx = {c: k for k, c in enumerate(cosets)}
    n = len(cosets)
    action = []
    for g in gamma.elements():
        cols = [{idx[frozenset(gamma.mul(g, x) for x in c)]: 1} for c in cosets]
        action.append(IntMatrix.from_columns(n, cols))
    return GammaModule(gamma, FpAbGroup.free(n), action, name=f"Z[G/H{len(subgroup)}]")


def _blocks(gamma: FiniteGroup, max_rank: int, torsion: bool) -> list[GammaModule]:
    out = []
    for chi in characters(gamma):
        out.append(GammaModule(gamma, FpAbGroup.free(1), [IntMatrix([[c]]) for c in chi], check=False))
        if torsion:
            for d in (2, 3, 4):
                out.append(GammaModule(gamma, FpAbGroup.cyclic(d), [IntMatrix([[c]]) for c in chi], check=False))
    for S in _subgroups(gamma):
        index = gamma.order // len(S)
        if 2 <= index <= max_rank:
            out.append(coset_module(gamma, S))
    if 2 <= gamma.order <= max_rank + 1:
        out.append(norm_one_torus_module(gamma))
    return out


def random_module(
    gamma: FiniteGroup,
    rng: random.Random,
    max_rank: int = 3,
    torsion: bool = True,
    conjugate: bool = True,
) -> GammaModule:
    """A random module on at most ``max_rank`` generators."""
    blocks = _blocks(gamma, max_rank, torsion)
    chosen: list[GammaModule] = []
    budget = rng.randint(1, max_rank)
    while budget > 0:
        fits = [B for B in blocks if B.n_generators <= budget]
        if not fits:
            break
        B = rng.choice(fits)
        chosen.append(B)
        budget -= B.n_generators
    M = direct_sum(*chosen)
    if not conjugate or M.n_generators < 2:
        return M
    P, Pinv = random_unimodular(rng, M.n_generators)
    carrier = FpAbGroup(M.n_generators, P @ M.carrier.relations)
    return GammaModule(gamma, carrier, [P @ A @ Pinv for A in M.action])


def central_endomorphism(M: GammaModule, rng: random.Random, lo: int = -2, hi: int = 2) -> GammaHom:
    """``sum_C c_C sum_{g in C} g`` for random coefficients on conjugacy classes."""
    n = M.n_generators
    total = IntMatrix.zeros(n, n)
    for cls in conjugacy_classes(M.gamma):
        c = rng.randint(lo, hi)
        if c:
            for g in cls:
                total = total + M.action[g].scale(c)
    return GammaHom(M, M, total, check=False)


def random_chain_map(
    gamma: FiniteGroup,
    rng: random.Random,
    max_rank: int = 2,
    torsion: bool = True,
) -> ChainMap:
    """A chain map between two-term complexes ``[M -> M]`` in degrees ``0, 1``.

    With central ``a, c, s, t`` the differentials are ``a t`` and ``c t``
    and the components ``a s`` and ``c s``; commutativity of central
    elements makes the square commute.
    """
    M = random_module(gamma, rng, max_rank, torsion)
    a, c, s, t = (central_endomorphism(M, rng) for _ in range(4))
    if rng.random() < 0.3:
        c = a
    C = ModComplex(gamma, {0: M, 1: M}, {0: a.compose(t)})
    D = ModComplex(gamma, {0: M, 1: M}, {0: c.compose(t)})
    return ChainMap(C, D, {0: a.compose(s), 1: c.compose(s)})
