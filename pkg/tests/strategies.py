"""Hypothesis strategies for groups, modules and chain maps.

Modules come from the seeded samplers in :mod:`galbrauer.sampling`;
hypothesis chooses the group and the seed, so failures shrink to a
reproducible ``(group, seed)`` pair.
"""

import random

from hypothesis import strategies as st

from galbrauer.finite_group import FiniteGroup, cyclic_group, klein_four, symmetric_group
from galbrauer.sampling import random_chain_map, random_module

CYCLIC = [cyclic_group(m) for m in range(2, 7)]
SMALL = [FiniteGroup([[0]], name="1"), cyclic_group(2), cyclic_group(3), cyclic_group(4), klein_four()]
ALL = SMALL + [symmetric_group(3)]

seeds = st.integers(0, 2**31 - 1)


@st.composite
def modules(draw, groups=ALL, max_rank=3, torsion=True):
    G = draw(st.sampled_from(groups))
    return random_module(G, random.Random(draw(seeds)), max_rank, torsion)


@st.composite
def module_pairs_over(draw, groups=SMALL, max_rank=2):
    G = draw(st.sampled_from(groups))
    rng = random.Random(draw(seeds))
    return random_module(G, rng, max_rank), random_module(G, rng, max_rank)


@st.composite
def chain_maps(draw, groups=SMALL, max_rank=2, torsion=True):
    G = draw(st.sampled_from(groups))
    return random_chain_map(G, random.Random(draw(seeds)), max_rank, torsion)
