"""Time bar-resolution cohomology against the periodic oracle, and cone LES checks.

    python scripts/benchmark.py [--samples 30] [--maps 50] [--seed 0]

Prints per-group timings and the number of disagreements or inexact nodes.
"""

import argparse
import random
import time
from collections import defaultdict
from dataclasses import dataclass

from galbrauer.complexes import check_cone_les
from galbrauer.finite_group import FiniteGroup, cyclic_group, klein_four
from galbrauer.group_cohomology import cohomology_structure, cyclic_oracle
from galbrauer.sampling import random_chain_map, random_module


@dataclass
class BenchConfig:
    samples: int = 30
    maps: int = 50
    max_rank: int = 3
    max_degree: int = 3
    seed: int = 0


def bench_oracle(cfg: BenchConfig) -> dict:
    rng = random.Random(cfg.seed)
    times, bad = defaultdict(float), 0
    for i in range(cfg.samples):
        G = cyclic_group(2 + i % 5)
        M = random_module(G, rng, cfg.max_rank)
        t0 = time.perf_counter()
        for n in range(cfg.max_degree + 1):
            bad += cohomology_structure(G, M, n) != cyclic_oracle(G, M, n).structure()
        times[f"Z/{G.order}"] += time.perf_counter() - t0
    return {"times": dict(times), "disagreements": bad}


def bench_les(cfg: BenchConfig) -> dict:
    rng = random.Random(cfg.seed + 1)
    groups = [FiniteGroup([[0]], name="1"), cyclic_group(2), cyclic_group(3), cyclic_group(4), klein_four()]
    times, bad = defaultdict(float), 0
    for i in range(cfg.maps):
        G = groups[i % len(groups)]
        f = random_chain_map(G, rng, 2)
        t0 = time.perf_counter()
        bad += len(check_cone_les(f, range(-1, cfg.max_degree)).failures())
        times[G.name] += time.perf_counter() - t0
    return {"times": dict(times), "inexact_nodes": bad}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=30)
    ap.add_argument("--maps", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    cfg = BenchConfig(samples=a.samples, maps=a.maps, seed=a.seed)
    o = bench_oracle(cfg)
    print(f"oracle equivalence: {cfg.samples} modules, {o['disagreements']} disagreements")
    for k, t in o["times"].items():
        print(f"  {k:6} {t:7.2f}s")
    les = bench_les(cfg)
    print(f"cone LES: {cfg.maps} maps, {les['inexact_nodes']} inexact nodes")
    for k, t in les["times"].items():
        print(f"  {k:6} {t:7.2f}s")


if __name__ == "__main__":
    main()
