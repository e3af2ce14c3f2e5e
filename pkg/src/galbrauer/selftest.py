"""A fixed, seeded battery of invariant checks with deterministic output."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .complexes import check_cone_les, hypercohomology_structure, is_quasi_isomorphism
from .corpus import corpus, corpus_names
from .finite_group import FiniteGroup, cyclic_group, klein_four, symmetric_group
from .galois_modules import regular_module
from .group_cohomology import cohomology_structure, cyclic_oracle, product_cyclic_oracle
from .homspace import C_bar_X, build_C_hat_X, build_center_complex, evaluate, restriction_map, torus_to_center_map
from .intmat import elementary_divisors, kernel_basis, rank, snf
from .sampling import random_chain_map, random_matrix, random_module

__all__ = ["CheckResult", "CHECKS", "run_selftest"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _snf(quick: bool) -> tuple[bool, str]:
    rng = random.Random(101)
    count = 25 if quick else 100
    for _ in range(count):
        A = random_matrix(rng, rng.randint(1, 8), rng.randint(1, 8))
        dec = snf(A)
        d = dec.diagonal
        if dec.U @ A @ dec.V != dec.D:
            return False, f"U A V != D for {A.to_list()}"
        if any(b % a for a, b in zip(d, d[1:]) if a):
            return False, f"divisibility fails for {d}"
        if [x for x in d if x] != elementary_divisors(A):
            return False, "sparse and dense invariants disagree"
        if rank(A) + kernel_basis(A).ncols != A.ncols:
            return False, "rank-nullity fails"
    return True, f"{count} random matrices"


def _oracle(quick: bool) -> tuple[bool, str]:
    rng = random.Random(202)
    count = 10 if quick else 20
    for i in range(count):
        G = cyclic_group(2 + i % 5)
        M = random_module(G, rng, 3)
        for n in range(4):
            a, b = cohomology_structure(G, M, n), cyclic_oracle(G, M, n).structure()
            if a != b:
                return False, f"Z/{G.order} degree {n}: bar {a}, oracle {b}"
    return True, f"{count} modules, degrees 0..3"


def _shapiro(quick: bool) -> tuple[bool, str]:
    groups = [cyclic_group(2), cyclic_group(3), klein_four()]
    if not quick:
        groups += [cyclic_group(4), symmetric_group(3)]
    for G in groups:
        Z = regular_module(G)
        for n in (1, 2, 3):
            s = cohomology_structure(G, Z, n)
            if not s.is_trivial:
                return False, f"H^{n}({G.name}, Z[G]) = {s}"
    return True, ", ".join(G.name for G in groups)


def _klein_product_oracle(quick: bool) -> tuple[bool, str]:
    G = klein_four()
    from .galois_modules import trivial_module
    from .abgroups import AbStructure

    Z = trivial_module(G, AbStructure(1))
    for n in range(4):
        a = cohomology_structure(G, Z, n)
        b = product_cyclic_oracle(G, Z, n, (2, 1)).structure()
        if a != b:
            return False, f"degree {n}: bar {a}, product oracle {b}"
    return True, "H^n(Klein four, Z), n = 0..3"


def _classical(quick: bool) -> tuple[bool, str]:
    names = [n for n in corpus_names() if not (quick and n in ("norm_one_torus:z5", "norm_one_torus:z6"))]
    for name in names:
        e = corpus(name)
        rep = evaluate(e.G, e.H, e.flags)
        for field, want in e.expected.items():
            got = getattr(rep, field)
            if got != want:
                return False, f"{name}: {field} = {got}, expected {want}"
    return True, f"{len(names)} corpus entries"


def _torsion_bound(quick: bool) -> tuple[bool, str]:
    rng = random.Random(303)
    groups = [cyclic_group(2), cyclic_group(3), cyclic_group(4), klein_four()]
    for i in range(8 if quick else 16):
        G = groups[i % 4]
        M = random_module(G, rng, 3)
        for n in (1, 2, 3):
            s = cohomology_structure(G, M, n)
            if s.free_rank or any(G.order % d for d in s.invariant_factors):
                return False, f"H^{n} = {s} over a group of order {G.order}"
    return True, "invariant factors divide |G|"


def _presentations(quick: bool) -> tuple[bool, str]:
    for name in ("pgl2_center_vs_torus", "sl2_center_vs_torus", "sl2_mod_torus"):
        e = corpus(name)
        CX, CZ, CB = build_C_hat_X(e.G, e.H), build_center_complex(e.G, e.H), C_bar_X(e.G, e.H)
        for n in range(4):
            s = {str(hypercohomology_structure(C, n)) for C in (CX, CZ, CB)}
            if len(s) != 1:
                return False, f"{name} degree {n}: {sorted(s)}"
        if not is_quasi_isomorphism(torus_to_center_map(e.G, e.H), range(4)):
            return False, f"{name}: comparison map is not a quasi-isomorphism"
    return True, "torus, centre and C_bar presentations agree in degrees 0..3"


def _triangle(quick: bool) -> tuple[bool, str]:
    names = ["pgl2_center_vs_torus", "sl2_center_vs_torus", "sl2_mod_torus", "pgl2", "norm_one_torus:z3"]
    for name in names:
        e = corpus(name)
        rep = check_cone_les(restriction_map(e.G, e.H), range(0, 3))
        if not rep.exact:
            return False, f"{name}: {[n.label for n in rep.failures]}"
    return True, f"{len(names)} corpus triangles, degrees 0..2"


def _random_les(quick: bool) -> tuple[bool, str]:
    rng = random.Random(404)
    groups = [FiniteGroup([[0]]), cyclic_group(2), cyclic_group(3), cyclic_group(4), klein_four()]
    count = 10 if quick else 25
    for i in range(count):
        f = random_chain_map(groups[i % 5], rng, 2)
        rep = check_cone_les(f, range(0, 3))
        if not rep.exact:
            return False, f"sample {i}: {[n.label for n in rep.failures]}"
    return True, f"{count} random chain maps"


def _flags(quick: bool) -> tuple[bool, str]:
    e = corpus("norm_one_torus:z2")
    rep = evaluate(e.G, e.H, [])
    if rep.Br_a_X_G is not None or rep.Pic_X is not None:
        return False, "a value was emitted without a justifying flag"
    rep = evaluate(e.G, e.H, ["H3_k_Gm_vanishes"])
    if rep.Br_a_X_G is None:
        return False, "H3_k_Gm_vanishes with Pic(G-bar) = 0 should give Br_a"
    e = corpus("pgl2")
    rep = evaluate(e.G, e.H, ["H3_k_Gm_vanishes"])
    if rep.Br_a_X_G is not None:
        return False, "Br_a emitted for PGL_2 without Pic(G-bar) = 0 or a point"
    return True, "conditional outputs withheld"


CHECKS: list[tuple[str, Callable[[bool], tuple[bool, str]]]] = [
    ("snf_reconstruction", _snf),
    ("oracle_equivalence", _oracle),
    ("shapiro_vanishing", _shapiro),
    ("klein_product_oracle", _klein_product_oracle),
    ("torsion_bound", _torsion_bound),
    ("classical_values", _classical),
    ("presentation_agreement", _presentations),
    ("triangle_les", _triangle),
    ("random_cone_les", _random_les),
    ("flag_discipline", _flags),
]


def run_selftest(quick: bool = False) -> list[CheckResult]:
    out = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn(quick)
        except Exception as exc:  # a crash is a failed check, reported with its type
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, ok, detail))
    return out
