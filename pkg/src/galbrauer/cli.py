"""Command-line front end: ``galbrauer {snf,groupcoh,hypercoh,brauer,run,selftest,corpus}``.

Exit status: 0 on success, 1 on malformed input or validation failure,
2 when a requested value cannot be given unconditionally.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from .complexes import check_cone_les, hypercohomology_structure
from .corpus import UnknownCorpusName, corpus, corpus_names
from .finite_group import DEFAULT_ORDER_CAP, order_cap
from .group_cohomology import NotCyclic, cohomology_structure, cyclic_oracle
from .homspace import InconsistentFlags, NsData, evaluate, ns_sequence_report
from .intmat import hnf, kernel_basis, snf
from .selftest import run_selftest
from .taskio import (
    VERSION,
    TaskValidationError,
    decode_chain_map,
    decode_complex,
    decode_group,
    decode_group_data,
    decode_matrix,
    decode_module,
    encode_group,
    encode_group_data,
    encode_int,
    encode_matrix,
    encode_stabilizer,
    validate_task,
)

EXIT_OK, EXIT_INVALID, EXIT_REFUSED = 0, 1, 2


class Refusal(Exception):
    """Carries a partial result that is printed before exiting with status 2."""

    def __init__(self, message: str, result: dict, text: str):
        super().__init__(message)
        self.result = result
        self.text = text


def _degrees(payload: dict, default: list[int], degree_max: int, path: str) -> list[int]:
    if "degrees" in payload:
        degs, where = sorted(set(payload["degrees"])), path + "/degrees"
    elif "degree" in payload:
        degs, where = [payload["degree"]], path + "/degree"
    else:
        degs, where = default, path
    too_high = [n for n in degs if n > degree_max]
    if too_high:
        raise TaskValidationError(f"degree {too_high[0]} exceeds --degree-max {degree_max}", where)
    return degs


# ---------------------------------------------------------------------------
# Task handlers: each returns (json result, text report)
# ---------------------------------------------------------------------------


def task_snf(payload: dict, opts) -> tuple[dict, str]:
    A = decode_matrix(payload["matrix"], path="/payload/matrix")
    dec = snf(A)
    H, _ = hnf(A)
    K = kernel_basis(A)
    result = {
        "diagonal": [encode_int(x) for x in dec.diagonal],
        "rank": dec.rank,
        "U": encode_matrix(dec.U),
        "D": encode_matrix(dec.D),
        "V": encode_matrix(dec.V),
        "hnf": encode_matrix(H),
        "kernel_basis": encode_matrix(K),
    }
    text = f"shape {A.nrows}x{A.ncols}, rank {dec.rank}\ninvariants: {' '.join(map(str, dec.diagonal)) or '(none)'}"
    return result, text


def task_groupcoh(payload: dict, opts) -> tuple[dict, str]:
    gamma = decode_group(payload["group"], opts.group_order_cap, "/payload/group")
    M = decode_module(gamma, payload["module"], "/payload/module")
    degs = _degrees(payload, list(range(opts.degree_max + 1)), opts.degree_max, "/payload")
    rows, lines = [], []
    for n in degs:
        s = cohomology_structure(gamma, M, n)
        row: dict[str, Any] = {"degree": n, **s.to_json()}
        line = f"H^{n} = {s}"
        if payload.get("oracle"):
            try:
                o = cyclic_oracle(gamma, M, n).structure()
            except NotCyclic as exc:
                raise TaskValidationError(str(exc), "/payload/oracle") from exc
            row["oracle_agrees"] = o == s
            line += f"    oracle: {o}"
        rows.append(row)
        lines.append(line)
    return {"group_order": gamma.order, "cohomology": rows}, "\n".join(lines)


def task_hypercoh(payload: dict, opts) -> tuple[dict, str]:
    gamma = decode_group(payload["group"], opts.group_order_cap, "/payload/group")
    degs = _degrees(payload, list(range(opts.degree_max + 1)), opts.degree_max, "/payload")
    if "chain_map" in payload:
        f = decode_chain_map(gamma, payload["chain_map"], "/payload/chain_map")
        rep = check_cone_les(f, degs)
        return {"les": rep.to_json()}, f"long exact sequence of the cone, degrees {degs}\n{rep}"
    C = decode_complex(gamma, payload["complex"], "/payload/complex")
    rows, lines = [], []
    for n in degs:
        s = hypercohomology_structure(C, n)
        rows.append({"degree": n, **s.to_json()})
        lines.append(f"H^{n} = {s}")
    return {"hypercohomology": rows}, "\n".join(lines)


def _brauer_inputs(payload: dict, opts):
    flags = list(payload.get("flags", []))
    if "corpus" in payload:
        try:
            e = corpus(payload["corpus"])
        except UnknownCorpusName as exc:
            raise TaskValidationError(exc.args[0], "/payload/corpus") from exc
        if "flags" not in payload:
            flags = list(e.flags)
        ns = None
        if "ns" in payload:
            ns = NsData(decode_module(e.G.gamma, payload["ns"], "/payload/ns"))
        return e.G, e.H, ns, flags
    G, H, ns = decode_group_data(payload, opts.group_order_cap)
    return G, H, ns, flags


def task_brauer(payload: dict, opts) -> tuple[dict, str]:
    G, H, ns, flags = _brauer_inputs(payload, opts)
    allow = payload.get("allow_conditional", False)
    if ns is not None and not ns.NS.carrier.structure().is_trivial:
        rep = ns_sequence_report(G, H, ns, flags)
        result = {"kind": "ns_sequence", **rep.to_json()}
        text = "Neron-Severi sequence (Pic(X), Br_a(X,G) unknown):\n  " + rep.sequence()
        text += "".join(f"\ncaveat: {c}" for c in rep.caveats)
        if not allow:
            raise Refusal("G is not linear: only the bounding sequence is available", result, text)
        return result, text
    try:
        rep = evaluate(G, H, flags, ns, payload.get("presentation", "torus"))
    except InconsistentFlags as exc:
        raise TaskValidationError(str(exc), "/payload/flags") from exc
    result = {"kind": "homspace", **rep.to_json()}
    text = rep.render()
    if rep.conditional and not allow:
        missing = [k for k in ("Pic_X", "Br_a_X_G") if getattr(rep, k) is None]
        raise Refusal(f"no unconditional value for {', '.join(missing)}", result, text)
    return result, text


def task_selftest(payload: dict, opts) -> tuple[dict, str]:
    results = run_selftest(quick=payload.get("quick", False))
    ok = all(r.passed for r in results)
    lines = [f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}" for r in results]
    return {"passed": ok, "checks": [r.to_json() for r in results]}, "\n".join(lines)


HANDLERS = {
    "snf": task_snf,
    "groupcoh": task_groupcoh,
    "hypercoh": task_hypercoh,
    "brauer": task_brauer,
    "selftest": task_selftest,
}


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------


def _emit(opts, task: str, status: str, result: dict | None, text: str, out=None) -> None:
    out = out or sys.stdout
    if opts.json:
        doc = {"version": VERSION, "task": task, "status": status, "result": result}
        out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        out.write(text + "\n")


def load_task(path: str, strict: bool = True) -> tuple[dict, list[str]]:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise TaskValidationError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise TaskValidationError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    warnings = validate_task(doc, strict)
    return doc, warnings


def run_document(doc: dict, opts, expected_task: str | None = None) -> int:
    task = doc["task"]
    if expected_task is not None and task != expected_task:
        raise TaskValidationError(f"file holds a {task!r} task, not {expected_task!r}", "/task")
    payload = doc.get("payload", {})
    try:
        result, text = HANDLERS[task](payload, opts)
    except TaskValidationError:
        raise
    except Refusal as exc:
        _emit(opts, task, "refused", exc.result, exc.text + f"\nrefused: {exc}")
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except ValueError as exc:
        raise TaskValidationError(f"{type(exc).__name__}: {exc}", "/payload") from exc
    status = "ok"
    if task == "selftest" and not result["passed"]:
        status = "failed"
    _emit(opts, task, status, result, text)
    return EXIT_OK if status == "ok" else EXIT_INVALID


def _add_common(p: argparse.ArgumentParser, suppress: bool) -> None:
    # subcommand copies must not overwrite values given before the subcommand
    def d(v):
        return argparse.SUPPRESS if suppress else v

    p.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    p.add_argument(
        "--lenient", action="store_true", default=d(False),
        help="warn about unknown fields instead of rejecting",
    )
    p.add_argument("--degree-max", type=int, default=d(3), help="highest cohomological degree (default 3)")
    p.add_argument(
        "--group-order-cap", type=int, default=d(None),
        help=f"largest accepted group order (default {DEFAULT_ORDER_CAP}, or GALBRAUER_ORDER_CAP)",
    )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, suppress=True)
    p = argparse.ArgumentParser(prog="galbrauer", description=__doc__.splitlines()[0])
    _add_common(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("snf", "groupcoh", "hypercoh", "brauer"):
        s = sub.add_parser(name, parents=[common], help=f"run a {name} task file")
        s.add_argument("file")
    s = sub.add_parser("run", parents=[common], help="run any task file")
    s.add_argument("file")
    s = sub.add_parser("selftest", parents=[common], help="run the invariant battery")
    s.add_argument("--quick", action="store_true", help="smaller samples")
    s = sub.add_parser("corpus", parents=[common], help="list corpus entries or export one as a task file")
    s.add_argument("name", nargs="?")
    s.add_argument("--explicit", action="store_true", help="inline the lattices instead of naming the entry")
    return p


def export_corpus_task(name: str, explicit: bool = True) -> dict:
    e = corpus(name)
    if not explicit:
        payload = {"corpus": name, "flags": list(e.flags)}
    else:
        payload = {
            "group": encode_group(e.G.gamma),
            "G": encode_group_data(e.G),
            "H": encode_stabilizer(e.H.bind(e.G)),
            "flags": list(e.flags),
        }
    return {"version": VERSION, "task": "brauer", "payload": payload}


def main(argv: list[str] | None = None) -> int:
    opts = build_parser().parse_args(argv)
    if opts.group_order_cap is not None and opts.group_order_cap < 1:
        print("error: --group-order-cap must be positive", file=sys.stderr)
        return EXIT_INVALID
    if opts.group_order_cap is None:
        try:
            opts.group_order_cap = order_cap()
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INVALID
    try:
        if opts.command == "selftest":
            doc = {"version": VERSION, "task": "selftest", "payload": {"quick": opts.quick}}
            return run_document(doc, opts)
        if opts.command == "corpus":
            if opts.name is None:
                sys.stdout.write("\n".join(corpus_names()) + "\n")
                return EXIT_OK
            try:
                doc = export_corpus_task(opts.name, opts.explicit)
            except UnknownCorpusName as exc:
                raise TaskValidationError(exc.args[0], "/payload/corpus") from exc
            sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
            return EXIT_OK
        doc, warnings = load_task(opts.file, strict=not opts.lenient)
        for w in warnings:
            print(f"warning: {w}", file=sys.stderr)
        return run_document(doc, opts, None if opts.command == "run" else opts.command)
    except TaskValidationError as exc:
        print(f"error: {exc.path}: {exc.message}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
