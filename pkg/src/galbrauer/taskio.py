"""JSON task files: schemas, decoding into engine objects, and encoding back.

Matrices are row-major arrays. Entries with ``|x| < 2**53`` are JSON
numbers, larger ones decimal strings. A module's ``relations`` matrix has
``rank`` rows; its columns are the relators. Actions are keyed by element
index; when ``generators`` is present only those elements are listed and
the action is closed over the group.
"""

from __future__ import annotations

import copy
import re
from typing import Any

import jsonschema

from .finite_group import FiniteGroup, OrderCapExceeded, cyclic_group, order_cap
from .abgroups import FpAbGroup
from .complexes import ChainMap, ModComplex
from .galois_modules import GammaHom, GammaModule
from .homspace import FLAGS, PRESENTATIONS, LinearGroupData, NsData, StabilizerData
from .intmat import IntMatrix

__all__ = [
    "VERSION",
    "TASKS",
    "TaskValidationError",
    "task_schema",
    "validate_task",
    "encode_int",
    "decode_int",
    "encode_matrix",
    "decode_matrix",
    "decode_group",
    "decode_module",
    "decode_complex",
    "decode_chain_map",
    "decode_group_data",
    "encode_group",
    "encode_module",
    "encode_group_data",
    "encode_stabilizer",
]

VERSION = "1"
TASKS = ("snf", "groupcoh", "hypercoh", "brauer", "selftest")
SAFE_INT = 2**53


class TaskValidationError(ValueError):
    """Raised with ``path``, a JSON pointer to the offending location."""

    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{path or '/'}: {message}")
        self.path = path or "/"
        self.message = message


def _pointer(parts) -> str:
    return "".join(f"/{p}" for p in parts)


# ---------------------------------------------------------------------------
# Schema
# ---------------------------------------------------------------------------

_INT = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^-?[0-9]+$"}]}
_MATRIX = {"type": "array", "items": {"type": "array", "items": _INT}}
_DEGREE_MAP = {"type": "object", "patternProperties": {r"^-?[0-9]+$": _MATRIX}, "additionalProperties": False}
_NAT = {"type": "integer", "minimum": 0}


def _obj(props: dict, required=(), **extra) -> dict:
    out = {"type": "object", "properties": props, "additionalProperties": False}
    if required:
        out["required"] = list(required)
    out.update(extra)
    return out


_GROUP = {
    "oneOf": [
        _obj({"table": {"type": "array", "items": {"type": "array", "items": _NAT}}, "name": {"type": "string"}}, ["table"]),
        _obj({"permutations": {"type": "array", "items": {"type": "array", "items": _NAT}}, "name": {"type": "string"}}, ["permutations"]),
        _obj({"cyclic": {"type": "integer", "minimum": 1}, "name": {"type": "string"}}, ["cyclic"]),
    ]
}

_MODULE = _obj(
    {
        "rank": _NAT,
        "relations": _MATRIX,
        "action": {"type": "object", "patternProperties": {r"^[0-9]+$": _MATRIX}, "additionalProperties": False},
        "generators": {"type": "array", "items": _NAT},
        "name": {"type": "string"},
    },
    ["rank"],
)

_COMPLEX = _obj(
    {
        "terms": {"type": "object", "patternProperties": {r"^-?[0-9]+$": _MODULE}, "additionalProperties": False},
        "differentials": _DEGREE_MAP,
    },
    ["terms"],
)

_CHAIN_MAP = _obj({"source": _COMPLEX, "target": _COMPLEX, "components": _DEGREE_MAP}, ["source", "target"])

_DEGREES = {"type": "array", "items": {"type": "integer"}, "minItems": 1}

_G_DATA = _obj(
    {
        "T_G_hat": _MODULE,
        "T_Gsc_hat": _MODULE,
        "rho_hat": _MATRIX,
        "G_hat": _MODULE,
        "G_hat_incl": _MATRIX,
        "pic_Gbar_zero": {"type": "boolean"},
        "name": {"type": "string"},
    },
    ["T_G_hat", "T_Gsc_hat"],
)

_H_DATA = _obj(
    {
        **{k: _MODULE for k in ("T_H_hat", "T_Hsc_hat", "Z_Hred_hat", "Z_Hsc_hat")},
        **{k: _MATRIX for k in ("res_H", "j_hat", "sc_hat", "z_red", "z_sc", "z_res")},
        "name": {"type": "string"},
    },
    ["T_H_hat", "T_Hsc_hat"],
)

_PAYLOADS = {
    "snf": _obj({"matrix": _MATRIX}, ["matrix"]),
    "groupcoh": _obj(
        {"group": _GROUP, "module": _MODULE, "degree": {"type": "integer", "minimum": 0},
         "degrees": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1},
         "oracle": {"type": "boolean"}},
        ["group", "module"],
    ),
    "hypercoh": _obj(
        {"group": _GROUP, "complex": _COMPLEX, "chain_map": _CHAIN_MAP,
         "degree": {"type": "integer"}, "degrees": _DEGREES},
        ["group"],
        oneOf=[{"required": ["complex"]}, {"required": ["chain_map"]}],
    ),
    "brauer": _obj(
        {
            "corpus": {"type": "string"},
            "group": _GROUP,
            "G": _G_DATA,
            "H": _H_DATA,
            "ns": _MODULE,
            "flags": {"type": "array", "items": {"enum": list(FLAGS)}, "uniqueItems": True},
            "presentation": {"enum": list(PRESENTATIONS)},
            "allow_conditional": {"type": "boolean"},
        },
        oneOf=[{"required": ["corpus"]}, {"required": ["group", "G"]}],
    ),
    "selftest": _obj({"quick": {"type": "boolean"}}),
}


def task_schema(task: str | None = None, strict: bool = True) -> dict:
    """JSON schema of a task file; ``strict=False`` lets unknown fields through."""
    schema = {
        "type": "object",
        "properties": {
            "version": {"const": VERSION},
            "task": {"enum": list(TASKS)},
            "payload": _PAYLOADS.get(task, {"type": "object"}),
        },
        "required": ["version", "task"],
        "additionalProperties": False,
    }
    if not strict:
        schema = _relax(copy.deepcopy(schema))
    return schema


def _relax(node):
    if isinstance(node, dict):
        if node.get("additionalProperties") is False:
            node.pop("additionalProperties")
        for v in node.values():
            _relax(v)
    elif isinstance(node, list):
        for v in node:
            _relax(v)
    return node


def _unknown_fields(doc, schema, path=()) -> list[str]:
    """Pointers to properties a strict schema would reject (for lenient warnings)."""
    out = []
    if isinstance(doc, dict) and isinstance(schema, dict):
        branches = schema.get("oneOf")
        if branches and "properties" not in schema:
            for b in branches:
                if not list(jsonschema.Draft202012Validator(_relax(copy.deepcopy(b))).iter_errors(doc)):
                    return _unknown_fields(doc, b, path)
            return out
        props = schema.get("properties", {})
        patterns = schema.get("patternProperties", {})
        for k, v in doc.items():
            if k in props:
                out.extend(_unknown_fields(v, props[k], path + (k,)))
            elif patterns:
                for pat, sub in patterns.items():
                    if re.match(pat, k):
                        out.extend(_unknown_fields(v, sub, path + (k,)))
                        break
                else:
                    out.append(_pointer(path + (k,)))
            elif schema.get("additionalProperties") is False:
                out.append(_pointer(path + (k,)))
    return out


def validate_task(doc: Any, strict: bool = True) -> list[str]:
    """Validate a decoded task document; returns warnings (lenient mode only).

    Raises :class:`TaskValidationError` pointing at the deepest offending path.
    """
    if not isinstance(doc, dict):
        raise TaskValidationError("task file must be a JSON object")
    task = doc.get("task")
    schema = task_schema(task if task in TASKS else None, strict)
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(doc), key=lambda e: (-len(e.absolute_path), list(map(str, e.absolute_path)), e.message))
    if errors:
        err = errors[0]
        # descend into oneOf failures for a precise pointer
        while err.context:
            err = sorted(err.context, key=lambda e: (-len(e.absolute_path), e.message))[0]
        raise TaskValidationError(err.message, _pointer(err.absolute_path))
    if strict:
        return []
    return [f"unknown field {p}" for p in _unknown_fields(doc, task_schema(task, True))]


# ---------------------------------------------------------------------------
# Decoding
# ---------------------------------------------------------------------------


def decode_int(x) -> int:
    return int(x)


def encode_int(x: int):
    return x if -SAFE_INT < x < SAFE_INT else str(x)


def decode_matrix(rows, nrows: int | None = None, ncols: int | None = None, path: str = "") -> IntMatrix:
    rows = [[decode_int(x) for x in r] for r in rows]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise TaskValidationError("matrix rows have different lengths", path)
    if not rows:
        if nrows not in (None, 0):
            raise TaskValidationError(f"expected {nrows} rows, got 0", path)
        return IntMatrix.zeros(0, ncols or 0)
    M = IntMatrix(rows)
    if nrows is not None and M.nrows != nrows:
        raise TaskValidationError(f"expected {nrows} rows, got {M.nrows}", path)
    if ncols is not None and M.ncols != ncols:
        raise TaskValidationError(f"expected {ncols} columns, got {M.ncols}", path)
    return M


def encode_matrix(M: IntMatrix) -> list:
    return [[encode_int(x) for x in row] for row in M.to_list()]


def decode_group(obj: dict, cap: int | None = None, path: str = "") -> FiniteGroup:
    cap = order_cap() if cap is None else cap
    name = obj.get("name")
    try:
        if "cyclic" in obj:
            if obj["cyclic"] > cap:
                raise OrderCapExceeded(f"group order exceeds cap {cap}")
            G = cyclic_group(obj["cyclic"])
            if name:
                G.name = name
            return G
        if "table" in obj:
            if len(obj["table"]) > cap:
                raise OrderCapExceeded(f"group order exceeds cap {cap}")
            return FiniteGroup.from_table(obj["table"], name=name)
        return FiniteGroup.from_permutations(obj["permutations"], cap=cap, name=name)
    except ValueError as exc:
        raise TaskValidationError(str(exc), path) from exc


def decode_module(gamma: FiniteGroup, obj: dict, path: str = "") -> GammaModule:
    n = obj["rank"]
    rel = obj.get("relations")
    R = decode_matrix(rel, n, None, path + "/relations") if rel is not None else IntMatrix.zeros(n, 0)
    if rel is not None and not rel:
        R = IntMatrix.zeros(n, 0)
    carrier = FpAbGroup(n, R)
    action = obj.get("action", {})
    mats = {}
    for key, m in action.items():
        g = int(key)
        if g >= gamma.order:
            raise TaskValidationError(f"element index {g} out of range", f"{path}/action/{key}")
        mats[g] = decode_matrix(m, n, n, f"{path}/action/{key}") if n else IntMatrix.zeros(0, 0)
    try:
        if "generators" in obj:
            gens = list(obj["generators"])
            missing = [g for g in gens if g not in mats]
            if missing or set(mats) - set(gens):
                raise TaskValidationError("action keys must equal the listed generators", path + "/action")
            if not gens:
                gens = [gamma.identity]
                mats = {gamma.identity: IntMatrix.identity(n)}
            return GammaModule.from_generators(gamma, carrier, mats, name=obj.get("name"))
        if not action:
            mats = {g: IntMatrix.identity(n) for g in gamma.elements()}
        missing = [g for g in gamma.elements() if g not in mats]
        if missing:
            raise TaskValidationError(
                f"action missing for elements {missing}; list all elements or flag 'generators'",
                path + "/action",
            )
        return GammaModule(gamma, carrier, [mats[g] for g in gamma.elements()], name=obj.get("name"))
    except TaskValidationError:
        raise
    except ValueError as exc:
        raise TaskValidationError(str(exc), path) from exc


def _decode_hom(src: GammaModule, tgt: GammaModule, m, path: str) -> GammaHom:
    M = decode_matrix(m, tgt.n_generators, src.n_generators, path) if m else IntMatrix.zeros(tgt.n_generators, src.n_generators)
    try:
        return GammaHom(src, tgt, M)
    except ValueError as exc:
        raise TaskValidationError(str(exc), path) from exc


def decode_complex(gamma: FiniteGroup, obj: dict, path: str = "") -> ModComplex:
    terms = {int(q): decode_module(gamma, m, f"{path}/terms/{q}") for q, m in obj["terms"].items()}
    diffs = {}
    for q, m in obj.get("differentials", {}).items():
        q = int(q)
        if q not in terms or q + 1 not in terms:
            raise TaskValidationError(f"differential {q} needs terms {q} and {q + 1}", f"{path}/differentials/{q}")
        diffs[q] = _decode_hom(terms[q], terms[q + 1], m, f"{path}/differentials/{q}")
    try:
        return ModComplex(gamma, terms, diffs)
    except ValueError as exc:
        raise TaskValidationError(str(exc), path) from exc


def decode_chain_map(gamma: FiniteGroup, obj: dict, path: str = "") -> ChainMap:
    S = decode_complex(gamma, obj["source"], path + "/source")
    T = decode_complex(gamma, obj["target"], path + "/target")
    comps = {}
    for q, m in obj.get("components", {}).items():
        q = int(q)
        comps[q] = _decode_hom(S.term(q), T.term(q), m, f"{path}/components/{q}")
    try:
        return ChainMap(S, T, comps)
    except ValueError as exc:
        raise TaskValidationError(str(exc), path) from exc


def decode_group_data(payload: dict, cap: int | None = None, path: str = "/payload"):
    """``(LinearGroupData, StabilizerData, NsData | None)`` from an explicit brauer payload."""
    gamma = decode_group(payload["group"], cap, path + "/group")
    g = payload["G"]
    gp = path + "/G"
    TG = decode_module(gamma, g["T_G_hat"], gp + "/T_G_hat")
    TGsc = decode_module(gamma, g["T_Gsc_hat"], gp + "/T_Gsc_hat")
    rho = _decode_hom(TG, TGsc, g.get("rho_hat"), gp + "/rho_hat")
    Ghat = incl = None
    if "G_hat" in g:
        Ghat = decode_module(gamma, g["G_hat"], gp + "/G_hat")
        incl = _decode_hom(Ghat, TG, g.get("G_hat_incl"), gp + "/G_hat_incl")
    try:
        G = LinearGroupData(gamma, TG, TGsc, rho, Ghat, incl, g.get("pic_Gbar_zero", False), g.get("name", "G"))
    except ValueError as exc:
        raise TaskValidationError(str(exc), gp) from exc
    if "H" in payload:
        h = payload["H"]
        hp = path + "/H"
        mods = {k: decode_module(gamma, h[k], f"{hp}/{k}") for k in ("T_H_hat", "T_Hsc_hat", "Z_Hred_hat", "Z_Hsc_hat") if k in h}
        homs = {}
        ends = {
            "res_H": ("T_H_hat", "T_Hsc_hat"),
            "j_hat": (None, "T_H_hat"),
            "sc_hat": ("T_Gsc", "T_Hsc_hat"),
            "z_red": ("T_H_hat", "Z_Hred_hat"),
            "z_sc": ("T_Hsc_hat", "Z_Hsc_hat"),
            "z_res": ("Z_Hred_hat", "Z_Hsc_hat"),
        }
        for k, (s, t) in ends.items():
            if k not in h:
                continue
            src = TG if s is None else TGsc if s == "T_Gsc" else mods.get(s)
            tgt = mods.get(t)
            if src is None or tgt is None:
                raise TaskValidationError(f"{k} needs {s} and {t}", f"{hp}/{k}")
            homs[k] = _decode_hom(src, tgt, h[k], f"{hp}/{k}")
        try:
            H = StabilizerData(
                mods["T_H_hat"], mods["T_Hsc_hat"], homs.get("res_H"), homs.get("j_hat"), homs.get("sc_hat"),
                mods.get("Z_Hred_hat"), mods.get("Z_Hsc_hat"), homs.get("z_red"), homs.get("z_sc"), homs.get("z_res"),
                name=h.get("name", "H"),
            ).bind(G)
        except ValueError as exc:
            raise TaskValidationError(str(exc), hp) from exc
    else:
        H = StabilizerData.trivial(gamma)
    ns = NsData(decode_module(gamma, payload["ns"], path + "/ns")) if "ns" in payload else None
    return G, H, ns


# ---------------------------------------------------------------------------
# Encoding
# ---------------------------------------------------------------------------


def encode_group(G: FiniteGroup) -> dict:
    out = G.to_json()
    if G.name:
        out["name"] = G.name
    return out


def encode_module(M: GammaModule) -> dict:
    out: dict = {"rank": M.n_generators}
    if M.carrier.relations.ncols:
        out["relations"] = encode_matrix(M.carrier.relations)
    out["action"] = {str(g): encode_matrix(A) for g, A in enumerate(M.action)}
    if M.name:
        out["name"] = M.name
    return out


def encode_group_data(G: LinearGroupData) -> dict:
    return {
        "T_G_hat": encode_module(G.T_G_hat),
        "T_Gsc_hat": encode_module(G.T_Gsc_hat),
        "rho_hat": encode_matrix(G.rho_hat.matrix),
        "G_hat": encode_module(G.G_hat),
        "G_hat_incl": encode_matrix(G.G_hat_incl.matrix),
        "pic_Gbar_zero": bool(G.pic_Gbar_zero),
        "name": G.name,
    }


def encode_stabilizer(H: StabilizerData) -> dict:
    out = {"T_H_hat": encode_module(H.T_H_hat), "T_Hsc_hat": encode_module(H.T_Hsc_hat)}
    for k in ("res_H", "j_hat", "sc_hat"):
        out[k] = encode_matrix(getattr(H, k).matrix)
    if H.has_center:
        out["Z_Hred_hat"] = encode_module(H.Z_Hred_hat)
        out["Z_Hsc_hat"] = encode_module(H.Z_Hsc_hat)
        for k in ("z_red", "z_sc", "z_res"):
            out[k] = encode_matrix(getattr(H, k).matrix)
    out["name"] = H.name
    return out
