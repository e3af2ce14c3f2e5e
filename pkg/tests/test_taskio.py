import pytest
from hypothesis import given, strategies as st

from galbrauer.corpus import corpus, corpus_names
from galbrauer.finite_group import OrderCapExceeded, cyclic_group
from galbrauer.homspace import evaluate
from galbrauer.intmat import IntMatrix
from galbrauer.taskio import (
    TaskValidationError,
    decode_complex,
    decode_group,
    decode_group_data,
    decode_matrix,
    decode_module,
    encode_group,
    encode_group_data,
    encode_int,
    encode_matrix,
    encode_module,
    encode_stabilizer,
    validate_task,
)


def doc(task, payload):
    return {"version": "1", "task": task, "payload": payload}


@given(st.integers(-(2**80), 2**80))
def test_int_encoding_round_trip(x):
    e = encode_int(x)
    assert isinstance(e, int) == (abs(x) < 2**53)
    assert int(e) == x


def test_matrix_encoding_round_trip():
    M = IntMatrix([[1, -(2**60)], [0, 7]])
    enc = encode_matrix(M)
    assert enc == [[1, str(-(2**60))], [0, 7]]
    assert decode_matrix(enc) == M


def test_ragged_matrix_rejected():
    with pytest.raises(TaskValidationError) as info:
        decode_matrix([[1, 2], [3]], path="/payload/matrix")
    assert info.value.path == "/payload/matrix"


def test_group_forms():
    assert decode_group({"table": [[0, 1], [1, 0]]}).order == 2
    assert decode_group({"permutations": [[1, 0, 3, 2], [2, 3, 0, 1]]}).order == 4
    assert decode_group({"cyclic": 6}).is_cyclic()[0]
    with pytest.raises(TaskValidationError):
        decode_group({"cyclic": 100}, cap=64, path="/payload/group")
    G = cyclic_group(5)
    assert decode_group(encode_group(G)) == G


def test_module_decoding():
    G = cyclic_group(4)
    M = decode_module(G, {"rank": 1, "action": {"1": [[-1]]}, "generators": [1]})
    assert M.action[2].to_list() == [[1]] and M.action[3].to_list() == [[-1]]
    T = decode_module(G, {"rank": 2, "relations": [[2], [0]]})
    assert str(T.carrier.structure()) == "Z (+) Z/2"
    with pytest.raises(TaskValidationError) as info:
        decode_module(G, {"rank": 1, "action": {"1": [[-1]]}}, "/payload/module")
    assert info.value.path == "/payload/module/action"
    with pytest.raises(TaskValidationError):
        decode_module(G, {"rank": 1, "action": {"1": [[2]]}, "generators": [1]}, "/m")


def test_module_encoding_round_trip():
    e = corpus("norm_one_torus:klein4")
    M = e.G.T_G_hat
    back = decode_module(M.gamma, encode_module(M))
    assert back.action == M.action


def test_complex_decoding_rejects_non_complex():
    G = cyclic_group(2)
    obj = {"terms": {"0": {"rank": 1}, "1": {"rank": 1}, "2": {"rank": 1}}, "differentials": {"0": [[1]], "1": [[1]]}}
    with pytest.raises(TaskValidationError):
        decode_complex(G, obj, "/payload/complex")


@pytest.mark.parametrize("name", corpus_names())
def test_group_data_round_trip(name):
    e = corpus(name)
    payload = {
        "group": encode_group(e.G.gamma),
        "G": encode_group_data(e.G),
        "H": encode_stabilizer(e.H.bind(e.G)),
    }
    validate_task(doc("brauer", payload))
    G, H, ns = decode_group_data(payload)
    a, b = evaluate(e.G, e.H, e.flags), evaluate(G, H, e.flags)
    assert a.to_json() == b.to_json()


def test_schema_pointers():
    with pytest.raises(TaskValidationError) as info:
        validate_task(doc("groupcoh", {"group": {"cyclic": 2}, "module": {"rank": 1, "colour": "red"}}))
    assert info.value.path == "/payload/module"
    with pytest.raises(TaskValidationError) as info:
        validate_task(doc("snf", {"matrix": [[1, "x"]]}))
    assert info.value.path.startswith("/payload/matrix/0/1")
    with pytest.raises(TaskValidationError) as info:
        validate_task({"version": "2", "task": "snf", "payload": {"matrix": [[1]]}})
    assert info.value.path == "/version"
    with pytest.raises(TaskValidationError):
        validate_task(doc("brauer", {"corpus": "sl2", "flags": ["not_a_flag"]}))
    with pytest.raises(TaskValidationError):
        validate_task([1, 2])


def test_lenient_mode_warns():
    d = doc("groupcoh", {"group": {"cyclic": 2}, "module": {"rank": 1, "colour": "red"}, "note": 1})
    warnings = validate_task(d, strict=False)
    assert warnings == ["unknown field /payload/module/colour", "unknown field /payload/note"]


def test_group_order_cap_in_permutations():
    with pytest.raises(TaskValidationError):
        decode_group({"permutations": [[1, 2, 3, 4, 0], [1, 0, 2, 3, 4]]}, cap=64)
    assert issubclass(OrderCapExceeded, ValueError)
