import pytest

from galbrauer.abgroups import AbStructure
from galbrauer.complexes import check_cone_les, hypercohomology_structure, is_quasi_isomorphism
from galbrauer.corpus import corpus
from galbrauer.finite_group import FiniteGroup, cyclic_group
from galbrauer.galois_modules import (
    norm_one_torus_module,
    regular_module,
    sign_module,
    trivial_module,
    zero_module,
)
from galbrauer.homspace import (
    FLAGS,
    C_bar_X,
    C_X_to_C_G,
    InconsistentFlags,
    InvalidGroupData,
    LinearGroupData,
    NonCommutingSquare,
    NsData,
    StabilizerData,
    bar_to_center_map,
    build_C_bar_X,
    build_C_G,
    build_C_hat_X,
    build_center_complex,
    cone_to_shifted_C_X,
    evaluate,
    ns_sequence_report,
    restriction_map,
    torus_to_center_map,
)
from galbrauer.intmat import IntMatrix

Z2 = cyclic_group(2)
ONE = FiniteGroup([[0]])


def S(text):
    return AbStructure.parse(text)


def hyper(C, degrees=range(4)):
    return [str(hypercohomology_structure(C, n)) for n in degrees]


def Zmod(gamma, n=1):
    return trivial_module(gamma, AbStructure(n))


def test_trivial_stabilizer_gives_C_G():
    e = corpus("pgl2")
    CX, CG = build_C_hat_X(e.G), build_C_G(e.G)
    assert hyper(CX) == hyper(CG)
    assert is_quasi_isomorphism(C_X_to_C_G(e.G, StabilizerData.trivial(Z2)), range(4))


def test_simply_connected_G_is_acyclic_in_degree_zero():
    # G = SL_3 simply connected, H = SL_2: C_X = [0 -> T_H^ -> T_Hsc^] up to quasi-isomorphism
    e = corpus("sl2_center_vs_torus")
    assert hyper(build_C_hat_X(e.G, e.H)) == hyper(build_center_complex(e.G, e.H))
    assert str(hypercohomology_structure(build_C_hat_X(e.G, e.H), 0)) == "0"


def test_sl2_mod_torus_complex():
    e = corpus("sl2_mod_torus")
    assert hyper(build_C_hat_X(e.G, e.H), range(3)) == ["0", "Z", "0"]


def test_non_commuting_square_reports_generator():
    G = LinearGroupData(ONE, Zmod(ONE), Zmod(ONE), IntMatrix([[1]]), pic_Gbar_zero=True)
    H = StabilizerData(Zmod(ONE), Zmod(ONE), res_H=IntMatrix([[1]]), j_hat=IntMatrix([[1]]), sc_hat=IntMatrix([[2]]))
    with pytest.raises(NonCommutingSquare) as info:
        build_C_hat_X(G, H)
    assert info.value.generator == 0


def test_invalid_group_data():
    Z = Zmod(Z2)
    with pytest.raises(InvalidGroupData):
        LinearGroupData(Z2, Z, Z, IntMatrix([[1]]), G_hat=Z)
    with pytest.raises(InvalidGroupData):
        LinearGroupData(Z2, Z, Z, IntMatrix([[1]]), G_hat=Z, G_hat_incl=IntMatrix([[1]]))


def test_default_G_hat_is_kernel_of_rho():
    T = norm_one_torus_module(cyclic_group(3))
    G = LinearGroupData(T.gamma, T, zero_module(T.gamma))
    assert G.G_hat.rank == 2
    e = corpus("pgl2")
    assert e.G.G_hat.n_generators == 0


# ---------------------------------------------------------------------------
# C_bar_X


def test_C_bar_X_examples():
    Z2t = trivial_module(Z2, AbStructure(0, (2,)))
    O = zero_module(Z2)
    C = build_C_bar_X(O, Z2t, Z2t, None, IntMatrix([[1]]))
    assert hyper(C, range(1, 3)) == ["0", "0"]
    C = build_C_bar_X(O, O, Z2t, None, None)
    assert str(hypercohomology_structure(C, 2)) == "Z/2"
    assert hyper(build_C_bar_X(O, O, O, None, None)) == ["0"] * 4


def test_C_bar_X_rejects_nonzero_composite():
    Z = Zmod(Z2)
    with pytest.raises(NonCommutingSquare):
        build_C_bar_X(Z, Z, Z, IntMatrix([[1]]), IntMatrix([[1]]))


def test_C_bar_X_needs_pic_zero():
    Z = Zmod(Z2, 2)
    G = LinearGroupData(Z2, Z, Z, IntMatrix.identity(2), pic_Gbar_zero=False)
    H = corpus("sl2_center_vs_torus").H
    with pytest.raises(InconsistentFlags):
        C_bar_X(G, H)
    C_bar_X(G, H, ["pic_Gbar_zero"])


# ---------------------------------------------------------------------------
# presentations and triangles


@pytest.mark.parametrize("name", ["pgl2_center_vs_torus", "sl2_center_vs_torus", "sl2_mod_torus"])
def test_three_presentations_agree(name):
    e = corpus(name)
    torus = hyper(build_C_hat_X(e.G, e.H))
    assert hyper(build_center_complex(e.G, e.H)) == torus
    assert hyper(C_bar_X(e.G, e.H)) == torus
    assert is_quasi_isomorphism(torus_to_center_map(e.G, e.H), range(4))
    assert is_quasi_isomorphism(bar_to_center_map(e.G, e.H), range(4))


def test_pgl2_center_side_is_torsion_in_degree_two():
    e = corpus("pgl2_center_vs_torus")
    # quasi-isomorphic to Z/2 in degree 2: H^{2+i} = H^i(Z/2, Z/2)
    assert hyper(build_C_hat_X(e.G, e.H)) == ["0", "0", "Z/2", "Z/2"]


@pytest.mark.parametrize(
    "name", ["sl2_mod_torus", "pgl2_center_vs_torus", "sl2_center_vs_torus", "pgl2", "norm_one_torus:klein4"]
)
def test_triangle(name):
    e = corpus(name)
    assert check_cone_les(restriction_map(e.G, e.H), range(0, 3)).exact
    C, Sx, phi = cone_to_shifted_C_X(e.G, e.H)
    # the explicit identification is a chain isomorphism, so it is in particular a quasi-isomorphism
    assert is_quasi_isomorphism(phi, range(-1, 3))


# ---------------------------------------------------------------------------
# evaluation


def test_evaluate_sl2_mod_torus():
    e = corpus("sl2_mod_torus")
    rep = evaluate(e.G, e.H, ["X_has_rational_point"])
    assert (str(rep.U_X), str(rep.Pic_X), str(rep.Br_a_X_G)) == ("0", "Z", "0")


def test_evaluate_pgl2():
    e = corpus("pgl2")
    rep = evaluate(e.G, e.H, ["X_has_rational_point"])
    assert (rep.Pic_X, rep.Br_a_X_G) == (S("Z/2"), S("Z/2"))


@pytest.mark.parametrize("tag,pic,br", [("z2", "Z/2", "0"), ("klein4", "Z/2 (+) Z/2", "Z/2"), ("s3", "Z/2", "0")])
def test_evaluate_norm_one_tori(tag, pic, br):
    e = corpus(f"norm_one_torus:{tag}")
    rep = evaluate(e.G, e.H, e.flags)
    assert (rep.U_X, rep.Pic_X, rep.Br_a_X_G) == (S("0"), S(pic), S(br))


def test_simply_connected_vanishing():
    for gamma in (ONE, Z2, cyclic_group(3)):
        T = regular_module(gamma)
        G = LinearGroupData(gamma, T, T, IntMatrix.identity(T.n_generators), pic_Gbar_zero=True)
        rep = evaluate(G, None, ["X_has_rational_point"])
        assert rep.Pic_X.is_trivial and rep.Br_a_X_G.is_trivial


def test_flag_discipline():
    e = corpus("norm_one_torus:z2")
    rep = evaluate(e.G, e.H, [])
    assert rep.Pic_X is None and rep.Br_a_X_G is None and rep.conditional
    assert any("N^3(k,Gm)" in c for c in rep.caveats)
    assert any("Ker(Br(k) -> Br(X))" in c for c in rep.caveats)
    assert evaluate(e.G, e.H, ["H3_k_Gm_vanishes"]).Br_a_X_G == S("0")
    assert evaluate(e.G, e.H, ["Br_k_injects"]).Pic_X == S("Z/2")

    p = corpus("pgl2")
    for flags in ([], ["H3_k_Gm_vanishes"], ["Br_k_injects", "H3_k_Gm_vanishes"]):
        rep = evaluate(p.G, p.H, flags)
        assert rep.Br_a_X_G is None and rep.Pic_X is None
    # the user may assert Pic(G-bar) = 0 explicitly; the data object is not modified
    rep = evaluate(p.G, p.H, ["pic_Gbar_zero", "H3_k_Gm_vanishes"])
    assert rep.Br_a_X_G is not None and not p.G.pic_Gbar_zero


def test_every_flag_combination_is_disciplined():
    import itertools

    e = corpus("norm_one_torus:z3")
    for r in range(len(FLAGS) + 1):
        for flags in itertools.combinations(FLAGS, r):
            rep = evaluate(e.G, e.H, flags)
            justified = "X_has_rational_point" in flags or "H3_k_Gm_vanishes" in flags
            assert (rep.Br_a_X_G is not None) == justified


def test_evaluate_rejects_bad_flags_and_presentations():
    e = corpus("pgl2")
    with pytest.raises(InconsistentFlags):
        evaluate(e.G, e.H, ["made_up_flag"])
    with pytest.raises(InconsistentFlags):
        evaluate(e.G, e.H, ["X_has_rational_point"], presentation="bar")
    with pytest.raises(ValueError):
        evaluate(e.G, e.H, [], presentation="sideways")


@pytest.mark.parametrize("presentation", ["torus", "center", "bar"])
def test_presentations_give_same_report(presentation):
    e = corpus("pgl2_center_vs_torus")
    rep = evaluate(e.G, e.H, e.flags, presentation=presentation)
    assert (rep.U_X, rep.Pic_X, rep.Br_a_X_G) == (S("0"), S("0"), S("Z/2"))


def test_report_serialisation():
    e = corpus("norm_one_torus:z2")
    doc = evaluate(e.G, e.H, []).to_json()
    assert doc["Pic_X"] == "conditional" and doc["Br_a_X_G"] == "conditional"
    assert doc["H1"] == {"free_rank": 0, "torsion": [2]}


# ---------------------------------------------------------------------------
# Neron-Severi sequence


def test_ns_zero_degenerates():
    e = corpus("pgl2")
    rep = ns_sequence_report(e.G, e.H, NsData(zero_module(Z2)), ["X_has_rational_point"])
    assert rep.Pic_X == S("Z/2") and rep.Br_a_X_G == S("Z/2")


def test_ns_trivial_and_sign():
    e = corpus("sl2")
    rep = ns_sequence_report(e.G, e.H, NsData(Zmod(Z2)), ["X_has_rational_point"])
    assert (rep.NS_invariants, rep.H1_NS) == (S("Z"), S("0"))
    assert rep.Pic_X is None and "Pic(X)" in rep.sequence()
    rep = ns_sequence_report(e.G, e.H, NsData(sign_module(Z2, [1, -1])), ["X_has_rational_point"])
    assert (rep.NS_invariants, rep.H1_NS) == (S("0"), S("Z/2"))


def test_ns_requires_data_and_blocks_evaluate():
    e = corpus("sl2")
    with pytest.raises(InvalidGroupData):
        ns_sequence_report(e.G, e.H, None)
    with pytest.raises(InconsistentFlags):
        evaluate(e.G, e.H, ["X_has_rational_point"], NsData(Zmod(Z2)))
