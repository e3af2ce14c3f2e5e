import pytest

from galbrauer.abgroups import AbStructure
from galbrauer.corpus import UnknownCorpusName, corpus, corpus_names
from galbrauer.homspace import evaluate


def test_names_are_unique_and_listed():
    names = corpus_names()
    assert len(names) == len(set(names))
    assert "pgl2" in names and "norm_one_torus:klein4" in names


@pytest.mark.parametrize("bad", ["sl3", "norm_one_torus:q8", "norm_one_torus:z1", ""])
def test_unknown_name(bad):
    with pytest.raises(UnknownCorpusName):
        corpus(bad)


def test_entries_are_fresh():
    assert corpus("pgl2").G is not corpus("pgl2").G


def test_sl2_is_simply_connected():
    e = corpus("sl2")
    assert e.G.T_G_hat.n_generators == e.G.T_Gsc_hat.n_generators == 1
    assert e.G.rho_hat.matrix.to_list() == [[1]]


def test_torus_ranks():
    for tag, rank in [("z2", 1), ("z5", 4), ("klein4", 3), ("s3", 5)]:
        assert corpus(f"norm_one_torus:{tag}").G.T_G_hat.n_generators == rank


@pytest.mark.parametrize("name", corpus_names())
def test_expected_values(name):
    e = corpus(name)
    rep = evaluate(e.G, e.H, e.flags)
    assert not rep.conditional
    for field, want in e.expected.items():
        assert getattr(rep, field) == want, field


@pytest.mark.parametrize("name", [n for n in corpus_names() if len(corpus(n).presentations) > 1])
def test_alternative_presentations_agree(name):
    e = corpus(name)
    base = evaluate(e.G, e.H, e.flags)
    for p in e.presentations:
        rep = evaluate(e.G, e.H, e.flags, presentation=p)
        assert (rep.U_X, rep.Pic_X, rep.Br_a_X_G) == (base.U_X, base.Pic_X, base.Br_a_X_G), p


def test_quadratic_torus_values():
    e = corpus("norm_one_torus:z2")
    rep = evaluate(e.G, e.H, e.flags)
    assert rep.Pic_X == AbStructure(0, (2,)) and rep.Br_a_X_G.is_trivial
