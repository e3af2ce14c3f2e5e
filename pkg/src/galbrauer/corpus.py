"""Named, validated inputs for :func:`galbrauer.homspace.evaluate`.

Every entry records where its lattices come from and the values the
evaluation is expected to produce, each derivable by hand:

``norm_one_torus:<g>``
    ``G = R^1_{K/k} G_m`` for a Galois extension with group ``g`` in
    ``z2 .. z6``, ``klein4``, ``s3``; ``H = 1``. ``T^ = Z[g]/Z.N``, and the
    sequence ``0 -> Z -> Z[g] -> T^ -> 0`` gives ``H^i(g, T^) = H^{i+1}(g, Z)``.
``sl2``
    ``SL_2`` split over a quadratic quotient; ``rho^ = id``, everything vanishes.
``pgl2``
    ``PGL_2`` split, ``gamma = Z/2`` acting trivially; ``rho^ = x2``.
``sl2_mod_torus``
    ``SL_2 / T`` with ``T`` the diagonal torus, trivial ``gamma``.
``pgl2_center_vs_torus``, ``sl2_center_vs_torus``
    ``SL_3 / H`` for ``H = PGL_2`` (adjoint embedding) and ``H = SL_2``
    (upper-left block), with centre data so both presentations exist.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abgroups import AbStructure, FpAbGroup
from .finite_group import FiniteGroup, cyclic_group, klein_four, symmetric_group
from .galois_modules import norm_one_torus_module, trivial_module, zero_module
from .homspace import X_HAS_RATIONAL_POINT, LinearGroupData, StabilizerData
from .intmat import IntMatrix

__all__ = ["CorpusEntry", "UnknownCorpusName", "corpus", "corpus_names", "TORUS_GROUPS"]

TORUS_GROUPS = ("z2", "z3", "z4", "z5", "z6", "klein4", "s3")


class UnknownCorpusName(KeyError):
    pass


@dataclass
class CorpusEntry:
    name: str
    G: LinearGroupData
    H: StabilizerData
    flags: tuple[str, ...]
    provenance: str
    expected: dict = field(default_factory=dict)
    presentations: tuple[str, ...] = ("torus",)


def _Z(n: int = 1) -> FpAbGroup:
    return FpAbGroup.free(n)


def _torus_group(tag: str) -> FiniteGroup:
    if tag == "klein4":
        return klein_four()
    if tag == "s3":
        return symmetric_group(3)
    if tag.startswith("z") and tag[1:].isdigit() and int(tag[1:]) >= 2:
        return cyclic_group(int(tag[1:]))
    raise UnknownCorpusName(f"unknown torus group {tag!r}; expected one of {TORUS_GROUPS} or z<m>")


def _s(free: int = 0, *tors: int) -> AbStructure:
    return AbStructure(free, tuple(tors))


def _norm_one_torus(tag: str) -> CorpusEntry:
    gamma = _torus_group(tag)
    T = norm_one_torus_module(gamma)
    G = LinearGroupData(gamma, T, zero_module(gamma), pic_Gbar_zero=True, name=f"R1({tag})")
    known = {
        # (Pic, Br_a) = (H^2(g, Z), H^3(g, Z))
        "klein4": (_s(0, 2, 2), _s(0, 2)),
        "s3": (_s(0, 2), _s()),
    }
    if tag in known:
        pic, br = known[tag]
    else:
        pic, br = _s(0, gamma.order), _s()
    return CorpusEntry(
        f"norm_one_torus:{tag}",
        G,
        StabilizerData.trivial(gamma),
        (X_HAS_RATIONAL_POINT,),
        "norm-one torus of a Galois extension with group "
        f"{tag}; character lattice Z[g]/Z.N (rank |g| - 1)",
        {"U_X": _s(), "Pic_X": pic, "Br_a_X_G": br},
    )


def _sl2() -> CorpusEntry:
    gamma = cyclic_group(2)
    Z = trivial_module(gamma, _Z())
    G = LinearGroupData(gamma, Z, Z, IntMatrix([[1]]), pic_Gbar_zero=True, name="SL2")
    return CorpusEntry(
        "sl2", G, StabilizerData.trivial(gamma), (X_HAS_RATIONAL_POINT,),
        "SL_2 split, Z/2 acting trivially; simply connected so rho^ = id",
        {"U_X": _s(), "Pic_X": _s(), "Br_a_X_G": _s()},
    )


def _pgl2() -> CorpusEntry:
    gamma = cyclic_group(2)
    Z = trivial_module(gamma, _Z())
    G = LinearGroupData(gamma, Z, Z, IntMatrix([[2]]), pic_Gbar_zero=False, name="PGL2")
    return CorpusEntry(
        "pgl2", G, StabilizerData.trivial(gamma), (X_HAS_RATIONAL_POINT,),
        "PGL_2 split, Z/2 acting trivially; the root lattice has index 2 in the weight lattice",
        {"U_X": _s(), "Pic_X": _s(0, 2), "Br_a_X_G": _s(0, 2)},
    )


def _sl2_mod_torus() -> CorpusEntry:
    gamma = FiniteGroup([[0]], name="1")
    Z = trivial_module(gamma, _Z())
    O = zero_module(gamma)
    G = LinearGroupData(gamma, Z, Z, IntMatrix([[1]]), pic_Gbar_zero=True, name="SL2")
    H = StabilizerData(
        Z, O, j_hat=IntMatrix([[1]]),
        Z_Hred_hat=Z, Z_Hsc_hat=O, z_red=IntMatrix([[1]]), name="T",
    )
    return CorpusEntry(
        "sl2_mod_torus", G, H, (X_HAS_RATIONAL_POINT,),
        "SL_2 modulo its diagonal torus; the torus is its own centre and H^sc = 1",
        {"U_X": _s(), "Pic_X": _s(1), "Br_a_X_G": _s()},
        ("torus", "center", "bar"),
    )


def _sl3(gamma: FiniteGroup) -> LinearGroupData:
    Z2 = trivial_module(gamma, _Z(2))
    return LinearGroupData(gamma, Z2, Z2, IntMatrix.identity(2), pic_Gbar_zero=True, name="SL3")


def _pgl2_center_vs_torus() -> CorpusEntry:
    gamma = cyclic_group(2)
    Z = trivial_module(gamma, _Z())
    Z2_tors = trivial_module(gamma, FpAbGroup.cyclic(2))
    O = zero_module(gamma)
    # T_G = {diag(t1, t2, (t1 t2)^-1)} with characters e1, e2; T_H = {diag(t, 1, 1/t)}
    j = IntMatrix([[1, 0]])
    H = StabilizerData(
        Z, Z, res_H=IntMatrix([[2]]), j_hat=j, sc_hat=IntMatrix([[2, 0]]),
        Z_Hred_hat=O, Z_Hsc_hat=Z2_tors, z_sc=IntMatrix([[1]]), name="PGL2",
    )
    return CorpusEntry(
        "pgl2_center_vs_torus", _sl3(gamma), H, (X_HAS_RATIONAL_POINT,),
        "SL_3 / PGL_2 (adjoint embedding), Z/2 acting trivially; "
        "torus side [Z -x2-> Z], centre side [0 -> Z/2], both in degrees 1, 2",
        {"U_X": _s(), "Pic_X": _s(), "Br_a_X_G": _s(0, 2)},
        ("torus", "center", "bar"),
    )


def _sl2_center_vs_torus() -> CorpusEntry:
    gamma = cyclic_group(2)
    Z = trivial_module(gamma, _Z())
    Z2_tors = trivial_module(gamma, FpAbGroup.cyclic(2))
    j = IntMatrix([[1, -1]])
    H = StabilizerData(
        Z, Z, res_H=IntMatrix([[1]]), j_hat=j, sc_hat=j,
        Z_Hred_hat=Z2_tors, Z_Hsc_hat=Z2_tors,
        z_red=IntMatrix([[1]]), z_sc=IntMatrix([[1]]), z_res=IntMatrix([[1]]), name="SL2",
    )
    return CorpusEntry(
        "sl2_center_vs_torus", _sl3(gamma), H, (X_HAS_RATIONAL_POINT,),
        "SL_3 / SL_2 (upper-left block), Z/2 acting trivially; "
        "torus side [Z -id-> Z], centre side [Z/2 -id-> Z/2]",
        {"U_X": _s(), "Pic_X": _s(), "Br_a_X_G": _s()},
        ("torus", "center", "bar"),
    )


_FIXED = {
    "sl2": _sl2,
    "pgl2": _pgl2,
    "sl2_mod_torus": _sl2_mod_torus,
    "pgl2_center_vs_torus": _pgl2_center_vs_torus,
    "sl2_center_vs_torus": _sl2_center_vs_torus,
}


def corpus_names() -> list[str]:
    return [f"norm_one_torus:{t}" for t in TORUS_GROUPS] + list(_FIXED)


def corpus(name: str) -> CorpusEntry:
    """Build the named entry afresh (entries are mutable, so never shared).

    >>> e = corpus("pgl2")
    >>> e.G.rho_hat.matrix.to_list()
    [[2]]
    >>> corpus("norm_one_torus:klein4").G.T_G_hat.n_generators
    3
    """
    if name.startswith("norm_one_torus:"):
        return _norm_one_torus(name.split(":", 1)[1])
    try:
        return _FIXED[name]()
    except KeyError:
        raise UnknownCorpusName(f"unknown corpus entry {name!r}; known: {corpus_names()}") from None

