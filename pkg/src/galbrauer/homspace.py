"""Units, Picard and Brauer groups of a homogeneous space ``X = G/H``.

Input is purely combinatorial: character lattices with their Galois action
and the restriction maps between them. For a linear group ``G`` with
maximal torus ``T_G``, simply connected cover ``G^sc`` (torus ``T_Gsc``)
and a connected linear stabilizer ``H`` (tori ``T_H``, ``T_Hsc``), the
complex

    C_X = [ T_G^ -> T_H^ (+) T_Gsc^ -> T_Hsc^ ]        (degrees 0, 1, 2)

has ``H^0 = U(X)``, ``H^1 = Pic(X)`` and ``H^2 = Br_a(X, G)``, the last two
under side conditions on the base field which are supplied as flags.

Sign conventions: ``d^0 = (j, rho)`` and ``d^1 = res_H - sc`` on the two
blocks, so ``d^1 d^0 = res_H j - sc rho`` vanishes exactly when the square
of restrictions commutes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .abgroups import AbStructure, kernel
from .complexes import ChainMap, ModComplex, NotAComplex, hypercohomology_structure, is_quasi_isomorphism
from .finite_group import FiniteGroup
from .galois_modules import (
    GammaHom,
    GammaMismatch,
    GammaModule,
    direct_sum,
    invariants,
    zero_module,
)
from .group_cohomology import cohomology_structure
from .intmat import ColumnEchelon, IntMatrix, hstack, vstack

__all__ = [
    "FLAGS",
    "InconsistentFlags",
    "NonCommutingSquare",
    "InvalidGroupData",
    "LinearGroupData",
    "StabilizerData",
    "NsData",
    "HomSpaceReport",
    "NsSequenceReport",
    "saturated_submodule",
    "build_C_G",
    "build_C_H",
    "build_C_hat_X",
    "build_center_complex",
    "build_C_bar_X",
    "C_bar_X",
    "restriction_map",
    "C_X_to_C_G",
    "torus_to_center_map",
    "bar_to_center_map",
    "cone_to_shifted_C_X",
    "evaluate",
    "ns_sequence_report",
    "quasi_isomorphic_presentations",
]

X_HAS_RATIONAL_POINT = "X_has_rational_point"
H3_K_GM_VANISHES = "H3_k_Gm_vanishes"
BR_K_INJECTS = "Br_k_injects"
PIC_GBAR_ZERO = "pic_Gbar_zero"
FLAGS = (X_HAS_RATIONAL_POINT, H3_K_GM_VANISHES, BR_K_INJECTS, PIC_GBAR_ZERO)

PRESENTATIONS = ("torus", "center", "bar")


class InconsistentFlags(ValueError):
    pass


class InvalidGroupData(ValueError):
    pass


class NonCommutingSquare(NotAComplex):
    """``d^1 o d^0 != 0``; ``generator`` is the first degree-0 generator where it fails."""

    def __init__(self, msg: str, generator: int):
        super().__init__(msg)
        self.generator = generator


def saturated_submodule(M: GammaModule, basis: IntMatrix) -> tuple[GammaModule, GammaHom]:
    """The lattice spanned by ``basis`` inside the lattice ``M``, with its inclusion.

    ``basis`` must span a ``gamma``-stable sublattice; its columns are
    replaced by an echelon basis of the same span.
    """
    ech = ColumnEchelon(basis, track_transform=False)
    E = ech.image_basis()
    k = E.ncols
    action = []
    for A in M.action:
        cols = []
        for col in (A @ E).columns_sparse():
            c = ech.coordinates(col)
            if c is None:
                raise InvalidGroupData("sublattice is not stable under the action")
            cols.append(c)
        action.append(IntMatrix.from_columns(k, cols))
    from .abgroups import FpAbGroup

    S = GammaModule(M.gamma, FpAbGroup.free(k), action)
    return S, GammaHom(S, M, E)


def _as_hom(src: GammaModule, tgt: GammaModule, h: GammaHom | IntMatrix | None) -> GammaHom:
    if h is None:
        return GammaHom.zero(src, tgt)
    if isinstance(h, GammaHom):
        if h.matrix.shape != (tgt.n_generators, src.n_generators):
            raise InvalidGroupData("map has the wrong shape")
        return GammaHom(src, tgt, h.matrix, check=not (h.source is src and h.target is tgt))
    return GammaHom(src, tgt, h)


@dataclass
class LinearGroupData:
    """Character data of a connected linear group ``G``.

    ``rho_hat`` restricts characters of ``T_G`` to ``T_Gsc``. ``G_hat`` is the
    character group of ``G`` with its inclusion into ``T_G_hat``; when
    omitted it is taken to be ``ker(rho_hat)``.
    """

    gamma: FiniteGroup
    T_G_hat: GammaModule
    T_Gsc_hat: GammaModule
    rho_hat: GammaHom | IntMatrix | None = None
    G_hat: GammaModule | None = None
    G_hat_incl: GammaHom | IntMatrix | None = None
    pic_Gbar_zero: bool = False
    name: str = "G"

    def __post_init__(self):
        for label, M in (("T_G_hat", self.T_G_hat), ("T_Gsc_hat", self.T_Gsc_hat)):
            if M.gamma != self.gamma:
                raise GammaMismatch(f"{label} is over a different group")
        self.rho_hat = _as_hom(self.T_G_hat, self.T_Gsc_hat, self.rho_hat)
        if self.G_hat is None:
            if not self.T_G_hat.is_lattice:
                raise InvalidGroupData("T_G_hat must be a lattice")
            _, incl = kernel(self.rho_hat.f)
            self.G_hat, self.G_hat_incl = saturated_submodule(self.T_G_hat, incl.matrix)
        else:
            if self.G_hat_incl is None:
                raise InvalidGroupData("G_hat given without its inclusion into T_G_hat")
            self.G_hat_incl = _as_hom(self.G_hat, self.T_G_hat, self.G_hat_incl)
            K, _ = kernel(self.G_hat_incl.f)
            if not K.structure().is_trivial:
                raise InvalidGroupData("G_hat -> T_G_hat is not injective")
        if not self.rho_hat.compose(self.G_hat_incl).is_zero():
            raise InvalidGroupData("characters of G must restrict to zero on T_Gsc")


@dataclass
class StabilizerData:
    """Character data of the stabilizer ``H`` relative to ``G``.

    ``j_hat : T_G^ -> T_H^`` and ``sc_hat : T_Gsc^ -> T_Hsc^`` come from a Levi
    decomposition of ``H``; ``res_H : T_H^ -> T_Hsc^``. The optional centre
    data present ``Z(H^red)^``, ``Z(H^sc)^`` with the restrictions
    ``z_red : T_H^ -> Z_Hred^``, ``z_sc : T_Hsc^ -> Z_Hsc^`` and
    ``z_res : Z_Hred^ -> Z_Hsc^``.
    """

    T_H_hat: GammaModule
    T_Hsc_hat: GammaModule
    res_H: GammaHom | IntMatrix | None = None
    j_hat: GammaHom | IntMatrix | None = None
    sc_hat: GammaHom | IntMatrix | None = None
    Z_Hred_hat: GammaModule | None = None
    Z_Hsc_hat: GammaModule | None = None
    z_red: GammaHom | IntMatrix | None = None
    z_sc: GammaHom | IntMatrix | None = None
    z_res: GammaHom | IntMatrix | None = None
    name: str = "H"

    @property
    def has_center(self) -> bool:
        return self.Z_Hred_hat is not None and self.Z_Hsc_hat is not None

    def bind(self, G: LinearGroupData) -> "StabilizerData":
        """Attach to ``G``: coerce maps, check equivariance and the commuting squares."""
        gamma = G.gamma
        for label in ("T_H_hat", "T_Hsc_hat", "Z_Hred_hat", "Z_Hsc_hat"):
            M = getattr(self, label)
            if M is not None and M.gamma != gamma:
                raise GammaMismatch(f"{label} is over a different group")
        self.res_H = _as_hom(self.T_H_hat, self.T_Hsc_hat, self.res_H)
        self.j_hat = _as_hom(G.T_G_hat, self.T_H_hat, self.j_hat)
        self.sc_hat = _as_hom(G.T_Gsc_hat, self.T_Hsc_hat, self.sc_hat)
        if (self.Z_Hred_hat is None) != (self.Z_Hsc_hat is None):
            raise InvalidGroupData("centre data needs both Z_Hred_hat and Z_Hsc_hat")
        if self.has_center:
            self.z_red = _as_hom(self.T_H_hat, self.Z_Hred_hat, self.z_red)
            self.z_sc = _as_hom(self.T_Hsc_hat, self.Z_Hsc_hat, self.z_sc)
            self.z_res = _as_hom(self.Z_Hred_hat, self.Z_Hsc_hat, self.z_res)
            if not (self.z_res.compose(self.z_red) - self.z_sc.compose(self.res_H)).is_zero():
                raise InvalidGroupData("centre restrictions do not commute with res_H")
        return self

    @classmethod
    def trivial(cls, gamma: FiniteGroup) -> "StabilizerData":
        Z = zero_module(gamma)
        return cls(Z, Z, name="1")


@dataclass
class NsData:
    """Neron-Severi group of the abelian quotient of ``G`` as a Galois module."""

    NS: GammaModule


# ---------------------------------------------------------------------------
# Complexes
# ---------------------------------------------------------------------------


def build_C_G(G: LinearGroupData) -> ModComplex:
    """``[T_G^ -> T_Gsc^]`` in degrees 0, 1."""
    return ModComplex(G.gamma, {0: G.T_G_hat, 1: G.T_Gsc_hat}, {0: G.rho_hat})


def build_C_H(H: StabilizerData) -> ModComplex:
    """``[T_H^ -> T_Hsc^]`` in degrees 0, 1."""
    gamma = H.T_H_hat.gamma
    return ModComplex(gamma, {0: H.T_H_hat, 1: H.T_Hsc_hat}, {0: _as_hom(H.T_H_hat, H.T_Hsc_hat, H.res_H)})


def _three_term(gamma, M0, M1a, M1b, M2, d0a: GammaHom, d0b: GammaHom, d1a: GammaHom, d1b: GammaHom, what: str):
    mid = direct_sum(M1a, M1b)
    d0 = GammaHom(M0, mid, vstack([d0a.matrix, d0b.matrix], M0.n_generators), check=False)
    d1 = GammaHom(mid, M2, hstack([d1a.matrix, d1b.matrix], M2.n_generators), check=False)
    comp = d1.compose(d0)
    for j, col in enumerate(comp.matrix.columns_sparse()):
        if col and not M2.carrier.is_zero(col):
            raise NonCommutingSquare(
                f"{what}: d^1 d^0 is nonzero on degree-0 generator {j}", generator=j
            )
    return ModComplex(gamma, {0: M0, 1: mid, 2: M2}, {0: d0, 1: d1}, check=False)


def build_C_hat_X(G: LinearGroupData, H: StabilizerData | None = None) -> ModComplex:
    """``[T_G^ -> T_H^ (+) T_Gsc^ -> T_Hsc^]`` with ``d^0 = (j, rho)``, ``d^1 = res_H - sc``."""
    H = (H or StabilizerData.trivial(G.gamma)).bind(G)
    return _three_term(
        G.gamma, G.T_G_hat, H.T_H_hat, G.T_Gsc_hat, H.T_Hsc_hat,
        H.j_hat, G.rho_hat, H.res_H, H.sc_hat.scale(-1), "C_X",
    )


def build_center_complex(G: LinearGroupData, H: StabilizerData) -> ModComplex:
    """``[T_G^ -> Z_Hred^ (+) T_Gsc^ -> Z_Hsc^]``, quasi-isomorphic to :func:`build_C_hat_X`."""
    H = H.bind(G)
    if not H.has_center:
        raise InvalidGroupData("stabilizer has no centre data")
    return _three_term(
        G.gamma, G.T_G_hat, H.Z_Hred_hat, G.T_Gsc_hat, H.Z_Hsc_hat,
        H.z_red.compose(H.j_hat), G.rho_hat, H.z_res, H.z_sc.compose(H.sc_hat).scale(-1),
        "centre complex",
    )


def build_C_bar_X(
    G_hat: GammaModule,
    Z_Hred_hat: GammaModule,
    Z_Hsc_hat: GammaModule,
    to_Z_Hred: GammaHom | IntMatrix | None,
    to_Z_Hsc: GammaHom | IntMatrix | None,
) -> ModComplex:
    """``[G^ -> Z_Hred^ -> Z_Hsc^]`` in degrees 0, 1, 2."""
    gamma = G_hat.gamma
    a = _as_hom(G_hat, Z_Hred_hat, to_Z_Hred)
    b = _as_hom(Z_Hred_hat, Z_Hsc_hat, to_Z_Hsc)
    comp = b.compose(a)
    for j, col in enumerate(comp.matrix.columns_sparse()):
        if col and not Z_Hsc_hat.carrier.is_zero(col):
            raise NonCommutingSquare(f"composite G^ -> Z_Hsc^ is nonzero on generator {j}", generator=j)
    return ModComplex(gamma, {0: G_hat, 1: Z_Hred_hat, 2: Z_Hsc_hat}, {0: a, 1: b}, check=False)


def C_bar_X(G: LinearGroupData, H: StabilizerData, flags: Iterable[str] = ()) -> ModComplex:
    """``C_bar_X`` from group data; needs ``Pic(G-bar) = 0`` and centre data."""
    if not (G.pic_Gbar_zero or PIC_GBAR_ZERO in set(flags)):
        raise InconsistentFlags("the centre complex [G^ -> Z_Hred^ -> Z_Hsc^] needs pic_Gbar_zero")
    H = H.bind(G)
    if not H.has_center:
        raise InvalidGroupData("stabilizer has no centre data")
    to_red = H.z_red.compose(H.j_hat).compose(G.G_hat_incl)
    return build_C_bar_X(G.G_hat, H.Z_Hred_hat, H.Z_Hsc_hat, to_red, H.z_res)


def restriction_map(G: LinearGroupData, H: StabilizerData) -> ChainMap:
    """``C_G -> C_H`` with components ``j_hat`` and ``sc_hat``."""
    H = H.bind(G)
    CG, CH = build_C_G(G), build_C_H(H)
    return ChainMap(CG, CH, {0: H.j_hat, 1: H.sc_hat})


def C_X_to_C_G(G: LinearGroupData, H: StabilizerData) -> ChainMap:
    """``C_X -> C_G``: identity on ``T_G^`` and projection onto ``T_Gsc^``."""
    H = H.bind(G)
    CX, CG = build_C_hat_X(G, H), build_C_G(G)
    a, b = H.T_H_hat.n_generators, G.T_Gsc_hat.n_generators
    proj = hstack([IntMatrix.zeros(b, a), IntMatrix.identity(b)], b)
    return ChainMap(CX, CG, {0: G.T_G_hat.identity_hom(), 1: GammaHom(CX.term(1), CG.term(1), proj)})


def torus_to_center_map(G: LinearGroupData, H: StabilizerData) -> ChainMap:
    """The comparison ``C_X -> centre complex``: ``id``, ``z_red (+) id``, ``z_sc``."""
    H = H.bind(G)
    CX, CZ = build_C_hat_X(G, H), build_center_complex(G, H)
    from .intmat import block_diag

    mid = block_diag([H.z_red.matrix, IntMatrix.identity(G.T_Gsc_hat.n_generators)])
    return ChainMap(
        CX, CZ,
        {0: G.T_G_hat.identity_hom(), 1: GammaHom(CX.term(1), CZ.term(1), mid), 2: H.z_sc},
    )


def bar_to_center_map(G: LinearGroupData, H: StabilizerData) -> ChainMap:
    """``C_bar_X -> centre complex``: the inclusion ``G^ -> T_G^``, ``(z, 0)``, ``id``."""
    CB, CZ = C_bar_X(G, H, [PIC_GBAR_ZERO] if G.pic_Gbar_zero else []), build_center_complex(G, H)
    r, s = H.Z_Hred_hat.n_generators, G.T_Gsc_hat.n_generators
    mid = vstack([IntMatrix.identity(r), IntMatrix.zeros(s, r)], r)
    return ChainMap(
        CB, CZ,
        {0: G.G_hat_incl, 1: GammaHom(CB.term(1), CZ.term(1), mid), 2: H.Z_Hsc_hat.identity_hom()},
    )


def cone_to_shifted_C_X(G: LinearGroupData, H: StabilizerData):
    """Explicit isomorphism ``Cone(C_G -> C_H) -> C_X[1]``.

    In degree 0 the cone is ``T_Gsc^ (+) T_H^`` and ``C_X[1]`` is
    ``T_H^ (+) T_Gsc^``; the map is ``(v, b) -> (-b, v)``, identities elsewhere.
    Returns ``(cone, shifted C_X, chain map)``.
    """
    from .complexes import cone, shift

    r = restriction_map(G, H)
    C, _, _ = cone(r)
    S = shift(build_C_hat_X(G, H), 1)
    b, v = H.T_H_hat.n_generators, G.T_Gsc_hat.n_generators
    swap = vstack(
        [
            hstack([IntMatrix.zeros(b, v), IntMatrix.identity(b).scale(-1)], b),
            hstack([IntMatrix.identity(v), IntMatrix.zeros(v, b)], v),
        ],
        v + b,
    )
    comps = {
        -1: GammaHom(C.term(-1), S.term(-1), IntMatrix.identity(G.T_G_hat.n_generators)),
        0: GammaHom(C.term(0), S.term(0), swap),
        1: GammaHom(C.term(1), S.term(1), IntMatrix.identity(H.T_Hsc_hat.n_generators)),
    }
    return C, S, ChainMap(C, S, comps)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


@dataclass
class HomSpaceReport:
    """Computed ``U(X)``, ``Pic(X)``, ``Br_a(X, G)``; ``None`` means conditional."""

    U_X: AbStructure
    Pic_X: AbStructure | None
    Br_a_X_G: AbStructure | None
    H1: AbStructure
    H2: AbStructure
    complex_used: str
    assumptions: frozenset
    justification: dict = field(default_factory=dict)
    caveats: list = field(default_factory=list)

    @property
    def conditional(self) -> bool:
        return self.Pic_X is None or self.Br_a_X_G is None

    def to_json(self) -> dict:
        def val(s):
            return s.to_json() if s is not None else "conditional"

        return {
            "U_X": val(self.U_X),
            "Pic_X": val(self.Pic_X),
            "Br_a_X_G": val(self.Br_a_X_G),
            "H1": self.H1.to_json(),
            "H2": self.H2.to_json(),
            "complex_used": self.complex_used,
            "assumptions": sorted(self.assumptions),
            "justification": dict(sorted(self.justification.items())),
            "caveats": list(self.caveats),
        }

    def render(self) -> str:
        def val(s):
            return str(s) if s is not None else "conditional"

        lines = [
            f"complex: {self.complex_used}",
            f"assumptions: {', '.join(sorted(self.assumptions)) or '(none)'}",
            f"U(X)      = {val(self.U_X)}    [{self.justification.get('U_X', '')}]",
            f"Pic(X)    = {val(self.Pic_X)}    [{self.justification.get('Pic_X', '')}]",
            f"Br_a(X,G) = {val(self.Br_a_X_G)}    [{self.justification.get('Br_a_X_G', '')}]",
        ]
        lines.extend(f"caveat: {c}" for c in self.caveats)
        return "\n".join(lines)


def _complex_for(G: LinearGroupData, H: StabilizerData, presentation: str, pic_zero: bool) -> ModComplex:
    if presentation == "torus":
        return build_C_hat_X(G, H)
    if presentation == "center":
        return build_center_complex(G, H)
    if presentation == "bar":
        if not pic_zero:
            raise InconsistentFlags("presentation 'bar' needs pic_Gbar_zero")
        return C_bar_X(G, H, [PIC_GBAR_ZERO])
    raise ValueError(f"unknown presentation {presentation!r}; expected one of {PRESENTATIONS}")


def evaluate(
    G: LinearGroupData,
    H: StabilizerData | None = None,
    flags: Iterable[str] = (),
    ns: NsData | None = None,
    presentation: str = "torus",
) -> HomSpaceReport:
    """Evaluate ``U(X)``, ``Pic(X)`` and ``Br_a(X, G)`` for ``X = G/H``.

    ``U(X) = H^0`` always. ``Pic(X) = H^1`` given a rational point, or given
    ``Br_k_injects`` together with ``Pic(G-bar) = 0``. ``Br_a(X, G) = H^2``
    given a rational point, or given ``H3_k_Gm_vanishes`` together with
    ``Pic(G-bar) = 0``. Otherwise the field is ``None`` and the bounding
    exact sequence is recorded as a caveat.
    """
    flags = set(flags)
    unknown = flags - set(FLAGS)
    if unknown:
        raise InconsistentFlags(f"unknown flags {sorted(unknown)}; known: {list(FLAGS)}")
    if ns is not None and not _is_zero_module(ns.NS):
        raise InconsistentFlags(
            "a nonzero Neron-Severi module means G is not linear; use ns_sequence_report"
        )
    # the flag is the user's assertion and stands in for the data field
    pic_zero = G.pic_Gbar_zero or PIC_GBAR_ZERO in flags
    H = (H or StabilizerData.trivial(G.gamma)).bind(G)
    C = _complex_for(G, H, presentation, pic_zero)
    label = {"torus": "C_hat_X", "center": "C_hat_X (centre presentation)", "bar": "C_bar_X"}[presentation]
    H0, H1, H2 = (hypercohomology_structure(C, n) for n in range(3))
    assumptions = frozenset(flags | ({PIC_GBAR_ZERO} if pic_zero else set()))
    just: dict[str, str] = {"U_X": "H^0 of the complex; no side condition"}
    caveats: list[str] = []

    point = X_HAS_RATIONAL_POINT in flags
    if point:
        Pic = H1
        just["Pic_X"] = "X(k) nonempty: Pic(X) = H^1"
    elif BR_K_INJECTS in flags and pic_zero:
        Pic = H1
        just["Pic_X"] = "Br(k) -> Br(X) injective and Pic(G-bar) = 0: Pic(X) = H^1"
    else:
        Pic = None
        just["Pic_X"] = "conditional"
        if pic_zero:
            caveats.append(f"0 -> Pic(X) -> H^1 = {H1} -> Ker(Br(k) -> Br(X))")
        else:
            caveats.append(
                "Pic(X) needs X_has_rational_point (or Br_k_injects with pic_Gbar_zero)"
            )

    if point:
        Br = H2
        just["Br_a_X_G"] = "X(k) nonempty: Br_a(X,G) = H^2"
    elif H3_K_GM_VANISHES in flags and pic_zero:
        Br = H2
        just["Br_a_X_G"] = "H^3(k,Gm) -> H^3(X,Gm) injective and Pic(G-bar) = 0: Br_a(X,G) = H^2"
    else:
        Br = None
        just["Br_a_X_G"] = "conditional"
        if pic_zero:
            caveats.append(
                f"0 -> Br_a(X,G) -> H^2(k, C_bar_X) = {H2} -> N^3(k,Gm) := Ker(H^3(k,Gm) -> H^3(X,Gm))"
            )
        else:
            caveats.append(
                "Br_a(X,G) needs X_has_rational_point (or H3_k_Gm_vanishes with pic_Gbar_zero); "
                f"H^2 = {H2} is only related to it through Pic(G-bar)"
            )
    return HomSpaceReport(H0, Pic, Br, H1, H2, label, assumptions, just, caveats)


def _is_zero_module(M: GammaModule) -> bool:
    return M.carrier.structure().is_trivial


@dataclass
class NsSequenceReport:
    """Computable terms of ``0 -> H^1(C_X) -> Pic(X) -> NS^G -> H^2(C_X) -> Br_a(X,G) -> H^1(k, NS)``."""

    H1_C_X: AbStructure
    NS_invariants: AbStructure
    H2_C_X: AbStructure
    H1_NS: AbStructure
    Pic_X: AbStructure | None = None
    Br_a_X_G: AbStructure | None = None
    caveats: list = field(default_factory=list)

    def sequence(self) -> str:
        pic = str(self.Pic_X) if self.Pic_X is not None else "Pic(X)"
        br = str(self.Br_a_X_G) if self.Br_a_X_G is not None else "Br_a(X,G)"
        return (
            f"0 -> {self.H1_C_X} -> {pic} -> {self.NS_invariants} -> {self.H2_C_X} -> {br} -> {self.H1_NS}"
        )

    def to_json(self) -> dict:
        def val(s):
            return s.to_json() if s is not None else "unknown"

        return {
            "H1_C_X": self.H1_C_X.to_json(),
            "NS_invariants": self.NS_invariants.to_json(),
            "H2_C_X": self.H2_C_X.to_json(),
            "H1_NS": self.H1_NS.to_json(),
            "Pic_X": val(self.Pic_X),
            "Br_a_X_G": val(self.Br_a_X_G),
            "sequence": self.sequence(),
            "caveats": list(self.caveats),
        }


def ns_sequence_report(
    G: LinearGroupData,
    H: StabilizerData | None,
    ns: NsData | None,
    flags: Iterable[str] = (),
) -> NsSequenceReport:
    """Terms of the Neron-Severi exact sequence; ``G`` describes the linear part.

    ``Pic(X)`` and ``Br_a(X, G)`` are left unknown unless ``NS = 0``, in
    which case the sequence collapses to isomorphisms.
    """
    if ns is None:
        raise InvalidGroupData("ns_sequence_report needs NsData")
    flags = set(flags)
    C = build_C_hat_X(G, H)
    gamma = G.gamma
    h1, h2 = hypercohomology_structure(C, 1), hypercohomology_structure(C, 2)
    NS = ns.NS
    if NS.gamma != gamma:
        raise GammaMismatch("NS is over a different group")
    ns_inv = invariants(NS).structure()
    h1_ns = cohomology_structure(gamma, NS, 1)
    rep = NsSequenceReport(h1, ns_inv, h2, h1_ns)
    if X_HAS_RATIONAL_POINT not in flags:
        rep.caveats.append("the sequence is stated for X = G/H, i.e. with a rational point")
    if _is_zero_module(NS):
        rep.Pic_X, rep.Br_a_X_G = h1, h2
        rep.caveats.append("NS = 0: the sequence reduces to Pic(X) = H^1 and Br_a(X,G) = H^2")
    return rep


def quasi_isomorphic_presentations(G: LinearGroupData, H: StabilizerData, degrees=range(4)) -> bool:
    """Whether the torus and centre presentations agree via the comparison map."""
    return is_quasi_isomorphism(torus_to_center_map(G, H), degrees)
