"""Hypercohomology of Galois modules and Brauer groups of homogeneous spaces.

The layers build on one another:

* :mod:`.intmat` -- exact integer matrices, Smith and Hermite forms;
* :mod:`.abgroups` -- finitely presented abelian groups;
* :mod:`.finite_group` -- finite groups given by tables or permutations;
* :mod:`.galois_modules` -- modules over such groups;
* :mod:`.group_cohomology` -- bar-cochain cohomology and periodic oracles;
* :mod:`.complexes` -- complexes, cones and hypercohomology;
* :mod:`.homspace` -- the complexes attached to ``X = G/H`` and their evaluation;
* :mod:`.corpus`, :mod:`.cli` -- named examples and the command line.

>>> from galbrauer import corpus, evaluate
>>> e = corpus("pgl2")
>>> rep = evaluate(e.G, e.H, e.flags)
>>> str(rep.Pic_X), str(rep.Br_a_X_G)
('Z/2', 'Z/2')
"""

from .abgroups import AbHom, AbStructure, FpAbGroup, cokernel, image, kernel, minimal_presentation, subquotient
from .complexes import (
    ChainMap,
    ModComplex,
    check_cone_les,
    cone,
    hypercohomology,
    hypercohomology_structure,
    is_quasi_isomorphism,
    shift,
)
from .corpus import corpus, corpus_names
from .finite_group import FiniteGroup, cyclic_group, direct_product, klein_four, symmetric_group
from .galois_modules import (
    GammaHom,
    GammaModule,
    direct_sum,
    invariants,
    norm_one_torus_module,
    regular_module,
    sign_module,
    trivial_module,
    zero_module,
)
from .group_cohomology import cohomology, cohomology_structure, cyclic_oracle, product_cyclic_oracle
from .homspace import (
    FLAGS,
    HomSpaceReport,
    LinearGroupData,
    NsData,
    StabilizerData,
    build_C_bar_X,
    build_C_hat_X,
    build_center_complex,
    evaluate,
    ns_sequence_report,
)
from .intmat import IntMatrix, SnfDecomposition, hnf, kernel_basis, snf, solve

__version__ = "0.1.0"

__all__ = [
    "AbHom", "AbStructure", "FpAbGroup", "cokernel", "image", "kernel", "minimal_presentation", "subquotient",
    "ChainMap", "ModComplex", "check_cone_les", "cone", "hypercohomology", "hypercohomology_structure",
    "is_quasi_isomorphism", "shift",
    "corpus", "corpus_names",
    "FiniteGroup", "cyclic_group", "direct_product", "klein_four", "symmetric_group",
    "GammaHom", "GammaModule", "direct_sum", "invariants", "norm_one_torus_module", "regular_module",
    "sign_module", "trivial_module", "zero_module",
    "cohomology", "cohomology_structure", "cyclic_oracle", "product_cyclic_oracle",
    "FLAGS", "HomSpaceReport", "LinearGroupData", "NsData", "StabilizerData", "build_C_bar_X", "build_C_hat_X",
    "build_center_complex", "evaluate", "ns_sequence_report",
    "IntMatrix", "SnfDecomposition", "hnf", "kernel_basis", "snf", "solve",
]
