"""flagforge: buildings over finite fields, their top-homology modules, group
homology at desk scale, and the symbolic operation calculus behind the
associated vanishing lines.

The pieces:

    ffield     exact F_{p^r} arithmetic, RREF subspaces, subspace lattice ops
    linalg     streaming exact rank/kernel over prime fields
    complexes  posets, order complexes, reduced homology, fibration bookkeeping
    glgroup    enumerated matrix groups, orbits, double cosets, Sylow subgroups
    buildings  subspace and splitting posets, with the comparison lemmas
    steinberg  top homology as explicit group representations
    ghomology  bar complex, cochains, stable elements through a Sylow subgroup
    dlss       mod-2 operation calculus, page differentials, truncated Tor
    suites     named verification suites surfaced by the `flagforge` CLI
"""

from .ffield import FieldSpec, Subspace, enumerate_subspaces, field_make, gaussian_binomial, rref
from .glgroup import MatGroup, SubgroupSpec, full_gl, group_make, sylow_subgroup
from .complexes import ChainComplex, Poset, PosetMap, is_spherical, order_complex
from .buildings import BuildingKind, betti_profile, build
from .steinberg import GModule, top_homology_module, trivial_module
from .ghomology import bar_homology, coinvariants, stable_elements_homology
from .suites import SUITES, run_suite

__all__ = [
    "FieldSpec", "Subspace", "enumerate_subspaces", "field_make", "gaussian_binomial", "rref",
    "MatGroup", "SubgroupSpec", "full_gl", "group_make", "sylow_subgroup",
    "ChainComplex", "Poset", "PosetMap", "is_spherical", "order_complex",
    "BuildingKind", "betti_profile", "build",
    "GModule", "top_homology_module", "trivial_module",
    "bar_homology", "coinvariants", "stable_elements_homology",
    "SUITES", "run_suite",
]

__version__ = "0.1.0"
