"""Persistent (co)homology over Cayley gradings of integer lattices.

Submodules
----------
grading       partial orders, meets and monoid closures on Z^n
linalg        exact sparse linear algebra over GF(p), plus a dense oracle
complex       simplicial complexes, graded filtrations, stage sequences
homology      gradewise (co)homology and structure maps
presentation  generators/relations, barcodes, survival spaces
cupalg        persistence-cup products, cup-spaces, twisted identities
duality       cap products and persistent Poincare duality
io, cli       file formats and the command-line interface
"""

__version__ = "0.1.0"

from .complex import FilteredComplex, SimplicialComplex, StageSequence, WeightedPointCloud, rips_bifiltration, validate
from .grading import BOTTOM, TOP, CayleyGrading, leq, meet, monoid_closure
from .homology import Engine, homology_basis, persistent_betti, structure_map
from .presentation import barcode, compute_presentation, survival_space
from .cupalg import CupAlgebra, cup_space, persistence_cup, product_survival, twisted_identity_check
from .duality import duality_report, pairing_D

__all__ = [
    "BOTTOM", "TOP", "CayleyGrading", "CupAlgebra", "Engine", "FilteredComplex", "SimplicialComplex",
    "StageSequence", "WeightedPointCloud", "barcode", "compute_presentation", "cup_space", "duality_report",
    "homology_basis", "leq", "meet", "monoid_closure", "pairing_D", "persistence_cup", "persistent_betti",
    "product_survival", "rips_bifiltration", "structure_map", "survival_space", "twisted_identity_check",
    "validate",
]
