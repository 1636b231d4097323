"""Equivariant slice obstructions for strongly negative amphichiral knots."""
from .checkerboard import (
    CheckerboardPresentation,
    GoeritzForm,
    goeritz,
    load_presentation,
    parse_presentation,
    reduced_incidence,
    validate,
)
from .embeddings import LatticeEmbedding, canonical_form, enumerate_embeddings, is_embedding
from .lens import conjecture_scan, lens_d_invariants, orbit_structure_check, qsq_condition
from .obstructions import (
    Level,
    SigmaAction,
    Verdict,
    check_invariance,
    det_obstruction,
    full_pipeline,
    metabolizer_spinc,
    sigma_star,
    sum_of_two_squares,
)
from .spinc import SpincClass, SpincLattice, canonicalize, enumerate_spinc, is_characteristic, same_class

__version__ = "0.1.0"
