"""Euclidean Jordan algebras, exact convex state spaces, and spectrality tools.

The layers, bottom up: scalars/exactla/exactlp hold the exact rational and
Q(sqrt 5) arithmetic with a fraction-pivoting simplex solver; hypercomplex,
algebra, and spectral implement the five simple algebra families and their
spectral decompositions; geometry, operational, and symmetry treat convex
bodies as state spaces with frames, faces, automorphisms, and transporters;
classification ties the families to the symmetric-space tables and bundles
the theorem-verification batteries; cli exposes it all as JSON-emitting
subcommands.
"""

from .algebra import (
    AlgebraDescriptor,
    EjaElement,
    algebra,
    determinant,
    inner,
    jordan_product,
    norm,
    power,
    quadratic_rep,
    trace,
    unit,
    zero,
)
from .classification import (
    ClassificationError,
    FrSection,
    MrTableRow,
    eval_formula,
    fr_polytope,
    fr_section,
    load_tables,
    mr_table_all,
    mr_table_lookup,
    section_sample_check,
    standard_frame,
    table_consistency_check,
    verify_converse_on_polytopes,
    verify_main_theorem_if_direction,
)
from .geometry import (
    Ball,
    EjaStateSpace,
    GeometryError,
    Polytope,
    ball,
    barycenter,
    body_from_dict,
    body_to_dict,
    cube,
    eja_state_space,
    exposed_faces,
    flags,
    hexagon,
    maximal_flags,
    membership,
    octahedron,
    pentagon,
    polytope,
    rectangle,
    simplex,
    square,
)
from .operational import (
    EjaFace,
    OperationalError,
    SpectralVerdict,
    complement_face,
    distinguishing_measurement,
    enumerate_frames,
    face_of_frame,
    is_measurement,
    is_spectral,
    rank,
    recheck_counterexample,
)
from .scalars import SQRT5, Sqrt5, format_scalar, parse_scalar
from .spectral import SpectralDecomposition, random_state, spectral_decompose
from .symmetry import (
    StrongSymmetryReport,
    SymmetryError,
    UnsupportedFamily,
    automorphism_group,
    extend_to_maximal_frame,
    frame_flag_bijection,
    is_regular,
    is_strongly_symmetric,
    jordan_frame_transporter,
    verify_strong_symmetry_eja,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraDescriptor",
    "Ball",
    "ClassificationError",
    "EjaElement",
    "EjaFace",
    "EjaStateSpace",
    "FrSection",
    "GeometryError",
    "MrTableRow",
    "OperationalError",
    "Polytope",
    "SQRT5",
    "SpectralDecomposition",
    "SpectralVerdict",
    "Sqrt5",
    "StrongSymmetryReport",
    "SymmetryError",
    "UnsupportedFamily",
    "algebra",
    "automorphism_group",
    "ball",
    "barycenter",
    "body_from_dict",
    "body_to_dict",
    "complement_face",
    "cube",
    "determinant",
    "distinguishing_measurement",
    "eja_state_space",
    "enumerate_frames",
    "eval_formula",
    "exposed_faces",
    "extend_to_maximal_frame",
    "face_of_frame",
    "flags",
    "format_scalar",
    "fr_polytope",
    "fr_section",
    "frame_flag_bijection",
    "hexagon",
    "inner",
    "is_measurement",
    "is_regular",
    "is_spectral",
    "is_strongly_symmetric",
    "jordan_frame_transporter",
    "jordan_product",
    "load_tables",
    "maximal_flags",
    "membership",
    "mr_table_all",
    "mr_table_lookup",
    "norm",
    "octahedron",
    "parse_scalar",
    "pentagon",
    "polytope",
    "power",
    "quadratic_rep",
    "random_state",
    "rank",
    "recheck_counterexample",
    "rectangle",
    "section_sample_check",
    "simplex",
    "spectral_decompose",
    "square",
    "standard_frame",
    "table_consistency_check",
    "trace",
    "unit",
    "verify_converse_on_polytopes",
    "verify_main_theorem_if_direction",
    "zero",
]
