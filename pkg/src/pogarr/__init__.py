"""Exact computations with projective line arrangements: Jacobian syzygies,
freeness classification, splitting types on lines and line surgery."""
from .arrangement import (
    Arrangement,
    ParseError,
    ProjLine,
    ProjPoint,
    h_value,
    parse_arrangement_text,
    parse_linear_form,
    read_arrangement,
    singular_points,
    t_value,
)
from .corpus import CORPUS
from .splitting import SplittingType, UnsupportedLine, splitting_type
from .surgery import (
    CertificateMismatch,
    HuntConfig,
    NTStatus,
    hunt_counterexample,
    ntfree_bruteforce,
    ntfree_decide,
    predict_deletion,
)
from .syzygy import (
    Classification,
    ClassificationError,
    Kind,
    PreconditionError,
    classify,
    jumping_line,
    minimal_generators,
    pog_relation,
    z_scheme,
)

__version__ = "0.1.0"
