"""Critical error linear complexity spectra of binary sequences with period 2^n."""
from celcs.cube import (
    Cube,
    CubeDecomposition,
    DecompositionError,
    Mask,
    cube_lc,
    kerror_decomposition,
    kerror_decomposition_partial,
    lc_mask,
    parse_cube,
    recognise_cube,
    standard_cube,
    standard_decomposition,
)
from celcs.errors import CapacityError, CelcsError, SequenceFormatError
from celcs.kernels import BACKEND
from celcs.seqcore import (
    Seq,
    add,
    format_sequence,
    lc_poly_oracle,
    linear_complexity,
    parse_sequence,
    phi,
    weight,
)
from celcs.spectrum import Celcs, celcs, error_witness, first_descent_k, first_drop, kerror_lc

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CapacityError",
    "Celcs",
    "CelcsError",
    "Cube",
    "CubeDecomposition",
    "DecompositionError",
    "Mask",
    "Seq",
    "SequenceFormatError",
    "add",
    "celcs",
    "cube_lc",
    "error_witness",
    "first_descent_k",
    "first_drop",
    "format_sequence",
    "kerror_decomposition",
    "kerror_decomposition_partial",
    "kerror_lc",
    "lc_mask",
    "lc_poly_oracle",
    "linear_complexity",
    "parse_cube",
    "parse_sequence",
    "phi",
    "recognise_cube",
    "standard_cube",
    "standard_decomposition",
    "weight",
]
