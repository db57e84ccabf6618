"""Polycontrolled qudit circuits, their finite axiom catalog, and the Gray-code
translation to single-photon linear-optical circuits."""

from .axioms import (
    AxiomInstance,
    AxiomSchema,
    catalog,
    check_instance,
    eh_angles,
    euler_so3,
    instantiate,
    pi_split,
    run_harness,
    synth_two_level,
)
from .errors import *  # noqa: F401,F403
from .ir import (
    EMPTY,
    SWAP,
    WIRE,
    Ctrl,
    Empty,
    GlobalPhase,
    Hadamard,
    Par,
    Seq,
    SwapGen,
    Term,
    Wire,
    block_swap_term,
    compose,
    h_gate,
    id_circuit,
    iterated_control,
    rx_gate,
    validate,
    x_gate,
)
from .lopp import BeamSplitter, Phase, validate_lopp
from .normalize import is_layer_form, measure, separate
from .semantics import interp_lopp_gray, interp_lopp_sp, interp_qudit, unitary_equal
from .textfmt import parse, to_text
from .transpile import DecodingContext, EncodingContext, decode, encode, lambda_wrap

__version__ = "0.1.0"
