"""Exact lambda-derivative / lambda-integral calculus on Laurent polynomials."""
from .algebra import ComplexApprox, LaurentPoly, format_rational, parse_rational
from .errors import (
    DomainError,
    LamCalcError,
    NumericError,
    ParseError,
    PoleError,
    TruncationError,
)
from .lambinom import BasisSpec, lb_eval, lb_expand, lb_general
from .ops import (
    OperatorContext,
    d_lambda,
    d_lambda_n,
    i_lambda,
    i_lambda_n,
    jackson_derivative,
)
from .qsymbols import (
    TruncationConfig,
    big_e_q,
    e_q,
    q_binomial,
    q_pochhammer,
    q_pochhammer_inf,
)
from .taylor import (
    BasisExpansion,
    compare_connection,
    reconstruct,
    taylor_via_connection,
    taylor_via_system,
)

__version__ = "0.1.0"

__all__ = [
    "BasisExpansion", "BasisSpec", "ComplexApprox", "DomainError", "LamCalcError", "LaurentPoly",
    "NumericError", "OperatorContext", "ParseError", "PoleError", "TruncationConfig", "TruncationError",
    "big_e_q", "compare_connection", "d_lambda", "d_lambda_n", "e_q", "format_rational", "i_lambda",
    "i_lambda_n", "jackson_derivative", "lb_eval", "lb_expand", "lb_general", "parse_rational",
    "q_binomial", "q_pochhammer", "q_pochhammer_inf", "reconstruct", "taylor_via_connection",
    "taylor_via_system",
]
