"""Rhaly operator analysis: coefficient criteria, truncation spectra, multipliers.

Numeric helpers return floats or numpy arrays; report builders return the
same dictionaries the command-line tool writes as JSON, with non-finite
values spelled "inf", "-inf" or "nan".
"""

import json

from ._terraced import (
    SCHEMA,
    DivergenceError,
    Sequence,
    SequenceParseError,
    J_value,
    K_value,
    L_value,
    apply_rhaly,
    build_Tc,
    eigen_check,
    gram_lshape,
    l_form,
    mu,
    singular_values,
    truncate_factorable,
    truncate_rhaly,
    zeta_bracket,
)
from . import _terraced as _core

DEFAULT_SCHEDULE = (128, 256, 512, 1024, 2048)


def interval_report(spec, a, b):
    return json.loads(_core._interval_report(spec, a, b))


def sigma_profile(spec, k_max=20):
    return json.loads(_core._sigma_profile(spec, k_max))


def J_n(spec, n=0):
    return json.loads(_core._J_n(spec, n))


def bennett_K2(alpha, beta):
    return json.loads(_core._bennett_K2(alpha, beta))


def criteria_report(spec, q=(2.0,), k_max=20):
    return json.loads(_core._criteria_report(spec, list(q), k_max))


def eps_l(spec, epsilon, cap=4096):
    """(eps, L)-sequence together with the approximation-number bounds it implies."""
    return json.loads(_core._eps_l(spec, epsilon, cap))


def spectral_report(spec, n_max=8, q=(2.0,), schedule=DEFAULT_SCHEDULE):
    return json.loads(_core._spectral_report(spec, n_max, list(q), list(schedule)))


def multiplier_report(c, q=(2.0,)):
    return json.loads(_core._main4_report(c, list(q)))


def verify(seed=7, count=100):
    return json.loads(_core._verify(seed, count))


def as_float(x):
    """Undo the string spelling of non-finite numbers."""
    return float(x) if isinstance(x, str) else x
