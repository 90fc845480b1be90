"""Type-B permutation tableaux: enumeration, exact expectations, sampling, PASEP."""

from fractions import Fraction

from . import _core
from ._core import (
    BtabError,
    border_to_state,
    enumerate,
    enumerate_count,
    estimate,
    grid,
    pasep_simulate,
    pasep_stationary,
    sample_uniform,
    stats,
    u_trace,
    validate,
)

__all__ = [
    "BtabError",
    "border_to_state",
    "brute_mean",
    "enumerate",
    "enumerate_count",
    "estimate",
    "expected_rows",
    "expected_unrestricted",
    "expected_diagonal_ones",
    "expected_ss_pairs",
    "expected_ww_pairs",
    "grid",
    "p_south",
    "p_ss",
    "p_ww",
    "p_g1",
    "pasep_simulate",
    "pasep_stationary",
    "sample_uniform",
    "stats",
    "u_moment",
    "u_trace",
    "validate",
]


def _fraction_wrapper(name):
    raw = getattr(_core, name)

    def wrapped(*args, **kwargs):
        return Fraction(raw(*args, **kwargs))

    wrapped.__name__ = name
    wrapped.__doc__ = raw.__doc__
    return wrapped


# exact values cross the boundary as "num/den" strings; expose them as Fractions
brute_mean = _fraction_wrapper("brute_mean")
expected_rows = _fraction_wrapper("expected_rows")
expected_unrestricted = _fraction_wrapper("expected_unrestricted")
expected_diagonal_ones = _fraction_wrapper("expected_diagonal_ones")
expected_ss_pairs = _fraction_wrapper("expected_ss_pairs")
expected_ww_pairs = _fraction_wrapper("expected_ww_pairs")
p_south = _fraction_wrapper("p_south")
p_ss = _fraction_wrapper("p_ss")
p_ww = _fraction_wrapper("p_ww")
p_g1 = _fraction_wrapper("p_g1")
u_moment = _fraction_wrapper("u_moment")
