"""Python front end for the smart-card authentication lab.

The extension returns JSON text; these wrappers decode it.
"""

import json

from . import _core
from ._core import TmisError, list_scenarios, list_schemes, mod_exp, mod_inv, rabin_roots, toy_ec_mul

__all__ = [
    "TmisError",
    "attack",
    "attribute_matrix",
    "list_scenarios",
    "list_schemes",
    "matrix_markdown",
    "mod_exp",
    "mod_inv",
    "rabin_roots",
    "run_session",
    "toy_ec_mul",
]


def run_session(scheme, seed=0, delta_t=5):
    """One honest session; returns the transcript as a dict."""
    return json.loads(_core.run_session(scheme, seed, delta_t))


def attack(scheme, scenario, trials=100, seed=0, tamper="identity", refresh_timestamp=False,
           leak="session_nonces", delta_t=5, include_transcripts=False):
    return json.loads(_core.attack(scheme, scenario, trials, seed, tamper, refresh_timestamp, leak, delta_t,
                                   include_transcripts))


def attribute_matrix(trials=100, seed=0, delta_t=5):
    return json.loads(_core.attribute_matrix(trials, seed, delta_t, False))


def matrix_markdown(trials=100, seed=0, delta_t=5):
    return _core.attribute_matrix(trials, seed, delta_t, True)
