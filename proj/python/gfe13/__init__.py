"""Python bindings for the gfe13 core library."""

import json

from ._core import (
    BadPrime,
    Error,
    MissingFreyData,
    NotAUnit,
    NotCoprime,
    ParseError,
    UnknownPointSet,
    UnsupportedPrime,
    default_auxiliary_prime,
    descent_identity_holds,
    extraneous_unit,
    gcd_facts,
    is_on_curve,
    known_points,
    mod_q_pair_list,
    point_verdict,
    search,
    verify_cyclotomic_factorization,
)
from ._core import sieve_json as _sieve_json

__all__ = [
    "BadPrime",
    "Error",
    "MissingFreyData",
    "NotAUnit",
    "NotCoprime",
    "ParseError",
    "UnknownPointSet",
    "UnsupportedPrime",
    "default_auxiliary_prime",
    "descent_identity_holds",
    "extraneous_unit",
    "gcd_facts",
    "is_on_curve",
    "known_points",
    "mod_q_pair_list",
    "point_verdict",
    "run_sieve",
    "search",
    "verify_cyclotomic_factorization",
]


def run_sieve(p, case="I", threads=0):
    """Sieve report for prime p as a dict (same layout as the CLI JSON)."""
    return json.loads(_sieve_json(p, case, threads))
