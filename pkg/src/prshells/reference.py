"""Published values for PR_2^3(31) and PR_5^3(13), used by the reproduce harness."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .jacobi import JacobiPolynomial


@lru_cache(maxsize=1)
def load() -> dict:
    return json.loads(resources.files("prshells").joinpath("data/reference.json").read_text())


def table(name: str) -> dict[int, int]:
    """ell -> lambda for ``table1`` or ``table2``."""
    d = load()[name]
    lo, hi = d["ell"]
    return dict(zip(range(lo, hi + 1), d["lambda"]))


def example(name: str) -> dict:
    """Parameters, orbit representatives, Jacobi polynomials and enumerator vectors."""
    d = dict(load()[name])
    d["representatives"] = [tuple(r) for r in d["representatives"]]
    d["polynomials"] = [JacobiPolynomial.from_json(p) for p in d["polynomials"]]
    return d
