"""Quasi-2-Segal sets: horns, filler checks, anodyne certificates and examples."""

import json

from . import _core
from ._core import (
    BudgetExceeded,
    CapExceeded,
    Error,
    InvalidArgument,
    extreme_vertices,
    is_broken,
    triangulations,
    two_segal_horns,
)

__all__ = [
    "BudgetExceeded",
    "CapExceeded",
    "Error",
    "InvalidArgument",
    "certify",
    "check",
    "counterexample",
    "example",
    "extreme_vertices",
    "is_broken",
    "shape",
    "triangulations",
    "two_segal_horns",
    "verify",
]


def shape(spec):
    """Sub, ambient and inclusion of a shape spec, as ssetjson/1 dicts."""
    return json.loads(_core.shape_json(json.dumps(spec)))


def example(name, cap):
    return json.loads(_core.example_json(name, cap))


def check(prop, example_name, cap, seed=0, samples=0):
    """Filler report; samples == 0 means exhaustive."""
    return json.loads(_core.check_json(prop, example_name, cap, seed, samples))


def certify(spec):
    return json.loads(_core.certify_json(json.dumps(spec)))


def verify(cert):
    return json.loads(_core.verify_json(json.dumps(cert)))


def counterexample():
    return json.loads(_core.counterexample_json())
