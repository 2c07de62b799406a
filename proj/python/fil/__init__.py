"""Graded inequational logic over finite residuated chains.

Theories are given as text in the theory language; degrees are strings
such as "2/4", "0" or "1".
"""

import json

from ._fil import (
    BudgetExceeded,
    Error,
    Lattice,
    LatticeMismatch,
    ParseError,
    SemanticError,
    ai_equivalent,
    ai_prove,
    count_models,
    prove,
    run_cli,
)
from . import _fil

__all__ = [
    "BudgetExceeded",
    "Error",
    "Lattice",
    "LatticeMismatch",
    "ParseError",
    "SemanticError",
    "ai_equivalent",
    "ai_prove",
    "certify",
    "check_proof",
    "count_models",
    "proof",
    "prove",
    "run_cli",
]


def proof(theory, query, depth=None):
    """Annotated proof of the query at its provability degree, as a list of steps."""
    return json.loads(_fil.proof_json(theory, query, depth))


def certify(theory, query, depth=None, model_size=3, budget=10_000_000):
    """Lower bound from the closure and upper bound from models up to model_size."""
    return json.loads(_fil.certify_json(theory, query, depth, model_size, budget))


def check_proof(theory, steps, strict=False):
    """Verdict for a proof given as a list of steps (the format returned by proof)."""
    return json.loads(_fil.check_proof_json(theory, json.dumps(steps), strict))
