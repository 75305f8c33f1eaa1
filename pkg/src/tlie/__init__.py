"""Basic T-Lie algebras: structure tables, axiom checks, PBW normal forms and certificates."""

from __future__ import annotations

from . import axioms, catalog, core, enveloping, expr, scalar, specfile, symrep
from .axioms import ALL_CHECKS, check_adequacy, check_braid, reevaluate, verify
from .catalog import load as load_catalog
from .core import BasisElement, TensorPoly, TLieSpec, build_spec, specialize_spec
from .enveloping import (
    diamond_check,
    enumerate_pbw,
    ideal_member_truncated,
    normalize,
    pbw_multiply,
)
from .errors import TLieError
from .expr import parse_expression
from .report import CheckRecord, VerificationReport, Witness
from .scalar import LaurentScalar
from .symrep import act, act_word, check_lemma_c, independence_certificate

__version__ = "0.1.0"

__all__ = [
    "axioms", "catalog", "core", "enveloping", "expr", "scalar", "specfile", "symrep",
    "ALL_CHECKS", "check_adequacy", "check_braid", "reevaluate", "verify", "load_catalog",
    "BasisElement", "TensorPoly", "TLieSpec", "build_spec", "specialize_spec", "diamond_check",
    "enumerate_pbw", "ideal_member_truncated", "normalize", "pbw_multiply", "TLieError",
    "parse_expression", "CheckRecord", "VerificationReport", "Witness", "LaurentScalar", "act",
    "act_word", "check_lemma_c", "independence_certificate",
]
