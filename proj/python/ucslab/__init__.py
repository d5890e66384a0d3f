"""Exhaustive enumeration and separation analysis of union-closed families.

Families on n ground elements are lists of bitmasks (int); bit i set means
element i is in the member. Every valid family contains 0 (the empty set)
and 2**n - 1 (the full set).
"""

import json
from fractions import Fraction

try:
    from ._ucslab import *  # noqa: F401,F403  (installed layout)
    from . import _ucslab as _core
except ImportError:  # build-tree layout: extension sits on sys.path
    from _ucslab import *  # noqa: F401,F403
    import _ucslab as _core

__all__ = [
    "union_closure",
    "is_union_closed",
    "is_separated",
    "is_weakly_separated",
    "cover_count",
    "best_cover",
    "max_frequency",
    "conjecture_bound",
    "binomial_tail_sum",
    "enumerate_families",
    "canonical_form",
    "enumerate_canonical",
    "classify_all",
    "derive_disjoint_subfamily",
    "derive_quotient_subfamily",
    "empirical_constant",
    "verify_conjecture",
    "audit_binomial",
    "EmptyClassError",
]


def conjecture_bound(k, l):
    """The conjectured extremal fraction for order k|l, as a Fraction."""
    num, den = _core.conjecture_bound(k, l)
    return Fraction(num, den)


def empirical_constant(n, k, l, cls="all", workers=1):
    """Minimum best-cover fraction over a class of families, as a dict.

    Keys mirror the CLI report; 'value' is added as an exact Fraction.
    """
    report = json.loads(_core.empirical_constant_json(n, k, l, cls, workers))
    report["value"] = Fraction(report["value_num"], report["value_den"])
    return report


def verify_conjecture(n, k, l, variant="standard"):
    """Checks the conjectured bound over the matching class; dict report."""
    report = json.loads(_core.verify_conjecture_json(n, k, l, variant))
    report["bound"] = Fraction(report["bound_num"], report["bound_den"])
    report["min_value"] = Fraction(report["min_value_num"], report["min_value_den"])
    return report


def audit_binomial(max_k=30):
    """Exact integer audit of the two binomial tail inequalities."""
    return json.loads(_core.audit_binomial_json(max_k))
