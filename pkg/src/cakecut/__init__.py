"""Exact division of [0,1] among agents with unequal rational demands.

Everything is computed over arbitrary-precision rationals; validity of a
division and every internal case decision is an exact comparison, never
a tolerance.  The main entry points:

  solve            division with at most 3n-4 cuts, plus a full trace
  verify           exact check of any division against any instance
  solve_pair       two agents, at most 2 cuts, via a circle argument
  sliding_knife_equal / common_denominator   classical baselines
  lower_bound_instance   a family that forces 2n-2 cuts
  oracle_min_cuts  exhaustive minimal-cut search at desk scale
  search_witness   exact decision of the balanced two-arc partition
                   property on the circle, per instance

All values are immutable and all functions pure, so everything is safe
to share across threads.
"""

from .baseline import common_denominator, sliding_knife_equal
from .conjecture import ConjectureWitness, search_witness, stress_campaign, verify_witness
from .division import Division, Instance, VerificationReport, cut_count_bound, verify
from .errors import BudgetError, PreconditionError, ValidationError
from .instances import (
    LowerBoundParams,
    OracleResult,
    count_support_cuts,
    lower_bound_instance,
    oracle_min_cuts,
    random_instance,
)
from .measure import CircleArc, Crossings, Measure, crossings
from .pair import PigeonholeCertificate, circle_lemma, circle_lemma_certified, sliding_arc, solve_pair
from .serialize import (
    division_from_json,
    division_to_json,
    instance_from_json,
    instance_to_json,
)
from .solver import CaseStep, SweepResult, Trace, TraceCheck, check_trace, find_sweep, solve

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "CaseStep",
    "CircleArc",
    "ConjectureWitness",
    "Crossings",
    "Division",
    "Instance",
    "LowerBoundParams",
    "Measure",
    "OracleResult",
    "PigeonholeCertificate",
    "PreconditionError",
    "SweepResult",
    "Trace",
    "TraceCheck",
    "ValidationError",
    "VerificationReport",
    "check_trace",
    "circle_lemma",
    "circle_lemma_certified",
    "common_denominator",
    "count_support_cuts",
    "crossings",
    "cut_count_bound",
    "division_from_json",
    "division_to_json",
    "find_sweep",
    "instance_from_json",
    "instance_to_json",
    "lower_bound_instance",
    "oracle_min_cuts",
    "random_instance",
    "search_witness",
    "sliding_arc",
    "sliding_knife_equal",
    "solve",
    "solve_pair",
    "stress_campaign",
    "verify",
    "verify_witness",
]
