"""
Arithmetic step and size bounds for the canonical strategy.

Two per-round step bounds are reported:

- ``per_round_bounds``: psz_d of the starting derivation. This is the bound
  for a round at level d whose level-d part was not copied by earlier
  rounds; ``check_round_bounds(..., strict=True)`` holds runs to it.
- ``step_bounds``: psz_0 for round 0, then the size surrogate S: S_0 is the
  total partial size and a complete round at most squares-and-doubles it,
  S_{i+1} = 2 * S_i ** 2. Round i (i >= 1) fires at most S_i redexes, since
  a round never fires more redexes than the size of the term it starts
  from. This one holds for every run, duplications included.

The term after round i is bounded by S_{i+1}.
"""

from typing import List

from walt_workbench.core.models import BoundReport, Trace
from walt_workbench.judgments.derivation import Derivation
from walt_workbench.judgments.measures import measure_report

GROWTH_EXPONENT = 2


def poly_bound_report(d: Derivation) -> BoundReport:
    report = measure_report(d)
    surrogate = [sum(report.psz)]
    for _ in range(report.depth + 1):
        surrogate.append(2 * surrogate[-1] ** GROWTH_EXPONENT)
    step_bounds = [report.psz[0]] + surrogate[1:report.depth + 1]
    return BoundReport(
        k=GROWTH_EXPONENT,
        depth=report.depth,
        size=surrogate[0],
        per_round_bounds=list(report.psz),
        size_bounds=surrogate[1:],
        bound=sum(step_bounds),
        step_bounds=step_bounds,
    )


def round_step_bounds(report: BoundReport, strict: bool = False) -> List[int]:
    """Step bound of every complete round, level 0 first"""
    return list(report.per_round_bounds if strict else report.step_bounds)


def check_round_bounds(trace: Trace, report: BoundReport, strict: bool = False) -> List[str]:
    """Bounds a canonical run broke; empty when the trace stays inside the report

    With ``strict`` every round at level d is held to psz_d of the starting
    derivation, and the whole run to their sum.
    """
    problems = []
    if len(trace.rounds) > report.depth + 1:
        problems.append(f"{len(trace.rounds)} rounds for a derivation of depth {report.depth}")
    limits = round_step_bounds(report, strict)
    for i, summary in enumerate(trace.rounds[:report.depth + 1]):
        if summary.steps > limits[i]:
            problems.append(f"round d={summary.level}: {summary.steps} steps exceed {limits[i]}")
        if summary.size > report.size_bounds[i]:
            problems.append(f"round d={summary.level}: size {summary.size} exceeds {report.size_bounds[i]}")
    total = sum(limits)
    if trace.step_count > total:
        problems.append(f"{trace.step_count} steps exceed the total bound {total}")
    return problems
