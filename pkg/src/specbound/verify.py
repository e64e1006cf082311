"""Randomized invariant harness behind the ``verify`` CLI command.

Each trial draws a random connected instance of one perturbation kind and
checks every certificate the library offers on it:

* bound validity (exact final index <= bound, up to the tolerance),
* the equality dichotomy (recognizer fires iff the bound is attained),
* strict growth of the sampled spectral radius,
* the derivative identity (quadratic form vs. finite differences),
* the differential inequality along the path,
* dominance of the comparison solution.

Trials are seeded per-index from a master splitmix64 seed, so summaries are
bit-for-bit reproducible and order-independent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import PerturbationKind, format_edge_list, format_perturbation_spec
from .pathsim import check_comparison, check_differential_inequality, sample_path
from .report import bound_report
from .rng import EDGE_PROBABILITIES, SplitMix64, random_instance

_KINDS = (
    PerturbationKind.VERTEX_CONNECTION,
    PerturbationKind.EDGE_ADDITION,
    PerturbationKind.PENDANT_EDGE,
)

DERIVATIVE_TOL = 1e-6
INEQUALITY_TOL = 1e-6
COMPARISON_TOL = 1e-9
EQUALITY_GAP_TOL = 1e-8
STRICT_SLACK_MIN = 1e-7


@dataclass
class TrialFailure:
    trial: int
    kind: str
    check: str
    detail: str
    graph: str
    perturbation: str

    def to_dict(self) -> dict:
        return {
            "trial": self.trial,
            "kind": self.kind,
            "check": self.check,
            "detail": self.detail,
            "graph": self.graph,
            "perturbation": self.perturbation,
        }


@dataclass
class VerifySummary:
    seed: int
    trials: int
    n_max: int
    tolerance: float
    counts: dict[str, int] = field(default_factory=dict)
    equality_cases: int = 0
    strict_cases: int = 0
    max_bound_violation: float = 0.0
    min_strict_slack: float = float("inf")
    max_equality_gap: float = 0.0
    max_derivative_mismatch: float = 0.0
    max_inequality_violation: float = float("-inf")
    max_comparison_violation: float = 0.0
    failures: list[TrialFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "n_max": self.n_max,
            "tolerance": self.tolerance,
            "instances": dict(self.counts),
            "equality_cases": self.equality_cases,
            "strict_cases": self.strict_cases,
            "max_bound_violation": self.max_bound_violation,
            "min_strict_slack": self.min_strict_slack if self.strict_cases else None,
            "max_equality_gap": self.max_equality_gap,
            "max_derivative_mismatch": self.max_derivative_mismatch,
            "max_inequality_violation": self.max_inequality_violation,
            "max_comparison_violation": self.max_comparison_violation,
            "ok": self.ok,
            "failures": [f.to_dict() for f in self.failures],
        }


def run_verification(
    seed: int,
    trials: int,
    n_max: int = 9,
    tolerance: float = COMPARISON_TOL,
    steps: int = 8,
    inject_failure: bool = False,
) -> VerifySummary:
    """Run the randomized suite; ``inject_failure`` corrupts the first trial's
    bound to prove the harness actually trips (self-test)."""
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    if n_max < 3:
        raise ValueError(f"n_max must be at least 3, got {n_max}")
    summary = VerifySummary(seed=seed, trials=trials, n_max=n_max, tolerance=tolerance)

    for trial in range(trials):
        kind = _KINDS[trial % 3]
        p_edge = EDGE_PROBABILITIES[(trial // 3) % 3]
        rng = SplitMix64.spawn(seed, trial)
        host, pert = random_instance(rng, kind, n_max, p_edge)
        summary.counts[kind.value] = summary.counts.get(kind.value, 0) + 1
        repro = {
            "trial": trial,
            "kind": kind.value,
            "graph": format_edge_list(host),
            "perturbation": format_perturbation_spec(pert),
        }

        def fail(check: str, detail: str) -> None:
            summary.failures.append(TrialFailure(check=check, detail=detail, **repro))

        rep = bound_report(host, pert)
        # self-test hook: force the first trial's bound below the exact value
        bound = rep.lambda_f_exact - 1.0 if (inject_failure and trial == 0) else rep.bound
        violation = rep.lambda_f_exact - bound
        summary.max_bound_violation = max(summary.max_bound_violation, violation)
        if violation > tolerance:
            fail("bound_validity", f"lambda_F - bound = {violation:.3e}")
        gap = bound - rep.lambda_f_exact
        if rep.equality_case:
            summary.equality_cases += 1
            summary.max_equality_gap = max(summary.max_equality_gap, abs(gap))
            if abs(gap) > EQUALITY_GAP_TOL:
                fail("equality_gap", f"|bound - lambda_F| = {abs(gap):.3e}")
        else:
            summary.strict_cases += 1
            summary.min_strict_slack = min(summary.min_strict_slack, gap)
            if gap < STRICT_SLACK_MIN:
                fail("strict_slack", f"bound - lambda_F = {gap:.3e}")

        path = sample_path(host, pert, steps=steps)
        values = [s.value for s in path.samples]
        if any(b <= a for a, b in zip(values, values[1:])):
            fail("monotonicity", f"lambda(t) not strictly increasing: {values}")
        mismatch = max(
            abs(s.derivative_lhs - s.derivative_rhs)
            for s in path.samples
            if s.derivative_lhs is not None
        )
        summary.max_derivative_mismatch = max(summary.max_derivative_mismatch, mismatch)
        if mismatch > DERIVATIVE_TOL:
            fail("derivative_identity", f"|fd - quadratic form| = {mismatch:.3e}")
        ineq = check_differential_inequality(path)
        summary.max_inequality_violation = max(summary.max_inequality_violation, ineq)
        if ineq > INEQUALITY_TOL:
            fail("differential_inequality", f"rhs - f(t, lambda) = {ineq:.3e}")
        comp = check_comparison(path, tolerance=tolerance)
        summary.max_comparison_violation = max(
            summary.max_comparison_violation, comp.max_violation
        )
        if not comp.ok:
            fail("comparison_dominance", f"lambda - u = {comp.max_violation:.3e}")

    return summary
