"""Command-line interface.

Four commands:

* ``bound GRAPH SPEC``      -- one-instance report (JSON or TSV),
* ``path GRAPH SPEC``       -- sampled continuous-perturbation dump,
* ``verify``                -- seeded randomized invariant suite,
* ``construct KIND N DELTA``-- emit an equality-case instance with its
  closed-form values, cross-checked against the exact eigensolver.

Graphs are read in the edge-list format (header ``n m``, then ``i j`` lines;
``#`` comments and blank lines ignored).  Perturbations use the mini-grammar
``vertex u v1 ... vg`` | ``edge u v`` | ``pendant u``.

Exit codes: 0 success, 1 invariant failure, 2 parse failure, 3 usage or
invalid perturbation, 4 structural precondition (disconnected result).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional

from .bounds import BoundReport
from .graphs import (
    Graph,
    GraphParseError,
    Perturbation,
    PerturbationError,
    PerturbationKind,
    apply_perturbation,
    circulant_graph,
    disjoint_union,
    empty_graph,
    format_edge_list,
    format_perturbation_spec,
    is_connected,
    join,
    parse_edge_list,
    parse_perturbation_spec,
    validate_perturbation,
)
from .pathsim import (
    closed_form_edge_join,
    closed_form_pendant_join,
    closed_form_vertex_join,
    format_path_dump,
    sample_path,
)
from .report import bound_report
from .verify import run_verification

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_PARSE = 2
EXIT_USAGE = 3
EXIT_STRUCTURE = 4

_ORACLE_TOL = 1e-9


def _round12(value):
    """Round floats to 12 significant digits, recursively, for stable output."""
    if isinstance(value, float):
        if math.isnan(value):
            return None
        if math.isinf(value):
            return None
        return float(f"{value:.12g}")
    if isinstance(value, dict):
        return {k: _round12(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round12(v) for v in value]
    return value


def _print_json(payload: dict) -> None:
    print(json.dumps(_round12(payload), indent=2))


def _report_payload(rep: BoundReport) -> dict:
    return {
        "lambda_I": rep.lambda_i,
        "lambda_F_exact": rep.lambda_f_exact,
        "bound": rep.bound,
        "asymptotic_estimate": rep.asymptotic_estimate,
        "equality_case": rep.equality_case,
        "slack": rep.slack,
    }


def _load_instance(args) -> tuple[Graph, Perturbation]:
    try:
        with open(args.graph, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise GraphParseError(f"cannot read {args.graph}: {exc}") from exc
    graph = parse_edge_list(text)
    pert = parse_perturbation_spec(" ".join(args.perturbation))
    validate_perturbation(graph, pert)
    return graph, pert


def _cmd_bound(args) -> int:
    try:
        graph, pert = _load_instance(args)
    except GraphParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PerturbationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not is_connected(apply_perturbation(graph, pert)):
        print("error: the perturbed graph is disconnected", file=sys.stderr)
        return EXIT_STRUCTURE
    try:
        rep = bound_report(graph, pert)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    payload = _report_payload(rep)
    if args.format == "json":
        _print_json(payload)
    else:
        keys = list(payload)
        print("\t".join(keys))
        print("\t".join(_format_cell(payload[k]) for k in keys))
    return EXIT_OK


def _format_cell(value) -> str:
    if value is None:
        return "nan"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _cmd_path(args) -> int:
    if args.steps < 2:
        print("error: --steps must be at least 2", file=sys.stderr)
        return EXIT_USAGE
    try:
        graph, pert = _load_instance(args)
    except GraphParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PerturbationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not is_connected(apply_perturbation(graph, pert)):
        print("error: the perturbed graph is disconnected", file=sys.stderr)
        return EXIT_STRUCTURE
    path = sample_path(graph, pert, steps=args.steps)
    if args.format == "json":
        from .pathsim import comparison_curve

        curve = comparison_curve(path)
        rows = [
            {
                "t": s.t,
                "lambda": s.value,
                "derivative_lhs": s.derivative_lhs,
                "derivative_rhs": s.derivative_rhs,
                "comparison_u": u,
                "margin": u - s.value,
            }
            for s, u in zip(path.samples, curve)
        ]
        _print_json({"kind": path.kind.value, "rows": rows})
    else:
        sys.stdout.write(format_path_dump(path))
    return EXIT_OK


def _cmd_verify(args) -> int:
    try:
        summary = run_verification(
            seed=args.seed,
            trials=args.trials,
            n_max=args.n_max,
            tolerance=args.tolerance,
            steps=args.steps,
            inject_failure=args.inject_failure,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _print_json(summary.to_dict())
    if not summary.ok:
        first = summary.failures[0]
        print(
            f"invariant failure in trial {first.trial} ({first.check}): {first.detail}\n"
            f"reproducer perturbation: {first.perturbation}\n"
            f"reproducer graph:\n{first.graph}",
            file=sys.stderr,
        )
        return EXIT_INVARIANT
    return EXIT_OK


def _construct_instance(kind: str, n: int, delta: int):
    core = circulant_graph(n, delta)
    if kind == "vertex":
        host = Graph(n + 1, core.edges)
        pert = Perturbation.vertex_connection(n, range(n))
        lam_i_closed = float(delta)
        lam_f_closed = closed_form_vertex_join(n, delta, 1.0).value
    elif kind == "edge":
        host = join(empty_graph(2), core)
        pert = Perturbation.edge_addition(0, 1)
        lam_i_closed = 0.5 * (delta + math.sqrt(delta * delta + 8.0 * n))
        lam_f_closed = closed_form_edge_join(n, delta, 1.0).value
    elif kind == "pendant":
        host = join(empty_graph(1), core)
        pert = Perturbation.pendant_edge(0)
        lam_i_closed = closed_form_vertex_join(n, delta, 1.0).value
        lam_f_closed = closed_form_pendant_join(n, delta, 1.0).value
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown kind {kind}")
    return host, pert, lam_i_closed, lam_f_closed


def _cmd_construct(args) -> int:
    try:
        host, pert, lam_i_closed, lam_f_closed = _construct_instance(
            args.kind, args.n, args.delta
        )
    except (ValueError, PerturbationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rep = bound_report(host, pert)
    checks = {
        "lambda_I": abs(rep.lambda_i - lam_i_closed),
        "lambda_F": abs(rep.lambda_f_exact - lam_f_closed),
        "bound": abs(rep.bound - lam_f_closed),
        "slack": abs(rep.slack),
    }
    graph_text = format_edge_list(host)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(graph_text)
    payload = {
        "kind": args.kind,
        "n": args.n,
        "delta": args.delta,
        "graph": graph_text,
        "perturbation": format_perturbation_spec(pert),
        "closed_form": {"lambda_I": lam_i_closed, "lambda_F": lam_f_closed},
        **_report_payload(rep),
    }
    _print_json(payload)
    worst = max(checks.values())
    if worst > _ORACLE_TOL or not rep.equality_case:
        bad = {k: v for k, v in checks.items() if v > _ORACLE_TOL}
        print(
            f"error: closed form disagrees with the eigensolver oracle: {bad}",
            file=sys.stderr,
        )
        return EXIT_INVARIANT
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="specbound",
        description="Spectral-radius bounds for graphs under local perturbations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bound = sub.add_parser("bound", help="bound report for one instance")
    p_bound.add_argument("graph", help="edge-list file")
    p_bound.add_argument("perturbation", nargs="+", help="e.g. 'edge 0 2'")
    p_bound.add_argument("--format", choices=("json", "tsv"), default="json")
    p_bound.set_defaults(func=_cmd_bound)

    p_path = sub.add_parser("path", help="continuous-perturbation dump")
    p_path.add_argument("graph", help="edge-list file")
    p_path.add_argument("perturbation", nargs="+", help="e.g. 'pendant 0'")
    p_path.add_argument("--steps", type=int, default=32)
    p_path.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p_path.set_defaults(func=_cmd_path)

    p_verify = sub.add_parser("verify", help="seeded randomized invariant suite")
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.add_argument("--trials", type=int, default=200)
    p_verify.add_argument("--n-max", type=int, default=9, dest="n_max")
    p_verify.add_argument(
        "--tolerance",
        type=float,
        default=1e-9,
        help="validity threshold override (exploratory runs only)",
    )
    p_verify.add_argument("--steps", type=int, default=8)
    p_verify.add_argument(
        "--inject-failure", action="store_true", help="harness self-test: force one failure"
    )
    p_verify.set_defaults(func=_cmd_verify)

    p_con = sub.add_parser("construct", help="emit an equality-case instance")
    p_con.add_argument("kind", choices=("vertex", "edge", "pendant"))
    p_con.add_argument("n", type=int, help="order of the regular core graph")
    p_con.add_argument("delta", type=int, help="degree of the regular core graph")
    p_con.add_argument("--out", help="also write the host edge list to this file")
    p_con.set_defaults(func=_cmd_construct)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 1
        return EXIT_OK if code == 0 else EXIT_USAGE
    return args.func(args)


def entrypoint() -> None:  # pragma: no cover - console-script shim
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
