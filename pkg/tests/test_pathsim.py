"""Continuous-perturbation paths, differential certificates, closed forms."""

import math

import numpy as np
import pytest

import specbound as sb
from specbound import Perturbation, PerturbationKind
from specbound.pathsim import _pendant_rk4

SQRT2 = math.sqrt(2.0)


def eig_max(matrix) -> float:
    return float(np.linalg.eigvalsh(np.asarray(matrix, float))[-1])


def c4_plus_isolated():
    return sb.disjoint_union(sb.cycle_graph(4), sb.empty_graph(1))


# ---------------------------------------------------------------------------
# sample_path
# ---------------------------------------------------------------------------

def test_path_vertex_connection_endpoints():
    path = sb.sample_path(c4_plus_isolated(), Perturbation.vertex_connection(4, [0, 1, 2, 3]), steps=10)
    assert len(path.samples) == 11
    assert path.lambda_i == pytest.approx(2.0, abs=1e-10)
    assert path.lambda_f == pytest.approx(1 + math.sqrt(5), abs=1e-10)


def test_path_edge_addition_endpoints():
    path = sb.sample_path(sb.path_graph(3), Perturbation.edge_addition(0, 2), steps=10)
    assert path.lambda_i == pytest.approx(SQRT2, abs=1e-10)
    assert path.lambda_f == pytest.approx(2.0, abs=1e-10)


def test_path_pendant_endpoints():
    # the initial matrix is padded with the isolated pendant vertex
    path = sb.sample_path(sb.complete_graph(2), Perturbation.pendant_edge(0), steps=4)
    assert path.lambda_i == pytest.approx(1.0, abs=1e-10)
    assert path.lambda_f == pytest.approx(SQRT2, abs=1e-10)


def test_path_values_strictly_increase():
    for host, pert in (
        (c4_plus_isolated(), Perturbation.vertex_connection(4, [0])),
        (sb.path_graph(4), Perturbation.edge_addition(0, 3)),
        (sb.path_graph(3), Perturbation.pendant_edge(0)),
    ):
        values = [s.value for s in sb.sample_path(host, pert, steps=12).samples]
        assert all(b > a for a, b in zip(values, values[1:]))


def test_path_derivative_identity():
    for host, pert in (
        (c4_plus_isolated(), Perturbation.vertex_connection(4, [0, 2])),
        (sb.path_graph(5), Perturbation.edge_addition(0, 4)),
        (sb.cycle_graph(5), Perturbation.pendant_edge(2)),
    ):
        path = sb.sample_path(host, pert, steps=16)
        for s in path.samples:
            if s.derivative_lhs is not None:
                assert s.derivative_lhs == pytest.approx(s.derivative_rhs, abs=1e-6)


def test_path_endpoint_derivatives_are_none():
    path = sb.sample_path(sb.path_graph(3), Perturbation.edge_addition(0, 2), steps=4)
    assert path.samples[0].derivative_lhs is None
    assert path.samples[-1].derivative_rhs is None
    assert all(s.derivative_lhs is not None for s in path.samples[1:-1])


def test_path_rejects_bad_inputs():
    with pytest.raises(ValueError):
        sb.sample_path(sb.path_graph(3), Perturbation.edge_addition(0, 2), steps=1)
    # host with two components, new vertex attached to only one of them
    host = sb.disjoint_union(sb.disjoint_union(sb.cycle_graph(3), sb.complete_graph(2)), sb.empty_graph(1))
    with pytest.raises(ValueError):
        sb.sample_path(host, Perturbation.vertex_connection(5, [0]))


# ---------------------------------------------------------------------------
# differential inequality
# ---------------------------------------------------------------------------

def test_inequality_equality_case_is_tight_pointwise():
    # cone path: the inequality holds with equality along the whole path
    path = sb.sample_path(
        c4_plus_isolated(), Perturbation.vertex_connection(4, [0, 1, 2, 3]), steps=16
    )
    assert sb.check_differential_inequality(path) <= 1e-6
    for s in path.samples:
        if s.derivative_rhs is None:
            continue
        f = sb.inequality_rhs(path.kind, s.t, s.value, **path.params())
        assert abs(s.derivative_rhs - f) <= 1e-6


def test_inequality_strict_case_has_positive_slack():
    path = sb.sample_path(sb.path_graph(3), Perturbation.pendant_edge(0), steps=16)
    assert sb.check_differential_inequality(path) < -1e-7
    for s in path.samples:
        if s.derivative_rhs is None:
            continue
        f = sb.inequality_rhs(path.kind, s.t, s.value, **path.params())
        assert f - s.derivative_rhs >= 1e-7


# ---------------------------------------------------------------------------
# comparison solution
# ---------------------------------------------------------------------------

def test_comparison_solution_closed_forms():
    assert sb.comparison_solution(
        PerturbationKind.VERTEX_CONNECTION, 2.0, 1.0, g=4
    ) == pytest.approx(1 + math.sqrt(5), abs=1e-14)
    assert sb.comparison_solution(
        PerturbationKind.EDGE_ADDITION, SQRT2, 1.0, delta_u=1, delta_v=1
    ) == pytest.approx(2.0, abs=1e-12)
    assert sb.comparison_solution(
        PerturbationKind.PENDANT_EDGE, 1.0, 1.0, delta_u=1
    ) == pytest.approx(sb.l2_inv(0.0, 1), abs=1e-6)


def test_comparison_solution_initial_condition():
    for kind, params in (
        (PerturbationKind.VERTEX_CONNECTION, {"g": 3}),
        (PerturbationKind.EDGE_ADDITION, {"delta_u": 2, "delta_v": 1}),
        (PerturbationKind.PENDANT_EDGE, {"delta_u": 2}),
    ):
        assert sb.comparison_solution(kind, 1.7, 0.0, **params) == 1.7


def test_comparison_solution_domain_errors():
    with pytest.raises(ValueError):
        sb.comparison_solution(PerturbationKind.EDGE_ADDITION, 2.0, 1.5, delta_u=1, delta_v=1)
    with pytest.raises(ValueError):
        sb.comparison_solution(PerturbationKind.EDGE_ADDITION, 0.0, 0.5, delta_u=1, delta_v=1)
    with pytest.raises(ValueError):
        sb.comparison_solution(PerturbationKind.PENDANT_EDGE, -1.0, 0.5, delta_u=1)


def test_comparison_matches_bounds_at_t1():
    # the end of the majorizing solution is exactly the closed-form bound
    assert sb.comparison_solution(
        PerturbationKind.VERTEX_CONNECTION, 1.3, 1.0, g=5
    ) == pytest.approx(sb.bound_vertex_connection(1.3, 5), abs=1e-12)
    assert sb.comparison_solution(
        PerturbationKind.EDGE_ADDITION, 2.7, 1.0, delta_u=2, delta_v=3
    ) == pytest.approx(sb.bound_edge_addition(2.7, 2, 3), abs=1e-12)
    for lam, du in ((1.0, 1), (2.5, 2), (10.0, 5)):
        assert sb.comparison_solution(
            PerturbationKind.PENDANT_EDGE, lam, 1.0, delta_u=du
        ) == pytest.approx(sb.bound_pendant_edge(lam, du), abs=1e-6)


def test_check_comparison_equality_profile():
    # star construction: empty host on 3 vertices plus the new vertex
    host = sb.empty_graph(4)
    path = sb.sample_path(host, Perturbation.vertex_connection(0, [1, 2, 3]), steps=8)
    comp = sb.check_comparison(path)
    assert comp.ok
    assert comp.margins[0] == 0.0  # shared initial condition
    assert max(abs(m) for m in comp.margins) <= 1e-7


def test_check_comparison_strict_profile():
    path = sb.sample_path(sb.path_graph(4), Perturbation.edge_addition(0, 3), steps=8)
    comp = sb.check_comparison(path)
    assert comp.ok
    assert comp.margins[0] == 0.0
    assert all(m > 1e-10 for m, s in zip(comp.margins[1:], path.samples[1:]))


def test_comparison_curve_consistent_with_pointwise():
    path = sb.sample_path(sb.cycle_graph(4), Perturbation.pendant_edge(0), steps=8)
    curve = sb.comparison_curve(path)
    for s, u in zip(path.samples, curve):
        direct = sb.comparison_solution(path.kind, path.lambda_i, s.t, **path.params())
        assert u == pytest.approx(direct, abs=1e-10)


def test_pendant_rk4_converges_to_cubic_root():
    for lam, du in ((1.0, 1), (SQRT2, 1), (2.0, 2), (5.0, 5)):
        y1 = _pendant_rk4(lam, du, 0.0, 1.0, 10_000)
        assert y1 == pytest.approx(sb.l2_inv(sb.l1(lam, du), du), abs=1e-8)


# ---------------------------------------------------------------------------
# closed-form equality-case eigenpairs
# ---------------------------------------------------------------------------

def test_closed_form_vertex_join_values():
    assert sb.closed_form_vertex_join(4, 2, 1.0).value == pytest.approx(1 + math.sqrt(5), abs=1e-14)
    assert sb.closed_form_vertex_join(3, 0, 1.0).value == pytest.approx(math.sqrt(3), abs=1e-14)
    sol = sb.closed_form_vertex_join(5, 2, 0.7)
    assert sol.alpha > 0 and sol.beta > 0
    assert sol.alpha**2 + 5 * sol.beta**2 == pytest.approx(1.0, abs=1e-12)
    assert sol.residual <= 1e-10


def test_closed_form_edge_join_values():
    assert sb.closed_form_edge_join(1, 0, 1.0).value == pytest.approx(2.0, abs=1e-14)
    # double cone over two isolated vertices is the 4-cycle; adding the apex
    # edge gives the 4-cycle plus a chord
    sol = sb.closed_form_edge_join(2, 0, 1.0)
    assert sol.value == pytest.approx((1 + math.sqrt(17)) / 2, abs=1e-12)
    chord = sb.from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    assert sol.value == pytest.approx(eig_max(chord.adjacency()), abs=1e-9)
    assert 2 * sol.alpha**2 + 2 * sol.gamma**2 == pytest.approx(1.0, abs=1e-12)


def test_closed_form_pendant_join_values():
    assert sb.closed_form_pendant_join(1, 0, 1.0).value == pytest.approx(SQRT2, abs=1e-12)
    # pendant at the apex of the cone over the 4-cycle: largest root of
    # x^3 - 2x^2 - 5x + 2 (numpy.roots oracle), equal to the 6-vertex index
    sol = sb.closed_form_pendant_join(4, 2, 1.0)
    oracle_root = max(r.real for r in np.roots([1.0, -2.0, -5.0, 2.0]))
    assert sol.value == pytest.approx(oracle_root, abs=1e-10)
    cone = sb.join(sb.empty_graph(1), sb.cycle_graph(4))
    final = sb.apply_perturbation(cone, Perturbation.pendant_edge(0))
    assert sol.value == pytest.approx(eig_max(final.adjacency()), abs=1e-9)
    assert sol.alpha**2 + sol.beta**2 + 4 * sol.gamma**2 == pytest.approx(1.0, abs=1e-12)
    assert sol.residual <= 1e-10


def test_pendant_join_normalization_constant_gap():
    # the closed-form normalization constant matches the direct squared norm
    # only at t = 1; off the endpoint the eigenvector must be renormalized
    # independently (which closed_form_pendant_join does)
    assert sb.closed_form_pendant_join(4, 2, 1.0).normalization_gap == pytest.approx(0.0, abs=1e-9)
    assert sb.closed_form_pendant_join(4, 2, 0.5).normalization_gap > 0.1
    assert sb.closed_form_pendant_join(3, 0, 0.5).normalization_gap == pytest.approx(0.0, abs=1e-9)


ALL_FEASIBLE_CORES = [
    (n, delta) for n in range(1, 9) for delta in range(n) if (n * delta) % 2 == 0
]


@pytest.mark.parametrize("n,delta", ALL_FEASIBLE_CORES)
@pytest.mark.parametrize("t", [0.25, 0.5, 0.75, 1.0])
def test_closed_forms_match_perron_along_path(n, delta, t):
    core = sb.circulant_graph(n, delta)

    host_v = sb.disjoint_union(core, sb.empty_graph(1))
    pv = sb.perturbation_matrix(host_v, Perturbation.vertex_connection(n, range(n)))
    a0 = np.zeros((n + 1, n + 1))
    a0[:n, :n] = core.adjacency()
    assert sb.closed_form_vertex_join(n, delta, t).value == pytest.approx(
        sb.perron(a0 + t * pv).value, abs=1e-9
    )

    host_e = sb.join(sb.empty_graph(2), core)
    pe = sb.perturbation_matrix(host_e, Perturbation.edge_addition(0, 1))
    assert sb.closed_form_edge_join(n, delta, t).value == pytest.approx(
        sb.perron(host_e.adjacency() + t * pe).value, abs=1e-9
    )

    host_p = sb.join(sb.empty_graph(1), core)
    pp = sb.perturbation_matrix(host_p, Perturbation.pendant_edge(0))
    b0 = np.zeros((n + 2, n + 2))
    b0[: n + 1, : n + 1] = host_p.adjacency()
    # closed form orders the vector (pendant, apex, core); the matrix here
    # orders (apex, core..., pendant) -- the spectral radius is what matches
    assert sb.closed_form_pendant_join(n, delta, t).value == pytest.approx(
        sb.perron(b0 + t * pp).value, abs=1e-9
    )


def test_closed_form_domain_errors():
    with pytest.raises(ValueError):
        sb.closed_form_vertex_join(3, 3, 1.0)
    with pytest.raises(ValueError):
        sb.closed_form_edge_join(3, 1, 0.0)
    with pytest.raises(ValueError):
        sb.closed_form_pendant_join(0, 0, 1.0)


# ---------------------------------------------------------------------------
# dump format
# ---------------------------------------------------------------------------

def test_format_path_dump_shape_and_precision():
    host = sb.empty_graph(4)
    path = sb.sample_path(host, Perturbation.vertex_connection(0, [1, 2, 3]), steps=8)
    dump = sb.format_path_dump(path)
    lines = dump.strip().splitlines()
    assert lines[0].startswith("#")
    rows = [ln.split("\t") for ln in lines[1:]]
    assert len(rows) == 9
    assert all(len(r) == 6 for r in rows)
    assert rows[0][2] == "nan" and rows[-1][3] == "nan"
    # margin column stays at the equality profile
    for r in rows:
        assert abs(float(r[5])) <= 1e-7
    # 12 significant digits survive a round trip
    lam_mid = float(rows[4][1])
    assert lam_mid == pytest.approx(path.samples[4].value, rel=1e-11)
