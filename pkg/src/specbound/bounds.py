"""Closed-form upper bounds for the spectral radius after a local perturbation.

Each perturbation kind comes with an invertible auxiliary function whose
inverse turns the initial index ``lambda_I`` and the degrees involved into a
sharp bound on the final index ``lambda_F``:

* vertex connection (isolated vertex joined to g vertices):
  ``bound = H^-1(lambda_I)`` with ``H(x) = x - g/x``;
* edge addition (nonadjacent endpoints of degrees du, dv):
  ``bound = 1 + K^-1(K(lambda_I) - 1)`` with ``K(x) = x - (du+dv)/x``;
* pendant edge (anchor of degree du):
  ``bound = L2^-1(L1(lambda_I))`` with ``L1(x) = x - du/x`` and
  ``L2(x) = x - du/(x - 1/x)`` on ``(1, inf)``.

The pendant inverse reduces to a cubic; its relevant root is the unique one
greater than 1, which for inputs arising from actual graphs also satisfies
``root >= sqrt(du + 1)`` (the final graph contains a star on du+1 leaves).

First-order expansions of the three bound gaps (``g/lambda``,
``(du+dv)/lambda^2``, ``du/lambda^3``) and the iterated bound for joining a
coclique complete the module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from .graphs import PerturbationKind

_CUBIC_TOL = 1e-12


def _check_count(name: str, value: int, minimum: int) -> int:
    if int(value) != value or value < minimum:
        raise ValueError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)


def _larger_quadratic_root(y: float, c: float) -> float:
    """Positive root of ``x^2 - y x - c = 0`` for c >= 0, cancellation-free."""
    disc = math.sqrt(y * y + 4.0 * c)
    if y >= 0.0:
        return 0.5 * (y + disc)
    return (2.0 * c) / (disc - y)


# ---------------------------------------------------------------------------
# Vertex connection: H(x) = x - g/x
# ---------------------------------------------------------------------------

def h_fn(xi: float, g: int) -> float:
    _check_count("g", g, 1)
    if xi <= 0.0:
        raise ValueError(f"h_fn is defined on (0, inf), got {xi}")
    return xi - g / xi

def h_inv(y: float, g: int) -> float:
    """Unique positive solution of ``h_fn(x, g) = y``."""
    _check_count("g", g, 1)
    return _larger_quadratic_root(y, float(g))

def bound_vertex_connection(lambda_i: float, g: int) -> float:
    """Upper bound on the index after joining an isolated vertex to g vertices.

    ``lambda_i = 0`` is allowed (empty host); the bound is then ``sqrt(g)``,
    attained by the star.
    """
    if lambda_i < 0.0:
        raise ValueError(f"lambda_i must be nonnegative, got {lambda_i}")
    return h_inv(lambda_i, g)


# ---------------------------------------------------------------------------
# Edge addition: K(x) = x - (du+dv)/x
# ---------------------------------------------------------------------------

def k_fn(xi: float, d: float) -> float:
    if d < 0:
        raise ValueError(f"degree sum must be nonnegative, got {d}")
    if xi <= 0.0:
        raise ValueError(f"k_fn is defined on (0, inf), got {xi}")
    return xi - d / xi

def k_inv(y: float, d: float) -> float:
    """Positive root of ``x^2 - y x - d = 0`` (the inverse of k_fn for d > 0)."""
    if d < 0:
        raise ValueError(f"degree sum must be nonnegative, got {d}")
    return _larger_quadratic_root(y, float(d))

def bound_edge_addition(lambda_i: float, delta_u: int, delta_v: int) -> float:
    """Upper bound on the index after adding one edge between nonadjacent
    vertices of degrees ``delta_u`` and ``delta_v``.  The bound depends on the
    degrees only through their sum."""
    du = _check_count("delta_u", delta_u, 0)
    dv = _check_count("delta_v", delta_v, 0)
    if lambda_i <= 0.0:
        raise ValueError(f"lambda_i must be positive, got {lambda_i}")
    d = du + dv
    if d == 0:
        # Both endpoints isolated: the auxiliary map degenerates to the identity.
        if lambda_i <= 1.0:
            raise ValueError("degenerate zero-degree edge addition needs lambda_i > 1")
        return lambda_i
    return 1.0 + k_inv(k_fn(lambda_i, d) - 1.0, d)


# ---------------------------------------------------------------------------
# Pendant edge: L1(x) = x - du/x, L2(x) = x - du/(x - 1/x)
# ---------------------------------------------------------------------------

def l1(xi: float, delta_u: int) -> float:
    _check_count("delta_u", delta_u, 0)
    if xi <= 0.0:
        raise ValueError(f"l1 is defined on (0, inf), got {xi}")
    return xi - delta_u / xi

def l2(xi: float, delta_u: int) -> float:
    _check_count("delta_u", delta_u, 0)
    if xi <= 1.0:
        raise ValueError(f"l2 is defined on (1, inf), got {xi}")
    return xi - delta_u / (xi - 1.0 / xi)

def l2_inv(y: float, delta_u: int) -> float:
    """Unique solution in ``(1, inf)`` of ``l2(x, delta_u) = y``.

    Solves the cubic ``v^3 - y v^2 - (delta_u + 1) v + y = 0`` by bracketed
    Newton with bisection fallback, to 1e-12 on the polynomial value.  The
    cubic has three real roots, exactly one of them above 1; when
    ``y >= 0`` (every input coming from a graph) that root also satisfies
    ``root >= sqrt(delta_u + 1)``.
    """
    d = _check_count("delta_u", delta_u, 0)
    if d == 0:
        # l2 degenerates to the identity on (1, inf).
        if y <= 1.0:
            raise ValueError(f"no inverse above 1 for y={y} with delta_u=0")
        return float(y)

    dp1 = d + 1.0

    def poly(v: float) -> float:
        return ((v - y) * v - dp1) * v + y

    def dpoly(v: float) -> float:
        return (3.0 * v - 2.0 * y) * v - dp1

    lo = 1.0 if y < 0.0 else math.sqrt(dp1)
    hi = max(math.sqrt(dp1), y + d + 2.0)
    flo, fhi = poly(lo), poly(hi)
    if abs(flo) <= _CUBIC_TOL:
        return lo
    if abs(fhi) <= _CUBIC_TOL:
        return hi
    if flo > 0.0 or fhi < 0.0:  # pragma: no cover - bracket is analytic
        raise RuntimeError(f"cubic bracket failed for y={y}, delta_u={d}")

    x = 0.5 * (lo + hi)
    for _ in range(200):
        fx = poly(x)
        if abs(fx) <= _CUBIC_TOL:
            return x
        if fx > 0.0:
            hi = x
        else:
            lo = x
        if hi - lo <= 1e-15 * max(1.0, abs(x)):
            return x
        dfx = dpoly(x)
        if dfx != 0.0:
            step = x - fx / dfx
            x = step if lo < step < hi else 0.5 * (lo + hi)
        else:
            x = 0.5 * (lo + hi)
    raise RuntimeError(  # pragma: no cover - Newton/bisection always lands
        f"cubic root search stalled for y={y}, delta_u={d} on [{lo}, {hi}]"
    )

def bound_pendant_edge(lambda_i: float, delta_u: int, *, g: int = 1) -> float:
    """Upper bound on the index after attaching a pendant edge at a vertex of
    degree ``delta_u``.

    ``g`` scales the degree term (``g * delta_u`` replaces ``delta_u`` in both
    auxiliary maps); the default 1 is the derived form, larger values exist
    only for side-by-side comparison with the coupled variant.
    """
    _check_count("delta_u", delta_u, 0)
    _check_count("g", g, 1)
    if lambda_i <= 0.0:
        raise ValueError(f"lambda_i must be positive, got {lambda_i}")
    d_eff = g * delta_u
    if d_eff == 0:
        # Degree-zero anchor: the two auxiliary maps coincide and cancel.
        if lambda_i <= 1.0:
            raise ValueError("degenerate zero-degree pendant needs lambda_i > 1")
        return lambda_i
    return l2_inv(l1(lambda_i, d_eff), d_eff)


# ---------------------------------------------------------------------------
# Asymptotics and multiple perturbations
# ---------------------------------------------------------------------------

def asymptotic_gap(
    kind: PerturbationKind,
    lambda_i: float,
    *,
    g: int | None = None,
    delta_u: int | None = None,
    delta_v: int | None = None,
) -> float:
    """First-order estimate of ``bound - lambda_i`` for large ``lambda_i``:
    ``g/lambda``, ``(du+dv)/lambda^2``, or ``du/lambda^3`` by kind."""
    if lambda_i <= 0.0:
        raise ValueError(f"lambda_i must be positive, got {lambda_i}")
    if kind is PerturbationKind.VERTEX_CONNECTION:
        return _check_count("g", g, 1) / lambda_i
    if kind is PerturbationKind.EDGE_ADDITION:
        du = _check_count("delta_u", delta_u, 0)
        dv = _check_count("delta_v", delta_v, 0)
        return (du + dv) / lambda_i**2
    if kind is PerturbationKind.PENDANT_EDGE:
        return _check_count("delta_u", delta_u, 0) / lambda_i**3
    raise ValueError(f"unknown perturbation kind {kind}")  # pragma: no cover


class CocliqueBound(NamedTuple):
    asymptotic: float
    iterated: float


def coclique_bound(lambda_i: float, degrees: Sequence[int]) -> CocliqueBound:
    """Bounds on the index after joining all m vertices of a coclique.

    ``asymptotic`` is ``lambda_i + (m-1) * sum(degrees) / lambda_i^2``.
    ``iterated`` applies the single-edge bound once per pair, in lexicographic
    pair order, feeding each bound in as the next initial index and bumping
    both endpoint degrees after every added edge.  Any pair order yields a
    valid upper bound; fixing one makes the value deterministic.
    """
    m = len(degrees)
    if m < 2:
        raise ValueError(f"a coclique join needs at least 2 vertices, got {m}")
    if lambda_i <= 0.0:
        raise ValueError(f"lambda_i must be positive, got {lambda_i}")
    degs = [_check_count("degree", d, 0) for d in degrees]
    asym = lambda_i + (m - 1) * sum(degs) / lambda_i**2
    cur = lambda_i
    for i in range(m - 1):
        for j in range(i + 1, m):
            cur = bound_edge_addition(cur, degs[i], degs[j])
            degs[i] += 1
            degs[j] += 1
    return CocliqueBound(asymptotic=asym, iterated=cur)


# ---------------------------------------------------------------------------
# Aggregates
# ---------------------------------------------------------------------------

def perturbation_bound(
    kind: PerturbationKind,
    lambda_i: float,
    *,
    g: int | None = None,
    delta_u: int | None = None,
    delta_v: int | None = None,
) -> float:
    """Dispatch to the bound for the given perturbation kind."""
    if kind is PerturbationKind.VERTEX_CONNECTION:
        return bound_vertex_connection(lambda_i, _check_count("g", g, 1))
    if kind is PerturbationKind.EDGE_ADDITION:
        return bound_edge_addition(lambda_i, delta_u, delta_v)
    if kind is PerturbationKind.PENDANT_EDGE:
        return bound_pendant_edge(lambda_i, delta_u)
    raise ValueError(f"unknown perturbation kind {kind}")  # pragma: no cover


@dataclass(frozen=True)
class BoundInput:
    """Numeric payload of one bound evaluation."""

    kind: PerturbationKind
    lambda_i: float
    g: int = 0
    delta_u: int = 0
    delta_v: int = 0

    def __post_init__(self) -> None:
        if self.kind is PerturbationKind.VERTEX_CONNECTION:
            if self.g < 1:
                raise ValueError("vertex connection needs g >= 1")
            if self.lambda_i < 0.0:
                raise ValueError("lambda_i must be nonnegative")
        else:
            if self.lambda_i <= 0.0:
                raise ValueError("lambda_i must be positive")
            if min(self.delta_u, self.delta_v) < 0:
                raise ValueError("degrees must be nonnegative")

    def params(self) -> dict[str, int]:
        if self.kind is PerturbationKind.VERTEX_CONNECTION:
            return {"g": self.g}
        if self.kind is PerturbationKind.EDGE_ADDITION:
            return {"delta_u": self.delta_u, "delta_v": self.delta_v}
        return {"delta_u": self.delta_u}

    def bound(self) -> float:
        return perturbation_bound(self.kind, self.lambda_i, **self.params())

    def gap_estimate(self) -> Optional[float]:
        """First-order gap, or ``None`` when lambda_i = 0 (empty host)."""
        if self.lambda_i <= 0.0:
            return None
        return asymptotic_gap(self.kind, self.lambda_i, **self.params())


@dataclass(frozen=True)
class BoundReport:
    """One perturbation instance: exact values, bound, and equality status."""

    lambda_i: float
    lambda_f_exact: Optional[float]
    bound: float
    asymptotic_estimate: Optional[float]
    equality_case: bool
    slack: Optional[float]
