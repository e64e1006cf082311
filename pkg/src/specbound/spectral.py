"""Exact spectral computations for dense symmetric matrices.

Two independent eigensolvers are provided on purpose:

* :func:`perron` -- shifted power iteration for the dominant eigenpair of a
  connected nonnegative symmetric matrix.  The +1 shift makes the top
  eigenvalue strictly dominant even for bipartite adjacency matrices, whose
  spectrum contains -lambda_1.
* :func:`full_spectrum` -- a cyclic Jacobi rotation sweep returning all
  eigenvalues.  It is slower but has no convergence caveats, so it serves
  as the cross-check oracle for everything else.

Matrices are plain ``numpy`` arrays; inputs are validated, never mutated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_SYM_ATOL = 1e-12
_JACOBI_OFF_TOL = 1e-12
_MAX_JACOBI_SWEEPS = 100


def _as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] == 0:
        raise ValueError("matrix must have at least one row")
    return m


def _require_symmetric(a) -> np.ndarray:
    m = _as_matrix(a)
    if not np.all(np.abs(m - m.T) <= _SYM_ATOL):
        raise ValueError("matrix is not symmetric")
    return m


def connected_components(a) -> list[list[int]]:
    """Index sets of the components of the nonzero off-diagonal pattern."""
    m = _as_matrix(a)
    n = m.shape[0]
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        stack = [start]
        while stack:
            i = stack.pop()
            for j in np.nonzero(m[i])[0]:
                j = int(j)
                if j != i and not seen[j]:
                    seen[j] = True
                    comp.append(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def is_connected_matrix(a) -> bool:
    return len(connected_components(a)) == 1


@dataclass(frozen=True)
class PerronPair:
    """Spectral radius and its unit positive eigenvector, with diagnostics."""

    value: float
    vector: np.ndarray
    residual: float
    iterations: int

    def __post_init__(self) -> None:
        self.vector.setflags(write=False)


def perron(a, tol: float = 1e-11, x0=None, maxiter: int | None = None) -> PerronPair:
    """Dominant eigenpair of a connected nonnegative symmetric matrix.

    Runs power iteration on ``a + I`` starting from the all-ones direction
    (or ``x0`` when warm-starting along a continuation path), and stops when
    the residual ``||a x - lambda x||`` drops below ``tol`` and the iterate
    is entrywise positive.  Raises ``ValueError`` for matrices outside the
    contract and ``RuntimeError`` when the iteration cap is hit.
    """
    m = _require_symmetric(a)
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    if m.min() < 0:
        raise ValueError("matrix has negative entries")
    n = m.shape[0]
    if n == 1:
        return PerronPair(float(m[0, 0]), np.array([1.0]), 0.0, 0)
    if not is_connected_matrix(m):
        raise ValueError("matrix is not connected; positivity of the eigenvector fails")

    shifted = m + np.eye(n)
    if x0 is not None:
        x = np.abs(np.asarray(x0, dtype=float))
        nrm = np.linalg.norm(x)
        x = x / nrm if nrm > 0 else np.full(n, 1.0 / math.sqrt(n))
    else:
        x = np.full(n, 1.0 / math.sqrt(n))
    if maxiter is None:
        maxiter = max(1000, int(200 * n * math.log(max(n, 2))))

    res = math.inf
    for it in range(maxiter + 1):
        y = shifted @ x
        lam = float(x @ y) - 1.0  # Rayleigh quotient of the unshifted matrix
        res = float(np.linalg.norm(y - (lam + 1.0) * x))
        if res <= tol and x.min() > 0.0:
            return PerronPair(lam, x, res, it)
        x = y / float(np.linalg.norm(y))
    raise RuntimeError(
        f"power iteration did not reach tolerance {tol} in {maxiter} iterations "
        f"(last residual {res:.3e})"
    )


def spectral_radius(a, tol: float = 1e-11) -> float:
    """Largest eigenvalue of a nonnegative symmetric matrix, components allowed."""
    m = _require_symmetric(a)
    comps = connected_components(m)
    if len(comps) == 1:
        return perron(m, tol=tol).value
    best = -math.inf
    for comp in comps:
        sub = m[np.ix_(comp, comp)]
        best = max(best, perron(sub, tol=tol).value)
    return best


def perron_components(a, tol: float = 1e-11) -> tuple[float, np.ndarray]:
    """Spectral radius of a possibly disconnected nonnegative symmetric matrix,
    with the maximizing component's eigenvector zero-padded to full size.

    Used for the t=0 endpoint of perturbation paths, where the matrix may be
    disconnected and the limit eigenvector is supported on one component.
    Ties pick the lowest-indexed component.
    """
    m = _require_symmetric(a)
    comps = connected_components(m)
    if len(comps) == 1:
        pair = perron(m, tol=tol)
        return pair.value, np.array(pair.vector)
    best_val = -math.inf
    best_vec = None
    for comp in comps:
        sub = m[np.ix_(comp, comp)]
        pair = perron(sub, tol=tol)
        if pair.value > best_val + 1e-15:
            best_val = pair.value
            vec = np.zeros(m.shape[0])
            vec[comp] = pair.vector
            best_vec = vec
    return best_val, best_vec


def full_spectrum(a) -> np.ndarray:
    """All eigenvalues of a symmetric matrix, nonincreasing.

    Cyclic Jacobi rotations run until the off-diagonal Frobenius norm falls
    below 1e-12; each eigenvalue is then accurate to well below 1e-10 at the
    dense sizes this library targets.
    """
    m = _require_symmetric(a)
    n = m.shape[0]
    if n == 1:
        return np.array([m[0, 0]])
    w = m.copy()
    for _ in range(_MAX_JACOBI_SWEEPS):
        off = math.sqrt(2.0 * float((np.triu(w, 1) ** 2).sum()))
        if off <= _JACOBI_OFF_TOL:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = w[p, q]
                if apq == 0.0:
                    continue
                theta = (w[q, q] - w[p, p]) / (2.0 * apq)
                if abs(theta) > 1e12:
                    t = 0.0 if math.isinf(theta) else 1.0 / (2.0 * theta)
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                colp = w[:, p].copy()
                colq = w[:, q].copy()
                w[:, p] = c * colp - s * colq
                w[:, q] = s * colp + c * colq
                rowp = w[p, :].copy()
                rowq = w[q, :].copy()
                w[p, :] = c * rowp - s * rowq
                w[q, :] = s * rowp + c * rowq
                w[p, q] = 0.0
                w[q, p] = 0.0
    else:  # pragma: no cover - cyclic Jacobi converges long before the cap
        raise RuntimeError(f"Jacobi did not converge within {_MAX_JACOBI_SWEEPS} sweeps")
    vals = np.sort(np.diagonal(w).copy())[::-1]
    return vals


def rayleigh_quotient(a, x) -> float:
    """<a x, x> / <x, x>; rejects the zero vector."""
    m = _require_symmetric(a)
    v = np.asarray(x, dtype=float)
    denom = float(v @ v)
    if denom == 0.0:
        raise ValueError("Rayleigh quotient of the zero vector is undefined")
    return float(v @ (m @ v)) / denom


def lambda_derivative(p, x) -> float:
    """Derivative of the spectral radius along a linear matrix path.

    For a unit eigenvector ``x`` of the current matrix and a symmetric
    direction ``p``, the derivative equals ``sum_ij p_ij x_i x_j``.
    ``x`` must be normalized to within 1e-9.
    """
    m = _require_symmetric(p)
    v = np.asarray(x, dtype=float)
    if abs(float(np.linalg.norm(v)) - 1.0) > 1e-9:
        raise ValueError("eigenvector must have unit norm")
    return float(v @ (m @ v))
