"""Dense symmetric-matrix primitives, multivariate normal sampling and density.

All matrices are dense row-major ``float64`` arrays; the intended regime is
small dimension (experiments run at d = 2, anything up to d ~ 100 is fine).
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import solve_triangular

from .errors import NotPositiveDefinite, RepairFailed
from .rng import RandomSource

_SYM_RTOL = 1e-12

_LOG_2PI = np.log(2.0 * np.pi)


def check_symmetric(m: np.ndarray, rtol: float = _SYM_RTOL) -> np.ndarray:
    """Validate that ``m`` is a finite symmetric square matrix and return it as float64."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    scale = max(1.0, float(np.abs(m).max()))
    if float(np.abs(m - m.T).max()) > rtol * scale:
        raise ValueError("matrix is not symmetric within tolerance")
    return m


def cholesky(m: np.ndarray) -> np.ndarray:
    """Lower-triangular ``L`` with ``L @ L.T == m``.

    Raises
    ------
    NotPositiveDefinite
        If a pivot is nonpositive, i.e. ``m`` is not positive definite.
        Callers that can tolerate near-degeneracy should go through
        :func:`spd_repair`.
    """
    m = check_symmetric(m)
    try:
        return np.linalg.cholesky(m)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(str(exc)) from exc


def spd_repair(m: np.ndarray, eps: float = 1e-10) -> np.ndarray:
    """Return ``m + delta * I`` with the smallest escalating jitter that factorizes.

    ``delta`` is tried from ``{0, eps, 10*eps, ..., 1e11*eps}``; the first
    value whose Cholesky succeeds wins. Positive-definite input is returned
    unchanged.

    Raises
    ------
    RepairFailed
        After 12 escalations, signalling an irrecoverably broken matrix.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    m = check_symmetric(m)
    eye = np.eye(m.shape[0])
    for attempt in range(13):
        delta = 0.0 if attempt == 0 else eps * 10.0 ** (attempt - 1)
        try:
            np.linalg.cholesky(m + delta * eye)
        except np.linalg.LinAlgError:
            continue
        return m if attempt == 0 else m + delta * eye
    raise RepairFailed(f"matrix not positive definite after 12 jitter escalations (eps={eps})")


def scaled_jitter_eps(m: np.ndarray, base: float = 1e-10) -> float:
    """Jitter base proportional to the matrix magnitude.

    A fixed absolute base cannot repair indefinite matrices whose entries are
    many orders of magnitude above 1 within the escalation budget, so repair
    call sites scale it by the largest diagonal magnitude.
    """
    m = np.asarray(m, dtype=float)
    scale = float(np.abs(np.diag(m)).max()) if m.size else 1.0
    return base * max(1.0, scale)


def sample_mvn(mean: np.ndarray, cov: np.ndarray, k: int, rng: RandomSource) -> np.ndarray:
    """Draw ``k`` points from N(mean, cov), consuming exactly ``k * d`` normal variates.

    The variate layout is row-major: point ``i`` uses variates
    ``[i*d, (i+1)*d)`` of the stream, and ``x_i = mean + L z_i`` with ``L``
    the lower Cholesky factor of ``cov``.

    Raises
    ------
    NotPositiveDefinite
        Propagated from the factorization; repair (if wanted) is the
        caller's decision.
    """
    mean = np.asarray(mean, dtype=float)
    if mean.ndim != 1:
        raise ValueError("mean must be a vector")
    if k < 2:
        raise ValueError("k must be at least 2")
    d = mean.shape[0]
    L = cholesky(cov)
    z = rng.standard_normals(k * d).reshape(k, d)
    return mean + z @ L.T


def mvn_logpdf(mean: np.ndarray, cov: np.ndarray, x: np.ndarray) -> float:
    """Log-density of N(mean, cov) at ``x``, via one triangular solve."""
    mean = np.asarray(mean, dtype=float)
    x = np.asarray(x, dtype=float)
    d = mean.shape[0]
    L = cholesky(cov)
    y = solve_triangular(L, x - mean, lower=True)
    return float(-0.5 * d * _LOG_2PI - np.sum(np.log(np.diag(L))) - 0.5 * y @ y)


def mvn_pdf(mean: np.ndarray, cov: np.ndarray, x: np.ndarray) -> float:
    """Density of N(mean, cov) at ``x``; strictly positive for SPD ``cov``."""
    return float(np.exp(mvn_logpdf(mean, cov, x)))


def frobenius_norm(m: np.ndarray) -> float:
    return float(np.linalg.norm(np.asarray(m, dtype=float), "fro"))
