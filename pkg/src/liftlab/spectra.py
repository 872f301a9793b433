"""Dense eigendecomposition and old/new eigenvalue bookkeeping for lifts.

All spectra are returned sorted descending. The solver is LAPACK's dense
symmetric / Hermitian path via numpy; the contract here is the residual bound
per returned eigenpair, not a particular factorization.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidParameterError,
    MatchingError,
    NumericalError,
    SizeLimitError,
)

MAX_DENSE_DIM = 5000
DEFAULT_TOL = 1e-9
DEFAULT_MATCH_WINDOW = 1e-6


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Real eigenvalues sorted descending, plus the solver tolerance used."""

    values: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", vals)
        if vals.ndim != 1:
            raise InvalidParameterError("spectrum values must be a 1-d array")
        if vals.size > 1 and np.any(np.diff(vals) > 0):
            raise InvalidParameterError("spectrum values must be sorted descending")

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True, eq=False)
class OldNewSplit:
    """Partition of a lift spectrum into inherited (old) and new eigenvalues."""

    old: np.ndarray
    new: np.ndarray
    lambda_new: float
    window: float


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """Complex Hermitian matrix; symmetry is exact by construction.

    numpy complex128 stores each entry as an explicit (real, imaginary) pair;
    the constructor rejects data where entry (j,i) is not the exact conjugate
    of entry (i,j), so the diagonal is exactly real.
    """

    data: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.data, dtype=complex)
        object.__setattr__(self, "data", m)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidParameterError("Hermitian matrix must be square")
        if not np.array_equal(m, m.conj().T):
            raise InvalidParameterError("matrix is not exactly Hermitian")

    @property
    def n(self) -> int:
        return int(self.data.shape[0])


def _check_square(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidParameterError("matrix must be square")
    if m.shape[0] > MAX_DENSE_DIM:
        raise SizeLimitError(
            f"dense solver capped at n={MAX_DENSE_DIM}, got {m.shape[0]}"
        )
    return m


def _verify_residuals(m, w, v, tol):
    """Enforce ||M v - w v||_2 <= tol * ||M||_F for every returned eigenpair."""
    scale = float(np.linalg.norm(m))
    resid = m @ v - v * w
    worst = float(np.max(np.linalg.norm(resid, axis=0))) if w.size else 0.0
    if worst > tol * scale:
        raise NumericalError(
            f"eigenpair residual {worst:.3e} exceeds {tol:.1e} * ||M||_F = "
            f"{tol * scale:.3e}"
        )


def eig_symmetric(m: np.ndarray, tol: float = DEFAULT_TOL, return_vectors: bool = False):
    """Full spectrum of a real symmetric matrix, descending.

    Input must be symmetric within 1e-12 entrywise. With return_vectors=True
    the orthonormal eigenvectors come back as columns aligned with the
    descending eigenvalues, and each pair is verified against the residual
    contract (NumericalError on failure).
    """
    m = _check_square(m)
    m = np.asarray(m, dtype=float)
    asym = float(np.max(np.abs(m - m.T))) if m.size else 0.0
    if asym > 1e-12:
        raise InvalidParameterError(f"matrix asymmetry {asym:.3e} exceeds 1e-12")
    m = (m + m.T) / 2.0
    try:
        if return_vectors:
            w, v = np.linalg.eigh(m)
        else:
            w = np.linalg.eigvalsh(m)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"symmetric eigensolver failed: {exc}") from exc
    w = w[::-1]
    spec = Spectrum(np.ascontiguousarray(w), tol)
    if return_vectors:
        v = np.ascontiguousarray(v[:, ::-1])
        _verify_residuals(m, spec.values, v, tol)
        return spec, v
    return spec


def eig_hermitian(h, tol: float = DEFAULT_TOL, return_vectors: bool = False):
    """Full (real) spectrum of a complex Hermitian matrix, descending.

    Accepts a HermitianMatrix or a raw array Hermitian within 1e-12. Uses the
    native complex LAPACK path, which returns each eigenvalue exactly once;
    no pairing or dedup rule is needed (the test suite cross-checks against
    the doubled real-symmetric embedding, where every eigenvalue shows up
    twice and is deduplicated by taking alternate entries of the sorted list).
    """
    m = h.data if isinstance(h, HermitianMatrix) else np.asarray(h, dtype=complex)
    m = _check_square(m)
    herm_err = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
    if herm_err > 1e-12:
        raise InvalidParameterError(
            f"matrix deviates from Hermitian by {herm_err:.3e} > 1e-12"
        )
    m = (m + m.conj().T) / 2.0
    try:
        if return_vectors:
            w, v = np.linalg.eigh(m)
        else:
            w = np.linalg.eigvalsh(m)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"Hermitian eigensolver failed: {exc}") from exc
    w = w[::-1].real
    spec = Spectrum(np.ascontiguousarray(w), tol)
    if return_vectors:
        v = np.ascontiguousarray(v[:, ::-1])
        _verify_residuals(m, spec.values, v, tol)
        return spec, v
    return spec


def spectral_radius(m) -> float:
    """Largest absolute eigenvalue of a symmetric or Hermitian matrix."""
    arr = m.data if isinstance(m, HermitianMatrix) else np.asarray(m)
    if np.iscomplexobj(arr):
        spec = eig_hermitian(arr)
    else:
        spec = eig_symmetric(arr)
    if len(spec) == 0:
        return 0.0
    return float(max(abs(spec.values[0]), abs(spec.values[-1])))


def split_old_new(
    base: Spectrum,
    lift: Spectrum,
    k: int,
    window: float = DEFAULT_MATCH_WINDOW,
) -> OldNewSplit:
    """Greedily match each base eigenvalue to a lift eigenvalue; rest is new.

    Base eigenvalues are processed in descending order; each takes the nearest
    unused lift eigenvalue (first index on ties). Any base eigenvalue left
    without a partner inside `window` raises MatchingError: either the lift
    spectrum does not come from a lift of this base, or the solver misbehaved.
    """
    n = len(base)
    if len(lift) != k * n:
        raise InvalidParameterError(
            f"lift spectrum has {len(lift)} values, expected k*n = {k * n}"
        )
    lift_vals = lift.values
    used = np.zeros(len(lift), dtype=bool)
    matched = []
    for b in base.values:
        diffs = np.abs(lift_vals - b)
        diffs[used] = np.inf
        idx = int(np.argmin(diffs))
        if diffs[idx] > window:
            raise MatchingError(
                f"base eigenvalue {b!r} has no unused lift partner within "
                f"{window:g} (closest differs by {diffs[idx]:.3e})"
            )
        used[idx] = True
        matched.append(idx)
    old = np.sort(lift_vals[matched])[::-1]
    new = np.sort(lift_vals[~used])[::-1]
    lam_new = float(np.max(np.abs(new))) if new.size else 0.0
    return OldNewSplit(old, new, lam_new, window)


def lambda_nontrivial(
    s: Spectrum, d: int, bipartite: bool = False, tol: float = 1e-6
) -> float:
    """Largest |eigenvalue| after dropping one copy of d (and of -d if bipartite).

    The input must be the adjacency spectrum of a connected-or-not d-regular
    graph: its top value has to equal d within tol.
    """
    vals = list(s.values)
    if not vals:
        raise InvalidParameterError("empty spectrum")
    if abs(vals[0] - d) > tol:
        raise InvalidParameterError(
            f"top eigenvalue {vals[0]!r} differs from d={d} by more than {tol:g}"
        )
    vals.pop(0)
    if bipartite:
        if not vals or abs(vals[-1] + d) > tol:
            raise InvalidParameterError(
                "bipartite flag set but -d is not in the spectrum"
            )
        vals.pop()
    if not vals:
        return 0.0
    return float(max(abs(v) for v in vals))


def rayleigh_quotient(m, x) -> float:
    """|x* M x| / (x* x) for a nonzero real or complex vector x."""
    arr = m.data if isinstance(m, HermitianMatrix) else np.asarray(m)
    x = np.asarray(x)
    denom = float(np.real(np.vdot(x, x)))
    if denom == 0.0:
        raise InvalidParameterError("Rayleigh quotient of the zero vector")
    num = abs(complex(np.vdot(x, arr @ x)))
    return num / denom


def max_multiset_mismatch(a, b) -> float:
    """Max |difference| after descending sort; the multiset matching metric."""
    a = np.sort(np.asarray(a, dtype=float))[::-1]
    b = np.sort(np.asarray(b, dtype=float))[::-1]
    if a.shape != b.shape:
        raise InvalidParameterError("multisets differ in size")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))
