"""Validated quantum states and their decompositions.

Density operators are checked on construction (Hermitian, unit trace,
positive semidefinite); bipartite pure states carry explicit signal and
idler dimensions.  Mode states are plain computational-basis vectors of a
``d_s``-dimensional signal space, so no Fock machinery is involved.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    as_operator,
    max_abs_diff,
    partial_trace,
    require_hermitian,
)

#: Schmidt weights below this are treated as numerically zero.
SCHMIDT_RANK_CUTOFF = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


class DensityMatrix:
    """A Hermitian, positive-semidefinite, unit-trace operator.

    Construction validates all three properties within ``tol`` (max entry
    magnitude for Hermiticity, absolute value for trace and eigenvalue
    checks) and additionally that the purity lies in ``[1/dim, 1]`` up to
    ``tol``.  The stored matrix is read-only.
    """

    __slots__ = ("mat",)

    def __init__(self, mat: np.ndarray, tol: float = DEFAULT_TOL):
        a = require_hermitian(mat, tol)
        tr = complex(np.trace(a))
        if abs(tr - 1.0) > tol:
            raise ValueError(f"trace is {tr:.6g}, expected 1 within {tol:.1e}")
        w = np.linalg.eigvalsh(a)
        if w[0] < -tol:
            raise ValueError(f"not positive semidefinite: min eigenvalue {w[0]:.3e}")
        dim = a.shape[0]
        p = float(np.sum(w * w))
        if p < 1.0 / dim - tol or p > 1.0 + tol:
            raise ValueError(f"purity {p:.6g} outside [1/{dim}, 1]")
        self.mat = _frozen(a)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def purity(self) -> float:
        """Trace of the squared operator, in ``[1/dim, 1]``."""
        return float(np.real(np.einsum("ij,ji->", self.mat, self.mat)))

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim}, purity={self.purity():.6g})"


class BipartiteState:
    """A normalized pure state on a ``d_s x d_i`` tensor-product space.

    Amplitudes are ordered signal-major: entry ``s * d_i + i`` is the
    coefficient of signal mode ``s`` paired with idler level ``i``.
    """

    __slots__ = ("d_s", "d_i", "amplitudes")

    def __init__(self, d_s: int, d_i: int, amplitudes: np.ndarray, tol: float = DEFAULT_TOL):
        if d_s < 2:
            raise ValueError(f"signal dimension must be >= 2, got {d_s}")
        if d_i < 1:
            raise ValueError(f"idler dimension must be >= 1, got {d_i}")
        amp = np.asarray(amplitudes, dtype=complex).reshape(-1)
        if amp.size != d_s * d_i:
            raise ValueError(f"expected {d_s * d_i} amplitudes, got {amp.size}")
        norm_sq = float(np.real(np.vdot(amp, amp)))
        if abs(norm_sq - 1.0) > tol:
            raise ValueError(f"amplitudes have squared norm {norm_sq:.6g}, expected 1")
        self.d_s = int(d_s)
        self.d_i = int(d_i)
        self.amplitudes = _frozen(amp)

    def amplitude_matrix(self) -> np.ndarray:
        """Amplitudes reshaped to ``(d_s, d_i)``."""
        return self.amplitudes.reshape(self.d_s, self.d_i)

    def projector(self) -> np.ndarray:
        """Rank-one projector onto the state, as a raw matrix."""
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def density(self, tol: float = DEFAULT_TOL) -> DensityMatrix:
        """The state as a validated density matrix."""
        return DensityMatrix(self.projector(), tol)

    def __repr__(self) -> str:
        return f"BipartiteState(d_s={self.d_s}, d_i={self.d_i})"


@dataclass(frozen=True)
class SchmidtData:
    """Biorthogonal expansion of a bipartite pure state.

    ``coefficients`` are the non-negative weights in descending order (their
    squares sum to one); ``rank`` counts the coefficients above the cutoff.
    ``signal_basis`` and ``idler_basis`` are matching lists of orthonormal
    vectors, one pair per retained coefficient.
    """

    coefficients: np.ndarray
    rank: int
    signal_basis: tuple[np.ndarray, ...] = field(repr=False)
    idler_basis: tuple[np.ndarray, ...] = field(repr=False)

    def reconstruct(self, d_s: int, d_i: int) -> np.ndarray:
        """Rebuild the amplitude vector from the retained terms."""
        amp = np.zeros(d_s * d_i, dtype=complex)
        for c, s, i in zip(self.coefficients, self.signal_basis, self.idler_basis):
            amp += c * np.kron(s, i)
        return amp


def bell_state(d: int) -> BipartiteState:
    """Maximally entangled state of two ``d``-dimensional subsystems.

    Amplitude ``1/sqrt(d)`` on every matched pair of signal mode and idler
    level, zero elsewhere.  Requires ``d >= 2``.
    """
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    amp = np.zeros(d * d, dtype=complex)
    amp[:: d + 1] = 1.0 / np.sqrt(d)
    return BipartiteState(d, d, amp)


def schmidt_family_state(d_s: int, spectrum) -> BipartiteState:
    """Pure state with a prescribed reduced spectrum.

    Builds ``sum_m sqrt(spectrum[m]) |m>|m>`` so the idler reduction is
    ``diag(spectrum)``.  The spectrum must be non-negative, sum to one and
    have at most ``d_s`` entries; the idler dimension equals its length.
    """
    spec = np.asarray(spectrum, dtype=float).reshape(-1)
    if spec.size < 1 or spec.size > d_s:
        raise ValueError(f"spectrum length {spec.size} not in [1, {d_s}]")
    if np.any(spec < -1e-12):
        raise ValueError("spectrum entries must be non-negative")
    total = float(spec.sum())
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"spectrum sums to {total:.6g}, expected 1")
    d_i = spec.size
    amp = np.zeros(d_s * d_i, dtype=complex)
    for m in range(d_i):
        amp[m * d_i + m] = np.sqrt(max(spec[m], 0.0))
    amp /= np.linalg.norm(amp)
    return BipartiteState(d_s, d_i, amp)


def haar_random_state(d_s: int, d_i: int, seed: int) -> BipartiteState:
    """Uniformly random pure state on a ``d_s x d_i`` space.

    Amplitudes are independent standard complex Gaussians, normalized, which
    is the rotation-invariant distribution on the unit sphere.  The same
    seed always yields the same state.
    """
    if d_s < 2 or d_i < 1:
        raise ValueError(f"invalid dimensions ({d_s}, {d_i})")
    rng = np.random.default_rng(seed)
    n = d_s * d_i
    amp = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    amp /= np.linalg.norm(amp)
    return BipartiteState(d_s, d_i, amp)


def idler_reduction(state: BipartiteState) -> DensityMatrix:
    """Reduced state of the idler: the signal factor traced out."""
    reduced = partial_trace(state.projector(), state.d_s, state.d_i, side="left")
    return DensityMatrix(reduced)


def signal_reduction(state: BipartiteState) -> DensityMatrix:
    """Reduced state of the signal: the idler factor traced out."""
    reduced = partial_trace(state.projector(), state.d_s, state.d_i, side="right")
    return DensityMatrix(reduced)


def effective_rank_k(rho: DensityMatrix) -> float:
    """Inverse purity ``1 / Tr[rho^2]``, between 1 and ``dim``."""
    return 1.0 / rho.purity()


def schmidt(state: BipartiteState, tol: float = SCHMIDT_RANK_CUTOFF) -> SchmidtData:
    """Schmidt decomposition of a bipartite pure state.

    Parameters
    ----------
    state : the pure state to decompose
    tol : weights (squared coefficients) below this are dropped from the rank

    Returns
    -------
    SchmidtData with descending coefficients.  The idler vectors are
    eigenvectors of the idler reduction; the signal vectors are recovered by
    contracting the amplitudes against them.  Each signal vector's first
    nonzero component is made real non-negative (with the compensating phase
    on its idler partner) so repeated runs give identical output.
    """
    a = state.amplitude_matrix()
    rho_i = idler_reduction(state).mat
    w, v = np.linalg.eigh(rho_i)
    order = np.argsort(w)[::-1]
    w = w[order]
    v = v[:, order]

    coeffs = []
    signal_vecs = []
    idler_vecs = []
    for m in range(w.size):
        lam = float(w[m])
        if lam < tol:
            break
        c = np.sqrt(lam)
        i_vec = v[:, m].copy()
        s_vec = a @ i_vec.conj() / c
        # fix the pair's relative phase via the first significant signal entry
        nz = np.flatnonzero(np.abs(s_vec) > 1e-12)
        if nz.size:
            phase = s_vec[nz[0]] / abs(s_vec[nz[0]])
            s_vec = s_vec / phase
            i_vec = i_vec * phase
        coeffs.append(c)
        signal_vecs.append(_frozen(s_vec))
        idler_vecs.append(_frozen(i_vec))

    return SchmidtData(
        coefficients=_frozen(np.asarray(coeffs, dtype=float)),
        rank=len(coeffs),
        signal_basis=tuple(signal_vecs),
        idler_basis=tuple(idler_vecs),
    )


# ---------------------------------------------------------------------------
# JSON wire format, shared with the command-line tool.
#
# Pure states:      {"d_s": n, "d_i": m, "amplitudes": [[re, im], ...]}
# Density matrices: {"dim": n, "entries": [[[re, im], ...], ...]}  (row-major)


def state_to_dict(state: BipartiteState) -> dict:
    """Encode a pure state in the JSON wire format."""
    return {
        "d_s": state.d_s,
        "d_i": state.d_i,
        "amplitudes": [[float(z.real), float(z.imag)] for z in state.amplitudes],
    }


def state_from_dict(obj: dict, tol: float = DEFAULT_TOL) -> BipartiteState:
    """Decode a pure state from the JSON wire format."""
    try:
        d_s = int(obj["d_s"])
        d_i = int(obj["d_i"])
        pairs = obj["amplitudes"]
        amp = np.array([complex(re, im) for re, im in pairs], dtype=complex)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed pure-state object: {exc}") from exc
    return BipartiteState(d_s, d_i, amp, tol)


def density_to_dict(rho: DensityMatrix) -> dict:
    """Encode a density matrix in the JSON wire format."""
    return {
        "dim": rho.dim,
        "entries": [
            [[float(z.real), float(z.imag)] for z in row] for row in rho.mat
        ],
    }


def density_from_dict(obj: dict, tol: float = DEFAULT_TOL) -> DensityMatrix:
    """Decode a density matrix from the JSON wire format."""
    try:
        dim = int(obj["dim"])
        rows = obj["entries"]
        mat = np.array(
            [[complex(re, im) for re, im in row] for row in rows], dtype=complex
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed density-matrix object: {exc}") from exc
    if mat.shape != (dim, dim):
        raise ValueError(f"entries shape {mat.shape} does not match dim {dim}")
    as_operator(mat)
    return DensityMatrix(mat, tol)


def reconstruction_residual(state: BipartiteState, data: SchmidtData) -> float:
    """Max amplitude error of the Schmidt reconstruction against the state."""
    rebuilt = data.reconstruct(state.d_s, state.d_i)
    return max_abs_diff(rebuilt, state.amplitudes)
