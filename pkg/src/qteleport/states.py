"""Qubit states, Bloch geometry, and the chord decomposition of a
noncommuting pair.

A qubit density matrix is identified with its Bloch vector r through
rho = (I + r.sigma)/2. Two qubits commute exactly when their Bloch vectors
are parallel, so for a noncommuting pair the line through r1 and r2 meets
the unit sphere in exactly two points. The pure states sitting at those
two points are the unique non-orthogonal pair through which both inputs
decompose as binary convex mixtures with distinct weights; that
decomposition is what `extreme_decomposition` returns.
"""

from dataclasses import dataclass

import numpy as np

from .errors import CommutingInputError, DegenerateInputError, DimensionError
from .linalg import (
    clamped_psd_eigenvalues,
    dagger,
    eig_hermitian,
    fix_phase,
    frobenius,
    hermiticity_defect,
    psd_sqrt,
)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

STATE_ATOL = 1e-10
# Frobenius commutator norms below this count as commuting; near-parallel
# Bloch vectors make the chord geometry ill-conditioned.
COMMUTING_TOL = 1e-8


def check_pure_state(psi, dim: int | None = None) -> np.ndarray:
    """Validate a unit-norm state vector and return it as complex128."""
    v = np.asarray(psi, dtype=np.complex128).reshape(-1)
    if dim is not None and v.size != dim:
        raise DimensionError(f"expected a state of dim {dim}, got {v.size}")
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > STATE_ATOL:
        raise ValueError(f"state vector norm {norm:.12g} is not 1 within {STATE_ATOL:.0e}")
    return v


def check_density_matrix(rho, dim: int | None = None) -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity; return complex128."""
    m = np.asarray(rho, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"density matrix must be square, got shape {m.shape}")
    if dim is not None and m.shape[0] != dim:
        raise DimensionError(f"expected dim {dim}, got {m.shape[0]}")
    if frobenius(m - dagger(m)) > STATE_ATOL:
        raise ValueError("density matrix is not Hermitian within 1e-10")
    tr = float(np.trace(m).real)
    if abs(tr - 1.0) > STATE_ATOL:
        raise ValueError(f"density matrix trace {tr:.12g} is not 1 within {STATE_ATOL:.0e}")
    clamped_psd_eigenvalues(m)  # raises if an eigenvalue < -1e-10
    return m


def pure_density(psi) -> np.ndarray:
    """|psi><psi| for a unit vector."""
    v = check_pure_state(psi)
    return np.outer(v, v.conj())


def bloch_from_density(rho) -> np.ndarray:
    """Bloch vector r_k = Tr(rho sigma_k) of a qubit density matrix."""
    m = check_density_matrix(rho, dim=2)
    return np.array([np.trace(m @ s).real for s in PAULIS])


def density_from_bloch(r) -> np.ndarray:
    """rho = (I + r.sigma)/2 for a Bloch vector inside the unit ball."""
    r = np.asarray(r, dtype=float).reshape(-1)
    if r.size != 3:
        raise DimensionError(f"Bloch vector needs 3 components, got {r.size}")
    norm = float(np.linalg.norm(r))
    if norm > 1.0 + STATE_ATOL:
        raise ValueError(f"Bloch vector norm {norm:.12g} lies outside the unit ball")
    rho = np.eye(2, dtype=complex)
    for ri, s in zip(r, PAULIS):
        rho = rho + ri * s
    return rho / 2.0


def pure_state_from_bloch(r) -> np.ndarray:
    """Unit-sphere Bloch vector -> state vector, phase-fixed."""
    r = np.asarray(r, dtype=float)
    if abs(np.linalg.norm(r) - 1.0) > 1e-9:
        raise ValueError("Bloch vector must lie on the unit sphere for a pure state")
    # Eigenvector of r.sigma with eigenvalue +1, written in half angles.
    theta = np.arccos(np.clip(r[2], -1.0, 1.0))
    phi = np.arctan2(r[1], r[0])
    v = np.array([np.cos(theta / 2.0), np.exp(1j * phi) * np.sin(theta / 2.0)])
    return fix_phase(v)


def commutator_norm(rho1, rho2) -> float:
    """Frobenius norm of [rho1, rho2]; zero exactly for commuting states.

    For qubits this equals |r1 x r2| / sqrt(2) in Bloch coordinates.
    """
    a = np.asarray(rho1, dtype=np.complex128)
    b = np.asarray(rho2, dtype=np.complex128)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return frobenius(a @ b - b @ a)


@dataclass(frozen=True)
class ExtremeDecomposition:
    """Shared two-state convex decomposition of a noncommuting qubit pair.

    rho_j = lam_j |psi><psi| + (1 - lam_j) |phi><phi| for j in {1, 2},
    with psi and phi non-orthogonal pure qubits and lam1 != lam2.
    ``boundary`` is True when at least one input was itself pure, in which
    case that input sits at a chord endpoint and its weight is 0 or 1.
    """

    psi: np.ndarray
    phi: np.ndarray
    lam1: float
    lam2: float
    boundary: bool

    def overlap(self) -> float:
        return float(abs(np.vdot(self.psi, self.phi)))

    def reconstruct(self, which: int) -> np.ndarray:
        lam = {1: self.lam1, 2: self.lam2}[which]
        return lam * np.outer(self.psi, self.psi.conj()) + (1.0 - lam) * np.outer(
            self.phi, self.phi.conj()
        )


def _chord_weight(r: np.ndarray, u: np.ndarray, v: np.ndarray) -> float:
    """Solve r = lam*u + (1-lam)*v, checking consistency across coordinates."""
    d = u - v
    lam = float((r - v) @ d / (d @ d))
    residual = np.max(np.abs(r - (lam * u + (1.0 - lam) * v)))
    if residual > 1e-10:
        raise ArithmeticError(
            f"chord weight inconsistent across coordinates (residual {residual:.3e})"
        )
    return lam


def extreme_decomposition(rho1, rho2) -> ExtremeDecomposition:
    """Decompose a noncommuting qubit pair through its two chord states.

    Geometry: the line through the Bloch vectors r1, r2 pierces the unit
    sphere where |r1 + t (r2 - r1)|^2 = 1; the two quadratic roots give the
    pure states psi (larger t, i.e. the far intersection along r1 -> r2)
    and phi (smaller t). The weights lam_j place each rho_j on that chord.

    Raises CommutingInputError when the commutator norm is at most 1e-8 and
    DegenerateInputError when the two states coincide.
    """
    m1 = check_density_matrix(rho1, dim=2)
    m2 = check_density_matrix(rho2, dim=2)
    cnorm = commutator_norm(m1, m2)
    if cnorm <= COMMUTING_TOL:
        raise CommutingInputError(
            f"inputs commute within tolerance (commutator norm {cnorm:.3e} <= "
            f"{COMMUTING_TOL:.0e}); the two-state decomposition is not unique",
            commutator_norm=cnorm,
        )
    r1 = bloch_from_density(m1)
    r2 = bloch_from_density(m2)
    d = r2 - r1
    if np.linalg.norm(d) < 1e-10:
        raise DegenerateInputError("input states coincide; no chord through them")

    # |r1 + t d|^2 = 1, guaranteed to have two real roots since r1 is inside
    # (or on) the unit ball and d is nonzero.
    a = float(d @ d)
    b = 2.0 * float(r1 @ d)
    c = float(r1 @ r1) - 1.0
    disc = b * b - 4.0 * a * c
    sq = np.sqrt(max(disc, 0.0))
    t_hi = (-b + sq) / (2.0 * a)
    t_lo = (-b - sq) / (2.0 * a)

    u = r1 + t_hi * d
    v = r1 + t_lo * d
    # Project exactly onto the sphere to keep the pure-state constructor happy.
    u = u / np.linalg.norm(u)
    v = v / np.linalg.norm(v)

    psi = pure_state_from_bloch(u)
    phi = pure_state_from_bloch(v)
    lam1 = _chord_weight(r1, u, v)
    lam2 = _chord_weight(r2, u, v)
    purity1 = float(np.trace(m1 @ m1).real)
    purity2 = float(np.trace(m2 @ m2).real)
    boundary = purity1 > 1.0 - 1e-12 or purity2 > 1.0 - 1e-12
    return ExtremeDecomposition(psi=psi, phi=phi, lam1=lam1, lam2=lam2, boundary=boundary)


def haar_random_pure(dim: int, seed) -> np.ndarray:
    """Haar-distributed pure state of the given dimension, phase-fixed.

    ``seed`` may be an int or a numpy SeedSequence/Generator; equal seeds
    give identical states.
    """
    if dim < 1:
        raise DimensionError(f"dimension must be >= 1, got {dim}")
    rng = np.random.default_rng(seed)
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return fix_phase(v / np.linalg.norm(v))


def random_unitary(dim: int, seed) -> np.ndarray:
    """Haar-distributed unitary via QR of a Ginibre matrix."""
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density_matrix(dim: int, seed, rank: int | None = None) -> np.ndarray:
    """Random mixed state from a normalized Ginibre product G G^dagger."""
    if rank is None:
        rank = dim
    if not 1 <= rank <= dim:
        raise DimensionError(f"rank must be in [1, {dim}], got {rank}")
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ dagger(g)
    return rho / np.trace(rho).real


def state_fidelity(rho, sigma) -> float:
    """Uhlmann fidelity F = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.

    Evaluated as the squared nuclear norm of sqrt(sigma) sqrt(rho), which
    is the same quantity but keeps roundoff out of the square roots:
    spurious singular values enter the sum linearly at machine scale.
    """
    a = np.asarray(rho, dtype=np.complex128)
    b = np.asarray(sigma, dtype=np.complex128)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")
    singulars = np.linalg.svd(psd_sqrt(b) @ psd_sqrt(a), compute_uv=False)
    f = float(np.sum(singulars) ** 2)
    return min(f, 1.0 + 1e-10)
