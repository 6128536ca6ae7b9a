"""Derivative-free search over a one-round protocol family, swept against
channel entanglement.

The family: the sender performs a complete orthogonal measurement on
particles (1, A) — rank-1 projectors onto the columns of a 4x4 unitary
decoded from a Hermitian generator — and the receiver, conditioned on the
outcome, routes B into 2 and applies an outcome-indexed single-qubit
unitary (axis-angle encoded). This contains the standard Bell-measurement
protocol and always satisfies the completeness condition by construction.
It is one round of LOCC, not the full separable-pair class, so sweep
numbers are lower bounds achieved by explicit protocols rather than upper
bounds over all protocols.

The headline use: fix a non-orthogonal state pair, sweep the resource
angle, and watch the best worst-case fidelity reach 1 only where the
resource is maximally entangled.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import schur

from . import jsonio
from .channels import LocalKrausProtocol, angle_channel, entangled_pair_ket
from .entanglement import entropy_of_entanglement
from .errors import DimensionError
from .linalg import dagger, eig_hermitian
from .states import check_density_matrix, check_pure_state
from .teleport import SWAP, bell_unitary, receiver_factor

N_ALICE_PARAMS = 16
N_BOB_PARAMS = 12
N_PARAMS = N_ALICE_PARAMS + N_BOB_PARAMS

# Row/column index pairs for the six independent off-diagonal entries of a
# 4x4 Hermitian generator.
_OFFDIAG = [(i, j) for i in range(4) for j in range(i + 1, 4)]
_OFF_I = np.array([i for i, _ in _OFFDIAG])
_OFF_J = np.array([j for _, j in _OFFDIAG])
_DIAG = np.arange(4)


@dataclass(frozen=True)
class ProtocolParams:
    """Flat real parameterization of one protocol in the family.

    ``alice_params``: 16 coefficients of the Hermitian generator H in the
    orthogonal basis {E_ii; E_ij + E_ji; i(E_ij - E_ji)}; the measurement
    unitary is exp(iH). ``bob_params``: four axis-angle triples, one
    two-by-two special unitary per measurement outcome.
    """

    alice_params: np.ndarray
    bob_params: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.alice_params, dtype=float).reshape(-1)
        b = np.asarray(self.bob_params, dtype=float).reshape(4, 3)
        if a.size != N_ALICE_PARAMS:
            raise DimensionError(f"expected {N_ALICE_PARAMS} sender parameters, got {a.size}")
        object.__setattr__(self, "alice_params", a)
        object.__setattr__(self, "bob_params", b)

    def as_vector(self) -> np.ndarray:
        return np.concatenate([self.alice_params, self.bob_params.reshape(-1)])

    @classmethod
    def from_vector(cls, vec) -> "ProtocolParams":
        v = np.asarray(vec, dtype=float).reshape(-1)
        if v.size != N_PARAMS:
            raise DimensionError(f"expected {N_PARAMS} parameters, got {v.size}")
        return cls(alice_params=v[:N_ALICE_PARAMS], bob_params=v[N_ALICE_PARAMS:].reshape(4, 3))


def _hermitian_from_params(a: np.ndarray) -> np.ndarray:
    h = np.zeros((4, 4), dtype=np.complex128)
    h[_DIAG, _DIAG] = a[:4]
    off = a[4::2] + 1j * a[5::2]
    h[_OFF_I, _OFF_J] = off
    h[_OFF_J, _OFF_I] = off.conj()
    return h


def _params_from_hermitian(h: np.ndarray) -> np.ndarray:
    a = np.zeros(N_ALICE_PARAMS)
    a[:4] = np.diag(h).real
    for k, (i, j) in enumerate(_OFFDIAG):
        a[4 + 2 * k] = h[i, j].real
        a[5 + 2 * k] = h[i, j].imag
    return a


def decode_alice_unitary(alice_params) -> np.ndarray:
    """exp(iH) through the eigendecomposition of the Hermitian generator."""
    h = _hermitian_from_params(np.asarray(alice_params, dtype=float))
    vals, vecs = np.linalg.eigh(h)
    return (vecs * np.exp(1j * vals)) @ vecs.conj().T


def encode_alice_unitary(u) -> np.ndarray:
    """Sender parameters whose decoded unitary reproduces ``u`` exactly.

    Takes the Hermitian logarithm through a complex Schur form; any unitary
    is normal, so the Schur factor is diagonal.
    """
    u = np.asarray(u, dtype=np.complex128)
    t, q = schur(u, output="complex")
    h = (q * np.angle(np.diag(t))) @ q.conj().T
    return _params_from_hermitian((h + dagger(h)) / 2.0)


def decode_bob_unitaries(bob_params) -> np.ndarray:
    """Axis-angle triples -> stacked 2x2 special unitaries, smooth at zero."""
    w = np.asarray(bob_params, dtype=float).reshape(4, 3)
    alpha = np.sqrt((w * w).sum(axis=1))
    half = alpha / 2.0
    # sin(alpha/2)/alpha, continued through alpha = 0
    safe = np.maximum(alpha, 1e-300)
    coeff = np.where(alpha > 1e-12, np.sin(half) / safe, 0.5)
    out = np.empty((4, 2, 2), dtype=np.complex128)
    cos = np.cos(half)
    cz = coeff * w[:, 2]
    cx = coeff * w[:, 0]
    cy = coeff * w[:, 1]
    out[:, 0, 0] = cos - 1j * cz
    out[:, 1, 1] = cos + 1j * cz
    out[:, 0, 1] = -cy - 1j * cx
    out[:, 1, 0] = cy - 1j * cx
    return out


def decode_protocol(params: ProtocolParams) -> LocalKrausProtocol:
    """Materialize the Kraus pairs: column projectors and routed corrections."""
    vec = params.as_vector()
    if not np.all(np.isfinite(vec)):
        raise ValueError("protocol parameters contain non-finite values")
    u = decode_alice_unitary(params.alice_params)
    bobs = decode_bob_unitaries(params.bob_params)
    pairs = []
    for i in range(4):
        col = u[:, i]
        pairs.append((np.outer(col, col.conj()), receiver_factor(bobs[i])))
    return LocalKrausProtocol(pairs=tuple(pairs), alice_dim=4, bob_dim=4)


def bbcjpw_equivalent_params() -> ProtocolParams:
    """Parameters decoding to the Bell measurement with Pauli corrections."""
    alice = encode_alice_unitary(bell_unitary())
    bob = np.array(
        [
            [0.0, 0.0, 0.0],       # identity
            [0.0, 0.0, np.pi],     # z correction
            [np.pi, 0.0, 0.0],     # x correction
            [0.0, np.pi, 0.0],     # y correction
        ]
    )
    return ProtocolParams(alice_params=alice, bob_params=bob)


class _PairObjective:
    """min-fidelity objective for a fixed channel and fixed state pair.

    Precomputes the channel's spectral mixture and evaluates each protocol
    without materializing 16x16 operators: with a rank-one sender projector
    the joint Kraus image of a product vector factorizes, so each term
    costs a handful of 4x4 products.
    """

    def __init__(self, channel_rho, chi1, chi2):
        rho_ch = check_density_matrix(channel_rho, dim=8)
        self.chi = [check_pure_state(chi1, dim=2), check_pure_state(chi2, dim=2)]
        eig = eig_hermitian(rho_ch)
        keep = eig.eigenvalues > 1e-12
        self.weights = eig.eigenvalues[keep]
        vecs = eig.eigenvectors[:, keep]
        # V4[j][k]: kron(chi_j, w_k) viewed as (sender 1A) x (receiver B2)
        self.v4 = [
            [np.kron(chi, vecs[:, k]).reshape(4, 4) for k in range(vecs.shape[1])]
            for chi in self.chi
        ]
        self.chi_conj = [chi.conj() for chi in self.chi]
        self._col_perm = SWAP.real.argmax(axis=0)

    def __call__(self, vec: np.ndarray) -> float:
        u = decode_alice_unitary(vec[:N_ALICE_PARAMS])
        bobs = decode_bob_unitaries(vec[N_ALICE_PARAMS:])
        # receiver factor per outcome: block-diagonal copy of the 2x2
        # unitary, columns permuted by the routing swap
        blocks = np.zeros((4, 4, 4), dtype=np.complex128)
        blocks[:, 0:2, 0:2] = bobs
        blocks[:, 2:4, 2:4] = bobs
        bstack = blocks[:, :, self._col_perm]

        fmin = 1.0
        u_dag = u.conj().T
        for j in (0, 1):
            fid = 0.0
            for weight, v4 in zip(self.weights, self.v4[j]):
                rows = u_dag @ v4                       # row i: <c_i| V4
                imgs = np.matmul(bstack, rows[:, :, None])
                m = imgs.reshape(4, 2, 2) @ self.chi_conj[j]
                fid += weight * float(np.vdot(m, m).real)
            fmin = min(fmin, fid)
        return min(max(fmin, 0.0), 1.0)


def pair_objective(params: ProtocolParams, channel_rho, chi1, chi2) -> float:
    """Worst teleportation fidelity over the two states, for one protocol."""
    v1 = check_pure_state(chi1, dim=2)
    v2 = check_pure_state(chi2, dim=2)
    if abs(np.vdot(v1, v2)) <= 1e-8:
        raise ValueError("state pair must be non-orthogonal")
    return _PairObjective(channel_rho, v1, v2)(params.as_vector())


@dataclass(frozen=True)
class OptResult:
    """Outcome of one simplex run (maximization)."""

    best_params: np.ndarray
    best_objective: float
    evaluations: int
    converged: bool


def nelder_mead(
    objective,
    init,
    tol_x: float = 1e-8,
    tol_f: float = 1e-10,
    max_evals: int = 20000,
    initial_step: float = 0.1,
) -> OptResult:
    """Maximize ``objective`` with the Nelder-Mead simplex.

    Coefficients are the classic (reflect 1, expand 2, contract 0.5,
    shrink 0.5). The run converges when the simplex diameter drops below
    ``tol_x`` or the objective spread below ``tol_f``; hitting
    ``max_evals`` first reports converged=False rather than raising.
    """
    x0 = np.asarray(init, dtype=float).reshape(-1)
    n = x0.size
    if n < 1:
        raise ValueError("need at least one parameter")

    evals = 0

    def f(x):
        nonlocal evals
        evals += 1
        return -float(objective(x))

    simplex = np.tile(x0, (n + 1, 1))
    simplex[1:] += np.eye(n) * initial_step
    values = np.array([f(simplex[k]) for k in range(n + 1)])

    converged = False
    while evals < max_evals:
        order = np.argsort(values, kind="stable")
        simplex = simplex[order]
        values = values[order]

        diff = simplex[1:] - simplex[0]
        diameter = float(np.sqrt((diff * diff).sum(axis=1).max()))
        spread = float(values[-1] - values[0])
        if diameter < tol_x or spread < tol_f:
            converged = True
            break

        centroid = simplex[:-1].mean(axis=0)
        reflected = centroid + (centroid - simplex[-1])
        fr = f(reflected)
        if fr < values[0]:
            expanded = centroid + 2.0 * (centroid - simplex[-1])
            fe = f(expanded)
            if fe < fr:
                simplex[-1], values[-1] = expanded, fe
            else:
                simplex[-1], values[-1] = reflected, fr
        elif fr < values[-2]:
            simplex[-1], values[-1] = reflected, fr
        else:
            if fr < values[-1]:
                contracted = centroid + 0.5 * (reflected - centroid)
                fc = f(contracted)
                accept = fc <= fr
            else:
                contracted = centroid + 0.5 * (simplex[-1] - centroid)
                fc = f(contracted)
                accept = fc < values[-1]
            if accept:
                simplex[-1], values[-1] = contracted, fc
            else:
                simplex[1:] = simplex[0] + 0.5 * (simplex[1:] - simplex[0])
                for k in range(1, n + 1):
                    values[k] = f(simplex[k])

    best_idx = int(np.argmin(values))
    return OptResult(
        best_params=simplex[best_idx].copy(),
        best_objective=-float(values[best_idx]),
        evaluations=evals,
        converged=converged,
    )


# Restart ladder for each sweep start: (initial step, evaluation share).
# After the first convergence, a wide simplex restart hops out of shallow
# local basins and the tighter steps polish whatever it lands in; the final
# leg gets the rest of the per-start budget.
_RESTART_LADDER = ((0.1, 0.4), (0.7, 0.2), (0.1, 0.2), (0.02, 1.0))


def _polished_run(objective, start, tol_x, tol_f, max_evals) -> OptResult:
    """One multistart leg: a ladder of simplex runs within a shared budget.

    Every run after the first restarts from the best point seen so far.
    Stops early when the budget is gone or the objective has hit its
    ceiling of 1.
    """
    remaining = max_evals
    point = np.asarray(start, dtype=float)
    best = None
    total = 0
    for step, share in _RESTART_LADDER:
        if remaining <= 0:
            break
        budget = min(remaining, max(1, int(max_evals * share)))
        result = nelder_mead(
            objective, point, tol_x=tol_x, tol_f=tol_f,
            max_evals=budget, initial_step=step,
        )
        total += result.evaluations
        remaining -= result.evaluations
        if best is None or result.best_objective > best.best_objective:
            best = result
        point = best.best_params
        if best.best_objective >= 1.0 - 1e-12:
            break
    return OptResult(
        best_params=best.best_params,
        best_objective=best.best_objective,
        evaluations=total,
        converged=best.converged,
    )


@dataclass(frozen=True)
class SweepRow:
    """One resource angle of the sweep, with the winning protocol kept."""

    theta: float
    channel_entropy: float
    best_min_fidelity: float
    starts: int
    evaluations: int
    best_params: ProtocolParams


def stratified_starts(n_starts: int, rng: np.random.Generator) -> np.ndarray:
    """Latin-hypercube points in [-pi, pi]^28, one coordinate stratum each."""
    if n_starts < 1:
        return np.zeros((0, N_PARAMS))
    strata = rng.permuted(np.tile(np.arange(n_starts), (N_PARAMS, 1)), axis=1).T
    u = (strata + rng.random((n_starts, N_PARAMS))) / n_starts
    return (u * 2.0 - 1.0) * np.pi


def sweep_channel_angle(
    thetas,
    chi1,
    chi2,
    starts: int = 32,
    seed=0,
    tol_x: float = 1e-8,
    tol_f: float = 1e-10,
    max_evals: int = 20000,
) -> list[SweepRow]:
    """Best worst-case pair fidelity per resource angle, multistart simplex.

    Each angle in (0, pi/4] gets ``starts`` simplex runs: one seeded at the
    Bell-measurement parameters and the rest at stratified random points.
    Ties keep the earliest start. Rows come back sorted by angle and are
    bit-reproducible for a fixed seed and grid.
    """
    thetas = [float(t) for t in thetas]
    for t in thetas:
        if not 0.0 < t <= np.pi / 4.0 + 1e-12:
            raise ValueError(f"theta {t!r} outside (0, pi/4]")
    if starts < 1:
        raise ValueError("starts must be >= 1")
    v1 = check_pure_state(chi1, dim=2)
    v2 = check_pure_state(chi2, dim=2)

    root = np.random.SeedSequence(seed)
    theta_seeds = root.spawn(len(thetas))
    order = np.argsort(thetas)

    rows = []
    for idx in order:
        theta = thetas[idx]
        objective = _PairObjective(angle_channel(theta), v1, v2)
        rng = np.random.default_rng(theta_seeds[idx])
        start_points = [bbcjpw_equivalent_params().as_vector()]
        start_points.extend(stratified_starts(starts - 1, rng))

        best = None
        total_evals = 0
        for point in start_points:
            result = _polished_run(objective, point, tol_x, tol_f, max_evals)
            total_evals += result.evaluations
            if best is None or result.best_objective > best.best_objective:
                best = result
        rows.append(
            SweepRow(
                theta=theta,
                channel_entropy=entropy_of_entanglement(entangled_pair_ket(theta), (2, 2)),
                best_min_fidelity=best.best_objective,
                starts=starts,
                evaluations=total_evals,
                best_params=ProtocolParams.from_vector(best.best_params),
            )
        )
    return rows


SWEEP_CSV_COLUMNS = ("theta", "channel_entropy", "best_min_fidelity", "starts", "evaluations")


def sweep_to_csv(rows) -> str:
    """Fixed-column CSV with 17-significant-digit floats."""
    lines = [",".join(SWEEP_CSV_COLUMNS)]
    for row in rows:
        lines.append(
            ",".join(
                [
                    jsonio.format_float(row.theta),
                    jsonio.format_float(row.channel_entropy),
                    jsonio.format_float(row.best_min_fidelity),
                    str(row.starts),
                    str(row.evaluations),
                ]
            )
        )
    return "\n".join(lines) + "\n"
