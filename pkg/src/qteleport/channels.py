"""Local protocols as Kraus pairs, channel purification, and unitary dilation.

A one-shot local protocol between two parties is a finite family of
operator pairs (A_i, B_i), A_i acting on the sender's factor and B_i on
the receiver's, applied as

    rho -> sum_i (A_i (x) B_i) rho (A_i (x) B_i)^dagger

subject to the trace-preservation condition
sum_i (A_i^dagger A_i) (x) (B_i^dagger B_i) = I.

Register convention used throughout the package: (1, A, B, 2, M, E) with
particle 1 the input, A held by the sender, B and 2 by the receiver, M a
purifying ancilla and E a dilating environment. Resource channels live on
A (x) B (x) 2 with particle 2 initialized to |0>.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from . import jsonio
from .errors import DimensionError, IncompleteProtocolError
from .linalg import dagger, eig_hermitian, frobenius, kron, partial_trace
from .states import check_density_matrix, check_pure_state, fix_phase

COMPLETENESS_TOL = 1e-9


@dataclass(frozen=True)
class LocalKrausProtocol:
    """Ordered Kraus pairs (A_i, B_i) with the factor dimensions pinned."""

    pairs: tuple
    alice_dim: int
    bob_dim: int

    def __post_init__(self):
        pairs = tuple(
            (np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))
            for a, b in self.pairs
        )
        object.__setattr__(self, "pairs", pairs)
        if not pairs:
            raise DimensionError("protocol needs at least one Kraus pair")
        a0, b0 = pairs[0]
        for a, b in pairs:
            if a.shape[1] != self.alice_dim:
                raise DimensionError(
                    f"sender operator has {a.shape[1]} columns, expected {self.alice_dim}"
                )
            if b.shape[1] != self.bob_dim:
                raise DimensionError(
                    f"receiver operator has {b.shape[1]} columns, expected {self.bob_dim}"
                )
            if a.shape != a0.shape or b.shape != b0.shape:
                raise DimensionError("all Kraus pairs must share the same shapes")

    def __len__(self) -> int:
        return len(self.pairs)

    def kraus_operators(self) -> list:
        """The joint operators A_i (x) B_i."""
        return [kron(a, b) for a, b in self.pairs]


def check_completeness(p: LocalKrausProtocol) -> float:
    """Frobenius residual of sum_i (A_i^t A_i) (x) (B_i^t B_i) against I."""
    total = np.zeros((p.alice_dim * p.bob_dim,) * 2, dtype=np.complex128)
    for a, b in p.pairs:
        total += kron(dagger(a) @ a, dagger(b) @ b)
    return frobenius(total - np.eye(total.shape[0]))


def require_complete(p: LocalKrausProtocol, tol: float = COMPLETENESS_TOL) -> None:
    residual = check_completeness(p)
    if residual > tol:
        raise IncompleteProtocolError(
            f"Kraus pairs do not resolve the identity (residual {residual:.3e} > {tol:.0e})",
            residual=residual,
        )


def entangled_pair_ket(theta: float) -> np.ndarray:
    """cos(theta)|00> + sin(theta)|11> on the A:B pair."""
    ket = np.zeros(4, dtype=np.complex128)
    ket[0] = np.cos(theta)
    ket[3] = np.sin(theta)
    return ket


def resource_channel(pair_state) -> np.ndarray:
    """Embed an A:B resource as a channel state on A (x) B (x) 2.

    ``pair_state`` is a 4-dim ket or 4x4 density matrix on A:B; particle 2
    starts in |0>.
    """
    m = np.asarray(pair_state, dtype=np.complex128)
    if m.ndim == 1:
        m = np.outer(check_pure_state(m, dim=4), m.conj())
    else:
        m = check_density_matrix(m, dim=4)
    ground = np.zeros((2, 2), dtype=np.complex128)
    ground[0, 0] = 1.0
    return kron(m, ground)


def angle_channel(theta: float) -> np.ndarray:
    """Channel state for the cos/sin resource at a given Schmidt angle."""
    return resource_channel(entangled_pair_ket(theta))


def apply_protocol(input_rho, channel_rho, p: LocalKrausProtocol) -> np.ndarray:
    """Run the Kraus-pair map on (input particle 1) (x) (channel on A,B,2).

    The sender factor of the protocol acts on particles (1, A), the
    receiver factor on (B, 2), so the joint operators are exactly
    A_i (x) B_i in the (1, A, B, 2) register order. Trace is preserved.
    """
    rho_in = check_density_matrix(input_rho, dim=2)
    rho_ch = check_density_matrix(channel_rho, dim=8)
    if p.alice_dim != 4 or p.bob_dim != 4:
        raise DimensionError(
            f"teleportation protocols act on (1,A) and (B,2); got factor dims "
            f"{p.alice_dim} and {p.bob_dim}, expected 4 and 4"
        )
    require_complete(p)
    joint = kron(rho_in, rho_ch)
    out = np.zeros_like(joint)
    for k in p.kraus_operators():
        out += k @ joint @ dagger(k)
    return out


def teleported_output(joint) -> np.ndarray:
    """Reduce a (1, A, B, 2) state to the particle-2 marginal."""
    m = np.asarray(joint, dtype=np.complex128)
    if m.shape != (16, 16):
        raise DimensionError(f"expected a 4-qubit state of dim 16, got {m.shape}")
    return partial_trace(m, [2, 2, 2, 2], keep={3})


@dataclass(frozen=True)
class Purification:
    """Pure state on system (x) M whose M-marginal trace recovers the input."""

    psi: np.ndarray
    ancilla_dim: int

    def system_dim(self) -> int:
        return self.psi.size // self.ancilla_dim

    def reduce(self) -> np.ndarray:
        """Trace out M, recovering the original density matrix."""
        rho = np.outer(self.psi, self.psi.conj())
        return partial_trace(rho, [self.system_dim(), self.ancilla_dim], keep={0})


def purify(rho) -> Purification:
    """Spectral purification: sum_k sqrt(l_k) |e_k> (x) |k>_M.

    The ancilla dimension is the number of eigenvalues above 1e-12, so pure
    inputs get a trivial one-dimensional ancilla.
    """
    m = check_density_matrix(rho)
    eig = eig_hermitian(m)
    order = np.argsort(eig.eigenvalues)[::-1]
    vals = eig.eigenvalues[order]
    vecs = eig.eigenvectors[:, order]
    rank = max(1, int(np.sum(vals > 1e-12)))
    d = m.shape[0]
    psi = np.zeros(d * rank, dtype=np.complex128)
    for k in range(rank):
        psi[k::rank] = np.sqrt(max(vals[k], 0.0)) * vecs[:, k]
    psi = fix_phase(psi / np.linalg.norm(psi))
    return Purification(psi=psi, ancilla_dim=rank)


@dataclass(frozen=True)
class Dilation:
    """Unitary realization of a Kraus map on system (x) environment.

    On the slice where the environment starts in |0>, u acts as
    |x> (x) |0>_E -> sum_i (K_i |x>) (x) |i>_E; the remaining columns are a
    deterministic orthonormal completion and never see valid inputs.
    """

    u: np.ndarray
    env_dim: int
    env_initial_index: int = field(default=0)

    def system_dim(self) -> int:
        return self.u.shape[0] // self.env_dim

    def apply(self, rho) -> np.ndarray:
        """Conjugate (rho (x) |0><0|_E) by u and trace out the environment."""
        rho = np.asarray(rho, dtype=np.complex128)
        d = self.system_dim()
        if rho.shape != (d, d):
            raise DimensionError(f"expected a system state of dim {d}, got {rho.shape}")
        env0 = np.zeros((self.env_dim, self.env_dim), dtype=np.complex128)
        env0[self.env_initial_index, self.env_initial_index] = 1.0
        lifted = self.u @ kron(rho, env0) @ dagger(self.u)
        return partial_trace(lifted, [d, self.env_dim], keep={0})


def _next_power_of_two(n: int) -> int:
    p = 1
    while p < n:
        p *= 2
    return p


def dilate(p: LocalKrausProtocol) -> Dilation:
    """Build the environment unitary whose |0>_E slice carries the protocol.

    The environment dimension is the smallest power of two holding one
    orthonormal flag state per Kraus pair; completeness makes the
    constructed columns orthonormal, and Gram-Schmidt over canonical basis
    vectors (skipping those within 1e-8 of the running span) fills in the
    rest deterministically.
    """
    require_complete(p)
    kraus = p.kraus_operators()
    d = p.alice_dim * p.bob_dim
    if kraus[0].shape != (d, d):
        raise DimensionError("dilation needs square joint Kraus operators")
    n = len(kraus)
    env = _next_power_of_two(n)
    total = d * env

    u = np.zeros((total, total), dtype=np.complex128)
    # Column for |x> (x) |0>_E sits at index x*env; its entries stack the
    # i-th Kraus image into the environment flag |i>.
    for x in range(d):
        col = np.zeros(total, dtype=np.complex128)
        for i, k in enumerate(kraus):
            col[i::env] = k[:, x]
        u[:, x * env] = col

    filled = [x * env for x in range(d)]
    basis = u[:, filled]  # orthonormal by completeness
    free = [j for j in range(total) if j % env != 0]
    cursor = 0
    for j in free:
        while True:
            if cursor >= total:
                raise ArithmeticError("ran out of candidate vectors completing the dilation")
            cand = np.zeros(total, dtype=np.complex128)
            cand[cursor] = 1.0
            cursor += 1
            w = cand - basis @ (dagger(basis) @ cand)
            w = w - basis @ (dagger(basis) @ w)  # second pass for orthogonality
            norm = np.linalg.norm(w)
            if norm >= 1e-8:
                w = w / norm
                u[:, j] = w
                basis = np.column_stack([basis, w])
                break
    return Dilation(u=u, env_dim=env)


def random_local_protocol(
    seed, alice_dim: int = 2, bob_dim: int = 2, n_pairs: int = 4
) -> LocalKrausProtocol:
    """Random valid protocol: a Kraus set on one side, unitaries on the other.

    Slicing a Haar-random isometry gives operators with
    sum_i K_i^dagger K_i = I, and pairing them with unitaries on the other
    factor keeps the joint completeness condition exact. A coin flip
    decides which party gets the Kraus set.
    """
    rng = np.random.default_rng(seed)

    def kraus_set(dim):
        g = rng.normal(size=(dim * n_pairs, dim)) + 1j * rng.normal(size=(dim * n_pairs, dim))
        isometry, _ = np.linalg.qr(g)
        return [isometry[i * dim : (i + 1) * dim, :] for i in range(n_pairs)]

    def unitaries(dim):
        out = []
        for _ in range(n_pairs):
            g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
            q, r = np.linalg.qr(g)
            out.append(q * (np.diag(r) / np.abs(np.diag(r))))
        return out

    if rng.random() < 0.5:
        pairs = tuple(zip(kraus_set(alice_dim), unitaries(bob_dim)))
    else:
        pairs = tuple(zip(unitaries(alice_dim), kraus_set(bob_dim)))
    return LocalKrausProtocol(pairs=pairs, alice_dim=alice_dim, bob_dim=bob_dim)


def apply_kraus(p: LocalKrausProtocol, rho) -> np.ndarray:
    """Plain Kraus action sum_i K_i rho K_i^dagger on the joint factor."""
    rho = np.asarray(rho, dtype=np.complex128)
    out = np.zeros_like(rho)
    for k in p.kraus_operators():
        out += k @ rho @ dagger(k)
    return out


def protocol_to_json(p: LocalKrausProtocol, indent: int = 2) -> str:
    """Serialize with [re, im] entry pairs; round-trips doubles exactly."""
    doc = {
        "alice_dim": p.alice_dim,
        "bob_dim": p.bob_dim,
        "pairs": [
            {"a": jsonio.matrix_to_pairs(a), "b": jsonio.matrix_to_pairs(b)}
            for a, b in p.pairs
        ],
    }
    return jsonio.dumps(doc, indent=indent)


def protocol_from_json(text: str) -> LocalKrausProtocol:
    doc = json.loads(text)
    pairs = tuple(
        (jsonio.matrix_from_pairs(entry["a"]), jsonio.matrix_from_pairs(entry["b"]))
        for entry in doc["pairs"]
    )
    return LocalKrausProtocol(
        pairs=pairs, alice_dim=int(doc["alice_dim"]), bob_dim=int(doc["bob_dim"])
    )
