import numpy as np
import pytest

from qteleport.channels import angle_channel, check_completeness, resource_channel, teleported_output, apply_protocol
from qteleport.optimize import (
    N_PARAMS,
    OptResult,
    ProtocolParams,
    bbcjpw_equivalent_params,
    decode_alice_unitary,
    decode_bob_unitaries,
    decode_protocol,
    encode_alice_unitary,
    nelder_mead,
    pair_objective,
    stratified_starts,
    sweep_channel_angle,
    sweep_to_csv,
)
from qteleport.states import (
    haar_random_pure,
    pure_density,
    random_density_matrix,
    random_unitary,
)
from qteleport.teleport import bbcjpw_protocol, bell_unitary, run_teleport

KET0 = np.array([1, 0], dtype=complex)
PLUS = np.array([1, 1], dtype=complex) / np.sqrt(2)
BELL = angle_channel(np.pi / 4)


# ---------------------------------------------------------------------------
# parameter encoding / decoding


def test_zero_generator_decodes_to_identity():
    u = decode_alice_unitary(np.zeros(16))
    assert np.allclose(u, np.eye(4), atol=1e-12)


def test_decoded_alice_always_unitary():
    rng = np.random.default_rng(80)
    for _ in range(20):
        u = decode_alice_unitary(rng.uniform(-np.pi, np.pi, 16))
        assert np.allclose(u.conj().T @ u, np.eye(4), atol=1e-9)


def test_decoded_bob_always_unitary():
    rng = np.random.default_rng(81)
    for _ in range(20):
        us = decode_bob_unitaries(rng.uniform(-np.pi, np.pi, (4, 3)))
        for u in us:
            assert np.allclose(u.conj().T @ u, np.eye(2), atol=1e-12)


def test_bob_axis_angle_closed_forms():
    us = decode_bob_unitaries(np.array([[0, 0, 0], [np.pi, 0, 0],
                                        [0, np.pi, 0], [0, 0, np.pi]]))
    sx = np.array([[0, 1], [1, 0]])
    sy = np.array([[0, -1j], [1j, 0]])
    sz = np.array([[1, 0], [0, -1]])
    assert np.allclose(us[0], np.eye(2), atol=1e-12)
    assert np.allclose(us[1], -1j * sx, atol=1e-12)
    assert np.allclose(us[2], -1j * sy, atol=1e-12)
    assert np.allclose(us[3], -1j * sz, atol=1e-12)


def test_encode_decode_round_trip():
    rng = np.random.default_rng(82)
    for _ in range(10):
        u = random_unitary(4, rng)
        assert np.allclose(decode_alice_unitary(encode_alice_unitary(u)), u, atol=1e-10)


def test_param_vector_round_trip():
    rng = np.random.default_rng(83)
    vec = rng.uniform(-1, 1, N_PARAMS)
    p = ProtocolParams.from_vector(vec)
    assert np.allclose(p.as_vector(), vec)


# ---------------------------------------------------------------------------
# protocol decoding


def test_random_params_always_complete():
    rng = np.random.default_rng(84)
    for _ in range(20):
        p = decode_protocol(ProtocolParams.from_vector(rng.uniform(-np.pi, np.pi, N_PARAMS)))
        assert check_completeness(p) <= 1e-9


def test_decode_rejects_non_finite():
    vec = np.zeros(N_PARAMS)
    vec[3] = np.nan
    with pytest.raises(ValueError):
        decode_protocol(ProtocolParams.from_vector(vec))


def test_bbcjpw_equivalent_params_match_protocol_action():
    decoded = decode_protocol(bbcjpw_equivalent_params())
    reference = bbcjpw_protocol()
    assert np.allclose(decode_alice_unitary(bbcjpw_equivalent_params().alice_params),
                       bell_unitary(), atol=1e-10)
    rng = np.random.default_rng(85)
    for _ in range(10):
        rho = random_density_matrix(2, rng)
        channel = resource_channel(random_density_matrix(4, rng))
        out1 = teleported_output(apply_protocol(rho, channel, decoded))
        out2 = teleported_output(apply_protocol(rho, channel, reference))
        assert np.allclose(out1, out2, atol=1e-9)


def test_identity_measurement_params_decohere():
    params = ProtocolParams(alice_params=np.zeros(16), bob_params=np.zeros((4, 3)))
    value = pair_objective(params, BELL, KET0, PLUS)
    assert value < 1 - 1e-3


# ---------------------------------------------------------------------------
# pair objective


def test_pair_objective_bbcjpw_on_bell_is_one():
    value = pair_objective(bbcjpw_equivalent_params(), BELL, KET0, PLUS)
    assert value >= 1 - 1e-9


def test_pair_objective_matches_general_path():
    rng = np.random.default_rng(86)
    for _ in range(5):
        params = ProtocolParams.from_vector(rng.uniform(-np.pi, np.pi, N_PARAMS))
        protocol = decode_protocol(params)
        for channel in (BELL, angle_channel(np.pi / 8),
                        resource_channel(random_density_matrix(4, rng))):
            fast = pair_objective(params, channel, KET0, PLUS)
            slow = min(
                run_teleport(pure_density(KET0), channel, protocol, pure_density(KET0)).fidelity,
                run_teleport(pure_density(PLUS), channel, protocol, pure_density(PLUS)).fidelity,
            )
            assert abs(fast - slow) < 1e-12


def test_pair_objective_decohered_channel_is_half():
    # with the A:B resource fully decohered, the receiver only ever sees I/2
    channel = resource_channel(np.eye(4, dtype=complex) / 4)
    rng = np.random.default_rng(87)
    for _ in range(10):
        params = ProtocolParams.from_vector(rng.uniform(-np.pi, np.pi, N_PARAMS))
        assert abs(pair_objective(params, channel, KET0, PLUS) - 0.5) < 1e-12


def test_pair_objective_rejects_orthogonal_pair():
    with pytest.raises(ValueError):
        pair_objective(bbcjpw_equivalent_params(), BELL, KET0, np.array([0, 1], dtype=complex))


# ---------------------------------------------------------------------------
# Nelder-Mead


def test_nelder_mead_quadratic():
    result = nelder_mead(lambda x: -np.sum((x - 1.0) ** 2), np.zeros(4))
    assert result.converged
    assert abs(result.best_objective) < 1e-6
    assert np.allclose(result.best_params, np.ones(4), atol=1e-3)


def test_nelder_mead_constant_objective():
    result = nelder_mead(lambda x: 3.25, np.zeros(3))
    assert result.converged
    assert result.best_objective == 3.25


def test_nelder_mead_rosenbrock():
    def neg_rosenbrock(x):
        return -((1 - x[0]) ** 2 + 100 * (x[1] - x[0] ** 2) ** 2)

    result = nelder_mead(neg_rosenbrock, np.array([-1.2, 1.0]), max_evals=5000)
    assert abs(result.best_objective) < 1e-4
    assert np.allclose(result.best_params, [1, 1], atol=0.05)


def test_nelder_mead_budget_exhaustion_flags_not_converged():
    result = nelder_mead(lambda x: -np.sum((x - 1.0) ** 2), np.zeros(8), max_evals=30)
    assert not result.converged
    assert result.evaluations <= 30 + 10  # allowed to finish the current step


def test_nelder_mead_best_objective_reproducible():
    objective = lambda x: -np.sum((x - 0.5) ** 2)
    result = nelder_mead(objective, np.zeros(3))
    assert abs(result.best_objective - objective(result.best_params)) < 1e-12


# ---------------------------------------------------------------------------
# sweep plumbing (small configurations; the full grid lives in acceptance)


def test_stratified_starts_cover_each_dimension():
    rng = np.random.default_rng(88)
    pts = stratified_starts(8, rng)
    assert pts.shape == (8, N_PARAMS)
    # one point per stratum along every coordinate
    bins = ((pts / np.pi + 1.0) / 2.0 * 8).astype(int)
    for d in range(N_PARAMS):
        assert sorted(bins[:, d]) == list(range(8))


def test_sweep_rejects_bad_theta():
    with pytest.raises(ValueError):
        sweep_channel_angle([0.0], KET0, PLUS, starts=1, seed=0)
    with pytest.raises(ValueError):
        sweep_channel_angle([np.pi / 2], KET0, PLUS, starts=1, seed=0)


def test_sweep_single_start_bell_angle_exact():
    rows = sweep_channel_angle([np.pi / 4], KET0, PLUS, starts=1, seed=0, max_evals=4000)
    assert rows[0].best_min_fidelity >= 1 - 1e-9
    assert abs(rows[0].channel_entropy - 1.0) < 1e-10


def test_sweep_deterministic_and_sorted():
    thetas = [np.pi / 4, np.pi / 8]
    a = sweep_channel_angle(thetas, KET0, PLUS, starts=2, seed=9, max_evals=800)
    b = sweep_channel_angle(thetas, KET0, PLUS, starts=2, seed=9, max_evals=800)
    assert [r.theta for r in a] == sorted(thetas)
    for ra, rb in zip(a, b):
        assert ra.best_min_fidelity == rb.best_min_fidelity
        assert ra.evaluations == rb.evaluations
        assert np.array_equal(ra.best_params.as_vector(), rb.best_params.as_vector())


def test_sweep_row_reproducible_from_best_params():
    rows = sweep_channel_angle([np.pi / 8], KET0, PLUS, starts=2, seed=10, max_evals=2000)
    row = rows[0]
    re_evaluated = pair_objective(row.best_params, angle_channel(row.theta), KET0, PLUS)
    assert abs(re_evaluated - row.best_min_fidelity) < 1e-12


def test_sweep_entropy_matches_resource():
    rows = sweep_channel_angle([np.pi / 8], KET0, PLUS, starts=1, seed=0, max_evals=500)
    c, s = np.cos(np.pi / 8) ** 2, np.sin(np.pi / 8) ** 2
    want = -c * np.log2(c) - s * np.log2(s)
    assert abs(rows[0].channel_entropy - want) < 1e-10


def test_sweep_csv_format():
    rows = sweep_channel_angle([np.pi / 4], KET0, PLUS, starts=1, seed=0, max_evals=500)
    text = sweep_to_csv(rows)
    lines = text.strip().split("\n")
    assert lines[0] == "theta,channel_entropy,best_min_fidelity,starts,evaluations"
    fields = lines[1].split(",")
    assert len(fields) == 5
    assert float(fields[0]) == rows[0].theta
    assert int(fields[3]) == 1
