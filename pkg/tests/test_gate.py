from fractions import Fraction

import numpy as np
import pytest

from dualswap import components as cp
from dualswap.components import compile_circuit
from dualswap.dualrail import DualRailRegister, logical_matrix, process_fidelity
from dualswap.fock import PhotonicState
from dualswap.gate import (IDENTITY4, SWAP, AdjacencyError, GateSettings, build_gate, build_measurement_stage,
                           gate_logical_matrix, measurement_stats, mismatch_sweep, overhead_report)
from dualswap.linalg import equal_up_to_global_phase

STYLES = [
    dict(),
    dict(crossing_style="mzi_theta_zero"),
    dict(rbs_style="physical"),
    dict(crossing_style="mzi_theta_zero", rbs_style="physical"),
]


def test_build_gate_netlist_shape():
    c = build_gate(GateSettings.preset("swap"))
    assert [(e.kind, e.modes) for e in c.elements] == [
        ("crossing", (1, 2)), ("rbs", (0, 1)), ("rbs", (2, 3)), ("crossing", (1, 2)),
    ]


@pytest.mark.parametrize("extra", STYLES)
@pytest.mark.parametrize("mode,target", [("swap", SWAP), ("identity", IDENTITY4)])
def test_presets_up_to_global_phase(extra, mode, target):
    lm = gate_logical_matrix(GateSettings.preset(mode, **extra))
    assert equal_up_to_global_phase(lm.matrix, target, 1e-12)
    assert lm.success_probability == pytest.approx(1, abs=1e-10)


def test_canonical_presets_exact():
    assert np.array_equal(gate_logical_matrix(GateSettings.preset("swap")).matrix, SWAP)
    assert np.array_equal(gate_logical_matrix(GateSettings.preset("identity")).matrix, IDENTITY4)


@pytest.mark.parametrize("mode", ["swap", "identity"])
def test_crossing_styles_agree(mode):
    a = gate_logical_matrix(GateSettings.preset(mode)).matrix
    b = gate_logical_matrix(GateSettings.preset(mode, crossing_style="mzi_theta_zero")).matrix
    assert equal_up_to_global_phase(a, b, 1e-10)


def test_mzi_crossing_needs_phase_matching():
    # without the compensating shifters on the uncrossed rails, identity mode picks up -Z(x)Z
    bare = [e for e in build_gate(GateSettings.preset("identity", crossing_style="mzi_theta_zero")).elements
            if e.kind != "phase_shifter"]
    reg = DualRailRegister.consecutive(2)
    lm = logical_matrix(cp.Circuit(4, bare), reg)
    assert np.allclose(lm.matrix, -np.diag([1, -1, -1, 1]), atol=1e-12)


def test_swap_is_involution():
    c = build_gate(GateSettings.preset("swap"))
    reg = DualRailRegister.consecutive(2)
    assert equal_up_to_global_phase(logical_matrix(c + c, reg).matrix, IDENTITY4, 1e-12)


def test_non_adjacent_rejected():
    reg = DualRailRegister.consecutive(3)
    with pytest.raises(AdjacencyError, match="router"):
        build_gate(GateSettings.preset("swap"), (0, 2), reg)
    spread = DualRailRegister(((0, 1), (3, 4)), 5)
    with pytest.raises(AdjacencyError):
        build_gate(GateSettings.preset("swap"), (0, 1), spread)


def test_gate_on_inner_pair_of_larger_register():
    reg = DualRailRegister.consecutive(3)
    lm = logical_matrix(build_gate(GateSettings.preset("swap"), (1, 2), reg), reg)
    expected = np.kron(np.eye(2), SWAP)
    assert np.max(np.abs(lm.matrix - expected)) < 1e-12


def test_settings_validation():
    with pytest.raises(ValueError):
        GateSettings(crossing_style="mmi")
    with pytest.raises(ValueError):
        GateSettings.preset("cnot")
    with pytest.raises(ValueError):
        GateSettings(crossing_loss_db=-0.1)


def fidelity_oracle(eta):
    # one of the two logical columns per output qubit-0 |0> picks up e^{i eta}:
    # Tr = 2 + 2 e^{i eta}, so F = |2 + 2 e^{i eta}|^2 / 16
    return abs(2 + 2 * np.exp(1j * eta)) ** 2 / 16


@pytest.mark.parametrize("target", ["swap", "identity"])
def test_mismatch_sweep(target):
    etas = [0, np.pi / 4, np.pi / 2, 3 * np.pi / 4, np.pi]
    rows = mismatch_sweep(GateSettings.preset(target), etas, target)
    assert [r[0] for r in rows] == pytest.approx(etas)
    assert rows[0][1] == pytest.approx(1, abs=1e-10)
    for eta, f in rows:
        assert f == pytest.approx(fidelity_oracle(eta), abs=1e-12)
    fids = [f for _, f in rows]
    assert all(b <= a + 1e-12 for a, b in zip(fids, fids[1:]))
    assert fids[-1] < 1


def test_mismatch_sweep_empty():
    with pytest.raises(ValueError):
        mismatch_sweep(GateSettings(), [], "swap")


def test_mismatch_position_input_vs_output():
    eta = 0.9
    a = gate_logical_matrix(GateSettings.preset("identity", mismatch_eta=eta)).matrix
    b = gate_logical_matrix(GateSettings.preset("identity", mismatch_eta=eta, mismatch_position="input")).matrix
    assert np.allclose(a, b, atol=1e-15)


def _qubit_state(alpha, beta):
    return PhotonicState.from_dict(4, 1, {(1, 0, 0, 0): alpha, (0, 1, 0, 0): beta})


def test_measurement_stage_routes_photon():
    alpha, beta = np.sqrt(0.3), np.sqrt(0.7)
    stage = build_measurement_stage("measure")
    out = stage.run(_qubit_state(alpha, beta))
    assert stage.detector_modes == (2, 3)
    assert abs(out.amplitude((0, 0, 1, 0))) ** 2 == pytest.approx(0.3)
    assert abs(out.amplitude((0, 0, 0, 1))) ** 2 == pytest.approx(0.7)


def test_measurement_stage_rejects_occupied_ancilla():
    stage = build_measurement_stage("measure")
    with pytest.raises(ValueError, match="ancilla"):
        stage.run(PhotonicState.from_fock((1, 0, 1, 0)))


def test_measurement_stage_ancilla_below_qubit():
    stage = build_measurement_stage("measure", qubit_rails=(2, 3), ancilla_rails=(0, 1), mismatch_eta=0.5)
    out = stage.run(PhotonicState.from_dict(4, 1, {(0, 0, 1, 0): 0.6, (0, 0, 0, 1): 0.8}))
    assert out.amplitude((1, 0, 0, 0)) == pytest.approx(0.6 * np.exp(0.5j))
    assert out.amplitude((0, 1, 0, 0)) == pytest.approx(0.8)


def test_measure_mode_carries_mismatch_phase_to_detectors():
    eta = 1.1
    out = build_measurement_stage("measure", mismatch_eta=eta).run(_qubit_state(0.6, 0.8))
    assert out.amplitude((0, 0, 1, 0)) == pytest.approx(0.6 * np.exp(1j * eta))
    assert out.amplitude((0, 0, 0, 1)) == pytest.approx(0.8)


def test_measurement_stats_examples():
    a, b = np.sqrt(0.3), np.sqrt(0.7)
    r = measurement_stats((a, b), "measure", 1.234)
    assert r.outcome_probabilities == pytest.approx((0.3, 0.7), abs=1e-12)
    assert r.bypass_output_amplitudes is None

    assert measurement_stats((1, 0), "measure", 2.0).outcome_probabilities == pytest.approx((1, 0), abs=1e-15)

    r = measurement_stats((a, b), "bypass", np.pi / 2)
    assert r.outcome_probabilities == (0.0, 0.0)
    assert equal_up_to_global_phase(np.array([r.bypass_output_amplitudes]), np.array([[a * 1j, b]]), 1e-12)


def test_measurement_stats_eta_invariance():
    a, b = 0.6, 0.8j
    ref = measurement_stats((a, b), "measure", 0.0).outcome_probabilities
    for eta in np.linspace(0, 2 * np.pi, 17):
        got = measurement_stats((a, b), "measure", eta).outcome_probabilities
        assert max(abs(got[0] - ref[0]), abs(got[1] - ref[1])) < 1e-12


def test_measurement_stats_sampling():
    r = measurement_stats((np.sqrt(0.3), np.sqrt(0.7)), "measure", 0.4, shots=20000, seed=5)
    assert sum(r.counts) == 20000
    assert abs(r.counts[0] - 6000) < 5 * np.sqrt(20000 * 0.21)
    assert r.counts == measurement_stats((np.sqrt(0.3), np.sqrt(0.7)), "measure", 0.4, shots=20000, seed=5).counts


def test_measurement_stats_normalization():
    with pytest.raises(ValueError):
        measurement_stats((1, 1), "measure")
    with pytest.raises(ValueError):
        build_measurement_stage("peek")


def test_overhead_report():
    r = overhead_report(0.03)
    assert r.transmittance == pytest.approx(10 ** (-0.003), abs=1e-15)
    assert r.transmittance == pytest.approx(0.993116, abs=1e-6)
    assert overhead_report(0.0).success_probability == 1.0
    assert r.cnot_baseline == Fraction(1, 4096)
    assert float(r.cnot_baseline) == pytest.approx(2.441e-4, rel=1e-3)
    assert r.cnot_baseline_unheralded == Fraction(1, 729)


def test_overhead_matches_simulated_loss():
    # every photon crosses exactly one crossing in swap mode
    r = overhead_report(0.03)
    lm = gate_logical_matrix(GateSettings.preset("swap", crossing_loss_db=0.03))
    assert np.allclose(lm.column_success, r.success_probability, atol=1e-12)
    assert process_fidelity(lm, SWAP) == pytest.approx(1, abs=1e-12)


def test_identity_mode_loss_is_path_dependent():
    t = cp.db_to_transmittance(0.03)
    lm = gate_logical_matrix(GateSettings.preset("identity", crossing_loss_db=0.03))
    # |00>: rail-3 photon crosses twice; |01>: none; |10>: both twice; |11>: rail-2 photon twice
    assert np.allclose(lm.column_success, [t**2, 1, t**4, t**2], atol=1e-12)


def test_lossy_compile_attenuation():
    c = compile_circuit(build_gate(GateSettings.preset("swap", crossing_loss_db=0.03)))
    t = cp.db_to_transmittance(0.03)
    assert np.allclose(c.attenuation**2, t, atol=1e-12)
