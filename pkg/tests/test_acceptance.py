"""Exit criteria. Each test is one criterion at its fixed tolerance; the
terminal summary prints a PASS/FAIL line per criterion."""

import io
import time
from fractions import Fraction
from itertools import permutations
from pathlib import Path

import numpy as np
import pytest

from dualswap import components as cp
from dualswap.cli import EXIT_USAGE, run
from dualswap.components import Circuit, compile_circuit
from dualswap.dualrail import DualRailRegister, decode, encode, logical_matrix, product_state
from dualswap.fock import PhotonicState, evolve, transition_amplitude
from dualswap.gate import (IDENTITY4, SWAP, GateSettings, build_gate, gate_logical_matrix, measurement_stats,
                           mismatch_sweep, overhead_report)
from dualswap.linalg import equal_up_to_global_phase, global_phase, permanent
from dualswap.router import emit_netlist, inversion_count, synthesize
from oracles import (creation_operator_evolve, descending_basis, naive_permanent, qubit_permutation_oracle,
                     random_state, random_unitary)

GOLDEN = Path(__file__).parent / "golden"
REG2 = DualRailRegister.consecutive(2)


def max_dev_up_to_phase(a, b):
    return float(np.max(np.abs(a - global_phase(a, b) * b)))


def _check_preset(mode, target):
    start = time.perf_counter()
    lm = gate_logical_matrix(GateSettings.preset(mode))
    elapsed = time.perf_counter() - start
    dev = max_dev_up_to_phase(lm.matrix, target)
    print(f"{mode}: max deviation {dev:.2e}, success {lm.success_probability:.15f}, {elapsed * 1e3:.1f} ms")
    assert dev < 1e-12
    assert abs(lm.success_probability - 1) < 1e-10
    assert elapsed < 1.0


@pytest.mark.criterion(1, "SWAP correctness at (theta, phi) = (0, 0)")
def test_c01_swap_correctness():
    _check_preset("swap", SWAP)


@pytest.mark.criterion(2, "identity correctness at (theta, phi) = (pi, pi)")
def test_c02_identity_correctness():
    _check_preset("identity", IDENTITY4)


@pytest.mark.criterion(3, "product-state action and agreement with the SWAP matrix")
def test_c03_product_states():
    rng = np.random.default_rng(3)
    u = compile_circuit(build_gate(GateSettings.preset("swap"))).transfer
    worst = 0.0
    for _ in range(1000):
        p1, p2 = random_state(2, rng), random_state(2, rng)
        out, p = decode(evolve(u, encode(product_state(p1, p2), REG2)), REG2)
        worst = max(worst, np.max(np.abs(out - product_state(p2, p1))), abs(p - 1))
    assert worst < 1e-10
    worst_ent = 0.0
    for _ in range(1000):
        v = random_state(4, rng)
        out, p = decode(evolve(u, encode(v, REG2)), REG2)
        worst_ent = max(worst_ent, np.max(np.abs(out - SWAP @ v)), abs(p - 1))
    print(f"product worst {worst:.2e}, entangled worst {worst_ent:.2e}")
    assert worst_ent < 1e-10


@pytest.mark.criterion(4, "MZI + external shifter equals the canonical RBS; operating points exact")
def test_c04_rbs_consistency():
    rng = np.random.default_rng(4)
    worst = 0.0
    for theta, phi in rng.uniform(0, 2 * np.pi, (100, 2)):
        physical = cp.embed([[np.exp(1j * phi)]], (1,), 2) @ cp.u_mzi(theta)
        worst = max(worst, max_dev_up_to_phase(physical, cp.u_rbs(theta, phi)))
    print(f"worst deviation {worst:.2e}")
    assert worst < 1e-12
    assert np.array_equal(cp.u_rbs(0, 0), [[0, 1], [1, 0]])
    assert np.array_equal(cp.u_rbs(np.pi, np.pi), np.eye(2))


@pytest.mark.criterion(5, "waveguide crossing is an involution; MZI(0) is a crossing up to phase")
def test_c05_crossing_involution():
    u = compile_circuit(Circuit(4, (cp.crossing(1, 2), cp.crossing(1, 2)))).unitary
    assert np.max(np.abs(u - np.eye(4))) < 1e-12
    assert max_dev_up_to_phase(cp.u_mzi(0.0), cp.u_crossing()) < 1e-12


@pytest.mark.criterion(6, "Ryser permanent vs permutation sum; HOM coincidence vanishes")
def test_c06_permanent_oracle():
    rng = np.random.default_rng(6)
    worst = 0.0
    for n in range(1, 7):
        for _ in range(10):
            a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            ref = naive_permanent(a)
            worst = max(worst, abs(permanent(a) - ref) / abs(ref))
    hom = abs(transition_amplitude(cp.u_directional_coupler(0.5), (1, 1), (1, 1)))
    print(f"worst relative error {worst:.2e}, HOM coincidence amplitude {hom:.2e}")
    assert worst < 1e-10
    assert hom < 1e-12


@pytest.mark.criterion(7, "Fock evolution matches creation-operator expansion; norm and photon number kept")
def test_c07_fock_oracle():
    rng = np.random.default_rng(7)
    worst = 0.0
    for m in range(1, 5):
        for n in range(0, 4):
            for _ in range(3):
                u = random_unitary(m, rng)
                basis = descending_basis(m, n)
                amps = random_state(len(basis), rng)
                out = evolve(u, PhotonicState(m, n, amps))
                ref = creation_operator_evolve(u, dict(zip(basis, amps)))
                assert out.photons == n and all(sum(k) == n for k in ref)
                for occ in basis:
                    worst = max(worst, abs(out.amplitude(occ) - ref.get(occ, 0)))
                assert abs(out.norm_squared - 1) < 1e-10
    print(f"worst amplitude deviation {worst:.2e}")
    assert worst < 1e-10


@pytest.mark.criterion(8, "measurement statistics independent of mismatch; bypass phase; sweep at eta=0")
def test_c08_measurement():
    alpha, beta = 0.6 * np.exp(0.3j), 0.8j
    etas = np.linspace(0, 2 * np.pi, 17)
    probs = np.array([measurement_stats((alpha, beta), "measure", eta).outcome_probabilities for eta in etas])
    dev = np.max(np.abs(probs - [abs(alpha) ** 2, abs(beta) ** 2]))
    assert dev < 1e-12
    worst = 0.0
    for eta in etas:
        amps = measurement_stats((alpha, beta), "bypass", eta).bypass_output_amplitudes
        worst = max(worst, max_dev_up_to_phase(np.array([amps]), np.array([[alpha * np.exp(1j * eta), beta]])))
    assert worst < 1e-10
    (_, f0), = mismatch_sweep(GateSettings.preset("swap"), [0.0], "swap")
    (_, f0i), = mismatch_sweep(GateSettings.preset("identity"), [0.0], "identity")
    print(f"measure deviation {dev:.2e}, bypass deviation {worst:.2e}, F(0) = {f0!r}, {f0i!r}")
    assert abs(f0 - 1) < 1e-10 and abs(f0i - 1) < 1e-10


@pytest.mark.criterion(9, "SWAP networks realize every target; counts; 3-qubit reversal simulates")
def test_c09_routing():
    start = time.perf_counter()
    cases = [p for n in range(1, 6) for p in permutations(range(n))]
    rng = np.random.default_rng(9)
    cases += [tuple(rng.permutation(n)) for n in (6, 7) for _ in range(200)]
    for perm in cases:
        net = synthesize(perm)
        assert net.apply() == list(perm)
        assert net.swap_count == inversion_count(perm)
        assert net.depth <= len(perm)
    assert synthesize((3, 2, 1, 0)).swap_count == 6
    lm = logical_matrix(emit_netlist(synthesize((2, 1, 0))), DualRailRegister.consecutive(3))
    dev = np.max(np.abs(lm.matrix - qubit_permutation_oracle((2, 1, 0))))
    elapsed = time.perf_counter() - start
    print(f"{len(cases)} permutations, reversal deviation {dev:.2e}, {elapsed:.2f} s")
    assert dev < 1e-10
    assert elapsed < 30


@pytest.mark.criterion(10, "reference constants: T(0.03 dB) and the three-CNOT baseline")
def test_c10_constants():
    r = overhead_report(0.03)
    print(f"T = {r.transmittance:.9f}, baseline = {r.cnot_baseline}")
    assert abs(r.transmittance - 0.993116) < 1e-6
    assert r.cnot_baseline == Fraction(1, 16) ** 3 == Fraction(1, 4096)


def _run(argv):
    out, err = io.StringIO(), io.StringIO()
    return run(argv, out, err), out.getvalue()


@pytest.mark.criterion(11, "CLI golden reports byte-identical; parse errors exit with usage code")
def test_c11_cli(tmp_path):
    cases = {
        "gate_swap.txt": ["gate", "--mode", "swap"],
        "gate_identity.txt": ["gate", "--mode", "identity"],
        "sweep_swap_5.txt": ["sweep", "--eta-from", "0", "--eta-to", "3.141592653589793", "--steps", "5",
                             "--target", "swap"],
        "route_reverse4.txt": ["route", "--perm", "3,2,1,0"],
        "measure_demo_measure.txt": ["measure-demo", "--alpha", "0.547722557505,0", "--beta", "0.836660026534,0",
                                     "--mode", "measure", "--eta", "1.0"],
    }
    for name, argv in cases.items():
        code, out = _run(argv)
        assert code == 0
        assert out.encode() == (GOLDEN / name).read_bytes(), name
    for text in ("modes 2\nwc 1 5\n", "modes 2\nfoo 1\n", "wc 1 2\n", "modes 2\nwc 1 1\n", "modes 2\nrbs 1 2 0\n"):
        net = tmp_path / "bad.net"
        net.write_text(text)
        assert _run(["simulate", str(net), "--input", "fock:1,0"])[0] == EXIT_USAGE
