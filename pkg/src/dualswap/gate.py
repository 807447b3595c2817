"""The reconfigurable dual-rail SWAP gate and what is built from it.

For a qubit pair on four consecutive rails r1..r4 (r1, r2 carry qubit a's
|0>, |1>; r3, r4 carry qubit b's), the gate is

    crossing(r2, r3) -> rbs(r1, r2) and rbs(r3, r4) -> crossing(r2, r3)

With both beam splitters at (theta, phi) = (0, 0) they act as Pauli X and the
gate swaps the qubits; at (pi, pi) they are the identity and so is the gate.
"""

from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from . import components as cp
from .components import Circuit
from .dualrail import DualRailRegister, LogicalGateMatrix, decode, logical_matrix, process_fidelity
from .fock import PhotonicState, evolve, probabilities, sample

PRESETS = {"swap": (0.0, 0.0), "identity": (np.pi, np.pi)}
CROSSING_STYLES = ("ideal_crossing", "mzi_theta_zero")
RBS_STYLES = ("canonical", "physical")
MISMATCH_POSITIONS = ("before_final_crossing", "input")

SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=np.complex128)
IDENTITY4 = np.eye(4, dtype=np.complex128)

HERALDED_CNOT_SUCCESS = Fraction(1, 16)
UNHERALDED_CNOT_SUCCESS = Fraction(1, 9)
CNOTS_PER_SWAP = 3


class AdjacencyError(ValueError):
    pass


@dataclass(frozen=True)
class GateSettings:
    """Operating point of one SWAP gate.

    ``mismatch_eta`` is a spurious phase on rail ``r1 + mismatch_rail``
    (default r1, a path that never meets a crossing). ``mismatch_position``
    puts it either just before the final crossing or at the gate input.
    ``rbs_style="physical"`` expands each beam splitter into an MZI plus an
    external phase shifter on the lower rail.
    """

    theta: float = 0.0
    phi: float = 0.0
    mismatch_eta: float = 0.0
    crossing_style: str = "ideal_crossing"
    crossing_loss_db: float = 0.0
    rbs_style: str = "canonical"
    mismatch_rail: int = 0
    mismatch_position: str = "before_final_crossing"

    def __post_init__(self):
        if self.crossing_style not in CROSSING_STYLES:
            raise ValueError(f"crossing_style must be one of {CROSSING_STYLES}, got {self.crossing_style!r}")
        if self.rbs_style not in RBS_STYLES:
            raise ValueError(f"rbs_style must be one of {RBS_STYLES}, got {self.rbs_style!r}")
        if self.mismatch_position not in MISMATCH_POSITIONS:
            raise ValueError(f"mismatch_position must be one of {MISMATCH_POSITIONS}, got {self.mismatch_position!r}")
        if self.mismatch_rail not in range(4):
            raise ValueError(f"mismatch_rail must be 0..3, got {self.mismatch_rail}")
        if self.crossing_loss_db < 0:
            raise ValueError("crossing_loss_db must be non-negative")

    @classmethod
    def preset(cls, name: str, **kwargs) -> "GateSettings":
        try:
            theta, phi = PRESETS[name]
        except KeyError:
            raise ValueError(f"unknown preset {name!r}; expected 'swap' or 'identity'") from None
        return cls(theta=theta, phi=phi, **kwargs)


def gate_rails(qubit_pair, register: DualRailRegister) -> tuple[int, int, int, int]:
    qa, qb = qubit_pair
    k = register.n_qubits
    if not (0 <= qa < k and 0 <= qb < k):
        raise IndexError(f"qubits {qubit_pair} not in a {k}-qubit register")
    r1, r2 = register.rails[qa]
    r3, r4 = register.rails[qb]
    modes = sorted((r1, r2, r3, r4))
    if abs(qa - qb) != 1 or modes != list(range(modes[0], modes[0] + 4)):
        raise AdjacencyError(
            f"qubits {qa} and {qb} are not nearest neighbours; "
            "bring them together with a SWAP network from dualswap.router first"
        )
    return r1, r2, r3, r4


MZI_CROSSING_PHASE = float(np.angle(cp.u_mzi(0.0)[0, 1]))


def _crossing_stage(rails, settings: GateSettings):
    r1, r2, r3, r4 = rails
    if settings.crossing_style == "mzi_theta_zero":
        # The MZI crosses with an extra phase i; the uncrossed rails get the
        # same phase so every photon sees it and it stays global.
        return [
            cp.mzi(r2, r3, 0.0, loss_db=settings.crossing_loss_db),
            cp.phase_shifter(r1, MZI_CROSSING_PHASE),
            cp.phase_shifter(r4, MZI_CROSSING_PHASE),
        ]
    return [cp.crossing(r2, r3, loss_db=settings.crossing_loss_db)]


def _rbs(i, j, settings: GateSettings):
    if settings.rbs_style == "physical":
        return [cp.mzi(i, j, settings.theta), cp.phase_shifter(j, settings.phi)]
    return [cp.rbs(i, j, settings.theta, settings.phi)]


def build_gate(settings: GateSettings, qubit_pair=(0, 1), register: DualRailRegister | None = None) -> Circuit:
    if register is None:
        register = DualRailRegister.consecutive(2)
    r1, r2, r3, r4 = rails = gate_rails(qubit_pair, register)
    mismatch = []
    if settings.mismatch_eta != 0.0:
        mismatch = [cp.phase_shifter(rails[settings.mismatch_rail], settings.mismatch_eta)]
    head = mismatch if settings.mismatch_position == "input" else []
    tail = mismatch if settings.mismatch_position == "before_final_crossing" else []
    elements = [
        *head,
        *_crossing_stage(rails, settings),
        *_rbs(r1, r2, settings),
        *_rbs(r3, r4, settings),
        *tail,
        *_crossing_stage(rails, settings),
    ]
    return Circuit(register.width, tuple(elements))


def gate_logical_matrix(settings: GateSettings) -> LogicalGateMatrix:
    register = DualRailRegister.consecutive(2)
    return logical_matrix(build_gate(settings, (0, 1), register), register)


def target_matrix(target: str) -> np.ndarray:
    if target == "swap":
        return SWAP
    if target == "identity":
        return IDENTITY4
    raise ValueError(f"target must be 'swap' or 'identity', got {target!r}")


def mismatch_sweep(settings_base: GateSettings, eta_values, target: str) -> list[tuple[float, float]]:
    """Process fidelity against ``target`` for each mismatch phase, in input order."""
    eta_values = list(eta_values)
    if not eta_values:
        raise ValueError("eta_values must not be empty")
    goal = target_matrix(target)
    rows = []
    for eta in eta_values:
        lm = gate_logical_matrix(replace(settings_base, mismatch_eta=float(eta)))
        rows.append((float(eta), process_fidelity(lm, goal)))
    return rows


# -- selective measurement -------------------------------------------------


@dataclass(frozen=True)
class MeasurementStage:
    mode: str
    circuit: Circuit
    qubit_rails: tuple[int, int]
    ancilla_rails: tuple[int, int]

    @property
    def detector_modes(self) -> tuple[int, int]:
        """Detector on the ancilla |0> rail reports outcome 0, the other outcome 1."""
        return self.ancilla_rails

    def run(self, state: PhotonicState) -> PhotonicState:
        for k in self.ancilla_rails:
            if any(occ[k] and abs(a) > 0 for occ, a in zip(state.basis, state.amplitudes)):
                raise ValueError(f"ancilla mode {k} must be empty at the stage input")
        return evolve(cp.compile_circuit(self.circuit).transfer, state)


def build_measurement_stage(mode: str, qubit_rails=(0, 1), ancilla_rails=(2, 3),
                            mismatch_eta: float = 0.0, width: int | None = None) -> MeasurementStage:
    """SWAP the qubit into detector-coupled empty rails (``measure``) or leave it
    in place (``bypass``).

    The mismatch phase sits on the qubit's |0> rail at the gate input, so the
    qubit leaves as ``alpha e^{i eta}|0> + beta|1>`` in either mode.
    """
    if mode not in ("measure", "bypass"):
        raise ValueError(f"mode must be 'measure' or 'bypass', got {mode!r}")
    qubit_rails, ancilla_rails = tuple(qubit_rails), tuple(ancilla_rails)
    if width is None:
        width = max(qubit_rails + ancilla_rails) + 1
    register = DualRailRegister((qubit_rails, ancilla_rails), width)
    if min(ancilla_rails) < min(qubit_rails):
        register = DualRailRegister((ancilla_rails, qubit_rails), width)
        rail = 2
    else:
        rail = 0
    settings = GateSettings.preset(
        "swap" if mode == "measure" else "identity",
        mismatch_eta=mismatch_eta, mismatch_rail=rail, mismatch_position="input",
    )
    return MeasurementStage(mode, build_gate(settings, (0, 1), register), qubit_rails, ancilla_rails)


@dataclass(frozen=True)
class MeasurementStageReport:
    mode: str
    outcome_probabilities: tuple[float, float]
    bypass_output_amplitudes: tuple[complex, complex] | None = None
    counts: tuple[int, int] | None = None


def measurement_stats(qubit, mode: str, mismatch_eta: float = 0.0, shots: int = 0, seed: int = 0,
                      tol: float = 1e-10) -> MeasurementStageReport:
    alpha, beta = (complex(x) for x in qubit)
    norm = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(norm - 1.0) > tol:
        raise ValueError(f"qubit must satisfy |alpha|^2 + |beta|^2 = 1, got {norm:.12g}")
    alpha, beta = alpha / np.sqrt(norm), beta / np.sqrt(norm)

    stage = build_measurement_stage(mode, mismatch_eta=mismatch_eta)
    state = PhotonicState.from_dict(4, 1, {(1, 0, 0, 0): alpha, (0, 1, 0, 0): beta})
    out = stage.run(state)
    probs = probabilities(out)
    d0, d1 = stage.detector_modes
    p0 = sum(p for occ, p in probs.items() if occ[d0])
    p1 = sum(p for occ, p in probs.items() if occ[d1])

    counts = None
    if shots:
        drawn = sample(out, seed, shots)
        counts = (sum(c for occ, c in drawn.items() if occ[d0]), sum(c for occ, c in drawn.items() if occ[d1]))

    amps = None
    if mode == "bypass":
        qreg = DualRailRegister((stage.qubit_rails,), 4)
        v, _ = decode(out, qreg)
        amps = (complex(v[0]), complex(v[1]))
    return MeasurementStageReport(mode, (float(p0), float(p1)), amps, counts)


# -- overhead ---------------------------------------------------------------


@dataclass(frozen=True)
class OverheadReport:
    loss_db_per_crossing: float
    crossings_per_photon: int
    photons: int
    transmittance: float
    photon_survival: float
    success_probability: float
    cnot_baseline: Fraction
    cnot_baseline_unheralded: Fraction


def overhead_report(loss_db_per_crossing: float, crossings_per_photon: int = 1, photons: int = 2) -> OverheadReport:
    """Loss budget of one gate against the three-CNOT construction.

    In swap mode every photon passes exactly one crossing, hence the default.
    """
    if loss_db_per_crossing < 0:
        raise ValueError("loss must be non-negative")
    t = cp.db_to_transmittance(loss_db_per_crossing)
    survival = t**crossings_per_photon
    return OverheadReport(
        loss_db_per_crossing=loss_db_per_crossing,
        crossings_per_photon=crossings_per_photon,
        photons=photons,
        transmittance=t,
        photon_survival=survival,
        success_probability=survival**photons,
        cnot_baseline=HERALDED_CNOT_SUCCESS**CNOTS_PER_SWAP,
        cnot_baseline_unheralded=UNHERALDED_CNOT_SUCCESS**CNOTS_PER_SWAP,
    )

