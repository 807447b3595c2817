"""Linear-optical simulation of a reconfigurable dual-rail SWAP gate."""

from .components import Circuit, Component, compile_circuit
from .dualrail import DualRailRegister, decode, encode, logical_matrix, process_fidelity
from .fock import PhotonicState, enumerate_basis, evolve, probabilities, sample, transition_amplitude
from .gate import GateSettings, build_gate, build_measurement_stage, measurement_stats, mismatch_sweep, overhead_report
from .linalg import equal_up_to_global_phase, is_unitary, matmul, permanent
from .netlist import format_netlist, parse_netlist
from .router import emit_netlist, network_cost, synthesize

__version__ = "0.1.0"
