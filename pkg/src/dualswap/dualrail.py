"""Dual-rail qubit registers on top of the Fock simulator.

Logical basis index ``j`` of a k-qubit register is read big-endian: qubit 0
is the most significant bit, so for two qubits the order is
``|00>, |01>, |10>, |11>``.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from .components import Circuit, compile_circuit
from .fock import PhotonicState, evolve
from .linalg import as_matrix


class PostSelectionError(ValueError):
    pass


@dataclass(frozen=True)
class DualRailRegister:
    rails: tuple[tuple[int, int], ...]
    width: int

    def __post_init__(self):
        rails = tuple((int(a), int(b)) for a, b in self.rails)
        object.__setattr__(self, "rails", rails)
        flat = [k for pair in rails for k in pair]
        if len(set(flat)) != len(flat):
            raise ValueError(f"rail modes must be distinct, got {rails}")
        if any(not 0 <= k < self.width for k in flat):
            raise ValueError(f"rail modes {rails} do not fit in {self.width} modes")

    @classmethod
    def consecutive(cls, k: int, width: int | None = None) -> "DualRailRegister":
        """Qubit q on modes (2q, 2q + 1)."""
        return cls(tuple((2 * q, 2 * q + 1) for q in range(k)), 2 * k if width is None else width)

    @property
    def n_qubits(self) -> int:
        return len(self.rails)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    def occupation(self, index: int) -> tuple[int, ...]:
        """Fock occupations of logical basis state ``index``."""
        occ = [0] * self.width
        bits = format(index, f"0{self.n_qubits}b") if self.n_qubits else ""
        for (r0, r1), b in zip(self.rails, bits):
            occ[r1 if b == "1" else r0] = 1
        return tuple(occ)

    def logical_basis(self) -> list[tuple[int, ...]]:
        return [self.occupation(j) for j in range(self.dim)]


@dataclass(frozen=True, eq=False)
class LogicalGateMatrix:
    """Logical action of a circuit on a dual-rail register.

    Column ``j`` holds the projected (not renormalized) amplitudes of the
    evolved basis state ``j``; ``column_success[j]`` is its squared norm.
    """

    matrix: np.ndarray
    column_success: np.ndarray

    @property
    def success_probability(self) -> float:
        return float(np.min(self.column_success))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def encode(logical_amplitudes, register: DualRailRegister, tol: float = 1e-10) -> PhotonicState:
    v = np.asarray(logical_amplitudes, dtype=np.complex128).reshape(-1)
    if v.size != register.dim:
        raise ValueError(f"{register.n_qubits}-qubit register needs {register.dim} amplitudes, got {v.size}")
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > tol:
        raise ValueError(f"logical amplitudes must be normalized, norm is {norm:.12g}")
    terms = {register.occupation(j): a for j, a in enumerate(v)}
    return PhotonicState.from_dict(register.width, register.n_qubits, terms)


def _project(state: PhotonicState, register: DualRailRegister) -> np.ndarray:
    if state.width != register.width:
        raise ValueError(f"state has {state.width} modes but register spans {register.width}")
    if state.photons != register.n_qubits:
        return np.zeros(register.dim, dtype=np.complex128)
    return np.array([state.amplitude(occ) for occ in register.logical_basis()])


def decode(state: PhotonicState, register: DualRailRegister) -> tuple[np.ndarray, float]:
    """Post-select on one photon per rail pair; return renormalized amplitudes
    and the success probability."""
    v = _project(state, register)
    p = float(np.vdot(v, v).real)
    if p == 0.0:
        raise PostSelectionError("state outside logical subspace")
    return v / np.sqrt(p), p


def logical_matrix(circuit: Circuit, register: DualRailRegister) -> LogicalGateMatrix:
    if circuit.width != register.width:
        raise ValueError(f"circuit has {circuit.width} modes but register spans {register.width}")
    t = compile_circuit(circuit).transfer
    cols, success = [], []
    for j in range(register.dim):
        out = evolve(t, PhotonicState.from_fock(register.occupation(j)))
        v = _project(out, register)
        p = float(np.vdot(v, v).real)
        if p == 0.0:
            raise PostSelectionError(f"logical basis state {j} leaves the logical subspace entirely")
        cols.append(v)
        success.append(p)
    mat = np.column_stack(cols)
    return LogicalGateMatrix(mat, np.array(success))


def process_fidelity(actual, target) -> float:
    """``|Tr(target^dag A)|^2 / d^2`` with ``A`` rescaled to unit average
    column norm (the success probability when that is uniform)."""
    a = actual.matrix if isinstance(actual, LogicalGateMatrix) else as_matrix(actual)
    t = as_matrix(target)
    if a.shape != t.shape or a.shape[0] != a.shape[1]:
        raise ValueError(f"dimension mismatch: {a.shape} vs {t.shape}")
    d = a.shape[0]
    weight = np.vdot(a, a).real / d
    if weight == 0:
        return 0.0
    f = abs(np.trace(t.conj().T @ a)) ** 2 / (d * d * weight)
    return float(min(f, 1.0))


def product_state(*qubits) -> np.ndarray:
    """Kronecker product of single-qubit amplitude pairs, qubit 0 first."""
    out = np.array([1.0 + 0j])
    for q in qubits:
        out = np.kron(out, np.asarray(q, dtype=np.complex128))
    return out


def permutation_matrix(perm) -> np.ndarray:
    """Logical unitary that leaves position ``p`` holding old qubit ``perm[p]``."""
    n = len(perm)
    d = 2**n
    out = np.zeros((d, d), dtype=np.complex128)
    for bits in product((0, 1), repeat=n):
        src = int("".join(map(str, bits)), 2) if n else 0
        dst_bits = [bits[perm[p]] for p in range(n)]
        dst = int("".join(map(str, dst_bits)), 2) if n else 0
        out[dst, src] = 1.0
    return out
