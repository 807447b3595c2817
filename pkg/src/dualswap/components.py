"""Optical elements, circuits and their compilation to mode unitaries.

Conventions:

* A mode unitary ``U`` maps creation operators as ``a_i^dag -> sum_j U[j, i] a_j^dag``,
  so single-photon amplitude vectors transform as ``psi -> U @ psi``.
* Circuit elements are listed in propagation order; compilation returns
  ``E_N @ ... @ E_2 @ E_1``.
* Mode indices are 0-based.
"""

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .linalg import as_matrix

KINDS = ("phase_shifter", "directional_coupler", "mzi", "rbs", "crossing")


def u_phase_shifter(phi: float) -> np.ndarray:
    return np.array([[np.exp(1j * phi)]], dtype=np.complex128)


def u_directional_coupler(eta_c: float) -> np.ndarray:
    """Lossless coupler with power transmission ``eta_c`` and ``i`` on the cross terms."""
    if not 0.0 <= eta_c <= 1.0:
        raise ValueError(f"coupling ratio must lie in [0, 1], got {eta_c}")
    t = np.sqrt(eta_c)
    r = 1j * np.sqrt(1.0 - eta_c)
    return np.array([[t, r], [r, t]], dtype=np.complex128)


def u_mzi(theta: float) -> np.ndarray:
    """Balanced coupler, internal phase ``theta`` on the upper arm, balanced coupler."""
    c = u_directional_coupler(0.5)
    return c @ np.diag([np.exp(1j * theta), 1.0]) @ c


def u_rbs(theta: float, phi: float) -> np.ndarray:
    """Reconfigurable beam splitter in canonical form.

    ``u_rbs(0, 0)`` is Pauli X and ``u_rbs(pi, pi)`` is the identity.
    The physical MZI followed by an external shifter on the lower mode
    (:func:`u_rbs_physical`) agrees with this up to the global phase
    ``i * exp(i * theta / 2)``.
    """
    s, c = np.sin(theta / 2), np.cos(theta / 2)
    e = np.exp(1j * phi)
    out = np.array([[s, c], [e * c, -e * s]], dtype=np.complex128)
    # cos(pi/2) and sin(pi) leave ~1e-17 residue; snap exact zeros and ones
    out.real[np.abs(out.real) < 1e-15] = 0.0
    out.imag[np.abs(out.imag) < 1e-15] = 0.0
    return out


def u_rbs_physical(theta: float, phi: float) -> np.ndarray:
    return np.diag([1.0, np.exp(1j * phi)]) @ u_mzi(theta)


def u_crossing() -> np.ndarray:
    return np.array([[0, 1], [1, 0]], dtype=np.complex128)


def embed(local, modes: Sequence[int], width: int) -> np.ndarray:
    """Place a 1x1 or 2x2 ``local`` matrix on ``modes`` of an identity of size ``width``."""
    local = as_matrix(local)
    modes = tuple(int(k) for k in modes)
    if local.shape != (len(modes), len(modes)):
        raise ValueError(f"{local.shape[0]}x{local.shape[1]} matrix cannot act on {len(modes)} mode(s)")
    if len(set(modes)) != len(modes):
        raise ValueError(f"duplicate mode indices {modes}")
    for k in modes:
        if not 0 <= k < width:
            raise IndexError(f"mode {k} out of range for width {width}")
    out = np.eye(width, dtype=np.complex128)
    out[np.ix_(modes, modes)] = local
    return out


def db_to_transmittance(loss_db: float) -> float:
    return 10.0 ** (-loss_db / 10.0)


@dataclass(frozen=True)
class Component:
    kind: str
    modes: tuple[int, ...]
    params: tuple[float, ...] = ()
    loss_db: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown component kind {self.kind!r}")
        object.__setattr__(self, "modes", tuple(int(k) for k in self.modes))
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        n_modes = 1 if self.kind == "phase_shifter" else 2
        if len(self.modes) != n_modes:
            raise ValueError(f"{self.kind} acts on {n_modes} mode(s), got {len(self.modes)}")
        if len(set(self.modes)) != len(self.modes):
            raise ValueError(f"{self.kind} needs distinct modes, got {self.modes}")
        if any(k < 0 for k in self.modes):
            raise ValueError(f"negative mode index in {self.modes}")
        n_params = {"phase_shifter": 1, "directional_coupler": 1, "mzi": 1, "rbs": 2, "crossing": 0}[self.kind]
        if len(self.params) != n_params:
            raise ValueError(f"{self.kind} takes {n_params} parameter(s), got {len(self.params)}")
        if not all(np.isfinite(self.params)):
            raise ValueError(f"{self.kind} parameters must be finite")
        if self.kind == "directional_coupler" and not 0.0 <= self.params[0] <= 1.0:
            raise ValueError(f"coupling ratio must lie in [0, 1], got {self.params[0]}")
        if not (self.loss_db >= 0 and np.isfinite(self.loss_db)):
            raise ValueError(f"loss_db must be a finite non-negative number, got {self.loss_db}")

    def matrix(self) -> np.ndarray:
        if self.kind == "phase_shifter":
            return u_phase_shifter(*self.params)
        if self.kind == "directional_coupler":
            return u_directional_coupler(*self.params)
        if self.kind == "mzi":
            return u_mzi(*self.params)
        if self.kind == "rbs":
            return u_rbs(*self.params)
        return u_crossing()


def phase_shifter(mode: int, phi: float, loss_db: float = 0.0) -> Component:
    return Component("phase_shifter", (mode,), (phi,), loss_db)


def directional_coupler(i: int, j: int, eta_c: float, loss_db: float = 0.0) -> Component:
    return Component("directional_coupler", (i, j), (eta_c,), loss_db)


def mzi(i: int, j: int, theta: float, loss_db: float = 0.0) -> Component:
    return Component("mzi", (i, j), (theta,), loss_db)


def rbs(i: int, j: int, theta: float, phi: float, loss_db: float = 0.0) -> Component:
    return Component("rbs", (i, j), (theta, phi), loss_db)


def crossing(i: int, j: int, loss_db: float = 0.0) -> Component:
    return Component("crossing", (i, j), (), loss_db)


@dataclass(frozen=True)
class Circuit:
    width: int
    elements: tuple[Component, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if self.width < 1:
            raise ValueError(f"circuit width must be at least 1, got {self.width}")
        for el in self.elements:
            for k in el.modes:
                if k >= self.width:
                    raise IndexError(f"{el.kind} on mode {k} exceeds circuit width {self.width}")

    def __add__(self, other: "Circuit") -> "Circuit":
        if not isinstance(other, Circuit):
            return NotImplemented
        if other.width != self.width:
            raise ValueError(f"cannot concatenate circuits of width {self.width} and {other.width}")
        return Circuit(self.width, self.elements + other.elements)

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True)
class CompiledCircuit:
    """Result of :func:`compile_circuit`.

    ``unitary`` ignores loss. ``transfer`` scales every element by the amplitude
    factor ``sqrt(T)`` on its own modes, so evolving with it yields the
    post-selected no-loss amplitudes. ``attenuation[j]`` is the amplitude
    survival of a single photon launched into mode ``j``.
    """

    unitary: np.ndarray
    transfer: np.ndarray
    attenuation: np.ndarray

    @property
    def lossless(self) -> bool:
        return bool(np.all(self.attenuation == 1.0))


def compile_circuit(circuit: Circuit) -> CompiledCircuit:
    m = circuit.width
    u = np.eye(m, dtype=np.complex128)
    t = np.eye(m, dtype=np.complex128)
    lossy = False
    for el in circuit.elements:
        local = el.matrix()
        e = embed(local, el.modes, m)
        u = e @ u
        if el.loss_db > 0:
            lossy = True
            e = embed(np.sqrt(db_to_transmittance(el.loss_db)) * local, el.modes, m)
        t = e @ t
    if lossy:
        att = np.linalg.norm(t, axis=0)
    else:
        t = u
        att = np.ones(m)
    for arr in (u, t, att):
        arr.setflags(write=False)
    return CompiledCircuit(u, t, att)
