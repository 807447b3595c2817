"""Multi-photon states and their evolution through linear-optical networks.

Fock states are plain tuples of occupation numbers. The n-photon basis over
m modes is ordered lexicographically descending, e.g. ``(1, 0)`` before
``(0, 1)``; reports and golden files rely on this order.

Transition amplitudes use the permanent rule

    <out| U |in> = perm(U[out, in]) / sqrt(prod(in!) prod(out!))

where ``U[out, in]`` repeats row ``j`` ``out_j`` times and column ``i``
``in_i`` times.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial, prod, sqrt

import numpy as np

from .linalg import as_matrix, permanent

BASIS_CAP = 10**6
ZERO_CUTOFF = 1e-14

FockState = tuple[int, ...]


def basis_size(m: int, n: int) -> int:
    return comb(m + n - 1, n)


def _descending(m: int, n: int):
    if m == 1:
        yield (n,)
        return
    for k in range(n, -1, -1):
        for rest in _descending(m - 1, n - k):
            yield (k,) + rest


@lru_cache(maxsize=64)
def _basis(m: int, n: int) -> tuple[FockState, ...]:
    return tuple(_descending(m, n))


@lru_cache(maxsize=64)
def _index(m: int, n: int) -> dict[FockState, int]:
    return {s: i for i, s in enumerate(_basis(m, n))}


def enumerate_basis(m: int, n: int, cap: int = BASIS_CAP) -> list[FockState]:
    if m < 1 or n < 0:
        raise ValueError(f"need m >= 1 and n >= 0, got m={m}, n={n}")
    size = basis_size(m, n)
    if size > cap:
        raise ValueError(f"basis of {n} photons in {m} modes has {size} states, above the cap of {cap}")
    return list(_basis(m, n))


@dataclass(frozen=True, eq=False)
class PhotonicState:
    """Amplitude vector over the canonical n-photon, m-mode basis.

    States produced by lossy evolution are left unnormalized; their squared
    norm is the no-loss success probability.
    """

    width: int
    photons: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        expected = basis_size(self.width, self.photons)
        if amps.size != expected:
            raise ValueError(f"expected {expected} amplitudes for {self.photons} photons in {self.width} modes, got {amps.size}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_fock(cls, occupations, amplitude: complex = 1.0) -> "PhotonicState":
        occ = tuple(int(k) for k in occupations)
        return cls.from_dict(len(occ), sum(occ), {occ: amplitude})

    @classmethod
    def from_dict(cls, width: int, photons: int, terms: dict) -> "PhotonicState":
        enumerate_basis(width, photons)
        index = _index(width, photons)
        amps = np.zeros(len(index), dtype=np.complex128)
        for occ, amp in terms.items():
            occ = tuple(int(k) for k in occ)
            if len(occ) != width or sum(occ) != photons or min(occ) < 0:
                raise ValueError(f"{occ} is not a {photons}-photon state over {width} modes")
            amps[index[occ]] += amp
        return cls(width, photons, amps)

    @property
    def basis(self) -> tuple[FockState, ...]:
        return _basis(self.width, self.photons)

    @property
    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def amplitude(self, occupations) -> complex:
        occ = tuple(int(k) for k in occupations)
        i = _index(self.width, self.photons).get(occ)
        return 0j if i is None else complex(self.amplitudes[i])

    def as_dict(self) -> dict[FockState, complex]:
        out = {}
        for occ, a in zip(self.basis, self.amplitudes):
            out[occ] = 0j if abs(a) < ZERO_CUTOFF else complex(a)
        return out


def _check_photon_numbers(input: FockState, output: FockState):
    if sum(input) != sum(output):
        raise ValueError(f"photon number mismatch: {tuple(input)} has {sum(input)}, {tuple(output)} has {sum(output)}")


def transition_amplitude(u, input: FockState, output: FockState) -> complex:
    u = as_matrix(u)
    if len(input) != u.shape[1] or len(output) != u.shape[0]:
        raise ValueError(f"Fock states of {len(input)}/{len(output)} modes do not fit a {u.shape[0]}x{u.shape[1]} unitary")
    _check_photon_numbers(input, output)
    cols = np.repeat(np.arange(len(input)), input)
    rows = np.repeat(np.arange(len(output)), output)
    norm = sqrt(prod(factorial(k) for k in input) * prod(factorial(k) for k in output))
    return permanent(u[np.ix_(rows, cols)]) / norm


def evolve(u, state: PhotonicState) -> PhotonicState:
    """Propagate ``state`` through the mode transformation ``u``.

    ``u`` may be sub-unitary (a lossy transfer matrix), in which case the
    result carries the post-selected amplitudes.
    """
    u = as_matrix(u)
    if u.shape != (state.width, state.width):
        raise ValueError(f"{u.shape[0]}x{u.shape[1]} transformation does not match a {state.width}-mode state")
    if state.photons == 0:
        return state
    if state.photons == 1:
        # basis order for one photon is mode order
        return PhotonicState(state.width, 1, u @ state.amplitudes)
    return _evolve_permanent(u, state)


def _evolve_permanent(u: np.ndarray, state: PhotonicState) -> PhotonicState:
    basis = state.basis
    out = np.zeros(len(basis), dtype=np.complex128)
    for occ_in, a in zip(basis, state.amplitudes):
        if a == 0:
            continue
        for k, occ_out in enumerate(basis):
            out[k] += a * transition_amplitude(u, occ_in, occ_out)
    return PhotonicState(state.width, state.photons, out)


def probabilities(state: PhotonicState) -> dict[FockState, float]:
    """Outcome probabilities in canonical basis order. Sums to the success
    probability for lossy states."""
    out = {}
    for occ, a in zip(state.basis, state.amplitudes):
        out[occ] = 0.0 if abs(a) < ZERO_CUTOFF else float(abs(a) ** 2)
    return out


def sample(state: PhotonicState, seed: int, shots: int) -> dict[FockState, int]:
    """Draw detector outcomes with ``numpy.random.default_rng(seed)`` (PCG64).

    One multinomial draw over the canonical basis order; lossy states are
    sampled from their post-selected (renormalized) distribution.
    """
    if shots < 1:
        raise ValueError(f"shots must be at least 1, got {shots}")
    p = np.array(list(probabilities(state).values()))
    total = p.sum()
    if total <= 0:
        raise ValueError("cannot sample a state with zero norm")
    counts = np.random.default_rng(seed).multinomial(shots, p / total)
    return {occ: int(c) for occ, c in zip(state.basis, counts)}
