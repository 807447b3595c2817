"""Nearest-neighbour SWAP networks on a line of qubits.

A target permutation is given as an image list: after the network runs,
position ``p`` holds the qubit that started at ``target[p]``. ``(3, 2, 1, 0)``
reverses four qubits.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import gate as _gate
from .components import Circuit, db_to_transmittance
from .dualrail import DualRailRegister


class PermutationError(ValueError):
    pass


def validate_permutation(target) -> tuple[int, ...]:
    try:
        perm = tuple(int(x) for x in target)
    except (TypeError, ValueError):
        raise PermutationError(f"permutation entries must be integers, got {target!r}") from None
    if sorted(perm) != list(range(len(perm))):
        raise PermutationError(f"{list(perm)} is not a permutation of 0..{len(perm) - 1}")
    return perm


def parse_permutation(text: str) -> tuple[int, ...]:
    """Parse ``"3,2,1,0"``."""
    parts = [p.strip() for p in text.split(",")]
    if not parts or any(not p.lstrip("-").isdigit() for p in parts):
        raise PermutationError(f"malformed permutation {text!r}; expected comma-separated integers")
    return validate_permutation(parts)


def inversion_count(perm) -> int:
    return sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])


@dataclass(frozen=True)
class SwapNetwork:
    """Layers of disjoint adjacent transpositions; each layer lists the left
    positions ``i`` of its swaps ``(i, i + 1)``."""

    n: int
    layers: tuple[tuple[int, ...], ...]
    target: tuple[int, ...]

    @property
    def swap_count(self) -> int:
        return sum(len(layer) for layer in self.layers)

    @property
    def depth(self) -> int:
        return len(self.layers)

    def transpositions(self) -> list[tuple[int, int]]:
        return [(i, i + 1) for layer in self.layers for i in layer]

    def apply(self, arrangement=None) -> list:
        arr = list(range(self.n)) if arrangement is None else list(arrangement)
        for i, j in self.transpositions():
            arr[i], arr[j] = arr[j], arr[i]
        return arr


def synthesize(target) -> SwapNetwork:
    """Odd-even transposition schedule realizing ``target``.

    Sorting the target back to the identity only ever swaps an adjacent
    inverted pair, so the swap count equals the inversion count; running the
    recorded rounds backwards builds the target from the identity.
    """
    perm = validate_permutation(target)
    n = len(perm)
    arr = list(perm)
    rounds = []
    for r in range(n):
        layer = []
        for i in range(r % 2, n - 1, 2):
            if arr[i] > arr[i + 1]:
                arr[i], arr[i + 1] = arr[i + 1], arr[i]
                layer.append(i)
        if layer:
            rounds.append(tuple(layer))
    assert arr == sorted(arr)
    return SwapNetwork(n, tuple(reversed(rounds)), perm)


@dataclass(frozen=True)
class NetworkCost:
    swaps: int
    depth: int
    rbs_count: int
    crossing_count: int
    loss_db_per_crossing: float
    total_loss_db: float
    survival_all_crossings: float
    worst_path_crossings: int
    worst_path_loss_db: float
    worst_path_survival: float
    cnot_baseline_per_swap: Fraction
    cnot_baseline_network: Fraction


def network_cost(net: SwapNetwork, loss_db_per_crossing: float = 0.0, rbs_per_swap: int = 2,
                 crossings_per_swap: int = 2) -> NetworkCost:
    """Component counts and loss budget of ``net`` built from swap-mode gates.

    ``worst_path_*`` follow the photon of the qubit involved in the most
    swaps; in swap mode each photon crosses one waveguide crossing per gate.
    """
    if loss_db_per_crossing < 0:
        raise ValueError("loss must be non-negative")
    involvement = [0] * net.n
    for i, j in net.transpositions():
        involvement[i] += 1
        involvement[j] += 1
    worst = max(involvement, default=0)
    crossings = crossings_per_swap * net.swap_count
    total_db = crossings * loss_db_per_crossing
    per_swap = _gate.HERALDED_CNOT_SUCCESS**_gate.CNOTS_PER_SWAP
    return NetworkCost(
        swaps=net.swap_count,
        depth=net.depth,
        rbs_count=rbs_per_swap * net.swap_count,
        crossing_count=crossings,
        loss_db_per_crossing=loss_db_per_crossing,
        total_loss_db=total_db,
        survival_all_crossings=db_to_transmittance(total_db),
        worst_path_crossings=worst,
        worst_path_loss_db=worst * loss_db_per_crossing,
        worst_path_survival=db_to_transmittance(worst * loss_db_per_crossing),
        cnot_baseline_per_swap=per_swap,
        cnot_baseline_network=per_swap**net.swap_count if net.swap_count else Fraction(1),
    )


def emit_netlist(net: SwapNetwork, settings=None, crossing_loss_db: float = 0.0) -> Circuit:
    """Lower ``net`` to gate circuits over ``2n`` modes, layer by layer.

    ``settings`` holds one entry per transposition, each ``"swap"``,
    ``"identity"`` or a :class:`~dualswap.gate.GateSettings`; default all swap.
    """
    swaps = net.transpositions()
    if settings is None:
        settings = ["swap"] * len(swaps)
    settings = list(settings)
    if len(settings) != len(swaps):
        raise ValueError(f"need one setting per transposition ({len(swaps)}), got {len(settings)}")
    register = DualRailRegister.consecutive(net.n)
    circuit = Circuit(register.width)
    for pair, s in zip(swaps, settings):
        if isinstance(s, str):
            s = _gate.GateSettings.preset(s, crossing_loss_db=crossing_loss_db)
        circuit = circuit + _gate.build_gate(s, pair, register)
    return circuit
