"""Line-oriented text netlists.

::

    # Fig.-style SWAP gate, swap mode
    modes 4
    wc 2 3
    rbs 1 2 0.0 0.0
    rbs 3 4 0.0 0.0
    wc 2 3 loss 0.03

One directive per line, whitespace-separated tokens, ``#`` starts a comment.
Modes are 1-based in the file. Angles are radians.

=========  ==========================  ===================
directive  arguments                   component
=========  ==========================  ===================
modes      N                           (width header)
ps         mode phi                    phase shifter
dc         i j eta                     directional coupler
mzi        i j theta                   Mach-Zehnder
rbs        i j theta phi               reconfigurable BS
wc         i j                         waveguide crossing
=========  ==========================  ===================

Any component line may end with ``loss <dB>``.
"""

from dataclasses import dataclass

from . import components as cp
from .components import Circuit, Component


class NetlistError(ValueError):
    def __init__(self, line: int | None, message: str):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


# directive -> (component kind, number of mode tokens, number of float tokens)
DIRECTIVES = {
    "ps": ("phase_shifter", 1, 1),
    "dc": ("directional_coupler", 2, 1),
    "mzi": ("mzi", 2, 1),
    "rbs": ("rbs", 2, 2),
    "wc": ("crossing", 2, 0),
}
KEYWORDS = {kind: name for name, (kind, _, _) in DIRECTIVES.items()}


@dataclass(frozen=True)
class Directive:
    name: str
    args: tuple[str, ...]
    line: int
    column: int


@dataclass(frozen=True)
class NetlistDocument:
    width: int
    directives: tuple[Directive, ...]

    def to_circuit(self) -> Circuit:
        return Circuit(self.width, tuple(_component(d, self.width) for d in self.directives))


def _float(tok: str, line: int, what: str) -> float:
    try:
        value = float(tok)
    except ValueError:
        raise NetlistError(line, f"{what} {tok!r} is not a number") from None
    if value != value or value in (float("inf"), float("-inf")):
        raise NetlistError(line, f"{what} {tok!r} must be finite")
    return value


def _mode(tok: str, line: int, width: int) -> int:
    try:
        k = int(tok)
    except ValueError:
        raise NetlistError(line, f"mode {tok!r} is not an integer") from None
    if k < 1:
        raise NetlistError(line, f"mode {k} must be at least 1")
    if k > width:
        raise NetlistError(line, f"mode {k} exceeds declared width {width}")
    return k - 1


def _component(d: Directive, width: int) -> Component:
    kind, n_modes, n_params = DIRECTIVES[d.name]
    args = list(d.args)
    loss = 0.0
    if "loss" in args:
        at = args.index("loss")
        if at != len(args) - 2:
            raise NetlistError(d.line, f"'loss' must be followed by exactly one value, got {' '.join(args[at:])!r}")
        loss = _float(args[-1], d.line, "loss")
        if loss < 0:
            raise NetlistError(d.line, f"loss {args[-1]!r} must be non-negative")
        args = args[:at]
    if len(args) != n_modes + n_params:
        raise NetlistError(d.line, f"'{d.name}' takes {n_modes + n_params} argument(s), got {len(args)}")
    modes = [_mode(t, d.line, width) for t in args[:n_modes]]
    if len(set(modes)) != len(modes):
        raise NetlistError(d.line, f"'{d.name}' needs two different modes, got {args[0]} twice")
    params = [_float(t, d.line, "parameter") for t in args[n_modes:]]
    if kind == "directional_coupler" and not 0.0 <= params[0] <= 1.0:
        raise NetlistError(d.line, f"coupling ratio {args[n_modes]!r} must lie in [0, 1]")
    return Component(kind, tuple(modes), tuple(params), loss)


def parse_document(text: str) -> NetlistDocument:
    width = None
    directives = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = body.split()
        if not tokens:
            continue
        name, args = tokens[0], tuple(tokens[1:])
        column = body.index(name) + 1
        if width is None:
            if name != "modes":
                raise NetlistError(lineno, f"expected 'modes N' header before {name!r}")
            if len(args) != 1:
                raise NetlistError(lineno, f"'modes' takes 1 argument, got {len(args)}")
            try:
                width = int(args[0])
            except ValueError:
                raise NetlistError(lineno, f"width {args[0]!r} is not an integer") from None
            if width < 1:
                raise NetlistError(lineno, f"width {width} must be at least 1")
            continue
        if name == "modes":
            raise NetlistError(lineno, "duplicate 'modes' header")
        if name not in DIRECTIVES:
            raise NetlistError(lineno, f"unknown directive {name!r}")
        d = Directive(name, args, lineno, column)
        _component(d, width)
        directives.append(d)
    if width is None:
        raise NetlistError(None, "missing 'modes' header")
    return NetlistDocument(width, tuple(directives))


def parse_netlist(text: str) -> Circuit:
    return parse_document(text).to_circuit()


def format_netlist(circuit: Circuit) -> str:
    """Serialize ``circuit``; floats use ``repr`` so parsing round-trips exactly."""
    lines = [f"modes {circuit.width}"]
    for el in circuit.elements:
        toks = [KEYWORDS[el.kind], *(str(k + 1) for k in el.modes), *(repr(p) for p in el.params)]
        if el.loss_db:
            toks += ["loss", repr(el.loss_db)]
        lines.append(" ".join(toks))
    return "\n".join(lines) + "\n"


def swap_gate_netlist(theta: float = 0.0, phi: float = 0.0) -> str:
    return format_netlist(Circuit(4, (
        cp.crossing(1, 2), cp.rbs(0, 1, theta, phi), cp.rbs(2, 3, theta, phi), cp.crossing(1, 2),
    )))
