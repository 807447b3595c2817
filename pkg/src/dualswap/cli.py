"""Command-line front end.

Exit codes: 0 success, 1 usage error (bad flags, malformed input spec or
netlist, unreadable file), 2 simulation-domain error (e.g. photon-number
mismatch, state outside the logical subspace, permanent size cap).

Reports print reals with 12 decimals; tables are tab-separated.
"""

import argparse
import math
import sys

import numpy as np

from . import gate as gt
from . import router as rt
from .components import compile_circuit
from .dualrail import DualRailRegister, decode, encode, logical_matrix, permutation_matrix, process_fidelity
from .fock import PhotonicState, evolve, probabilities, sample
from .netlist import NetlistError, parse_netlist

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def fmt(x: float) -> str:
    s = f"{x:.12f}"
    return "0.000000000000" if s == "-0.000000000000" else s


def fmt_complex(z: complex) -> str:
    re, im = fmt(z.real), fmt(z.imag)
    return f"{re}{im if im.startswith('-') else '+' + im}j"


def _pair(text: str) -> complex:
    try:
        re, im = (float(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"expected 're,im', got {text!r}") from None
    return complex(re, im)


def _basis_labels(k: int) -> list[str]:
    return [f"|{j:0{k}b}>" for j in range(2**k)]


def _occ(occ) -> str:
    return ",".join(map(str, occ))


def parse_input_spec(spec: str, width: int):
    """``fock:1,0,1,0`` or ``qubits:re,im;re,im;...`` -> (state, register or None)."""
    kind, _, body = spec.partition(":")
    if kind == "fock":
        try:
            occ = tuple(int(t) for t in body.split(","))
        except ValueError:
            raise UsageError(f"malformed fock spec {spec!r}") from None
        if min(occ) < 0:
            raise UsageError(f"occupations must be non-negative in {spec!r}")
        if len(occ) != width:
            raise UsageError(f"fock spec has {len(occ)} modes but the netlist declares {width}")
        return PhotonicState.from_fock(occ), None
    if kind == "qubits":
        amps = np.array([_pair(p) for p in body.split(";")])
        k = int(round(math.log2(len(amps)))) if len(amps) else -1
        if k < 1 or 2**k != len(amps):
            raise UsageError(f"qubits spec needs 2^k amplitudes, got {len(amps)}")
        if 2 * k > width:
            raise UsageError(f"{k} qubits need {2 * k} modes, netlist declares {width}")
        register = DualRailRegister.consecutive(k, width)
        return encode(amps, register), register
    raise UsageError(f"input spec must start with 'fock:' or 'qubits:', got {spec!r}")


def cmd_simulate(args) -> list[str]:
    try:
        with open(args.netlist) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.netlist}: {exc.strerror}") from None
    circuit = parse_netlist(text)
    state, register = parse_input_spec(args.input, circuit.width)
    out = evolve(compile_circuit(circuit).transfer, state)
    probs = probabilities(out)
    lines = [f"# simulate modes={circuit.width} photons={state.photons} elements={len(circuit)}"]
    counts = sample(out, args.seed, args.shots) if args.shots else None
    lines.append("outcome\tprobability" + ("\tcounts" if counts else ""))
    for occ, p in probs.items():
        lines.append(f"{_occ(occ)}\t{fmt(p)}" + (f"\t{counts[occ]}" if counts else ""))
    lines.append(f"total={fmt(sum(probs.values()))}")
    if register is not None:
        v, success = decode(out, register)
        lines.append("logical\tamplitude\tprobability")
        for label, a in zip(_basis_labels(register.n_qubits), v):
            lines.append(f"{label}\t{fmt_complex(a)}\t{fmt(abs(a) ** 2)}")
        lines.append(f"success={fmt(success)}")
    return lines


def _settings_from_args(mode: str, args) -> gt.GateSettings:
    style = {"ideal": "ideal_crossing", "mzi": "mzi_theta_zero"}[args.crossing]
    return gt.GateSettings.preset(mode, mismatch_eta=getattr(args, "eta", 0.0),
                                  crossing_style=style, crossing_loss_db=args.loss_db)


def cmd_gate(args) -> list[str]:
    settings = _settings_from_args(args.mode, args)
    lm = gt.gate_logical_matrix(settings)
    labels = _basis_labels(2)
    lines = [f"# gate mode={args.mode} crossing={args.crossing} eta={fmt(args.eta)} loss_db={fmt(args.loss_db)}"]
    lines.append("out\\in\t" + "\t".join(labels))
    for label, row in zip(labels, lm.matrix):
        lines.append(label + "\t" + "\t".join(fmt_complex(z) for z in row))
    lines.append(f"target={args.mode}")
    lines.append(f"fidelity={fmt(process_fidelity(lm, gt.target_matrix(args.mode)))}")
    lines.append(f"success={fmt(lm.success_probability)}")
    if args.plot:
        from .plotting import matrix_figure

        matrix_figure(lm.matrix, args.plot, labels=labels, title=f"{args.mode} gate")
        lines.append(f"figure={args.plot}")
    return lines


def cmd_sweep(args) -> list[str]:
    if args.steps < 1:
        raise UsageError("--steps must be at least 1")
    etas = np.linspace(args.eta_from, args.eta_to, args.steps)
    args.eta = 0.0
    rows = gt.mismatch_sweep(_settings_from_args(args.target, args), etas, args.target)
    lines = [f"# sweep target={args.target} crossing={args.crossing} steps={args.steps}"]
    lines.append("eta\tfidelity")
    lines += [f"{fmt(eta)}\t{fmt(f)}" for eta, f in rows]
    if args.plot:
        from .plotting import fidelity_figure

        fidelity_figure(rows, args.plot, target=args.target)
        lines.append(f"figure={args.plot}")
    return lines


def cmd_route(args) -> list[str]:
    try:
        perm = rt.parse_permutation(args.perm)
    except rt.PermutationError as exc:
        raise UsageError(str(exc)) from None
    net = rt.synthesize(perm)
    cost = rt.network_cost(net, args.loss_db)
    lines = [f"# route perm={','.join(map(str, perm))} qubits={net.n}"]
    lines.append("layer\tswaps")
    for k, layer in enumerate(net.layers, start=1):
        lines.append(f"{k}\t" + " ".join(f"({i},{i + 1})" for i in layer))
    lines += [
        f"swaps={cost.swaps}",
        f"depth={cost.depth}",
        f"inversions={rt.inversion_count(perm)}",
        f"rbs={cost.rbs_count}",
        f"crossings={cost.crossing_count}",
        f"loss_db_per_crossing={fmt(cost.loss_db_per_crossing)}",
        f"total_loss_db={fmt(cost.total_loss_db)}",
        f"survival_all_crossings={fmt(cost.survival_all_crossings)}",
        f"worst_path_crossings={cost.worst_path_crossings}",
        f"worst_path_loss_db={fmt(cost.worst_path_loss_db)}",
        f"worst_path_survival={fmt(cost.worst_path_survival)}",
        f"cnot_baseline_per_swap={cost.cnot_baseline_per_swap}",
        f"cnot_baseline_network={cost.cnot_baseline_network}",
    ]
    if args.verify:
        if net.n > 4:
            raise UsageError("--verify simulates the full network and is limited to 4 qubits")
        register = DualRailRegister.consecutive(net.n)
        lm = logical_matrix(rt.emit_netlist(net), register)
        lines.append(f"verify_fidelity={fmt(process_fidelity(lm, permutation_matrix(perm)))}")
        lines.append(f"verify_success={fmt(lm.success_probability)}")
    if args.plot:
        from .plotting import network_figure

        network_figure(net, args.plot)
        lines.append(f"figure={args.plot}")
    return lines


def cmd_measure_demo(args) -> list[str]:
    alpha, beta = _pair(args.alpha), _pair(args.beta)
    report = gt.measurement_stats((alpha, beta), args.mode, args.eta, shots=args.shots, seed=args.seed)
    p0, p1 = report.outcome_probabilities
    lines = [f"# measure-demo mode={args.mode} eta={fmt(args.eta)}"]
    lines.append(f"alpha={fmt_complex(alpha)} beta={fmt_complex(beta)}")
    lines.append(f"p0={fmt(p0)} p1={fmt(p1)}")
    if report.counts is not None:
        lines.append(f"shots={args.shots} seed={args.seed} counts0={report.counts[0]} counts1={report.counts[1]}")
    if report.bypass_output_amplitudes is not None:
        a0, a1 = report.bypass_output_amplitudes
        lines.append(f"out0={fmt_complex(a0)} out1={fmt_complex(a1)}")
    return lines


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dualswap", description="Dual-rail linear-optical SWAP gate toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("simulate", help="evolve an input state through a netlist")
    s.add_argument("netlist")
    s.add_argument("--input", required=True, help="fock:1,0,1,0 or qubits:re,im;re,im;...")
    s.add_argument("--shots", type=int, default=0)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_simulate)

    g = sub.add_parser("gate", help="verify the SWAP gate at a preset")
    g.add_argument("--mode", choices=("swap", "identity"), required=True)
    g.add_argument("--eta", type=float, default=0.0, help="phase mismatch (rad)")
    g.add_argument("--crossing", choices=("ideal", "mzi"), default="ideal")
    g.add_argument("--loss-db", type=float, default=0.0, help="insertion loss per crossing")
    g.add_argument("--plot", metavar="PATH", help="write a matrix figure")
    g.set_defaults(func=cmd_gate)

    w = sub.add_parser("sweep", help="fidelity against phase mismatch")
    w.add_argument("--eta-from", type=float, required=True)
    w.add_argument("--eta-to", type=float, required=True)
    w.add_argument("--steps", type=int, required=True)
    w.add_argument("--target", choices=("swap", "identity"), required=True)
    w.add_argument("--crossing", choices=("ideal", "mzi"), default="ideal")
    w.add_argument("--loss-db", type=float, default=0.0)
    w.add_argument("--plot", metavar="PATH")
    w.set_defaults(func=cmd_sweep)

    r = sub.add_parser("route", help="nearest-neighbour SWAP network for a permutation")
    r.add_argument("--perm", required=True, help="image list, e.g. 3,2,1,0")
    r.add_argument("--loss-db", type=float, default=0.0, help="insertion loss per crossing")
    r.add_argument("--verify", action="store_true", help="simulate the emitted netlist (n <= 4)")
    r.add_argument("--plot", metavar="PATH")
    r.set_defaults(func=cmd_route)

    m = sub.add_parser("measure-demo", help="selective measurement stage")
    m.add_argument("--alpha", required=True, help="re,im")
    m.add_argument("--beta", required=True, help="re,im")
    m.add_argument("--mode", choices=("measure", "bypass"), required=True)
    m.add_argument("--eta", type=float, default=0.0)
    m.add_argument("--shots", type=int, default=0)
    m.add_argument("--seed", type=int, default=0)
    m.set_defaults(func=cmd_measure_demo)
    return p


def run(argv, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "loss_db", 0.0) < 0:
            raise UsageError("--loss-db must be non-negative")
        lines = args.func(args)
    except (UsageError, NetlistError) as exc:
        print(f"dualswap: error: {exc}", file=err)
        return EXIT_USAGE
    except (ValueError, IndexError) as exc:
        print(f"dualswap: error: {exc}", file=err)
        return EXIT_DOMAIN
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
