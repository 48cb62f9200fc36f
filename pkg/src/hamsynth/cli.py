"""Command-line entry point.

Exit codes: 0 success, 1 invalid input or tolerance not met, 2 the
Hamiltonians do not generate the full algebra, 3 analytic solver requested
outside its domain without ``--numeric-fallback``.
"""

import argparse
import math
import os
import sys

from . import devices as dev
from .controllability import gram_matrix, lie_closure, lowenthal_steps
from .errors import AnalyticDomainError, ControllabilityError, HamsynthError, RegimeError
from .gates import SIGNATURES, build_gate, parse_gate
from .linalg import unitarity_defect
from .su2 import euler_three_step, jj_four_step
from .synthesis import (
    ObjectiveKind,
    PulseSequence,
    SynthesisReport,
    evaluate_durations,
    f_phase_invariant,
    f_test,
    propagate,
    synthesize,
)

EXIT_OK, EXIT_INPUT, EXIT_NOT_FULL, EXIT_REGIME = 0, 1, 2, 3

# used for builtin parameters missing from --params
DEFAULT_PARAMS = {"E_c": 10.0, "E_J": 1.0, "E_L": 0.5, "B1": 1.0, "B2": 1.0, "J12": 0.1}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


class UsageError(HamsynthError):
    pass


def parse_params(text):
    out = {}
    if not text:
        return out
    for item in text.split(","):
        key, sep, val = item.partition("=")
        if not sep or not key.strip():
            raise UsageError(f"bad --params entry {item!r}; expected key=value")
        try:
            out[key.strip()] = float(val)
        except ValueError:
            raise UsageError(f"parameter {key.strip()} must be a real number, got {val!r}") from None
    return out


def resolve_device(name, params_text=None):
    params = parse_params(params_text)
    if name in dev.builtin_names():
        full = {k: params.get(k, DEFAULT_PARAMS[k]) for k in dev.builtin_signature(name)}
        extra = set(params) - set(full)
        if extra:
            raise UsageError(f"device {name!r} does not take parameter(s) {', '.join(sorted(extra))}")
        return dev.builtin_device(name, full)
    if os.path.isfile(name):
        if params:
            raise UsageError("--params applies to builtin devices only")
        with open(name, encoding="utf-8") as fh:
            return dev.load_device(fh.read())
    raise UsageError(f"{name!r} is neither a builtin device ({', '.join(dev.builtin_names())}) nor a file")


def _fmt(x):
    return f"{x:.12g}"


def cmd_check(args, out):
    device = resolve_device(args.device, args.params)
    hams = list(device.hamiltonians)
    closure = lie_closure(hams)
    d = device.dim
    out.write(f"device {device.name}\n")
    out.write(f"dim {closure.dimension}\n")
    out.write(f"full su({d}): {'yes' if closure.is_full_su else 'no'}\n")
    out.write(f"depth {closure.depth_reached}\n")
    out.write("gram\n")
    for row in gram_matrix(hams):
        out.write("  " + " ".join(_fmt(v) for v in row) + "\n")
    if d == 2 and len(hams) == 2 and closure.is_full_su:
        res = lowenthal_steps(*hams)
        out.write(f"psi {_fmt(res.psi)}\n")
        if res.k is not None:
            out.write(f"k {res.k}\n")
        out.write(f"steps: {res.steps}\n")
    return EXIT_OK if closure.is_full_su else EXIT_NOT_FULL


def _analytic(device, target):
    """Closed-form sequence for one-qubit two-generator devices, or None."""
    if device.num_qubits != 1 or len(device.hamiltonians) != 2 or tuple(device.cycle_order) != (0, 1):
        return None
    h1, h2 = device.hamiltonians
    if lowenthal_steps(h1, h2).steps == 3:
        return euler_three_step(h1, h2, target)
    if device.name == "jj1" and device.switches:
        p = dict(device.parameters)
        return jj_four_step(p["E_c"], p["E_J"], target, pre_rotate=True)
    raise RegimeError("no closed form for this non-orthogonal pair")


def _default_steps(device):
    if device.num_qubits == 1 and len(device.hamiltonians) == 2:
        try:
            return lowenthal_steps(*device.hamiltonians).steps
        except ControllabilityError:
            pass
    return 4**device.num_qubits - 1


def cmd_synth(args, out):
    device = resolve_device(args.device, args.params)
    spec = parse_gate(args.target)
    target = build_gate(spec)
    if target.shape[0] != device.dim:
        raise UsageError(f"target {spec} acts on {spec.num_qubits} qubit(s); device has {device.num_qubits}")
    kind = ObjectiveKind.parse(args.objective)

    report = None
    seq = None
    try:
        seq = _analytic(device, target)
    except (RegimeError, AnalyticDomainError) as exc:
        if not args.numeric_fallback:
            sys.stderr.write(f"analytic solver unavailable: {exc}\n")
            return EXIT_REGIME
        sys.stderr.write(f"analytic solver unavailable ({exc}); falling back to numeric synthesis\n")
    if seq is not None and args.steps is not None and args.steps != len(seq.steps):
        seq = None
    if seq is not None:
        durations = tuple(seq.durations)
        value = evaluate_durations(device, target, durations, kind)
        report = SynthesisReport(
            target_name=str(spec),
            durations=durations,
            objective_value=value,
            objective=kind,
            restarts_used=0,
            iterations=0,
            seed=args.seed,
            converged=value <= args.tol,
        )
    else:
        steps = args.steps if args.steps is not None else _default_steps(device)
        if steps < 1:
            raise UsageError("--steps must be positive")
        report = synthesize(
            device,
            target,
            steps,
            objective=kind,
            restarts=args.restarts,
            seed=args.seed,
            max_iters=args.max_iters,
            tol=args.tol,
            target_name=str(spec),
        )
    text = report.to_text()
    out.write(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK if report.converged else EXIT_INPUT


def _parse_times(text):
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--times must be a comma-separated list of reals, got {text!r}") from None
    if any(not math.isfinite(v) for v in vals):
        raise UsageError("--times contains a non-finite value")
    return vals


def cmd_verify(args, out):
    device = resolve_device(args.device, args.params)
    if args.report:
        with open(args.report, encoding="utf-8") as fh:
            try:
                report = SynthesisReport.from_text(fh.read())
            except ValueError as exc:
                raise UsageError(f"cannot read report: {exc}") from None
        durations = list(report.durations)
        target_text = args.target or report.target_name
    elif args.times is not None:
        durations = _parse_times(args.times)
        target_text = args.target
    else:
        raise UsageError("verify needs --times or --report")
    if not target_text:
        raise UsageError("verify needs --target")
    if not durations:
        raise UsageError("no durations given")
    if args.steps is not None and args.steps != len(durations):
        raise UsageError(f"expected {args.steps} durations, got {len(durations)}")
    target = build_gate(target_text)
    if target.shape[0] != device.dim:
        raise UsageError("target and device dimensions differ")
    u = propagate(PulseSequence.for_device(device, durations))
    plain = f_test(target, u)
    inv = f_phase_invariant(target, u)
    out.write(f"steps {len(durations)}\n")
    out.write(f"f_test {plain:.17g}\n")
    out.write(f"f_phase_invariant {inv:.17g}\n")
    out.write(f"unitarity_defect {unitarity_defect(u):.3g}\n")
    ok = inv <= args.tol
    out.write(f"within_tol {'yes' if ok else 'no'}\n")
    return EXIT_OK if ok else EXIT_INPUT


def cmd_gates(args, out):
    for name, sig in SIGNATURES.items():
        out.write(sig + "\n")
    return EXIT_OK


def cmd_devices(args, out):
    for name in dev.builtin_names():
        sig = ",".join(dev.builtin_signature(name)) or "-"
        out.write(f"{name:10s} {sig:14s} {dev.BUILTIN_DESCRIPTIONS[name]}\n")
    return EXIT_OK


def build_parser():
    p = _Parser(prog="hamsynth", description="Gate synthesis from intrinsic device Hamiltonians.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def device_flags(sp):
        sp.add_argument("--device", required=True, help="builtin name or device-config path")
        sp.add_argument("--params", default=None, help="k=v,... for builtin devices")

    c = sub.add_parser("check", help="controllability report")
    device_flags(c)
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("synth", help="synthesize step durations for a target gate")
    device_flags(s)
    s.add_argument("--target", required=True)
    s.add_argument("--steps", type=int, default=None)
    s.add_argument("--objective", default="phase", choices=["plain", "phase", "phase_invariant"])
    s.add_argument("--restarts", type=int, default=64)
    s.add_argument("--seed", type=int, default=42)
    s.add_argument("--tol", type=float, default=1e-8)
    s.add_argument("--max-iters", type=int, default=2000)
    s.add_argument("--out", default=None)
    s.add_argument("--numeric-fallback", action="store_true")
    s.set_defaults(func=cmd_synth)

    v = sub.add_parser("verify", help="evaluate a duration vector against a target")
    device_flags(v)
    v.add_argument("--target", default=None)
    v.add_argument("--times", default=None)
    v.add_argument("--report", default=None, help="read durations from a synth report")
    v.add_argument("--steps", type=int, default=None)
    v.add_argument("--tol", type=float, default=1e-8)
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gates", help="list target gates")
    g.set_defaults(func=cmd_gates)
    d = sub.add_parser("devices", help="list builtin devices")
    d.set_defaults(func=cmd_devices)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        out.write(parser.format_help())
        return EXIT_OK
    try:
        return args.func(args, out)
    except (HamsynthError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
