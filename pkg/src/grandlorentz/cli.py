"""Command-line front end: ``grandlorentz {norm,verify,sweep}``.

Exit codes: 0 success, 1 a known-constant check failed, 2 bad input or
configuration, 3 the requested norm diverges.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import grand, norms
from .families import FAMILY_KINDS, ExtremalFamily
from .grand import DEFAULT_SEARCH
from .kfun import KCouple, k_profile
from .rearrange import DyadicStepFunction
from .report import fmt_float, table_to_csv, to_csv, to_jsonl
from .suites import SUITES, SuiteConfig, run_suite
from .tails import Estimate, exact
from .verify import blowup_sweep

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_DIVERGENT = 0, 1, 2, 3
ENV_OUT = "GRANDLORENTZ_OUT"
ENV_WORKERS = "GRANDLORENTZ_WORKERS"
SEQ_KINDS = ("lorentz-seq", "lorentz-star", "lambda", "grand-seq-star")
FUN_KINDS = ("lorentz-fun", "lpqtau", "grand-fun")


class InputError(ValueError):
    pass


def parse_number(tok: str) -> complex | float:
    if "," in tok:
        re_s, im_s = tok.split(",", 1)
        return complex(float(re_s), float(im_s))
    return float(tok)


def parse_real(tok: str) -> float:
    return math.inf if tok.strip().lower() in ("inf", "infinity") else float(tok)


def parse_grid(text: str) -> list[float]:
    vals = [parse_real(t) for t in text.split(",") if t.strip()]
    if not vals:
        raise InputError("empty parameter grid")
    return vals


def read_input(path: str):
    """Return ("sequence", array) or ("function", DyadicStepFunction)."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    tokens = text.split()
    try:
        if tokens and tokens[0] == "L":
            if len(tokens) < 2:
                raise InputError(f"{path}: missing level after 'L'")
            level = int(tokens[1])
            vals = [parse_number(t) for t in tokens[2:]]
            if len(vals) != 1 << level:
                raise InputError(f"{path}: level {level} needs {1 << level} values, found {len(vals)}")
            return "function", DyadicStepFunction(level, np.array(vals))
        vals = [parse_number(t) for t in tokens]
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"{path}: {exc}") from exc
    if not vals:
        raise InputError(f"{path}: no values")
    return "sequence", np.array(vals)


def _out_dir(arg: str | None) -> Path:
    out = Path(arg or os.environ.get(ENV_OUT) or "reports")
    out.mkdir(parents=True, exist_ok=True)
    return out


def _workers(arg: int | None) -> int:
    if arg is not None:
        return arg
    env = os.environ.get(ENV_WORKERS)
    return int(env) if env else 1


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise InputError(f"--{n} is required for --kind {args.kind}")


def _norm_estimate(args, kind: str, data) -> Estimate:
    search = grand.EpsSearch(grid_size=args.grid)
    if args.kind in FUN_KINDS:
        if kind != "function":
            raise InputError(f"--kind {args.kind} needs a step-function file ('L <level>' header)")
        f = data
        if args.kind == "lorentz-fun":
            _need(args, "p", "q")
            return exact(norms.lorentz_fun_norm(f, args.p, args.q))
        if args.kind == "lpqtau":
            _need(args, "p", "q", "tau")
            return exact(norms.lpqtau_fun_norm(f, args.p, args.q, args.tau))
        _need(args, "p", "q", "theta")
        value, prof = grand.grand_fun_norm(f, args.p, args.q, args.theta, search)
        return Estimate(value, prof.lower, prof.upper, prof.note)
    a = data.values if kind == "function" else data
    if args.kind == "lorentz-seq":
        _need(args, "p", "q")
        return exact(norms.lorentz_seq_norm(a, args.p, args.q))
    if args.kind == "lorentz-star":
        _need(args, "p", "q")
        return norms.lorentz_seq_star_estimate(a, args.p, args.q, args.alpha or 2.0)
    if args.kind == "lambda":
        _need(args, "p", "q", "tau")
        return norms.lambda_estimate(a, args.p, args.q, args.tau)
    _need(args, "p", "q", "theta")
    value, prof = grand.grand_seq_star_norm(a, args.p, args.q, args.theta, args.alpha, search)
    if math.isinf(value):
        return Estimate(value, value, value, prof.note)
    return Estimate(value, prof.lower, prof.upper, prof.note)


def cmd_norm(args) -> int:
    kind, data = read_input(args.input)
    est = _norm_estimate(args, kind, data)
    if math.isinf(est.value):
        print(f"divergent: {est.note or 'norm is infinite'}", file=sys.stderr)
        if args.json:
            print(json.dumps({"kind": args.kind, "value": "inf", "note": est.note}))
        return EXIT_DIVERGENT
    half = max(est.upper - est.value, est.value - est.lower, 0.0)
    if args.json:
        rec = {
            "kind": args.kind,
            "value": fmt_float(est.value),
            "lower": fmt_float(est.lower),
            "upper": fmt_float(est.upper),
            "note": est.note,
        }
        print(json.dumps(rec))
    else:
        print(f"{fmt_float(est.value)} ± {fmt_float(half)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    q_values = tuple(parse_grid(args.q)) if args.q else ()
    cfg = SuiteConfig(
        seed=args.seed,
        count=args.count,
        level=args.level,
        max_len=args.max_len,
        system=args.system,
        q_values=q_values,
    )
    reports = run_suite(args.suite, cfg, _workers(args.workers))
    out = _out_dir(args.out)
    stem = f"verify-{args.suite}"
    (out / f"{stem}.jsonl").write_text(to_jsonl(reports))
    (out / f"{stem}.csv").write_text(to_csv(reports))
    failed = [r for r in reports if r.passed is False]
    counts: dict[str, int] = {}
    for r in reports:
        counts[r.status] = counts.get(r.status, 0) + 1
    summary = ", ".join(f"{k}={v}" for k, v in sorted(counts.items()))
    print(f"{args.suite}: {len(reports)} reports ({summary}); seed {args.seed}; written to {out / stem}.*")
    for r in failed[:10]:
        print(f"FAIL {r.check_name} {r.params} lhs={fmt_float(r.lhs)} rhs={fmt_float(r.rhs)} {r.notes}")
    return EXIT_FAIL if failed else EXIT_OK


def _sweep_blowup(args, out: Path) -> None:
    p_grid = parse_grid(args.p_grid)
    res = blowup_sweep(ExtremalFamily(args.family, args.beta, args.level), p_grid, args.q, args.delta)
    rows = list(res.rows())
    (out / "blowup.csv").write_text(table_to_csv(("p", "c_emp", "c_emp_plain"), rows))
    summary = (("family", res.family), ("q", res.q), ("slope", res.slope),
               ("slope_plain", res.slope_plain), ("scaled_max", res.scaled_max))
    (out / "blowup-summary.csv").write_text(table_to_csv(("key", "value"), summary))
    print(f"blowup {res.family} q={fmt_float(res.q)}: slope {fmt_float(res.slope)}, "
          f"plain slope {fmt_float(res.slope_plain)}, max c*(1/p-1/2)^e {fmt_float(res.scaled_max)}")


def _sweep_object(args):
    if args.input:
        return read_input(args.input)
    member = ExtremalFamily(args.family, args.beta, args.level).member()
    if args.object == "function":
        return "function", member
    return "sequence", np.trim_zeros(member.values, "b")


def _sweep_eps(args, out: Path) -> None:
    _need(args, "p", "theta")
    kind, data = _sweep_object(args)
    search = grand.EpsSearch(grid_size=args.grid)
    if kind == "function":
        value, prof = grand.grand_fun_norm(data, args.p, args.q, args.theta, search)
    else:
        value, prof = grand.grand_seq_star_norm(data, args.p, args.q, args.theta, args.alpha, search)
    (out / "eps-profile.csv").write_text(table_to_csv(("eps", "phi"), prof.rows()))
    print(f"eps-profile: sup {fmt_float(value)} at eps {fmt_float(prof.argmax_eps)}"
          + (f" ({prof.boundary} boundary)" if prof.boundary else "")
          + (f"; {prof.note}" if prof.note else ""))


def _sweep_k(args, out: Path) -> None:
    kind, data = _sweep_object(args)
    a = data.values if kind == "function" else data
    couple = KCouple(args.p if args.p is not None else 2.0, args.q0, args.q1)
    ts = parse_grid(args.t) if args.t else list(np.geomspace(1e-3, 1e3, 16))
    if any(not t > 0 for t in ts):
        raise InputError("t values must be positive")
    prof = k_profile(a, couple)
    rows = [(float(t), float(prof(t))) for t in ts]
    (out / "k-profile.csv").write_text(table_to_csv(("t", "k_upper"), rows))
    print(f"k-profile: {len(rows)} rows (upper bound for K; truncation family of {prof.cuts.size} splits)")


def cmd_sweep(args) -> int:
    out = _out_dir(args.out)
    {"blowup": _sweep_blowup, "eps-profile": _sweep_eps, "k-profile": _sweep_k}[args.kind](args, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="grandlorentz", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    n = sub.add_parser("norm", help="evaluate a norm of a sequence or step-function file")
    n.add_argument("input")
    n.add_argument("--kind", required=True, choices=SEQ_KINDS + FUN_KINDS)
    for name in ("p", "q", "tau", "theta", "alpha"):
        n.add_argument(f"--{name}", type=parse_real)
    n.add_argument("--grid", type=int, default=DEFAULT_SEARCH.grid_size, help="eps grid size")
    n.add_argument("--json", action="store_true")
    n.set_defaults(func=cmd_norm)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=SUITES + ("all",))
    v.add_argument("--seed", type=int, default=7)
    v.add_argument("--count", type=int, default=20)
    v.add_argument("--level", type=int, default=6)
    v.add_argument("--max-len", type=int, default=128)
    v.add_argument("--q", help="comma-separated q values overriding the suite grid")
    v.add_argument("--system", choices=("walsh", "trig"), default="walsh")
    v.add_argument("--out", help=f"output directory (env {ENV_OUT}, default ./reports)")
    v.add_argument("--workers", type=int, help=f"worker processes (env {ENV_WORKERS}, default 1)")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="write plot data tables")
    s.add_argument("--kind", required=True, choices=("blowup", "eps-profile", "k-profile"))
    s.add_argument("--input", help="sequence or step-function file (else --family)")
    s.add_argument("--family", choices=FAMILY_KINDS, default=None)
    s.add_argument("--beta", type=float, default=0.5, help="family parameter")
    s.add_argument("--object", choices=("sequence", "function"), default="sequence")
    s.add_argument("--level", type=int, default=12)
    s.add_argument("--p", dest="p_grid", default=None, help="blowup: comma-separated p grid")
    s.add_argument("--q", type=parse_real, default=2.0)
    s.add_argument("--delta", type=float, default=0.02)
    s.add_argument("--theta", type=parse_real)
    s.add_argument("--alpha", type=parse_real)
    s.add_argument("--q0", type=parse_real, default=3.0)
    s.add_argument("--q1", type=parse_real, default=math.inf)
    s.add_argument("--t", help="k-profile: comma-separated t values")
    s.add_argument("--grid", type=int, default=DEFAULT_SEARCH.grid_size)
    s.add_argument("--out", help=f"output directory (env {ENV_OUT}, default ./reports)")
    s.set_defaults(func=cmd_sweep)
    return ap


def _normalise_sweep(args) -> None:
    """--p means a grid for blowup and a single exponent otherwise."""
    if args.kind == "blowup":
        if args.p_grid is None:
            args.p_grid = "1.9,1.95,1.99,1.999"
        args.family = args.family or "power"
        args.p = None
    else:
        args.p = parse_real(args.p_grid) if args.p_grid is not None else None
        args.family = args.family or "spike"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        if args.command == "sweep":
            _normalise_sweep(args)
        return args.func(args)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
