"""Command-line front end: convert, eval, bounds, experiment, exponents."""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import bounds as B
from . import experiments as E
from .exponents import convergence_exponent, log_lp_sum
from .hamiltonian import HamburgerHamiltonian, HamiltonianError
from .jacobi import JacobiParameters, hamiltonian_to_jacobi, jacobi_to_hamiltonian
from .monodromy import log_abs_w22_grid

ALIASES = {"α": "alpha", "β": "beta", "ω": "omega", "ψ": "psi", "ν": "nu", "γ": "gamma",
           "δ": "delta"}


class CliError(Exception):
    pass


def _num(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x)) if math.isfinite(x) else ("nan" if math.isnan(x) else ("inf" if x > 0 else "-inf"))


def _value(text: str):
    try:
        v = float(text)
    except ValueError:
        return text
    return int(v) if v.is_integer() and "." not in text and "e" not in text.lower() else v


def parse_params(items) -> dict:
    out = {}
    for item in items or []:
        for tok in item.split(","):
            if not tok:
                continue
            if "=" not in tok:
                raise CliError(f"parameter {tok!r} is not of the form key=value")
            k, v = tok.split("=", 1)
            out[ALIASES.get(k.strip(), k.strip())] = _value(v.strip())
    return out


def parse_methods(text: str) -> list[tuple[str, dict]]:
    """'lower-count:s=2,upper-k89:α=2,β=1' -> [(name, params), ...].

    A comma-separated token without ':' that looks like key=value belongs to
    the previous method.
    """
    methods: list[tuple[str, dict]] = []
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        if ":" in tok:
            name, rest = tok.split(":", 1)
            methods.append((name.strip(), parse_params([rest])))
        elif "=" in tok:
            if not methods:
                raise CliError(f"parameter {tok!r} precedes any method")
            methods[-1][1].update(parse_params([tok]))
        else:
            methods.append((tok, {}))
    if not methods:
        raise CliError("no methods given")
    return methods


def _load_json(path) -> dict:
    try:
        text = sys.stdin.read() if str(path) == "-" else Path(path).read_text()
        return json.loads(text)
    except FileNotFoundError:
        raise CliError(f"input file {path} not found") from None
    except json.JSONDecodeError as exc:
        raise CliError(f"malformed JSON in {path}: {exc}") from None


def _r_grid(args) -> np.ndarray:
    if not (args.r_lo > 0 and args.r_hi > args.r_lo):
        raise CliError("r-range must be positive and increasing")
    return B.geometric_grid(args.r_lo, args.r_hi, args.per_decade)


def _family(args) -> E.Family:
    if args.preset and args.input:
        raise CliError("give either --input or --preset, not both")
    if args.preset:
        params = parse_params(args.param)
        if args.n_max:
            params["n"] = args.n_max
        return E.generate(E.preset(args.preset, **params))
    if not args.input:
        raise CliError("--input or --preset is required")
    doc = _load_json(args.input)
    if not isinstance(doc, dict):
        raise CliError("input JSON must be an object")
    if "lengths" in doc:
        H = HamburgerHamiltonian.from_dict(doc)
        params = {"lengths": H.lengths, "angles": H.angles}
        if H.steps_exact:
            params["steps"] = H.steps
        return E.Family(E.FamilySpec("explicit", params, max(H.n, 3)), H, B.Tails())
    if "a" in doc:
        J = JacobiParameters.from_dict(doc)
        H = jacobi_to_hamiltonian(J)
        return E.Family(E.FamilySpec("explicit", {"a": J.diag, "b": J.offdiag}, max(H.n, 3)),
                        H, B.Tails(), J)
    raise CliError("input JSON needs either lengths/angles or a/b")


def _write(args, text: str) -> None:
    if args.out and args.out != "-":
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_num(x) if isinstance(x, (float, int, np.floating, np.integer)) else x for x in row])
    return buf.getvalue()


def _json(obj) -> str:
    def default(o):
        if isinstance(o, np.ndarray):
            return o.tolist()
        if isinstance(o, (np.floating, np.integer)):
            return o.item()
        if isinstance(o, tuple):
            return list(o)
        raise TypeError(type(o).__name__)
    return json.dumps(obj, indent=2, default=default, allow_nan=True) + "\n"


# ---------------------------------------------------------------- subcommands

def cmd_convert(args) -> int:
    if not args.input:
        raise CliError("--input is required")
    doc = _load_json(args.input)
    if not isinstance(doc, dict):
        raise CliError("input JSON must be an object")
    J = JacobiParameters.from_dict(doc)
    H = jacobi_to_hamiltonian(J)
    err = math.nan
    if H.n >= 3:
        J2 = hamiltonian_to_jacobi(H)
        scale_a = np.maximum(np.abs(J.diag), np.abs(J.offdiag))
        err = float(max(np.max(np.abs(J2.diag - J.diag) / scale_a),
                        np.max(np.abs(J2.offdiag / J.offdiag - 1))))
    print(f"round-trip max relative error: {err:.3e}", file=sys.stderr)
    _write(args, json.dumps(H.to_dict()) + "\n")
    return 0


def cmd_eval(args) -> int:
    fam = _family(args)
    r = _r_grid(args)
    if fam.spec.kind == "explicit":
        values = log_abs_w22_grid(fam.hamiltonian, r)
        n_used = np.full(r.size, fam.hamiltonian.n)
        flags = [""] * r.size
    else:
        res = E.evaluate_w22(fam, r)
        values, n_used = res.values, res.n_used
        flags = [x if x == "truncation-limited" else "" for x in res.reason]
        bad = sum(1 for f in flags if f)
        if bad:
            print(f"warning: truncation rule not met at {bad} of {r.size} radii", file=sys.stderr)
    if args.format == "json":
        _write(args, _json({"r": r, "logw22": values, "N_used": n_used, "flags": flags}))
    else:
        _write(args, _csv(["r", "logw22", "N_used", "flags"], zip(r, values, n_used, flags)))
    return 0


def _curve(H, name: str, p: dict, r, tails, seed: int) -> B.BoundCurve:
    def get(key, default=None, required=True):
        if key in p:
            return float(p[key])
        if default is None and required:
            raise CliError(f"{name} needs parameter {key}")
        return default

    if name == "lower-count":
        return B.lower_count_curve(H, int(get("s", 2)), r)
    if name == "lower-k4":
        return B.lower_k4_curve(H, int(get("s", 2)), r)
    if name == "upper-k89":
        return B.upper_k89_curve(H, get("alpha"), get("beta"), r)
    if name == "upper-k66":
        return B.upper_k66_curve(H, r, tails)
    if name == "upper-k79":
        return B.upper_k79_curve(H, get("alpha"), get("omega"), get("psi", 0.0), r)
    if name in ("upper-k49", "upper-k49-literal"):
        variant = "literal" if name.endswith("literal") else str(p.get("variant", "crossing"))
        return B.upper_k49_curve(H, get("alpha"), get("beta"), get("psi", required=False), r,
                                 tails, variant)
    if name == "upper-holder":
        return B.upper_holder_curve(H, get("alpha"), r, get("d", required=False), seed)
    if name == "upper-k26":
        # f = g = x_n with the caller's exponents and constant
        x = H.nodes
        return B.upper_k26_curve(H, x, x, get("nu"), get("gamma", 0.5), get("delta", 0.5),
                                 get("K", 1.0), r, seed=seed)
    raise CliError(f"unknown method {name!r}")


def cmd_bounds(args) -> int:
    if not args.methods:
        raise CliError("--methods is required")
    methods = parse_methods(args.methods)
    fam = _family(args)
    r = _r_grid(args)
    curves = [_curve(fam.hamiltonian, n, p, r, fam.tails, args.seed) for n, p in methods]
    labels = [n + (":" + ";".join(f"{k}={v}" for k, v in p.items()) if p else "") for n, p in methods]
    if args.format == "json":
        _write(args, _json({"r": r, "curves": [
            {"label": lab, "method": c.method, "values": c.values, "meta": c.meta,
             "flags": c.flags, "sample_flags": c.sample_flags} for lab, c in zip(labels, curves)]}))
        return 0
    rows = []
    for i, ri in enumerate(r):
        fl = []
        for lab, c in zip(labels, curves):
            f = ";".join(x for x in (c.sample_flags[i], *c.flags) if x)
            if f:
                fl.append(f"{lab}={f}")
        rows.append([ri, *[c.values[i] for c in curves], "|".join(fl)])
    _write(args, _csv(["r", *labels, "flags"], rows))
    return 0


def cmd_experiment(args) -> int:
    if not args.preset:
        raise CliError("--preset is required")
    fam = _family(args)
    rep = E.sandwich_report(fam, args.r_lo, args.r_hi, args.per_decade)
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    stem = args.preset
    (out / f"{stem}-report.json").write_text(_json(rep.to_dict()))
    rows = [(ri, v, "actual", "") for ri, v in zip(rep.fit.r, rep.fit.log_w22)]
    for c in rep.curves:
        label = c.method + "".join(f":{k}={v}" for k, v in c.meta.items()
                                   if k in ("s", "alpha", "beta", "omega"))
        rows += [(ri, v, label, f) for ri, v, _, f in c.rows()]
    (out / f"{stem}-curves.csv").write_text(_csv(["r", "value", "method", "flags"], rows))
    print(f"fitted slope {rep.fit.slope:.4f}; lower {rep.best_lower:.4f}; upper {rep.best_upper:.4f}; "
          f"{'pass' if rep.passed else 'FAIL'}", file=sys.stderr)
    return 0


def _read_sequence(path) -> np.ndarray:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    text = text.strip()
    try:
        if text.startswith("[") or text.startswith("{"):
            doc = json.loads(text)
            if isinstance(doc, dict):
                doc = doc.get("values", doc.get("b"))
            return np.asarray(doc, float)
        return np.asarray([float(x) for x in text.replace(",", " ").split()], float)
    except (ValueError, TypeError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read a numeric sequence from {path}: {exc}") from None


def cmd_exponents(args) -> int:
    if not args.input:
        raise CliError("--input is required")
    seq = _read_sequence(args.input)
    methods = parse_methods(args.methods or "counting-slope")
    rows = []
    for name, p in methods:
        if name == "lp-sum":
            rows.append((name, math.exp(log_lp_sum(seq, float(p.get("p", 1.0)))), "", ""))
            continue
        est = convergence_exponent(seq, name, p.get("power"))
        rows.append((name, est.value, f"{est.window[0]}-{est.window[1]}", est.residual))
    if args.format == "json":
        _write(args, _json([dict(zip(("method", "value", "window", "residual"), r)) for r in rows]))
    else:
        _write(args, _csv(["method", "value", "window", "residual"], rows))
    return 0


COMMANDS = {"convert": cmd_convert, "eval": cmd_eval, "bounds": cmd_bounds,
            "experiment": cmd_experiment, "exponents": cmd_exponents}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nevanlinna", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", help="JSON input ({a,b} or {lengths,angles}); '-' for stdin")
        p.add_argument("--preset", help=f"preset family: {', '.join(E.PRESETS)}")
        p.add_argument("--param", action="append", help="preset parameter key=value (repeatable)")
        p.add_argument("--n-max", type=int, help="truncation for presets")
        p.add_argument("--r-lo", type=float, default=1e4)
        p.add_argument("--r-hi", type=float, default=1e8)
        p.add_argument("--per-decade", type=int, default=20)
        p.add_argument("--methods", help="comma-separated method[:key=value,...] list")
        p.add_argument("--out", help="output file (directory for experiment); stdout if omitted")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--threads", type=int, help="threads for r-grid evaluation")
        p.add_argument("--seed", type=int, default=0, help="seed for sampled hypothesis checks")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.threads:
            import numba
            numba.set_num_threads(max(1, min(args.threads, numba.config.NUMBA_NUM_THREADS)))
        return COMMANDS[args.command](args)
    except (CliError, ValueError, OverflowError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
