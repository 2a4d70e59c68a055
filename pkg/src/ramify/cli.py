"""``ramify`` command line.

Exit status: 0 success, 2 invalid input, 3 precision exhausted, 64 usage error.
Reports carry the effective configuration in their header and contain no
floating-point numbers: every rational is an exact ``[num, den]`` pair.
"""
from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from pathlib import Path

from . import differential as dif
from . import modulecalc as mc
from . import ramanalyzer as ra
from . import valuegroup as vg
from .errors import PrecisionExhausted, RamifyError
from .io import (
    element_json,
    load_defect,
    load_json,
    load_tower,
    parse_element,
    parse_poly,
    parse_range,
    parse_rational,
    q,
    qv,
    tower_to_json,
)
from .errors import ValidationError
from .localfield import FieldTower
from .localfield.tower import MIN_PRECISION

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_PRECISION = 3
EXIT_USAGE = 64

COMMANDS = ("vg", "field", "different", "omega", "dual-basis", "idempotent", "tower-scan", "frobenius", "defect")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


@dataclass
class RunConfig:
    precision: int = 32
    threshold: Fraction = Fraction(1, 4)
    budget: int = 10 ** 6
    output: str = "json"
    tower: str | None = None
    problem: str | None = None
    kprime: str | None = None
    workers: int = 1
    explicit: frozenset = frozenset()  # keys set by a flag or the config file

    def validate(self):
        if self.precision < MIN_PRECISION:
            raise ValidationError(f"precision must be >= {MIN_PRECISION}")
        if self.threshold <= 0:
            raise ValidationError("threshold must be positive")
        if self.budget <= 0:
            raise ValidationError("budget must be positive")
        if self.output not in ("json", "csv", "pretty"):
            raise ValidationError("output must be json, csv or pretty")
        if self.workers < 1:
            raise ValidationError("workers must be >= 1")

    def header(self) -> dict:
        out = {}
        for f in fields(self):
            if f.name == "explicit":
                continue
            v = getattr(self, f.name)
            out[f.name] = q(v) if isinstance(v, Fraction) else v
        return out


_CASTS = {
    "precision": int,
    "threshold": parse_rational,
    "budget": int,
    "output": str,
    "tower": str,
    "problem": str,
    "kprime": str,
    "workers": int,
}


def read_config_file(path) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    try:
        text = Path(path).read_text()
    except FileNotFoundError:
        raise ValidationError(f"no such config file: {path}") from None
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _CASTS:
            raise ValidationError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    return out


def effective_config(args) -> RunConfig:
    cfg = RunConfig()
    layers = []
    if getattr(args, "config", None):
        layers.append(read_config_file(args.config))
    flags = {k: getattr(args, k) for k in _CASTS if getattr(args, k, None) is not None}
    layers.append(flags)
    cfg.explicit = frozenset(k for layer in layers for k in layer)
    for layer in layers:
        for key, value in layer.items():
            try:
                setattr(cfg, key, _CASTS[key](value) if isinstance(value, str) else value)
            except (ValueError, ZeroDivisionError):
                raise ValidationError(f"bad value for {key}: {value!r}") from None
    cfg.validate()
    return cfg


# -- commands ------------------------------------------------------------------------------------


def _need(cfg: RunConfig, key: str) -> str:
    v = getattr(cfg, key)
    if not v:
        raise ValidationError(f"--{key} FILE is required (flag or config file)")
    return v


def _tower(cfg: RunConfig) -> FieldTower:
    # a tower document may carry its own precision; only an explicit setting overrides it
    override = cfg.precision if "precision" in cfg.explicit else None
    T = load_tower(load_json(_need(cfg, "tower")), override)
    cfg.precision = T.precision
    return T


def _steps(T: FieldTower, step):
    if step is None:
        return list(range(1, T.depth + 1))
    if not 1 <= step <= T.depth:
        raise ValidationError(f"step {step} out of range 1..{T.depth}")
    return [step]


def cmd_vg(args, cfg):
    if args.group:
        G = vg.ValueGroup.parse(args.group)
        cut = None
    else:
        doc = load_json(_need(cfg, "problem"))
        G = vg.ValueGroup.from_json(doc)
        cut = vg.Cut.from_json(doc) if "cut" in doc else None
    chain = vg.convex_subgroups(G)
    out = {
        "group": str(G),
        "rank": vg.rank(G),
        "divisibility": G.to_json()["divisibility"],
        "convex_chain": [str(H) for H in chain],
        "chain_length": len(chain),
        "quotients": [vg._tag_name(t) for t in vg.consecutive_quotients(G)],
        "dr_condition": vg.dr_valuegroup_condition(G),
    }
    if cut is not None:
        try:
            b, closed = cut.canonical
            out["cut"] = {"boundary": [q(c) for c in b], "closed": closed}
        except vg.Undecidable as exc:
            raise ValidationError(f"cut cannot be canonicalized: {exc}") from None
    return out, None


def cmd_field(args, cfg):
    T = _tower(cfg)
    out = {
        "tower": tower_to_json(T),
        "degree": T.degree,
        "e": T.e,
        "f": T.f,
        "value_group_generator": q(T.value_group_generator()),
        "steps": [
            {"step": k, "kind": s.kind, "degree": s.degree, "v_theta": qv(T.gen(k).valuation())}
            for k, s in enumerate(T.steps, 1)
        ],
    }
    if args.element:
        x = parse_element(T, args.element)
        out["element"] = {"expr": args.element, "coefficients": element_json(x), "valuation": qv(x.valuation()),
                          "precision": q(x.prec)}
    rows = [[s["step"], s["kind"], s["degree"], *s["v_theta"]] for s in out["steps"]]
    return out, (["step", "kind", "degree", "v_theta_num", "v_theta_den"], rows)


def cmd_different(args, cfg):
    T = _tower(cfg)
    rep = dif.different_tower(T, cross_check=args.cross_check)
    steps = []
    for e in rep.entries:
        steps.append({
            "step": e.step,
            "degree": e.degree,
            "kind": e.kind,
            "v_delta": q(e.v_delta),
            "methods": {k: q(v) for k, v in e.methods.items()},
            "agree": e.agree,
            "precision": e.precision,
        })
    out = {
        "steps": steps,
        "total": q(rep.total),
        "cross_check": rep.cross_check,
        "absolute": qv(rep.absolute),
        "absolute_check": rep.absolute_check,
    }
    rows = [[s["step"], s["degree"], s["kind"], *s["v_delta"], s["agree"]] for s in steps]
    return out, (["step", "degree", "kind", "v_delta_num", "v_delta_den", "agree"], rows)


def cmd_omega(args, cfg):
    T = _tower(cfg)
    rep = dif.omega_tower(T)
    steps = [{
        "step": s.step,
        "v_delta": q(s.v_delta),
        "zero": s.zero,
        "invariants_top": [q(v) for v in s.invariants_top],
        "invariants_base": [q(v) for v in s.invariants_base],
        "consistent": s.consistent,
    } for s in rep.steps]
    out = {"steps": steps, "total": q(rep.total), "additive": rep.additive, "absolute": qv(rep.absolute)}
    rows = [[s["step"], *s["v_delta"], s["zero"], s["consistent"]] for s in steps]
    return out, (["step", "v_delta_num", "v_delta_den", "zero", "consistent"], rows)


def cmd_dual_basis(args, cfg):
    T = _tower(cfg)
    steps = []
    for k in _steps(T, args.step):
        td = dif.trace_data(T, k)
        steps.append({
            "step": k,
            "gram": [[element_json(x) for x in row] for row in td.gram],
            "dual_coefficients": [[element_json(x) for x in row] for row in td.dual_coeffs],
            "disc_valuation": q(td.disc_valuation),
            "clearing_exponent": td.clearing_exponent,
            "clearing_valuation": q(td.clearing_valuation),
            "orthogonal": td.orthogonal,
        })
    rows = [[s["step"], *s["disc_valuation"], s["clearing_exponent"], s["orthogonal"]] for s in steps]
    return {"steps": steps}, (["step", "disc_num", "disc_den", "clearing_exponent", "orthogonal"], rows)


def cmd_idempotent(args, cfg):
    T = _tower(cfg)
    eps = parse_rational(args.eps) if args.eps is not None else None
    steps = []
    for k in _steps(T, args.step):
        r = dif.idempotent(T, k, eps)
        entry = {
            "step": k,
            "etale": r.etale,
            "v_delta": q(r.v_delta),
            "generic_exponent": r.generic_exponent,
            "generators": r.generators,
        }
        if r.etale:
            entry["idempotent"] = [element_json(c) for c in r.idempotent]
            entry["laws"] = r.laws
        else:
            entry["threshold"] = qv(r.threshold)
            entry["scan"] = [{"v_eps": q(c.valuation), "integral": c.integral, "laws": c.laws} for c in r.scan]
        steps.append(entry)
    rows = [[s["step"], s["etale"], *s["v_delta"], *(s.get("threshold") or ["", ""])] for s in steps]
    return {"steps": steps}, (["step", "etale", "v_delta_num", "v_delta_den", "threshold_num", "threshold_den"], rows)


def _family(args, cfg) -> ra.TowerFamily:
    if args.family == "constant" and cfg.tower:
        return ra.TowerFamily.constant(_tower(cfg))
    if args.p is None:
        raise ValidationError("--p is required for this family")
    return ra.TowerFamily(args.family, args.p, cfg.precision)


def _kprime(fam: ra.TowerFamily, cfg) -> ra.KPrimeRecipe | None:
    if not cfg.kprime:
        return None
    doc = load_json(cfg.kprime)
    level = int(doc.get("level", 0))
    F0 = fam.level(level)
    poly = doc.get("poly")
    if isinstance(poly, str):
        coeffs = parse_poly(F0, poly)
    elif isinstance(poly, list):
        from .io import parse_coefficient

        coeffs = [parse_coefficient(F0, c) for c in poly]
    else:
        raise ValidationError('K\' file needs "poly"')
    return ra.KPrimeRecipe(level, tuple(coeffs), doc.get("label", str(poly)))


def cmd_tower_scan(args, cfg):
    fam = _family(args, cfg)
    s = ra.scan(fam, _kprime(fam, cfg), parse_range(args.n), cfg.threshold, workers=cfg.workers)
    entries = [{
        "n": e.n,
        "v_delta": qv(e.v_delta),
        "methods": {k: q(v) for k, v in e.methods.items()},
        "agree": e.agree,
        "error": e.error,
    } for e in s.entries]
    out = {
        "family": s.family,
        "kprime": s.kprime,
        "n_range": s.n_range,
        "entries": entries,
        "sequence": [q(v) for v in s.sequence],
        "monotone": s.monotone,
        "strictly_decreasing": s.strictly_decreasing,
        "eventually_constant": s.eventually_constant,
        "threshold": q(s.threshold),
        "verdict": s.verdict,
        "basis": s.basis,
    }
    rows = []
    for e in s.entries:
        v = q(e.v_delta) if e.v_delta is not None else ["", ""]
        rows.append([e.n, v[0], v[1], s.monotone, s.verdict])
    return out, (["n", "v_delta_num", "v_delta_den", "monotone", "verdict"], rows)


def cmd_frobenius(args, cfg):
    fam = _family(args, cfg)
    n = args.n
    x = parse_element(fam.level(n), args.x)
    mmax = args.mmax if args.mmax is not None else n
    w = ra.frobenius_witness(fam, n, x, mmax, cfg.budget)
    out = {
        "family": fam.describe(),
        "n": n,
        "x": args.x,
        "m_max": mmax,
        "budget": cfg.budget,
        "status": w.status,
        "tried": w.tried,
        "levels_searched": w.levels_searched,
        "witness": None if w.witness is None else {
            "level": w.level,
            "index": w.index,
            "coefficients": element_json(w.witness),
            "text": str(w.witness),
            "verified": w.verified,
        },
    }
    row = [w.status, w.level if w.level is not None else "", w.tried, w.verified]
    return out, (["status", "level", "tried", "verified"], [row])


def cmd_defect(args, cfg):
    prob = load_defect(load_json(_need(cfg, "problem")))
    r = mc.defect_classify(prob["terms"], prob["p"], prob["group"], prob["infimum"], prob["attained"])
    b, closed = r.ideal.canonical
    pb, pclosed = r.power.canonical
    out = {
        "verdict": r.verdict,
        "gap": q(r.gap),
        "omega_zero": r.omega_zero,
        "ideal": {"boundary": q(b[0]), "closed": closed},
        "ideal_power": {"boundary": q(pb[0]), "closed": pclosed},
        "p": prob["p"],
        "group": str(prob["group"]),
    }
    return out, (["verdict", "gap_num", "gap_den", "omega_zero"], [[r.verdict, *q(r.gap), r.omega_zero]])


HANDLERS = {
    "vg": cmd_vg,
    "field": cmd_field,
    "different": cmd_different,
    "omega": cmd_omega,
    "dual-basis": cmd_dual_basis,
    "idempotent": cmd_idempotent,
    "tower-scan": cmd_tower_scan,
    "frobenius": cmd_frobenius,
    "defect": cmd_defect,
}


# -- parser ----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="key=value config file (flags take precedence)")
    common.add_argument("--precision", type=int, help="base digits of precision (default 32, min 8)")
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--json", dest="output", action="store_const", const="json")
    mode.add_argument("--csv", dest="output", action="store_const", const="csv")
    mode.add_argument("--pretty", dest="output", action="store_const", const="pretty")

    parser = _Parser(prog="ramify", description="Ramification invariants of local-field towers.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("vg", parents=[common], help="value-group convex chain and deeply-ramified test")
    p.add_argument("--group", help='e.g. "Z", "Q", "Z[1/3] x Z"')
    p.add_argument("--problem", help="JSON group/cut document")

    p = sub.add_parser("field", parents=[common], help="tower summary and element valuations")
    p.add_argument("--tower")
    p.add_argument("--element", help="expression in th1..thk, p (and t)")

    p = sub.add_parser("different", parents=[common], help="per-step and total different valuations")
    p.add_argument("--tower")
    p.add_argument("--cross-check", action="store_true", help="also run the trace-dual method")

    p = sub.add_parser("omega", parents=[common], help="Kähler differential presentations")
    p.add_argument("--tower")

    p = sub.add_parser("dual-basis", parents=[common], help="trace-form Gram matrix and dual basis")
    p.add_argument("--tower")
    p.add_argument("--step", type=int)

    p = sub.add_parser("idempotent", parents=[common], help="diagonal idempotent or ε-threshold")
    p.add_argument("--tower")
    p.add_argument("--step", type=int)
    p.add_argument("--eps", help="valuation of ε to test, e.g. 3/2")

    helps = {
        "tower-scan": "v(δ(F_n K'/F_n)) along a tower family, with a verdict",
        "frobenius": "search higher levels for a p-th root of x modulo p",
    }
    for name in ("tower-scan", "frobenius"):
        p = sub.add_parser(name, parents=[common], help=helps[name])
        p.add_argument("--family", required=True, choices=ra.FAMILIES)
        p.add_argument("--p", type=int)
        p.add_argument("--tower", help="base tower for the constant family")
        if name == "tower-scan":
            p.add_argument("--kprime", help="JSON recipe for K'")
            p.add_argument("--n", default="1..4", help="scan range, e.g. 1..4")
            p.add_argument("--threshold", help="deeply-ramified threshold (default 1/4)")
            p.add_argument("--workers", type=int)
        else:
            p.add_argument("--n", type=int, default=1)
            p.add_argument("--x", required=True, help="target element expression")
            p.add_argument("--mmax", type=int)
            p.add_argument("--budget", type=int)

    p = sub.add_parser("defect", parents=[common], help="classify a defect problem by its ramification ideal")
    p.add_argument("--problem")
    return parser


# -- output ----------------------------------------------------------------------------------


def _jsonable(x):
    if isinstance(x, Fraction):
        return q(x)
    if isinstance(x, float):
        raise TypeError("floating point value in report")
    raise TypeError(f"not serializable: {type(x).__name__}")


def render(command: str, cfg: RunConfig, result: dict, table) -> str:
    report = {"command": command, "config": cfg.header()}
    report.update(result)
    if cfg.output == "json":
        return json.dumps(report, sort_keys=True, indent=2, default=_jsonable, ensure_ascii=False) + "\n"
    if cfg.output == "csv":
        buf = _io.StringIO()
        buf.write("# " + json.dumps({"command": command, "config": cfg.header()}, sort_keys=True) + "\n")
        w = csv.writer(buf, lineterminator="\n")
        if table is None:
            w.writerow(["key", "value"])
            for k in sorted(result):
                w.writerow([k, json.dumps(result[k], sort_keys=True, default=_jsonable, ensure_ascii=False)])
        else:
            w.writerow(table[0])
            w.writerows([[_cell(c) for c in row] for row in table[1]])
        return buf.getvalue()
    lines = [f"ramify {command}"]
    for k, v in cfg.header().items():
        lines.append(f"  {k}: {_pretty(v)}")
    lines.append("")
    for k in sorted(result):
        lines.append(f"{k}: {_pretty(result[k])}")
    return "\n".join(lines) + "\n"


def _cell(c):
    if isinstance(c, bool):
        return "true" if c else "false"
    return "" if c is None else c


def _pretty(v) -> str:
    return json.dumps(v, sort_keys=True, ensure_ascii=False, default=_jsonable)


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError(parser.format_usage())
    except UsageError as exc:
        stderr.write(str(exc))
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        cfg = effective_config(args)
        result, table = HANDLERS[args.command](args, cfg)
        stdout.write(render(args.command, cfg, result, table))
        return EXIT_OK
    except PrecisionExhausted as exc:
        stderr.write(f"ramify: precision exhausted: {exc}\n")
        return EXIT_PRECISION
    except RamifyError as exc:
        stderr.write(f"ramify: {exc}\n")
        return EXIT_VALIDATION


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
