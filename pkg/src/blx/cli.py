"""Command-line front end.

Input files hold lines ``P = [p1, p2, p3, p4]`` or ``S = [s1, s2, s3]`` in
the polynomial text grammar; ``#`` starts a comment.  Reports go to stdout
as JSON (``--format json``, the default) or flat ``key: value`` text;
diagnostics go to stderr.  Exit codes: 0 success, 1 input error,
2 certification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .baselocus import CertificationError, InconsistentDataError, ParamSurface, analyze_surface, degree_formula_report
from .composition import check_no_base_points_Q, composition_report
from .oracle import OracleError, base_point_multiplicity, fiber_count_plane, projection_fiber_count
from .planemaps import PlaneMap, analyze_plane_map
from .polycore import PolyError, parse_poly
from .transform import ConfigurationError

SCHEMA = "blx/1"


class InputError(ValueError):
    pass


@dataclass
class JobSpec:
    command: str
    inputs: tuple
    seed: int = 0
    trials: int = 25
    path: str | None = None
    validate: bool = False
    format: str = "json"
    coeff_bound: int = 10


def _split_list(body: str) -> list[str]:
    items, depth, cur = [], 0, []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            items.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    items.append("".join(cur))
    return [s.strip() for s in items]


def parse_input(text: str) -> dict:
    """``{"P": [...], "S": [...]}`` from the fixture format."""
    out = {}
    joined = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            joined.append(line)
    # a list may span several lines; statements are separated by their names
    buf = " ".join(joined)
    pos = 0
    while pos < len(buf):
        eq = buf.find("=", pos)
        if eq < 0:
            if buf[pos:].strip():
                raise InputError(f"unexpected text {buf[pos:].strip()!r}")
            break
        name = buf[pos:eq].strip()
        if name not in ("P", "S"):
            raise InputError(f"unknown name {name!r}; expected P or S")
        lb = buf.find("[", eq)
        rb = buf.find("]", lb)
        if lb < 0 or rb < 0 or buf[eq + 1:lb].strip():
            raise InputError(f"malformed list for {name}")
        if name in out:
            raise InputError(f"{name} defined twice")
        out[name] = [parse_poly(s) for s in _split_list(buf[lb + 1:rb])]
        pos = rb + 1
    if not out:
        raise InputError("no P or S found")
    return out


def _read(path: str) -> dict:
    try:
        return parse_input(Path(path).read_text())
    except OSError as exc:
        raise InputError(str(exc)) from exc


def load(path: str, name: str):
    data = _read(path)
    if name not in data:
        raise InputError(f"{path} has no {name} = [...] line")
    return data[name]


def _surface(path: str, degmap=None, surfdeg=None) -> ParamSurface:
    comps = load(path, "P")
    return ParamSurface(tuple(comps), degmap=degmap, surface_degree=surfdeg,
                        meta_source="command line" if degmap or surfdeg else "")


def _plane(path: str) -> PlaneMap:
    return PlaneMap(tuple(load(path, "S")))


def _path(arg, allowed, default):
    if arg is None:
        return default
    p = arg.upper()
    if p not in allowed:
        raise InputError(f"path {arg!r} not valid here; choose from {', '.join(a.lower() for a in allowed)}")
    return p


# --------------------------------------------------------------------------


def cmd_mult(args, job: JobSpec) -> dict:
    P = _surface(args.input, args.degmap, args.surfdeg)
    path = _path(job.path, ("W", "K"), "K")
    an = analyze_surface(P, path=path, seed=job.seed, trials=job.trials, validate=job.validate,
                         bound=job.coeff_bound)
    out = an.to_json()
    if args.degmap is not None or args.surfdeg is not None:
        rep = degree_formula_report(an.normalized, degmap=args.degmap, surface_degree=args.surfdeg,
                                    report=an.report)
        out["degree_formula"] = rep.to_json()
    return out


def cmd_planemap(args, job: JobSpec) -> dict:
    S = _plane(args.input)
    path = _path(job.path, ("V", "J"), "J")
    return analyze_plane_map(S, path=path, seed=job.seed, trials=job.trials, validate=job.validate,
                             bound=job.coeff_bound).to_json()


def cmd_compose(args, job: JobSpec) -> dict:
    Q = _surface(args.q, args.degmap_q, args.surfdeg_q)
    S = _plane(args.s)
    rep = composition_report(Q, S, surface_degree=args.surfdeg_q, degmap_q=args.degmap_q,
                            seed=job.seed, trials=job.trials)
    out = rep.to_json()
    nb = check_no_base_points_Q(rep)
    out["no_base_points_Q"] = {
        "applicable": nb.applicable,
        "gcd_trivial": nb.gcd_trivial,
        "degree_multiplies": nb.degree_multiplies,
        "mult_formula": nb.mult_formula,
    }
    return out


def _point(text: str) -> tuple:
    try:
        pt = tuple(parse_poly(c).constant_value() for c in text.split(","))
    except (PolyError, ValueError) as exc:
        raise InputError(f"bad point {text!r}") from exc
    if len(pt) != 3 or not any(pt):
        raise InputError("a point needs three coordinates, not all zero")
    return pt


def cmd_oracle(args, job: JobSpec) -> dict:
    data = _read(args.input)
    if args.kind == "hs":
        comps = data.get("P") or data.get("S")
        if args.point is None:
            raise InputError("oracle hs needs --point a,b,c")
        A = _point(args.point)
        res = base_point_multiplicity(comps, A, seeds=tuple(range(job.seed, job.seed + 3)))
        return {
            "point": [str(c) for c in A],
            "multiplicity": res.value,
            "agreement": res.agreement,
            "sources": {"multiplicity": "intersection number of two specialized generic combinations"},
        }
    if "S" in data:
        n = fiber_count_plane(PlaneMap(tuple(data["S"])), seed=job.seed)
        return {"fiber": n, "sources": {"fiber": "distinct preimages of random targets"}}
    n = projection_fiber_count(data["P"], seed=job.seed)
    return {
        "projection_fiber": n,
        "sources": {"projection_fiber": "fiber of a random projection to P^2; equals deg(surface) * degMap"},
    }


# --------------------------------------------------------------------------


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}{k}.")
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        yield prefix.rstrip("."), obj


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    lines = []
    for key, val in _flatten(report):
        if isinstance(val, list):
            val = ", ".join(str(v) for v in val)
        elif isinstance(val, bool):
            val = str(val).lower()
        lines.append(f"{key}: {val}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=25)
    common.add_argument("--path", choices=["w", "k", "v", "j", "W", "K", "V", "J"])
    common.add_argument("--validate", action="store_true")
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--coeff-bound", type=int, default=10)

    ap = argparse.ArgumentParser(prog="blx", description="Base-point locus multiplicities of rational maps.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mult", parents=[common], help="surface parametrization P")
    p.add_argument("input")
    p.add_argument("--degmap", type=int)
    p.add_argument("--surfdeg", type=int)
    p.set_defaults(func=cmd_mult)

    p = sub.add_parser("planemap", parents=[common], help="plane rational map S")
    p.add_argument("input")
    p.set_defaults(func=cmd_planemap)

    p = sub.add_parser("compose", parents=[common], help="Q o S")
    p.add_argument("q")
    p.add_argument("s")
    p.add_argument("--degmap-q", type=int)
    p.add_argument("--surfdeg-q", type=int)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("oracle", parents=[common], help="brute-force checks")
    p.add_argument("kind", choices=["hs", "fiber"])
    p.add_argument("input")
    p.add_argument("--point")
    p.set_defaults(func=cmd_oracle)
    return ap


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    job = JobSpec(args.command, (), args.seed, args.trials, args.path, args.validate, args.format,
                  args.coeff_bound)
    try:
        report = args.func(args, job)
    except (CertificationError, ConfigurationError, OracleError) as exc:
        print(f"blx: certification failed: {exc}", file=stderr)
        return 2
    except (InputError, PolyError, InconsistentDataError, ValueError, OSError) as exc:
        print(f"blx: input error: {exc}", file=stderr)
        return 1
    report = {**report, "schema": SCHEMA, "command": args.command, "seed": str(job.seed)}
    stdout.write(render(report, job.format))
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
