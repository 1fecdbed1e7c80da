#!/usr/bin/env python3
"""Run the worked fixtures through the library and print a short table."""

import argparse
from pathlib import Path

from blx.baselocus import ParamSurface, analyze_surface, degree_formula_report
from blx.cli import load
from blx.composition import composition_report, content_power_check
from blx.oracle import fiber_count_plane, projection_fiber_count
from blx.planemaps import PlaneMap, analyze_plane_map
from blx.polycore import format_poly

FIX = Path(__file__).resolve().parent.parent / "fixtures"


def surface(name, **meta):
    return ParamSurface(tuple(load(str(FIX / name), "P")), **meta)


def plane(name):
    return PlaneMap(tuple(load(str(FIX / name), "S")))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    seed = args.seed

    for name, degmap in (("one_point.poly", 1), ("cubic_mult3.poly", 1), ("one_point_variant.poly", None),
                         ("composed_degree5.poly", None)):
        an = analyze_surface(surface(name), seed=seed)
        r = an.report
        line = f"{name:24s} deg {r.degree}  mult {r.mult_total}  primpart {r.primpart_degree}  content {format_poly(r.content)}"
        if degmap:
            df = degree_formula_report(an.normalized, degmap=degmap, report=r)
            line += f"  deg(S) {df.surface_degree}"
        print(line)

    for name in ("cremona.poly", "squaring.poly"):
        S = plane(name)
        r = analyze_plane_map(S, seed=seed).report
        print(f"{name:24s} deg {r.degree}  mult {r.mult_total}  degMap {r.degmap}  fiber oracle {fiber_count_plane(S, seed=seed)}")

    Q0 = surface("quadric.poly", degmap=2, surface_degree=2)
    cre = plane("cremona.poly")
    print(f"quadric projection fiber {projection_fiber_count(Q0.comps, seed=seed)} (= 2 * degMap)")
    for qname, meta in (("quadric.poly", {}), ("one_point.poly", {"surface_degree": 5, "degmap_q": 1}),
                        ("one_point_variant.poly", {"surface_degree": 5, "degmap_q": 1})):
        Q = surface(qname) if qname != "quadric.poly" else Q0
        rep = composition_report(Q, cre, seed=seed, **meta)
        c = rep.composition
        print(f"{qname} o cremona: h {format_poly(c.h)}  deg {c.deg_P}  mult {rep.mult_P}  rhs {rep.rhs}  "
              f"statements {rep.statements}")
    cp = content_power_check(Q0, cre, seed=seed, mult_Q=0)
    print(f"content power law: exponent {cp.exponent}, holds {cp.holds}")


if __name__ == "__main__":
    main()
