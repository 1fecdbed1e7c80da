#!/usr/bin/env python3
"""Compare the resultant pipeline with the oracles on random corpora."""

import argparse
import time

from blx.baselocus import analyze_surface
from blx.corpus import random_plane_map, random_surface
from blx.oracle import base_point_multiplicity, fiber_count_plane
from blx.planemaps import analyze_plane_map


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--surfaces", type=int, default=30)
    ap.add_argument("--plane-maps", type=int, default=30)
    ap.add_argument("--start", type=int, default=0)
    args = ap.parse_args()

    bad = 0
    for s in range(args.start, args.start + args.surfaces):
        t0 = time.perf_counter()
        inst = random_surface(s)
        rep = analyze_surface(inst.P, seed=s).report
        oracle = sum(base_point_multiplicity(inst.P.comps, A).value for A in inst.base_points)
        ok = oracle == rep.mult_total
        bad += not ok
        print(f"surface {s:4d}  deg {rep.degree}  mult {rep.mult_total}  oracle {oracle}  "
              f"{'ok' if ok else 'MISMATCH'}  {time.perf_counter() - t0:.2f}s")
    for s in range(args.start, args.start + args.plane_maps):
        t0 = time.perf_counter()
        inst = random_plane_map(s)
        rep = analyze_plane_map(inst.S, seed=s).report
        fiber = fiber_count_plane(inst.S, seed=s)
        ok = fiber == rep.degmap
        bad += not ok
        print(f"plane   {s:4d}  {inst.kind:14s} deg {rep.degree}  mult {rep.mult_total}  degMap {rep.degmap}  "
              f"fiber {fiber}  {'ok' if ok else 'MISMATCH'}  {time.perf_counter() - t0:.2f}s")
    print(f"{bad} mismatches")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
