#!/usr/bin/env python3
"""Compare interpolation schemes and vehicle speeds on one mission.

Plans the same synthetic-gyre mission under every combination of a few
horizontal interpolation methods and vehicle speeds, then prints a
table of travel times so the effect of each knob is visible side by
side.  The flow field is time-perturbed, so scheme choices shift the
sampled currents and therefore the route timing.

    python3 scripts/scheme_sweep.py
"""

import argparse
import dataclasses
import sys
import tempfile

import numpy as np

from gliderplan.flowfield import synth_field, InterpScheme, save_flow_grid
from gliderplan.kinematics import VehicleSpec
from gliderplan.mission import format_duration, parse_mission, run_mission


def build_case(tmp_dir, amplitude):
    grid = synth_field(
        "gyre",
        np.linspace(0.0, 100_000.0, 26),
        np.linspace(0.0, 50_000.0, 13),
        (0.0, 120.0),
        np.linspace(0.0, 43_200.0, 9),
        params={"amplitude": amplitude, "epsilon": 0.25, "period": 43_200.0})
    flow_path = f"{tmp_dir}/gyre.json"
    save_flow_grid(grid, flow_path)
    mission_path = f"{tmp_dir}/mission.json"
    with open(mission_path, "w", encoding="utf-8") as fh:
        fh.write(
            '{"flow": "gyre.json",'
            ' "start": {"x": 6000, "y": 6000},'
            ' "goal": {"x": 94000, "y": 44000},'
            ' "grid_spacing": 4000, "neighbor_set": 16,'
            ' "h": 0.5, "n_sub": 2,'
            ' "profile_family": {"z_min": 0, "z_climb_to_max": 10,'
            ' "z_max": 110, "z_min_range": 40, "n_dive_to_levels": 2}}\n')
    return parse_mission(mission_path), grid


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--amplitude", type=float, default=0.05)
    parser.add_argument("--speeds", default="0.25,0.3,0.35",
                        help="comma-separated vehicle speeds, m/s")
    parser.add_argument("--xy-methods", default="nearest,bilinear,bicubic")
    parser.add_argument("--t-method", default="linear",
                        help="time-axis method used in every case")
    args = parser.parse_args(argv)
    speeds = [float(s) for s in args.speeds.split(",")]
    methods = [m.strip() for m in args.xy_methods.split(",")]

    with tempfile.TemporaryDirectory() as tmp_dir:
        spec, grid = build_case(tmp_dir, args.amplitude)
        print(f"{'xy_method':>10}  {'speed':>6}  {'travel_time':>12}  "
              f"{'travel_s':>12}  {'length_km':>10}  {'wp':>4}  "
              f"{'comp_s':>7}")
        for method in methods:
            for speed in speeds:
                case = dataclasses.replace(
                    spec,
                    vehicle=VehicleSpec(speed),
                    scheme=InterpScheme(xy_method=method,
                                        z_method="linear",
                                        t_method=args.t_method))
                result = run_mission(case, grid=grid)
                final = result.final_path
                if final is None:
                    print(f"{method:>10}  {speed:>6.2f}  "
                          f"{'INFEASIBLE':>12}")
                    continue
                elapsed = final.arrival_times[-1] - case.start_time
                print(f"{method:>10}  {speed:>6.2f}  "
                      f"{format_duration(elapsed):>12}  {elapsed:>12.1f}  "
                      f"{final.total_length / 1000.0:>10.2f}  "
                      f"{len(final.waypoints):>4}  "
                      f"{result.comp_time:>7.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
