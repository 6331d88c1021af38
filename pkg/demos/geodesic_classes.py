"""Orbit classes of geodesics through the throat.

A geodesic launched at height v with azimuthal fraction sin(theta) of its
speed has Clairaut parameter lambda = cosh(v/a) sin(theta).  This walks a
few launches through the three classes, checks the closed-form orbit against
direct integration, and reports the turning height of trapped orbits.

Run ``python demos/geodesic_classes.py [--plot out.png]``.
"""

import argparse
import math

import numpy as np

from catenoid_vortex import CatenoidGeometry
from catenoid_vortex.geodesics import classify, integrate_geodesic, orbit_u0, orbit_u_of_v, state_on_orbit


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--a", type=float, default=1.0)
    parser.add_argument("--plot", help="save a figure of the orbits to this file")
    args = parser.parse_args(argv)
    geom = CatenoidGeometry(args.a)

    curves = []
    for lam in (0.0, 0.6, 1.0, 1.3):
        v0 = -2.0 * geom.a if lam <= 1.0 else 2.0 * geom.a
        state = state_on_orbit(geom, lam, v0, direction=1 if lam <= 1.0 else -1)
        spec = classify(geom, state)
        record = integrate_geodesic(geom, state, 6.0, sample_interval=0.02)
        u, v = record.states[:, 0], record.states[:, 1]
        line = f"lambda={lam:<4} {spec.regime.value:<13}"
        if spec.v_turn is not None:
            line += f" turns at v={spec.v_turn:+.6f}, lowest sample v={v.min():+.6f}"
        if spec.regime.value == "subcritical":
            u_closed = orbit_u_of_v(spec, geom, v, orbit_u0(spec, geom, state))
            line += f" closed form vs ODE max|du|={np.max(np.abs(u_closed - u)):.2e}"
        print(line + f"  energy drift={record.max_drift('E'):.1e}")
        curves.append((f"lambda={lam}", u, v))

    if args.plot:
        from _plotting import save_uv_plot

        save_uv_plot(args.plot, curves, f"geodesics, a={geom.a:g}")
        print(f"wrote {args.plot}")


if __name__ == "__main__":
    main()
