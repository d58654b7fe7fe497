#!/usr/bin/env python3
"""Regenerates the bundled saturated-shape fixtures under data/shapes/.

The "egg" is a 4-arc C1 convex boundary built from outward-normal angles
and radii. Radii of the tip arc and the corner arc are fixed; the radii of
the top and back arcs follow from the closure conditions y^N = (-1, 0).

    tip     r = 0.5   normals  0    .. 0.4
    top     r = r2    normals  0.4  .. 1.2
    corner  r = 0.1   normals  1.2  .. 3.05
    back    r = r4    normals  3.05 .. pi

egg_shifted.json describes the same saturated form with the origin moved
by -0.1 along the axis and rescaled so that the tip stays at (1, 0).
"""

import json
import math
import pathlib

import numpy as np

OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "shapes"

NORMALS = [0.0, 0.4, 1.2, 3.05, math.pi]
TIP_RADIUS = 0.5
CORNER_RADIUS = 0.1


def unit(a):
    return np.array([math.cos(a), math.sin(a)])


def solve_radii():
    psi = NORMALS
    rhs = np.array([-2.0, 0.0])
    rhs -= TIP_RADIUS * (unit(psi[1]) - unit(psi[0]))
    rhs -= CORNER_RADIUS * (unit(psi[3]) - unit(psi[2]))
    a = np.column_stack([unit(psi[2]) - unit(psi[1]), unit(psi[4]) - unit(psi[3])])
    top, back = np.linalg.solve(a, rhs)
    return [TIP_RADIUS, float(top), CORNER_RADIUS, float(back)]


def arcs_from(radii, origin_shift=0.0):
    start = np.array([1.0, 0.0])
    arcs = []
    for i, r in enumerate(radii):
        center = start - r * unit(NORMALS[i])
        end = center + r * unit(NORMALS[i + 1])
        arcs.append((center, r, end))
        start = end
    # pin the closing point exactly on the axis
    c, r, e = arcs[-1]
    arcs[-1] = (np.array([c[0], 0.0]), r, np.array([c[0] - r, 0.0]))
    scale = 1.0 / (1.0 - origin_shift)
    shifted = []
    for c, r, e in arcs:
        shift = np.array([origin_shift, 0.0])
        shifted.append(((c - shift) * scale, r * scale, (e - shift) * scale))
    return shifted


def dump(name, arcs, note):
    doc = {
        "description": note,
        "arcs": [
            {"center": [float(c[0]), float(c[1])], "radius": float(r), "end": [float(e[0]), float(e[1])]}
            for c, r, e in arcs
        ],
    }
    path = OUT / name
    path.write_text(json.dumps(doc, indent=2) + "\n")
    print("wrote", path)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    radii = solve_radii()
    dump("egg.json", arcs_from(radii), "4-arc saturated shape: sharp tip at theta=0, flat back at theta=pi, k_sat_pi=1")
    dump("egg_shifted.json", arcs_from(radii, origin_shift=-0.1),
         "egg.json form with the origin shifted 0.1 towards the back; k_sat_pi = 0.9/1.1")
    dump("circle.json", [(np.array([0.0, 0.0]), 1.0, np.array([-1.0, 0.0]))], "undistorted unit half-disc")
    broken = arcs_from(radii)
    c, r, e = broken[1]
    broken[1] = (c + np.array([0.0, 1e-3]), r, e + np.array([0.0, 1e-3]))
    dump("egg_broken.json", broken, "egg.json with the second arc lifted by 1e-3: not C1")


if __name__ == "__main__":
    main()
