"""Demo: bulk mode speeds and the decaying kernel of each mode.

For the reference material this prints the five squared mode speeds
(two transverse, three longitudinal), then fixes a trial surface speed
and shows each mode's attenuation exponent, kernel vector, polarization
class, and how well the kernel annihilates the propagation matrix.

Run:
  python3 demos/bulk_modes_and_kernels.py
"""

import math
from pathlib import Path

import numpy as np

from rayleighmt import (
    ComplexSpeed,
    assemble_Dp,
    derived_cubic,
    load_material,
    mode_speeds,
    mode_vector,
    polarization_check,
)

MATERIALS = Path(__file__).resolve().parent.parent / "materials"


def main():
    M = load_material(MATERIALS / "reference.json")
    C = derived_cubic(M)
    print(f"quadratic factor: t^2 - {C.a2} t + {C.a0}")
    print(f"cubic factor:     t^3 - {C.b4} t^2 + {C.b2} t - {C.b0}")

    rs = mode_speeds(M)
    print("\nsquared mode speeds, fastest first within each family:")
    for r in rs.roots:
        print(f"  mode {r.index}  t = {r.t:.12f}  ({r.source})")

    v = ComplexSpeed(0.5, 0.0)
    print(f"\nkernels at v = {complex(v)}:")
    for r in rs.roots:
        mb = mode_vector(M, v, r)
        D = assemble_Dp(M, v, mb.p.p)
        res = np.linalg.norm(D @ mb.u) / (np.linalg.norm(D) * np.linalg.norm(mb.u))
        decay = math.exp(-mb.p.p.imag * 10.0)
        print(f"  mode {r.index}: p = {mb.p.p:.6f}  {polarization_check(mb)}")
        print(f"    u = {np.array2string(mb.u, precision=6)}")
        print(f"    relative residual |D u| = {res:.3e}, "
              f"amplitude at depth 10 = {decay:.3e}")


if __name__ == "__main__":
    main()
