#!/usr/bin/env python3
"""Exactly solvable incidence systems: pinned spheres and pin-normal planes.

Both constructions make every point meet exactly one object per pin, so
the incidence count is pins times points with no counting error at all.
The surplus over the random baseline then depends only on how many form
values (or dot-product values) the point set actually occupies, which
is where concentrated sets show up.
"""

import random
from fractions import Fraction

from ffrigidity import (dot_product_system, make_space, pin_cap,
                        pinned_sphere_system, quad_norm)


def main():
    q, d = 11, 3
    sp = make_space(q, d)
    rng = random.Random(0)

    spread = [tuple(rng.randrange(q) for _ in range(d)) for _ in range(15)]
    shell = [p for p in
             ((a, b, c) for a in range(q) for b in range(q)
              for c in range(q))
             if quad_norm(p, q) == 1][:15]
    pins = [(0, 0, 0), (1, 1, 1)]

    for tag, pts in (("spread points", spread), ("one quadric shell", shell)):
        sys_ = pinned_sphere_system(pins, pts, sp)
        n_sph = len(sys_.config.spheres)
        print(f"{tag}: {len(pts)} points, {len(pins)} pins, "
              f"{n_sph} spheres")
        print(f"  incidences       {len(pins) * len(pts)}  (exact by "
              "construction)")
        print(f"  distance sets    "
              f"{[len(v) for v in sys_.per_pin.values()]}")
        print(f"  surplus          {sys_.surplus}")
        print(f"  K                {float(sys_.K):.4f}")
        print()

    print("dot-product system on the shell, same pins minus the origin:")
    dot = dot_product_system([(1, 1, 1)], shell, sp)
    print(f"  hyperplanes {len(dot.hyperplanes)}, merged {dot.merged}, "
          f"surplus {dot.surplus}, K {float(dot.K):.4f}")
    print()

    print("pin budget pin_cap(q, d, K) for K = 2:")
    for d_ in (3, 4, 5):
        caps = {q_: pin_cap(q_, d_, 2, c=Fraction(1)) for q_ in (5, 7, 11, 13)}
        print(f"  d = {d_}: {caps}")


if __name__ == "__main__":
    main()
