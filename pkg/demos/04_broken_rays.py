"""
Billiards in a box
==================

A billiard ball in [0, 1/2]^2 bouncing off the walls traces the fold of a
straight line on the torus.  Integrals of a box function along periodic
billiard paths are therefore torus line integrals of its even extension,
and the box function can be recovered from them.
"""
import numpy as np

from torus_xray import (DirectionTuple, billiard_point, broken_ray_forward, broken_ray_invert,
                        broken_ray_samples, default_tuples, evaluate, even_projection,
                        forward_spectral, make_phantom, radon_data_from_samples,
                        restrict_to_box)

x0, v = np.array([0.1, 0.35]), (2, 3)
for t in np.linspace(0, 1, 6):
    print(f"t={t:.1f}  position {billiard_point(x0, v, t)}")

K = 3
f = even_projection(make_phantom(2, K, "random-real", seed=1))

bounced = broken_ray_forward(f, x0, v, M=64)
straight = evaluate(forward_spectral(f, DirectionTuple.of([v])), x0)
print(f"billiard integral {bounced:.12f}\ntorus integral    {straight:.12f}")

# sample every billiard through the grid, then invert
N = 8
directions = [A.vectors[0] for A in default_tuples(2, 1, K)]
M = K * max(sum(abs(c) for c in v) for v in directions) + 1  # exact for band K
rows = broken_ray_samples(f, directions, N, M)
g = broken_ray_invert(radon_data_from_samples(rows, directions, N, K), K)
err = np.abs(restrict_to_box(g, N).samples - restrict_to_box(f, N).samples).max()
print(f"{len(rows)} billiards, box reconstruction error {err:.1e}")
