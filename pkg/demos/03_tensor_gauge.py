"""
The gauge freedom of tensor X-rays
==================================

Symmetrized gradients integrate to zero along every closed line, so the
X-ray transform of a tensor field can only see it up to such gradients.
Conversely, a field with vanishing X-ray data is a symmetrized gradient, and
the potential is found frequency by frequency by dividing by k.v.
"""
import numpy as np

from torus_xray import (directions_up_to, gradient, kernel_dimension_bruteforce,
                        random_tensor_field, solenoidal_decompose, tensor_xray_forward)

h0 = random_tensor_field(n=3, m=1, K=2, seed=4, zero_mean=True)
f = gradient(h0)  # a symmetric 2-tensor field

worst = max(np.abs(tensor_xray_forward(f, v).values).max(initial=0)
            for v in directions_up_to(3, 2))
print(f"largest X-ray coefficient of the gradient over {len(directions_up_to(3, 2))} "
      f"directions: {worst:.1e}")

h = solenoidal_decompose(f)
print(f"|grad h - f| = {gradient(h).max_abs_diff(f):.1e}")
print(f"|h - h0|     = {h.max_abs_diff(h0):.1e}")

# at a single frequency: polynomials vanishing on k-perp are exactly (k.v) times something
for k in [(1, 0, 0), (1, 1, 0), (1, -2, 2)]:
    print("k =", k, "(kernel dim, image dim) =", kernel_dimension_bruteforce(3, 2, k))
