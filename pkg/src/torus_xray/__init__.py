"""Radon and X-ray transforms on the flat torus, with exact Fourier inversion.

Submodules
----------
lattice   integer directions, direction tuples, orthogonal tuples
spectral  trigonometric polynomials, grids, Fejer means, Sobolev norms
xray      d-plane transform, inversion, range test, stability norm
tensor    symmetric tensor fields, symmetrized gradient, solenoidal potentials
billiard  periodic broken rays in a box via the reflection fold
formats   JSON/CSV file formats
cli       command-line entry point
"""
from .exceptions import (AliasingError, DimensionError, IncompleteDataError,
                         InvalidDirectionError, NotInKernelError,
                         NotSolenoidallyExactError, TorusXrayError)
from .lattice import (DirectionTuple, enumerate_tuples, is_primitive,
                      linearly_independent, orthogonal_tuple)
from .spectral import (GridFunction, TrigPolynomial, evaluate, fejer_reconstruct,
                       from_grid, make_phantom, sobolev_norm, to_grid)
from .xray import (RadonData, default_tuples, forward_all, forward_quadrature,
                   forward_spectral, invert, stability_norm, validate_range)
from .tensor import (HomogeneousPolynomial, SymmetricTensorField, directions_up_to,
                     divide_by_linear_form, evaluate_polynomial, gradient,
                     kernel_dimension_bruteforce, random_tensor_field,
                     solenoidal_decompose, symmetrize, tensor_xray_forward)
from .billiard import (Box, BoxGrid, billiard_point, broken_ray_forward,
                       broken_ray_invert, broken_ray_samples, denormalize,
                       even_projection, normalize, radon_data_from_samples,
                       restrict_to_box, unfold_scalar, unfold_tensor)

__version__ = "0.1.0"
