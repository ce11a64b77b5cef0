"""Exception types raised across the package."""


class TorusXrayError(ValueError):
    """Base class for all errors raised by torus_xray."""


class InvalidDirectionError(TorusXrayError):
    pass


class DimensionError(TorusXrayError):
    pass


class AliasingError(TorusXrayError):
    """Grid resolution too low for the requested band."""


class IncompleteDataError(TorusXrayError):
    """No stored direction tuple is orthogonal to some frequency."""

    def __init__(self, k):
        self.k = tuple(int(c) for c in k)
        super().__init__(f"no stored direction tuple orthogonal to k={self.k}")


class NotInKernelError(TorusXrayError):
    """Polynomial does not vanish on the hyperplane k.v = 0."""

    def __init__(self, k, residual):
        self.k = tuple(int(c) for c in k)
        self.residual = float(residual)
        super().__init__(
            f"polynomial does not vanish on k.v=0 for k={self.k} "
            f"(residual {self.residual:.3e})"
        )


class NotSolenoidallyExactError(TorusXrayError):
    """Tensor field is not a symmetrized gradient at frequency k."""

    def __init__(self, k, residual):
        self.k = tuple(int(c) for c in k)
        self.residual = float(residual)
        super().__init__(
            f"tensor field is not a symmetrized gradient at k={self.k} "
            f"(residual {self.residual:.3e})"
        )
