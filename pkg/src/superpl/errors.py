"""Exception types raised by the kernel."""


class SuperPLError(Exception):
    """Base class for all kernel errors."""


class MultiTermInverse(SuperPLError, ArithmeticError):
    """Inversion of a scalar with two or more radicands."""


class DivisionByZero(SuperPLError, ZeroDivisionError):
    pass


class InvalidShape(SuperPLError, ValueError):
    pass


class EqualDimensions(InvalidShape):
    """The block shape has m == n, where H_0 is undefined."""


class ParityMismatch(SuperPLError, ValueError):
    """A declared parity tag disagrees with the entry support."""


class InhomogeneousOperand(SuperPLError, ValueError):
    pass


class NotInDouble(SuperPLError, ValueError):
    """A pair (A, B) with nonzero supertrace was given where d is required."""


class DualityValidationFailed(SuperPLError):
    def __init__(self, i: int, j: int, value=None):
        self.i, self.j, self.value = i, j, value
        super().__init__(f"pairing ({i}, {j}) = {value}, expected {int(i == j)}")


class TruncationMismatch(SuperPLError, ValueError):
    pass


class RankMismatch(SuperPLError, ValueError):
    pass


class NotInKernel(SuperPLError, ValueError):
    """omega() was given an element with nonzero counit."""


class ConfigError(SuperPLError, ValueError):
    pass
