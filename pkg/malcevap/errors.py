from typing import Iterable, Tuple


class MalcevError(Exception):
    """Base class of every error raised by `malcevap`."""


class ZeroDivisor(MalcevError, ZeroDivisionError):
    """Inverting an octonion of norm zero."""


class DimensionMismatch(MalcevError, ValueError):
    """A vector or tensor does not match the dimension of its algebra."""


class ParseError(MalcevError, ValueError):
    """An algebra file, coefficient list or artifact cannot be parsed."""


class AntisymmetryViolation(MalcevError):
    """Structure constants violate c[i][j][k] = -c[j][i][k].

    Not a `ValueError`, so pydantic validators let it through unwrapped.

    Args:
        offending: The index triples (i, j, k) at which anti-symmetry fails.
    """

    def __init__(self, offending: Iterable[Tuple[int, int, int]]):
        self.offending = list(offending)
        shown = ", ".join(str(t) for t in self.offending[:5])
        more = "" if len(self.offending) <= 5 else f" (and {len(self.offending) - 5} more)"
        super().__init__(f"Structure constants are not anti-symmetric at {shown}{more}")


class UnsupportedAlgebra(MalcevError, ValueError):
    """The operation is only defined for a specific builtin algebra."""


class ZeroElement(MalcevError, ValueError):
    """The operation needs a nonzero element."""


class NonImaginarySpectrum(MalcevError, ValueError):
    """The spectrum has points off the imaginary axis."""


class NonConjugateSymmetricF(MalcevError, ValueError):
    """A spectral function does not map conjugate points to conjugate values."""


class SpectrumHit(MalcevError, ValueError):
    """A resolvent was requested at (or too close to) an eigenvalue."""


class NotImaginary(MalcevError, ValueError):
    """An octonion with a nonzero real part where a purely imaginary one is required."""


class NotUnit(MalcevError, ValueError):
    """An octonion off the unit sphere where a unit one is required."""


class BranchPoint(MalcevError, ValueError):
    """The octonion logarithm is evaluated at (or too close to) -1."""


class InsufficientSamples(MalcevError, ValueError):
    """A trajectory is too short to certify its orbit closure."""


class UnsupportedOrder(MalcevError, ValueError):
    """A BCH order outside the hard-coded coefficient tables."""


class UnknownConvention(MalcevError, ValueError):
    """A convention label that names none of the documented conventions."""


class NegativeDegree(MalcevError, ValueError):
    """A negative harmonic degree."""
