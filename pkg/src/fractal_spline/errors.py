"""Exception hierarchy.

Every error carries an ``exit_code`` so the command line front end can map
domain failures to distinct process exit statuses.  Code 2 is left to
argparse usage errors.
"""


class FractalSplineError(ValueError):
    exit_code = 1


class ParseError(FractalSplineError):
    exit_code = 3


class NonIncreasingKnots(FractalSplineError):
    exit_code = 4


class TooFewPoints(FractalSplineError):
    exit_code = 5


class LengthMismatch(FractalSplineError):
    exit_code = 6


class IndexOutOfRange(FractalSplineError):
    exit_code = 7


class PointOutsideDomain(FractalSplineError):
    exit_code = 8


class PointOutsideSubinterval(FractalSplineError):
    exit_code = 9


class MissingDerivatives(FractalSplineError):
    exit_code = 10


class NonPositiveShapeParams(FractalSplineError):
    exit_code = 11


class ScalingOutOfRange(FractalSplineError):
    exit_code = 12


class DepthTooLarge(FractalSplineError):
    exit_code = 13


class NonPositiveTolerance(FractalSplineError):
    exit_code = 14


class CoincidentArguments(FractalSplineError):
    exit_code = 15


class NegativeDerivativeBound(FractalSplineError):
    exit_code = 16


class UnknownGenerator(FractalSplineError):
    exit_code = 17


class BoundViolatedAtKnot(FractalSplineError):
    exit_code = 18


class WrongBoundKind(FractalSplineError):
    exit_code = 19


class AlphaSupOutOfRange(FractalSplineError):
    exit_code = 20


class NonPositiveBC(FractalSplineError):
    exit_code = 21


class Infeasible(FractalSplineError):
    exit_code = 22


class NonPositiveAlpha(FractalSplineError):
    exit_code = 23


class NonPositiveBump(FractalSplineError):
    exit_code = 24


class EmptyCurve(FractalSplineError):
    exit_code = 25


class InvalidArgument(FractalSplineError):
    exit_code = 26


EXIT_CODES = {
    cls.__name__: cls.exit_code
    for cls in FractalSplineError.__subclasses__()
}
