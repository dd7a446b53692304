from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Numeric thresholds used wherever a value is not exact.

    ``residual`` is scaled by the vertex count n and ``zero`` by the largest
    magnitude in the object under test (Krein tensor, coefficient vector).
    """

    eigen: float = 1e-9
    residual: float = 1e-8
    zero: float = 1e-8


DEFAULT_TOL = Tolerances()
