"""Exception types shared across the package."""

from __future__ import annotations


class CrossfamError(Exception):
    """Base class for all library errors."""


class DegenerateInputError(CrossfamError):
    """A predicate received points that violate its general-position precondition."""


class GeneralPositionError(CrossfamError):
    """A point set failed general-position validation at construction."""

    def __init__(self, witness: tuple[int, ...]):
        self.witness = tuple(witness)
        kind = "duplicate pair" if len(self.witness) == 2 else "collinear triple"
        super().__init__(f"general position violated: {kind} {self.witness}")


class NotSeparatedError(CrossfamError):
    """Two point sets were required to have disjoint convex hulls but do not."""


class HypothesisViolatedError(CrossfamError):
    """Interval-chain extraction was attempted on an order that is too tangled.

    Carries the offending quantities so callers can report or adapt.
    """

    def __init__(self, size: int, n: int, k: int, iota: int):
        self.size = size
        self.n = n
        self.k = k
        self.iota = iota
        slack = size - n * k
        super().__init__(
            f"interval extraction needs |P| > nk and 16k*iota <= (|P|-nk)^2; "
            f"got |P|={size}, n={n}, k={k}, iota={iota}, slack={slack}"
        )


class NotTotalOrderError(CrossfamError):
    """A matching step required a total order but found incomparable pairs."""


class NoEligiblePairsError(CrossfamError):
    """A split produced no block pair that is both dense enough and untangled enough."""


class ZoneVerificationError(CrossfamError):
    """Zone-line construction exhausted its resampling attempts.

    ``witness_line`` and ``witness_count`` describe the worst audited line seen.
    """

    def __init__(self, witness_line, witness_count: int, attempts: int):
        self.witness_line = witness_line
        self.witness_count = witness_count
        self.attempts = attempts
        super().__init__(
            f"zone property failed after {attempts} attempts; "
            f"worst line {witness_line} holds {witness_count} points in its zone"
        )


class EmptyGraphError(CrossfamError):
    """The input graph has no edges."""


class TooLargeError(CrossfamError):
    """An exact brute-force routine was asked to exceed its node cap."""


class RangeTooSmallError(CrossfamError):
    """The requested coordinate range cannot host a general-position set."""


class ParseError(CrossfamError):
    """A flat file failed to parse; carries the offending 1-based line number."""

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")
