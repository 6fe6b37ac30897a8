"""Search bounds and working-precision policy.

Every numeric quantity in the pipeline is evaluated with GUARD_BITS of
headroom beyond the caller-visible precision P.  Detection of integer
relations then happens against the threshold 2^(-P/2), confirmation
against 2^(-P), so a true relation (residual ~ 2^(-P-GUARD)) clears the
confirmation bar with ~GUARD bits to spare while a spurious candidate
fails it by hundreds of orders of magnitude.
"""

from dataclasses import dataclass

# Headroom used for all internal arithmetic.  The kernel consequently
# guarantees relative accuracy 2^(-P+g) with g <= 32: values are computed
# at P + 64 bits, leaving at least 32 bits of slack for accumulated
# rounding across the longest evaluation chains.
GUARD_BITS = 64

MIN_PRECISION = 64


@dataclass(frozen=True)
class Bounds:
    """User-facing search bounds for relation detection."""

    precision: int = 256        # bits, caller-visible P
    height_bound: int = 1000    # max |a_i| of a reported relation
    denominator_bound: int = 60 # max denominator on period/2-pi-i coefficients

    def __post_init__(self):
        if self.precision < MIN_PRECISION:
            raise ValueError(f"precision must be >= {MIN_PRECISION} bits")
        if self.height_bound < 1 or self.denominator_bound < 1:
            raise ValueError("height_bound and denominator_bound must be >= 1")

    @property
    def work_prec(self) -> int:
        return self.precision + GUARD_BITS

    def doubled(self) -> "Bounds":
        return Bounds(2 * self.precision, self.height_bound, self.denominator_bound)


DEFAULT_BOUNDS = Bounds()
