"""Complex-multiplication detection and k-linear dependence machinery.

The endomorphism field k of the curve is Q (generic lattice) or the
imaginary quadratic field Q(tau) (CM lattice).  Elements of k are kept as
rational pairs alpha = x + y*tau in the basis {1, tau}; for k = Q the tau
coordinate is forced to zero.

:class:`LogOracle` answers every k-linear question about a fixed list of
elliptic logarithms (torsion, dependence coefficients, basis extraction,
the tor invariant) from a single saturated relation lattice, so repeated
sub-queries are exact integer algebra rather than fresh numerics.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from mpmath import mp, mpc

from . import intmat
from .config import Bounds, DEFAULT_BOUNDS
from .errors import InternalInconsistency
from .relations import RelationQuery, find_relation, raw_relation_lattice


@dataclass(frozen=True)
class EndoField:
    """dim_q = 1 (k = Q) or 2 (CM); with CM, a*tau^2 + b*tau + c = 0."""

    dim_q: int
    disc: int | None = None
    certificate: tuple | None = None

    @property
    def is_cm(self) -> bool:
        return self.dim_q == 2

    def tau_trace(self) -> Fraction:
        a, b, _ = self.certificate
        return Fraction(-b, a)

    def tau_norm(self) -> Fraction:
        a, _, c = self.certificate
        return Fraction(c, a)


@dataclass(frozen=True)
class KElement:
    """alpha = x + y*tau with rational x, y (y = 0 when k = Q)."""

    x: Fraction
    y: Fraction = Fraction(0)

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0


def detect_cm(lat, bounds: Bounds = DEFAULT_BOUNDS) -> EndoField:
    """Minimal integer quadratic satisfied by tau, if one exists in bounds.

    A missing relation is a bounded-search verdict (k = Q, heuristic);
    a found certificate is confirmed at doubled precision.
    """
    with mp.workprec(bounds.work_prec):
        tau = lat.tau
        rel = find_relation(RelationQuery([tau * tau, tau, mpc(1)], [], bounds))
    if rel is None:
        return EndoField(dim_q=1)
    a, b, c = rel
    g = gcd(gcd(abs(a), abs(b)), abs(c))
    a, b, c = a // g, b // g, c // g
    if a < 0:
        a, b, c = -a, -b, -c
    if a == 0:
        raise InternalInconsistency("degree-1 relation for a non-real tau")
    disc = b * b - 4 * a * c
    if disc >= 0:
        raise InternalInconsistency(
            f"certificate {a, b, c} has non-negative discriminant {disc}")
    return EndoField(dim_q=2, disc=disc, certificate=(a, b, c))


def k_trace(alpha: KElement, endo: EndoField) -> Fraction:
    """Tr_{k/Q}(alpha) = 2x + y*Tr(tau)."""
    if endo.dim_q == 1:
        return 2 * alpha.x
    return 2 * alpha.x + alpha.y * endo.tau_trace()


def is_antisymmetric(alpha: KElement, endo: EndoField) -> bool:
    """alpha + conj(alpha) = 0, i.e. trace zero; false for all nonzero
    rationals, so this can only hold on a CM lattice."""
    if alpha.is_zero():
        raise ValueError("antisymmetry test requires alpha != 0")
    return k_trace(alpha, endo) == 0


def k_mul(a: KElement, b: KElement, endo: EndoField) -> KElement:
    if endo.dim_q == 1:
        return KElement(a.x * b.x)
    tr, nm = endo.tau_trace(), endo.tau_norm()
    # tau^2 = tr*tau - nm
    return KElement(a.x * b.x - a.y * b.y * nm,
                    a.x * b.y + a.y * b.x + a.y * b.y * tr)


def k_value(alpha: KElement, lat):
    """Numeric value x + y*tau at the lattice's working precision."""
    with mp.workprec(lat.prec + 64):
        return mpc(alpha.x.numerator) / alpha.x.denominator + \
            mpc(alpha.y.numerator) / alpha.y.denominator * lat.tau


class LogOracle:
    """All k-linear dependence questions about one list of logarithms.

    Columns of the master lattice: the values, then (CM only) tau times
    the values, then omega1, omega2.  ``master`` may be supplied (declared
    mode); otherwise it is detected numerically.
    """

    def __init__(self, values, lat, endo: EndoField,
                 bounds: Bounds = DEFAULT_BOUNDS, master=None):
        self.lat = lat
        self.endo = endo
        self.bounds = bounds
        with mp.workprec(bounds.work_prec):
            self.values = [mpc(v) for v in values]
            self.n = len(self.values)
            cols = list(self.values)
            if endo.is_cm:
                cols += [lat.tau * v for v in self.values]
            cols += [lat.omega1, lat.omega2]
            self.columns = cols
        self.ncols = len(cols)
        self.w1col = self.ncols - 2
        self.w2col = self.ncols - 1
        if master is None:
            master = raw_relation_lattice(cols, bounds)
        self.master = intmat.hnf(master) if master else []

    def vcol(self, i: int) -> int:
        return i

    def taucol(self, i: int) -> int:
        assert self.endo.is_cm
        return self.n + i

    def _block(self, idxs):
        cols = [self.vcol(i) for i in idxs]
        if self.endo.is_cm:
            cols += [self.taucol(i) for i in idxs]
        return cols

    def torsion_order(self, i: int) -> int | None:
        """Least a > 0 with a*values[i] in the lattice, or None."""
        sub = intmat.restrict_support(
            self.master, self.ncols, [self.vcol(i), self.w1col, self.w2col])
        if not sub:
            return None
        if len(sub) > 1:
            raise InternalInconsistency("period columns are not independent")
        row = sub[0]
        a, b1, b2 = row[self.vcol(i)], row[self.w1col], row[self.w2col]
        if a < 0:
            a, b1, b2 = -a, -b1, -b2
        if a == 0:
            raise InternalInconsistency("relation among the periods alone")
        return a // gcd(a, gcd(abs(b1), abs(b2)))

    def class_rank(self, idxs) -> int:
        """dim_k of the span of the classes of values[idxs] mod Omega x Q."""
        idxs = list(idxs)
        if not idxs:
            return 0
        block = self._block(idxs)
        sub = intmat.restrict_support(
            self.master, self.ncols, block + [self.w1col, self.w2col])
        proj = intmat.hnf(intmat.project_columns(sub, block))
        rho = len(intmat.saturate(proj, len(block))) if proj else 0
        if rho % self.endo.dim_q:
            raise InternalInconsistency(
                "k-relation space has fractional k-dimension")
        return len(idxs) - rho // self.endo.dim_q

    def k_coefficient(self, xi: int, yi: int) -> KElement | None:
        """alpha in k with values[xi] = alpha*values[yi] mod Omega x Q.

        Mirrors a focused search among {x, y, tau*y, omega1, omega2}: the
        support excludes tau*x so only the defining relation can appear.
        """
        support = [self.vcol(xi), self.vcol(yi), self.w1col, self.w2col]
        if self.endo.is_cm:
            support.insert(2, self.taucol(yi))
        sub = intmat.restrict_support(self.master, self.ncols, support)
        for row in sub:
            b = row[self.vcol(xi)]
            if b == 0:
                continue
            if abs(b) > self.bounds.denominator_bound:
                return None
            a = row[self.vcol(yi)]
            c = row[self.taucol(yi)] if self.endo.is_cm else 0
            return KElement(Fraction(-a, b), Fraction(-c, b))
        return None

    def basis_greedy(self) -> list:
        """Greedy scan in input order keeping indices whose class is
        k-independent from the kept set; torsion classes are never kept."""
        kept = []
        rank = 0
        for i in range(self.n):
            r = self.class_rank(kept + [i])
            if r > rank:
                kept.append(i)
                rank = r
        return kept

    def tor(self, idxs) -> int:
        """dim_k of (Omega x Q) intersect sum_k values[idxs].

        Requires the values to be k-linearly independent as complex
        numbers (their classes mod Omega x Q may well be dependent;
        that dependence is what tor measures).
        """
        idxs = list(idxs)
        if not idxs:
            return 0
        block = self._block(idxs)
        bare = intmat.restrict_support(self.master, self.ncols, block)
        if bare:
            raise ValueError("tor requires k-independent values")
        sub = intmat.restrict_support(
            self.master, self.ncols, block + [self.w1col, self.w2col])
        rho = len(sub)
        if rho % self.endo.dim_q:
            raise InternalInconsistency(
                "k-relation space has fractional k-dimension")
        tor = rho // self.endo.dim_q
        if tor > 2 // self.endo.dim_q:
            raise InternalInconsistency(f"tor = {tor} out of range")
        return tor

    def period_in_k_span(self, which: int, idxs) -> bool:
        """Is omega1 (which=0) or omega2 (which=1) in sum_k values[idxs]?"""
        wcol = self.w1col if which == 0 else self.w2col
        sub = intmat.restrict_support(
            self.master, self.ncols, self._block(idxs) + [wcol])
        return any(row[wcol] != 0 for row in sub)


def k_coefficient(x, y, endo: EndoField, lat,
                  bounds: Bounds = DEFAULT_BOUNDS) -> KElement | None:
    """alpha with x = alpha*y modulo Omega x Q, if one exists in bounds."""
    return LogOracle([x, y], lat, endo, bounds).k_coefficient(0, 1)


def k_basis_extraction(values, endo: EndoField, lat,
                       bounds: Bounds = DEFAULT_BOUNDS) -> list:
    """Indices of a greedy k-basis of the classes of ``values``."""
    return LogOracle(values, lat, endo, bounds).basis_greedy()


def compute_tor(values, endo: EndoField, lat,
                bounds: Bounds = DEFAULT_BOUNDS) -> int:
    """tor invariant of k-independent classes: see LogOracle.tor."""
    oracle = LogOracle(values, lat, endo, bounds)
    return oracle.tor(range(len(values)))
