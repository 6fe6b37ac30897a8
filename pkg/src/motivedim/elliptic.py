"""Arbitrary-precision Weierstrass functions on a period lattice.

A :class:`Lattice` is built from two periods omega1, omega2 and carries
its invariants (tau, g2, g3) and quasi-periods (eta1, eta2).  Evaluation
reduces tau to the classical fundamental domain and the argument into the
centered fundamental cell, then uses Jacobi theta series; with the reduced
nome |q| <= exp(-pi*sqrt(3)/2) every series converges in O(sqrt(P)) terms.

All functions honour the precision contract: results computed at
P + GUARD_BITS working bits, relative error <= 2^(-P+g) with g <= 32.
"""

from mpmath import mp, mpc, mpf, jtheta, exp, pi, floor

from .config import GUARD_BITS
from .errors import DegenerateLattice, PoleAtLatticePoint

_FD_EPS = mpf(2) ** -40  # slack on the |tau| = 1 boundary of the fundamental domain
_MAX_REDUCTION_STEPS = 10000


def _eisenstein(qsq, weight, prec):
    """E_2, E_4 or E_6 as a q-expansion in qsq = exp(2 pi i tau)."""
    coef = {2: -24, 4: 240, 6: -504}[weight]
    p = weight - 1
    total = mpf(1)
    qn = qsq
    threshold = mpf(2) ** (-(prec + 10))
    n = 1
    while True:
        term = coef * mpf(n) ** p * qn / (1 - qn)
        total += term
        if abs(term) < threshold:
            break
        qn *= qsq
        n += 1
        if n > prec:
            break
    return total


class Lattice:
    """Immutable period lattice with derived invariants.

    Public fields: omega1, omega2 (normalized so Im(omega2/omega1) > 0),
    tau, g2, g3, eta1, eta2, prec (caller precision in bits), swapped
    (True when the input generators were exchanged during normalization).
    """

    __slots__ = ("omega1", "omega2", "tau", "g2", "g3", "eta1", "eta2",
                 "prec", "swapped",
                 "_rw1", "_rw2", "_rtau", "_rq", "_reta1", "_reta2",
                 "_theta1_prime0")

    def __init__(self, **kw):
        for k, v in kw.items():
            object.__setattr__(self, k, v)

    def __setattr__(self, *a):
        raise AttributeError("Lattice is immutable")

    def __repr__(self):
        return f"Lattice(tau={complex(self.tau):.6g}, prec={self.prec})"


def make_lattice(omega1, omega2, precision: int = 256) -> Lattice:
    """Build the lattice Z*omega1 + Z*omega2 with derived invariants.

    Generators are swapped if needed so Im(omega2/omega1) > 0.  Raises
    DegenerateLattice when the periods are R-linearly dependent to within
    2^(-precision/2).
    """
    with mp.workprec(precision + GUARD_BITS):
        w1 = mpc(omega1)
        w2 = mpc(omega2)
        if w1 == 0 or w2 == 0:
            raise DegenerateLattice("zero period")
        tau = w2 / w1
        if abs(tau.imag) <= mpf(2) ** (-precision // 2) * (1 + abs(tau)):
            raise DegenerateLattice("omega2/omega1 is real to working tolerance")
        swapped = tau.imag < 0
        if swapped:
            w1, w2 = w2, w1
            tau = w2 / w1

        # Reduce tau into the fundamental domain, tracking the SL2(Z) word.
        a, b, c, d = 1, 0, 0, 1  # acts as tau -> (a tau + b)/(c tau + d)
        t = tau
        for _ in range(_MAX_REDUCTION_STEPS):
            n = int(floor(t.real + mpf(1) / 2))
            if n:
                t -= n
                a, b = a - n * c, b - n * d
            if abs(t) < 1 - _FD_EPS:
                t = -1 / t
                a, b, c, d = -c, -d, a, b
            else:
                break
        else:
            raise DegenerateLattice("tau reduction did not converge")
        rw1 = c * w2 + d * w1
        rw2 = a * w2 + b * w1
        rtau = rw2 / rw1

        rq = exp(1j * pi * rtau)
        qsq = rq * rq
        wp_bits = mp.prec
        e2 = _eisenstein(qsq, 2, wp_bits)
        e4 = _eisenstein(qsq, 4, wp_bits)
        e6 = _eisenstein(qsq, 6, wp_bits)
        g2 = (2 * pi / rw1) ** 4 * e4 / 12
        g3 = (2 * pi / rw1) ** 6 * e6 / 216
        if abs(g2 ** 3 - 27 * g3 ** 2) == 0:
            raise DegenerateLattice("vanishing discriminant")
        reta1 = pi ** 2 / (3 * rw1) * e2
        reta2 = (reta1 * rw2 - 2j * pi) / rw1

        # eta is additive over the lattice; undo the basis change.
        # rw1 = d*w1 + c*w2 and rw2 = b*w1 + a*w2, det(ad - bc) = 1.
        eta1 = a * reta1 - c * reta2
        eta2 = -b * reta1 + d * reta2

        return Lattice(
            omega1=w1, omega2=w2, tau=tau, g2=g2, g3=g3,
            eta1=eta1, eta2=eta2, prec=precision, swapped=swapped,
            _rw1=rw1, _rw2=rw2, _rtau=rtau, _rq=rq,
            _reta1=reta1, _reta2=reta2,
            _theta1_prime0=jtheta(1, 0, rq, 1),
        )


def _coords(z, w1, w2):
    """Real coordinates (a, b) with z = a*w1 + b*w2."""
    det = w1.real * w2.imag - w2.real * w1.imag
    a = (z.real * w2.imag - w2.real * z.imag) / det
    b = (w1.real * z.imag - z.real * w1.imag) / det
    return a, b


def _reduce_against(z, w1, w2):
    a, b = _coords(z, w1, w2)
    m = int(floor(a + mpf(1) / 2))
    n = int(floor(b + mpf(1) / 2))
    return z - m * w1 - n * w2, m, n


def reduce_point(z, lat: Lattice):
    """Reduce z into the centered cell {a*w1 + b*w2 : a, b in [-1/2, 1/2)}.

    Returns (z0, m, n) with z = z0 + m*omega1 + n*omega2 for the lattice's
    normalized generators.
    """
    with mp.workprec(lat.prec + GUARD_BITS):
        return _reduce_against(mpc(z), lat.omega1, lat.omega2)


def _reduce_internal(z, lat):
    z0, m, n = _reduce_against(z, lat._rw1, lat._rw2)
    if abs(z0) < mpf(2) ** (-lat.prec // 2) * abs(lat._rw1):
        raise PoleAtLatticePoint("argument within 2^(-P/2) of a lattice point")
    return z0, m, n


def _theta_frac(lat, z0, order):
    """theta1 log-derivative data at v = pi*z0/rw1.

    order 1 -> t1'/t1; order 2 adds (t1''t1 - t1'^2)/t1^2; order 3 adds
    the second derivative of t1'/t1.  Returns the requested tuple.
    """
    v = pi * z0 / lat._rw1
    q = lat._rq
    t1 = jtheta(1, v, q)
    t1p = jtheta(1, v, q, 1)
    out = [t1p / t1]
    if order >= 2:
        t1pp = jtheta(1, v, q, 2)
        out.append((t1pp * t1 - t1p ** 2) / t1 ** 2)
    if order >= 3:
        t1ppp = jtheta(1, v, q, 3)
        out.append((t1ppp * t1 ** 2 - 3 * t1pp * t1p * t1 + 2 * t1p ** 3) / t1 ** 3)
    return out


def wp(z, lat: Lattice):
    """Weierstrass (wp(z), wp'(z)).  Raises PoleAtLatticePoint on Omega."""
    with mp.workprec(lat.prec + GUARD_BITS):
        z0, _, _ = _reduce_internal(mpc(z), lat)
        _, a1, a2 = _theta_frac(lat, z0, 3)
        s = pi / lat._rw1
        p = -lat._reta1 / lat._rw1 - s ** 2 * a1
        pp = -(s ** 3) * a2
        return p, pp


def zeta(z, lat: Lattice):
    """Weierstrass zeta.  Quasi-periodic: zeta(z + w_i) = zeta(z) + eta_i."""
    with mp.workprec(lat.prec + GUARD_BITS):
        z0, m, n = _reduce_internal(mpc(z), lat)
        (a0,) = _theta_frac(lat, z0, 1)
        base = lat._reta1 * z0 / lat._rw1 + (pi / lat._rw1) * a0
        return base + m * lat._reta1 + n * lat._reta2


def sigma(z, lat: Lattice):
    """Weierstrass sigma; entire, vanishing exactly on the lattice."""
    with mp.workprec(lat.prec + GUARD_BITS):
        z = mpc(z)
        z0, m, n = _reduce_against(z, lat._rw1, lat._rw2)
        if abs(z0) <= mpf(2) ** (-lat.prec) * abs(lat._rw1):
            return mpc(0)
        v = pi * z0 / lat._rw1
        base = (lat._rw1 / pi) * exp(lat._reta1 * z0 ** 2 / (2 * lat._rw1)) \
            * jtheta(1, v, lat._rq) / lat._theta1_prime0
        if m == 0 and n == 0:
            return base
        w = m * lat._rw1 + n * lat._rw2
        eta_w = m * lat._reta1 + n * lat._reta2
        sign = -1 if (m + n + m * n) % 2 else 1
        return sign * base * exp(eta_w * (z0 + w / 2))


def quasi_periods(lat: Lattice):
    """(eta1, eta2) for the normalized generators; eta_i = 2*zeta(omega_i/2)."""
    return lat.eta1, lat.eta2


def eta_map(mn, lat: Lattice):
    """eta(m*omega1 + n*omega2) = m*eta1 + n*eta2 for integer (m, n)."""
    m, n = mn
    with mp.workprec(lat.prec + GUARD_BITS):
        return m * lat.eta1 + n * lat.eta2


def serre_f(q, z, lat: Lattice):
    """sigma(z+q) / (sigma(z) sigma(q)) * exp(-zeta(q) z).

    Raises PoleAtLatticePoint when z or q lies on the lattice; z + q on
    the lattice is fine and gives 0.
    """
    with mp.workprec(lat.prec + GUARD_BITS):
        q = mpc(q)
        z = mpc(z)
        sz = sigma(z, lat)
        sq = sigma(q, lat)
        if sz == 0 or sq == 0:
            raise PoleAtLatticePoint("serre_f requires z, q off the lattice")
        return sigma(z + q, lat) / (sz * sq) * exp(-zeta(q, lat) * z)
