"""The 1-motive data model.

A motive here is the data (Lattice; q_1..q_r; p_1..p_n; t_ij) of a map
from Z into the n-th power of an extension of the elliptic curve by an
r-torus: exponential coordinates of the defining points, torsion tests in
the semi-abelian group, and multiplicative ranks of the subgroups the
points generate.

Group semantics: a relation among gpoints holds iff it holds in every
j-component, i.e. sum_i a_i p_i lies in Omega x Q and sum_i a_i t_ij in
2*pi*i*Q; torsion relations count (ranks are ranks modulo torsion).
"""

from dataclasses import dataclass, field
from math import gcd

from mpmath import mp, mpc, pi

from .config import Bounds, DEFAULT_BOUNDS
from .elliptic import Lattice, reduce_point, sigma, serre_f, wp
from .errors import ChartSingularity, ValidationError
from .relations import RelationLattice, RelationQuery, relation_lattice, rank_modulo


@dataclass
class MotiveSpec:
    """Defining data; q and p are elliptic logarithms off the lattice."""

    lattice: Lattice
    q: list
    p: list
    t: list  # n rows of r entries
    bounds: Bounds = DEFAULT_BOUNDS
    mode: str = "numeric"
    declared: dict | None = None

    def __post_init__(self):
        self.q = [mpc(v) for v in self.q]
        self.p = [mpc(v) for v in self.p]
        self.t = [[mpc(v) for v in row] for row in self.t]
        if self.mode not in ("numeric", "declared"):
            raise ValidationError(f"unknown mode {self.mode!r}")
        if self.n < 1 or self.r < 1:
            raise ValidationError("need n >= 1 points and r >= 1 torus factors")
        if len(self.t) != self.n or any(len(row) != self.r for row in self.t):
            raise ValidationError("t must be an n x r matrix")
        for name, vals in (("q", self.q), ("p", self.p)):
            for k, v in enumerate(vals):
                z0, _, _ = reduce_point(v, self.lattice)
                if abs(z0) <= mp.mpf(2) ** (-self.bounds.precision // 2) \
                        * abs(self.lattice.omega1):
                    raise ValidationError(
                        f"{name}[{k}] reduces to a lattice point")

    @property
    def n(self) -> int:
        return len(self.p)

    @property
    def r(self) -> int:
        return len(self.q)

    def two_pi_i(self):
        with mp.workprec(self.bounds.work_prec):
            return 2j * pi + mpc(0)


@dataclass
class GPointCoords:
    """The five projective coordinates of exp_G on one torus factor."""

    coords: tuple

    def __iter__(self):
        return iter(self.coords)


def exp_G_coords(p, t, q, lat: Lattice) -> GPointCoords:
    """sigma(p)^3 * (wp(p), wp'(p), 1, e^t f_q(p), e^t f_q(p) (wp(p) + dp)).

    dp is the slope correction (wp'(p) - wp'(q)) / (wp(p) - wp(q)); when
    wp(p) = wp(q) to tolerance the chart is singular and evaluation is
    refused.
    """
    with mp.workprec(lat.prec + 64):
        p = mpc(p)
        q = mpc(q)
        t = mpc(t)
        wpp, wpp_d = wp(p, lat)
        wpq, wpq_d = wp(q, lat)
        denom = wpp - wpq
        if abs(denom) < mp.mpf(2) ** (-lat.prec // 2) * max(
                mp.mpf(1), abs(wpp), abs(wpq)):
            raise ChartSingularity("wp(p) = wp(q) to tolerance")
        s3 = sigma(p, lat) ** 3
        u = mp.exp(t) * serre_f(q, p, lat)
        return GPointCoords((
            s3 * wpp,
            s3 * wpp_d,
            s3,
            s3 * u,
            s3 * u * (wpp + (wpp_d - wpq_d) / denom),
        ))


def torsion_order_from_lift(lift) -> int:
    """Least m with m*v in the period lattice, from an exact relation
    a*v + b1*w1 + b2*w2 (+ b3*extra) = 0."""
    a = lift[0]
    rest = lift[1:]
    if a < 0:
        a, rest = -a, [-b for b in rest]
    g = a
    for b in rest:
        g = gcd(g, abs(b))
    return a // g


def is_torsion_log(p, lat: Lattice, bounds: Bounds = DEFAULT_BOUNDS) -> int | None:
    """Least a > 0 with a*p in the lattice, or None within bounds."""
    with mp.workprec(bounds.work_prec):
        query = RelationQuery([mpc(p)], [lat.omega1, lat.omega2], bounds)
    lattice = relation_lattice(query)
    if lattice.rank == 0:
        return None
    return torsion_order_from_lift(lattice.certificates[0]["lift"])


def gpoint_is_torsion(p, t, lat: Lattice, bounds: Bounds = DEFAULT_BOUNDS) -> bool:
    """Does some a > 0 give a*p in the lattice and a*t in 2*pi*i*Z jointly?"""
    with mp.workprec(bounds.work_prec):
        twopii = 2j * pi + mpc(0)
        query = RelationQuery(
            [(mpc(p), mpc(t))],
            [(lat.omega1, mpc(0)), (lat.omega2, mpc(0)), (mpc(0), twopii)],
            bounds)
    return relation_lattice(query).rank == 1


def mult_rank_gpoints(entries, lat: Lattice,
                      bounds: Bounds = DEFAULT_BOUNDS):
    """Rank of the multiplicative subgroup generated by gpoints.

    ``entries`` is a list of (i, j, p_i, t_ij); relations decompose
    componentwise per torus factor j, so the total rank is the sum over j
    of |S_j| - rank(L_j).  Returns (rank, {j: RelationLattice}).
    """
    if not entries:
        return 0, {}
    with mp.workprec(bounds.work_prec):
        twopii = 2j * pi + mpc(0)
        groups: dict = {}
        for (i, j, pv, tv) in entries:
            groups.setdefault(j, []).append((mpc(pv), mpc(tv)))
        total = 0
        lattices = {}
        for j, vecs in sorted(groups.items()):
            query = RelationQuery(
                vecs,
                [(lat.omega1, mpc(0)), (lat.omega2, mpc(0)), (mpc(0), twopii)],
                bounds)
            lj = relation_lattice(query)
            lattices[j] = lj
            total += len(vecs) - lj.rank
    return total, lattices


def mult_rank_units(ts, bounds: Bounds = DEFAULT_BOUNDS) -> int:
    """Rank of <e^t : t in ts> in C* modulo roots of unity."""
    if not ts:
        return 0
    with mp.workprec(bounds.work_prec):
        twopii = 2j * pi + mpc(0)
        return rank_modulo(RelationQuery([mpc(t) for t in ts], [twopii], bounds))
