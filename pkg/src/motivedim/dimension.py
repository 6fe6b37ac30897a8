"""Dimension formulas for the motivic Galois group of a motive.

The headline identity assembled here:

    dim Gal = 4/dim_k + 2(n'+r') + n'r' + rank(<R>_LB / <R>_LI)
            + rank<e^t>_NoLB
            = 4/dim_k + 2*dim B + u + s

with u the multiplicative rank over LB and s the unit rank over NoLB.
The two variants are computed from independent ingredients (basis
extraction vs. relation ranks) and must agree exactly; disagreement
raises InternalInconsistency rather than passing silently.
"""

from dataclasses import dataclass, field

from mpmath import exp, mp

from .classify import Partition, build_partition
from .config import Bounds
from .elliptic import wp, zeta
from .errors import InternalInconsistency
from .motive import MotiveSpec
from .oracle import MotiveOracle
from .motive import exp_G_coords  # noqa: F401  (re-export convenience)
from .elliptic import serre_f


@dataclass
class DimensionReport:
    dim_k: int
    n_prime: int
    r_prime: int
    dim_B: int
    dim_Zprime: int
    dim_Zquot: int
    dim_Zquot_qspan: int        # Lemma variant dim_Q<t_ij>, reported alongside
    zquot_discrepancy: bool     # the two quotient conventions differ
    dim_UR: int
    dim_gal: int
    rank_LB: int                # u
    rank_LI: int
    rank_units_NoLB: int        # s
    formula_terms: dict
    mode: str
    confidence: str             # "exact" | "heuristic"


@dataclass
class PeriodReport:
    """The instantiated period list and predicted transcendence bound."""

    bound: int
    generators_gpoints: list    # (i, j), m = 1..u
    generators_units: list      # (i, j), l = 1..s
    periods: list               # (label, mpc) in the Corollary's order
    tor_p: int | None           # over all p's; None if not k-independent
    tor_q: int | None           # over all q's; None if not k-independent
    two_pi_in_t_span: bool      # 2 pi i inside the Q-span of the NoLB t's
    omega_in_point_span: bool   # Omega inside sum_k of all points


def dim_abelian_part(partition: Partition) -> int:
    """dim B = n' + r', the k-dimension of the span of the point classes."""
    return partition.n_prime + partition.r_prime


def dim_torus_zprime(spec: MotiveSpec, partition: Partition,
                     oracle: MotiveOracle | None = None) -> int:
    """dim Z'(1) = multiplicative rank of <R_ij> over the LB pairs."""
    if oracle is None:
        oracle = MotiveOracle(spec)
    u = oracle.gpoint_rank(partition.LB)
    rank_li = oracle.gpoint_rank(partition.LI)
    nr = partition.n_prime * partition.r_prime
    if u < nr or u < rank_li:
        raise InternalInconsistency(
            f"rank over LB ({u}) below LI rectangle ({nr}, rank {rank_li})")
    return u


def dim_torus_quotient(spec: MotiveSpec, partition: Partition,
                       oracle: MotiveOracle | None = None):
    """dim Z(1)/Z'(1) over NoLB, in both conventions.

    Returns (s, s_qspan, discrepancy): s is the rank of <e^{t_ij}>
    (relations modulo 2*pi*i*Q, the Theorem's version, used downstream),
    s_qspan the plain dim_Q<t_ij> (the Lemma's version); they differ
    exactly when 2*pi*i lies in the Q-span of the NoLB t's.
    """
    if oracle is None:
        oracle = MotiveOracle(spec)
    s = oracle.unit_rank(partition.NoLB)
    s_qspan = oracle.unit_rank_qspan(partition.NoLB)
    return s, s_qspan, s != s_qspan


def dim_motivic_galois(spec: MotiveSpec,
                       oracle: MotiveOracle | None = None) -> DimensionReport:
    """Full dimension computation with the formula-variant cross-check."""
    if oracle is None:
        oracle = MotiveOracle(spec)
    partition = build_partition(spec, oracle=oracle)
    dim_k = oracle.endo.dim_q
    n_pr, r_pr = partition.n_prime, partition.r_prime
    dim_b = dim_abelian_part(partition)
    u = dim_torus_zprime(spec, partition, oracle)
    rank_li = oracle.gpoint_rank(partition.LI)
    s, s_qspan, disc = dim_torus_quotient(spec, partition, oracle)

    terms = {
        "reductive": 4 // dim_k,
        "abelian_twice": 2 * (n_pr + r_pr),
        "li_rectangle": n_pr * r_pr,
        "lb_quotient_rank": u - rank_li,
        "nolb_unit_rank": s,
    }
    theorem_total = sum(terms.values())
    variant_total = 4 // dim_k + 2 * dim_b + u + s
    if theorem_total != variant_total:
        raise InternalInconsistency(
            f"formula variants disagree: theorem {theorem_total} vs "
            f"4/dim_k + 2 dim B + u + s = {variant_total} "
            f"(n'r' = {n_pr * r_pr}, rank_LI = {rank_li})")
    dim_ur = 2 * dim_b + u + s
    report = DimensionReport(
        dim_k=dim_k, n_prime=n_pr, r_prime=r_pr, dim_B=dim_b,
        dim_Zprime=u, dim_Zquot=s, dim_Zquot_qspan=s_qspan,
        zquot_discrepancy=disc, dim_UR=dim_ur,
        dim_gal=4 // dim_k + dim_ur,
        rank_LB=u, rank_LI=rank_li, rank_units_NoLB=s,
        formula_terms=terms, mode=spec.mode,
        confidence="exact" if spec.mode == "declared" else "heuristic")
    report_partition_audit(partition, report)
    return report


def report_partition_audit(partition: Partition, report: DimensionReport):
    """Inequality audit against the per-pair local dimensions."""
    sum_b = sum(pc.local_dims[0] for pc in partition.pairs)
    sum_zp = sum(pc.local_dims[1] for pc in partition.pairs)
    sum_zq = sum(pc.local_dims[2] for pc in partition.pairs)
    checks = [
        ("dim_B", report.dim_B, sum_b),
        ("dim_Zprime", report.dim_Zprime, sum_zp),
        ("dim_Zquot", report.dim_Zquot, sum_zq),
    ]
    for name, total, bound in checks:
        if total > bound:
            raise InternalInconsistency(
                f"{name} = {total} exceeds the per-pair sum {bound}")


def per_pair_table(spec: MotiveSpec, oracle: MotiveOracle | None = None):
    """Per-pair classification table plus the inequality audit record."""
    if oracle is None:
        oracle = MotiveOracle(spec)
    partition = build_partition(spec, oracle=oracle)
    report = dim_motivic_galois(spec, oracle=oracle)
    audit = {
        "dim_B": (report.dim_B,
                  sum(pc.local_dims[0] for pc in partition.pairs)),
        "dim_Zprime": (report.dim_Zprime,
                       sum(pc.local_dims[1] for pc in partition.pairs)),
        "dim_Zquot": (report.dim_Zquot,
                      sum(pc.local_dims[2] for pc in partition.pairs)),
    }
    return partition.pairs, audit


def conjecture_report(spec: MotiveSpec, report: DimensionReport,
                      partition: Partition,
                      oracle: MotiveOracle | None = None) -> PeriodReport:
    """Instantiate the predicted period list and transcendence bound.

    Generator pairs are chosen deterministically (LI rectangle row-major,
    then remaining LB lexicographically, keeping rank-increasing pairs;
    same greedy scheme for the NoLB unit generators).
    """
    if oracle is None:
        oracle = MotiveOracle(spec)
    gens = oracle.select_gpoint_generators(sorted(partition.LI),
                                           sorted(partition.LB))
    unit_gens = oracle.select_unit_generators(sorted(partition.NoLB))
    if len(gens) != report.rank_LB or len(unit_gens) != report.rank_units_NoLB:
        raise InternalInconsistency(
            "greedy generator counts disagree with computed ranks")
    bound = 4 // report.dim_k + 2 * (report.n_prime + report.r_prime) \
        + report.rank_LB + report.rank_units_NoLB
    if bound != report.dim_gal:
        raise InternalInconsistency(
            f"conjecture bound {bound} != dim_gal {report.dim_gal}")

    lat = spec.lattice
    periods = []
    with mp.workprec(spec.bounds.work_prec):
        periods.append(("g2", lat.g2))
        periods.append(("g3", lat.g3))
        for j in partition.basis_q:
            periods.append((f"wp(q_{j + 1})", wp(spec.q[j], lat)[0]))
        for i in partition.basis_p:
            periods.append((f"wp(p_{i + 1})", wp(spec.p[i], lat)[0]))
        for (i, j) in gens:
            val = exp(spec.t[i][j]) * serre_f(spec.q[j], spec.p[i], lat)
            periods.append((f"e^t*f_q(p)[{i + 1},{j + 1}]", val))
        for (i, j) in unit_gens:
            periods.append((f"e^t[{i + 1},{j + 1}]", exp(spec.t[i][j])))
        periods.append(("omega_1", lat.omega1))
        periods.append(("eta_1", lat.eta1))
        periods.append(("omega_2", lat.omega2))
        periods.append(("eta_2", lat.eta2))
        for i in partition.basis_p:
            periods.append((f"p_{i + 1}", spec.p[i]))
            periods.append((f"zeta(p_{i + 1})", zeta(spec.p[i], lat)))
        for j in partition.basis_q:
            periods.append((f"q_{j + 1}", spec.q[j]))
            periods.append((f"zeta(q_{j + 1})", zeta(spec.q[j], lat)))
        for (i, j) in gens:
            periods.append((f"t[{i + 1},{j + 1}]", spec.t[i][j]))
        for (i, j) in unit_gens:
            periods.append((f"t[{i + 1},{j + 1}] (unit)", spec.t[i][j]))

    tor_p, tor_q = oracle.tor_values()
    return PeriodReport(
        bound=bound,
        generators_gpoints=gens,
        generators_units=unit_gens,
        periods=periods,
        tor_p=tor_p,
        tor_q=tor_q,
        two_pi_in_t_span=oracle.two_pi_in_unit_span(sorted(partition.NoLB)),
        omega_in_point_span=oracle.omega_in_point_span(),
    )
