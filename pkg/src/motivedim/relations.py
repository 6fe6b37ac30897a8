"""Certified integer-relation detection among tuples of complex vectors.

Detection embeds the query into the integer lattice
``[ I | C*Re(x_i/s) | C*Im(x_i/s) ]`` (one Re/Im column pair per complex
coordinate, C = 2^floor(0.8 P), s the largest input magnitude) and runs
exact LLL.  Candidate rows are filtered by the height bound and accepted
only after their true residual, recomputed at precision 2P, falls below
2^(-P) * s.  A "none" verdict is therefore a bounded-search statement,
never a proof of independence; a "found" verdict carries a residual
certificate.
"""

from dataclasses import dataclass, field

import numpy as np
from mpmath import mp, mpc, mpf

from . import intmat
from .config import Bounds, DEFAULT_BOUNDS
from .errors import BudgetExceeded, PrecisionTooLow

BRUTE_BUDGET = 10 ** 8


def _as_tuples(values):
    out = []
    for v in values:
        if isinstance(v, (tuple, list)):
            out.append(tuple(mpc(x) for x in v))
        else:
            out.append((mpc(v),))
    return out


@dataclass
class RelationQuery:
    """Vectors to relate, moduli whose Q-span is quotiented out, bounds."""

    vectors: list
    moduli: list = field(default_factory=list)
    bounds: Bounds = DEFAULT_BOUNDS

    def __post_init__(self):
        self.vectors = _as_tuples(self.vectors)
        self.moduli = _as_tuples(self.moduli)
        dims = {len(v) for v in self.vectors} | {len(m) for m in self.moduli}
        if len(dims) > 1:
            raise ValueError("all vectors and moduli must share one dimension")
        self.dim = dims.pop() if dims else 1


@dataclass
class RelationLattice:
    """Saturated HNF relation basis over the non-modulus coordinates.

    certificates[i] describes basis row i: the minimal integer c with
    c*row liftable to an exact raw relation, the lifted raw coefficient
    vector over vectors+moduli, and the lift's residual exponent (log2)
    at confirmation precision.
    """

    basis: list
    certificates: list
    saturated: bool
    nvectors: int
    nmoduli: int

    @property
    def rank(self) -> int:
        return len(self.basis)


def _residual(coeffs, values, dim):
    parts = []
    for c in range(dim):
        acc = mpc(0)
        for a, x in zip(coeffs, values):
            if a:
                acc += a * x[c]
        parts.append(abs(acc))
    return max(parts) if parts else mpf(0)


def _detect_raw(values, dim, bounds: Bounds):
    """All confirmed integer relations among ``values`` within the height
    bound, as raw coefficient rows, plus residual certificates."""
    k = len(values)
    if k == 0:
        return [], []
    p = bounds.precision
    with mp.workprec(bounds.work_prec):
        scale = max([mpf(1)] + [abs(x[c]) for x in values for c in range(dim)])
        c_scale = mpf(2) ** int(0.8 * p)
        rows = []
        for i, x in enumerate(values):
            row = [1 if j == i else 0 for j in range(k)]
            for c in range(dim):
                w = x[c] / scale
                row.append(int(mp.nint(c_scale * w.real)))
                row.append(int(mp.nint(c_scale * w.imag)))
            rows.append(row)
        reduced = intmat.lll_reduce(rows)
        detect_tol = mpf(2) ** (-(p // 2)) * scale
        confirm_tol = mpf(2) ** (-p) * scale
        accepted, certs = [], []
        for row in reduced:
            coeffs = row[:k]
            height = max(abs(a) for a in coeffs)
            if height == 0 or height > bounds.height_bound:
                continue
            if _residual(coeffs, values, dim) >= detect_tol:
                continue
            with mp.workprec(2 * p):
                res2 = _residual(coeffs, values, dim)
            if res2 >= confirm_tol:
                raise PrecisionTooLow(
                    "candidate relation passed detection but failed "
                    f"confirmation (residual 2^{mp.log(res2 / scale, 2) if res2 else '-inf'})")
            accepted.append(list(coeffs))
            certs.append(_res_exponent(res2, scale))
        return accepted, certs


def _res_exponent(res, scale):
    if res == 0:
        return None  # exact zero
    return int(mp.floor(mp.log(res / scale, 2)))


def _canonical_sign(vec):
    for a in vec:
        if a > 0:
            return list(vec)
        if a < 0:
            return [-x for x in vec]
    return list(vec)


def find_relation(query: RelationQuery):
    """One confirmed relation over vectors+moduli, or None.

    The returned coefficient vector is sign-normalized (first nonzero
    entry positive) and has height at most the query's height bound.
    """
    values = query.vectors + query.moduli
    accepted, _ = _detect_raw(values, query.dim, query.bounds)
    if not accepted:
        return None
    best = min(accepted, key=lambda r: (max(abs(a) for a in r), r))
    return _canonical_sign(best)


def relation_lattice(query: RelationQuery) -> RelationLattice:
    """Saturated relation lattice on the vectors modulo the Q-span of the
    moduli, with per-row lift certificates."""
    n = len(query.vectors)
    m = len(query.moduli)
    values = query.vectors + query.moduli
    accepted, _ = _detect_raw(values, query.dim, query.bounds)
    raw = intmat.saturate(accepted, n + m) if accepted else []
    return lattice_from_raw(raw, query)


def lattice_from_raw(raw, query: RelationQuery) -> RelationLattice:
    """Project a raw (vectors+moduli) relation lattice onto the vector
    coordinates, saturate, enforce the denominator bound, certify rows."""
    n = len(query.vectors)
    m = len(query.moduli)
    values = query.vectors + query.moduli
    if not raw:
        return RelationLattice([], [], True, n, m)
    proj_rows = intmat.project_columns(raw, range(n))
    proj_lat = intmat.hnf(proj_rows)
    sat = intmat.saturate(proj_lat, n) if proj_lat else []
    kept, certs = [], []
    rejected = False
    for row in sat:
        den = intmat.min_denominator(row, proj_lat)
        if den is None or den > query.bounds.denominator_bound:
            rejected = True
            continue
        target = [den * x for x in row]
        combo = intmat.solve_integral(proj_rows, target)
        lift = [sum(ci * raw[i][j] for i, ci in enumerate(combo))
                for j in range(n + m)] if combo is not None else None
        p = query.bounds.precision
        with mp.workprec(2 * p):
            scale = max([mpf(1)] + [abs(x[c]) for x in values
                                    for c in range(query.dim)])
            res = _residual(lift, values, query.dim) if lift else mpf(0)
            if res >= mpf(2) ** (-p) * scale:
                raise PrecisionTooLow("lifted relation failed confirmation")
            certs.append({"denominator": den, "lift": lift,
                          "residual_log2": _res_exponent(res, scale)})
        kept.append(row)
    basis = intmat.hnf(kept)
    saturated = not rejected
    return RelationLattice(basis, certs, saturated, n, m)


def rank_modulo(query: RelationQuery) -> int:
    """dim of the span of the vectors' classes modulo the moduli's Q-span."""
    return len(query.vectors) - relation_lattice(query).rank


def raw_relation_lattice(values, bounds: Bounds):
    """Saturated HNF basis of all confirmed integer relations among
    ``values`` (tuples of mpc or scalars), over all coordinates."""
    vals = _as_tuples(values)
    dim = len(vals[0]) if vals else 1
    accepted, _ = _detect_raw(vals, dim, bounds)
    return intmat.saturate(accepted, len(vals)) if accepted else []


def bruteforce_relations(vectors, moduli, bound: int, tol=None,
                         precision: int = 256):
    """Exhaustive relation search with |a_i| <= bound over vectors+moduli.

    Enumerates in machine precision with a safety margin, then confirms
    survivors in mpmath against ``tol`` (default 2^(-precision/2) * scale).
    Returns all sign-canonical coefficient vectors found, in lexicographic
    order; multiples inside the box are reported as distinct vectors.
    """
    vals = _as_tuples(vectors) + _as_tuples(moduli)
    k = len(vals)
    if k == 0:
        return []
    dim = len(vals[0])
    width = 2 * bound + 1
    total = width ** k
    if total > BRUTE_BUDGET:
        raise BudgetExceeded(f"{total} candidates exceeds {BRUTE_BUDGET}")
    with mp.workprec(precision + 64):
        scale = max([mpf(1)] + [abs(x[c]) for x in vals for c in range(dim)])
        if tol is None:
            tol = mpf(2) ** (-(precision // 2)) * scale
        vmat = np.array([[complex(x[c]) for c in range(dim)] for x in vals])
        pre_tol = max(float(tol), k * bound * float(scale) * 1e-12)
        found = []
        chunk = 1 << 18
        for start in range(0, total, chunk):
            idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
            coeffs = np.empty((len(idx), k), dtype=np.int64)
            rem = idx
            for j in range(k - 1, -1, -1):
                coeffs[:, j] = rem % width - bound
                rem = rem // width
            resid = np.abs(coeffs.astype(np.complex128) @ vmat).max(axis=1)
            nonzero = np.any(coeffs != 0, axis=1)
            for row in coeffs[(resid < pre_tol) & nonzero]:
                cand = [int(a) for a in row]
                if _residual(cand, vals, dim) < tol:
                    found.append(cand)
        canon = {tuple(_canonical_sign(c)) for c in found}
        return sorted(list(c) for c in canon)
