"""Master relation lattices for a motive and the queries they answer.

Three saturated integer lattices determine every dependence decision in
the pipeline:

  * log master      columns [p_1..p_n, q_1..q_r] (+ tau-multiples when CM)
                    + [omega1, omega2]
  * gpoint master_j columns [(p_i, t_ij)]_{i=1..n} + [(omega1,0), (omega2,0),
                    (0, 2 pi i)]           (2-dimensional vectors, one per j)
  * unit master     columns [t_11 .. t_nr row-major] + [2 pi i]

In numeric mode they are detected once by lattice reduction; in declared
mode they are taken from the input after numeric verification of every
row.  Sub-queries (torsion of one point, rank of a subset, membership of
2 pi i in a span) are then restrictions and projections of these masters,
so repeated questions stay exactly consistent with each other.
"""

from mpmath import mp, mpc, mpf, pi

from . import intmat
from .config import Bounds
from .endo import EndoField, LogOracle, detect_cm
from .errors import InternalInconsistency, ValidationError
from .motive import MotiveSpec, torsion_order_from_lift
from .relations import raw_relation_lattice


def _verify_declared_rows(rows, values, dim, bounds: Bounds, what: str):
    """Every declared relation must hold numerically; reject otherwise."""
    ncols = len(values)
    p = bounds.precision
    with mp.workprec(2 * p):
        scale = max([mpf(1)] + [abs(x[c]) for x in values for c in range(dim)])
        tol = mpf(2) ** (-p) * scale
        for k, row in enumerate(rows):
            if len(row) != ncols:
                raise ValidationError(
                    f"{what}: row {k} has {len(row)} entries, expected {ncols}")
            parts = []
            for c in range(dim):
                acc = mpc(0)
                for a, x in zip(row, values):
                    if a:
                        acc += a * x[c]
                parts.append(abs(acc))
            res = max(parts)
            if res >= tol:
                exponent = mp.log(res / scale, 2)
                raise ValidationError(
                    f"{what}: declared relation {row} fails verification",
                    certificate={"matrix": what, "row": k,
                                 "coefficients": [int(a) for a in row],
                                 "residual_log2": float(exponent),
                                 "threshold_log2": -p})
    return intmat.saturate([[int(a) for a in row] for row in rows], ncols) \
        if rows else []


class MotiveOracle:
    """All relation masters of one motive plus the derived queries."""

    def __init__(self, spec: MotiveSpec, endo: EndoField | None = None):
        self.spec = spec
        self.lat = spec.lattice
        self.bounds = spec.bounds
        declared = spec.declared if spec.mode == "declared" else None
        if declared is None and spec.mode == "declared":
            declared = {}

        self.endo = endo if endo is not None else self._resolve_endo(declared)

        n, r = spec.n, spec.r
        with mp.workprec(self.bounds.work_prec):
            twopii = 2j * pi + mpc(0)
            self.twopii = twopii
            logs = list(spec.p) + list(spec.q)
            gpoint_cols = []
            for j in range(r):
                cols = [(spec.p[i], spec.t[i][j]) for i in range(n)]
                cols += [(self.lat.omega1, mpc(0)), (self.lat.omega2, mpc(0)),
                         (mpc(0), twopii)]
                gpoint_cols.append(cols)
            unit_cols = [(spec.t[i][j],) for i in range(n) for j in range(r)]
            unit_cols.append((twopii,))

        if declared is not None:
            log_master = self._declared_log_master(declared, logs)
            gdecl = declared.get("gpoint_relations") or [[] for _ in range(r)]
            if len(gdecl) != r:
                raise ValidationError(
                    f"gpoint_relations must have one block per torus factor "
                    f"({r}), got {len(gdecl)}")
            self.gpoint_raw = [
                _verify_declared_rows(gdecl[j], gpoint_cols[j], 2,
                                      self.bounds, f"gpoint_relations[{j}]")
                for j in range(r)]
            self.unit_raw = _verify_declared_rows(
                declared.get("unit_relations") or [], unit_cols, 1,
                self.bounds, "unit_relations")
        else:
            log_master = None
            self.gpoint_raw = [raw_relation_lattice(cols, self.bounds)
                               for cols in gpoint_cols]
            self.unit_raw = raw_relation_lattice(unit_cols, self.bounds)

        self.logs = LogOracle(logs, self.lat, self.endo, self.bounds,
                              master=log_master)
        self._gpoint_ncols = n + 3
        self._unit_ncols = n * r + 1

    # -- construction helpers -------------------------------------------

    def _resolve_endo(self, declared):
        if declared is None:
            return detect_cm(self.lat, self.bounds)
        cert = declared.get("cm_certificate")
        if cert is None:
            return EndoField(dim_q=1)
        a, b, c = (int(x) for x in cert)
        with mp.workprec(2 * self.bounds.precision):
            tau = self.lat.tau
            res = abs(a * tau * tau + b * tau + c)
            scale = max(mpf(1), abs(tau) ** 2)
            if res >= mpf(2) ** (-self.bounds.precision) * scale:
                raise ValidationError(
                    "declared cm_certificate fails verification",
                    certificate={"matrix": "cm_certificate",
                                 "coefficients": [a, b, c],
                                 "residual_log2": float(mp.log(res / scale, 2)),
                                 "threshold_log2": -self.bounds.precision})
        disc = b * b - 4 * a * c
        if a == 0 or disc >= 0:
            raise ValidationError(
                f"declared cm_certificate {cert} is not an imaginary "
                f"quadratic relation")
        return EndoField(dim_q=2, disc=disc, certificate=(a, b, c))

    def _declared_log_master(self, declared, logs):
        with mp.workprec(self.bounds.work_prec):
            cols = [(mpc(v),) for v in logs]
            if self.endo.is_cm:
                cols += [(self.lat.tau * mpc(v),) for v in logs]
            cols += [(self.lat.omega1,), (self.lat.omega2,)]
        return _verify_declared_rows(declared.get("log_relations") or [],
                                     cols, 1, self.bounds, "log_relations")

    # -- log-side queries ------------------------------------------------

    def torsion_p(self, i: int) -> int | None:
        return self.logs.torsion_order(i)

    def torsion_q(self, j: int) -> int | None:
        return self.logs.torsion_order(self.spec.n + j)

    def k_coefficient_pair(self, i: int, j: int):
        """(alpha, direction): q_j = alpha p_i ("q_of_p") or p_i = alpha q_j
        ("p_of_q"), whichever relation exists; (None, None) if neither."""
        qi = self.spec.n + j
        alpha = self.logs.k_coefficient(qi, i)
        if alpha is not None:
            return alpha, "q_of_p"
        alpha = self.logs.k_coefficient(i, qi)
        if alpha is not None:
            return alpha, "p_of_q"
        return None, None

    def basis_indices(self):
        """Greedy k-basis of the point classes, p's scanned before q's."""
        kept = self.logs.basis_greedy()
        n = self.spec.n
        return [i for i in kept if i < n], [i - n for i in kept if i >= n]

    def tor_values(self):
        """tor over the full p-list and the full q-list; None when the
        respective values are not k-independent as numbers (the
        hypothesis under which tor is defined)."""
        out = []
        for idxs in (range(self.spec.n),
                     range(self.spec.n, self.spec.n + self.spec.r)):
            try:
                out.append(self.logs.tor(idxs))
            except ValueError:
                out.append(None)
        return tuple(out)

    def omega_in_point_span(self) -> bool:
        """Is the whole period lattice inside sum_i k p_i + sum_j k q_j?"""
        idxs = range(self.spec.n + self.spec.r)
        return (self.logs.period_in_k_span(0, idxs)
                and self.logs.period_in_k_span(1, idxs))

    # -- gpoint queries ----------------------------------------------------

    def _gpoint_sub(self, j: int, i_list, project=True):
        cols = list(i_list)
        moduli_cols = [self.spec.n, self.spec.n + 1, self.spec.n + 2]
        sub = intmat.restrict_support(self.gpoint_raw[j], self._gpoint_ncols,
                                      cols + moduli_cols)
        if not project:
            return sub
        proj = intmat.hnf(intmat.project_columns(sub, cols))
        return intmat.saturate(proj, len(cols)) if proj else []

    def gpoint_rank(self, pairs) -> int:
        """Multiplicative rank of {R_ij : (i,j) in pairs}, mod torsion."""
        by_j: dict = {}
        for (i, j) in pairs:
            by_j.setdefault(j, []).append(i)
        total = 0
        for j, i_list in by_j.items():
            i_list = sorted(i_list)
            rel = self._gpoint_sub(j, i_list)
            total += len(i_list) - len(rel)
        return total

    def gpoint_is_torsion(self, i: int, j: int) -> bool:
        return bool(self._gpoint_sub(j, [i]))

    def gpoint_torsion_order(self, i: int, j: int) -> int | None:
        sub = self._gpoint_sub(j, [i], project=False)
        if not sub:
            return None
        row = sub[0]
        return torsion_order_from_lift(
            [row[i], row[self.spec.n], row[self.spec.n + 1],
             row[self.spec.n + 2]])

    # -- unit queries ------------------------------------------------------

    def _ucol(self, i: int, j: int) -> int:
        return i * self.spec.r + j

    def unit_rank(self, pairs) -> int:
        """Rank of <e^{t_ij} : (i,j) in pairs> modulo roots of unity."""
        cols = sorted(self._ucol(i, j) for (i, j) in pairs)
        if not cols:
            return 0
        sub = intmat.restrict_support(self.unit_raw, self._unit_ncols,
                                      cols + [self._unit_ncols - 1])
        proj = intmat.hnf(intmat.project_columns(sub, cols))
        rel = intmat.saturate(proj, len(cols)) if proj else []
        return len(cols) - len(rel)

    def unit_rank_qspan(self, pairs) -> int:
        """dim_Q of the span of the t_ij themselves (no 2 pi i quotient)."""
        cols = sorted(self._ucol(i, j) for (i, j) in pairs)
        if not cols:
            return 0
        sub = intmat.restrict_support(self.unit_raw, self._unit_ncols, cols)
        return len(cols) - len(sub)

    def t_is_torsion_unit(self, i: int, j: int) -> bool:
        """t_ij in 2 pi i Q, i.e. e^{t_ij} is a root of unity."""
        sub = intmat.restrict_support(
            self.unit_raw, self._unit_ncols,
            [self._ucol(i, j), self._unit_ncols - 1])
        return bool(sub)

    def two_pi_in_unit_span(self, pairs) -> bool:
        """Is 2 pi i in the Q-span of {t_ij : (i,j) in pairs}?"""
        cols = sorted(self._ucol(i, j) for (i, j) in pairs)
        last = self._unit_ncols - 1
        sub = intmat.restrict_support(self.unit_raw, self._unit_ncols,
                                      cols + [last])
        return any(row[last] != 0 for row in sub)

    # -- greedy generator selection ---------------------------------------

    def select_gpoint_generators(self, li_pairs, lb_pairs):
        """Generators of <R_ij>_LB: the LI rectangle row-major first, then
        the remaining LB pairs in lexicographic order, keeping a pair iff
        it raises the running rank."""
        ordered = sorted(li_pairs) + sorted(set(lb_pairs) - set(li_pairs))
        selected: list = []
        rank = 0
        for pair in ordered:
            r = self.gpoint_rank(selected + [pair])
            if r > rank:
                selected.append(pair)
                rank = r
        return selected

    def select_unit_generators(self, nolb_pairs):
        selected: list = []
        rank = 0
        for pair in sorted(nolb_pairs):
            r = self.unit_rank(selected + [pair])
            if r > rank:
                selected.append(pair)
                rank = r
        return selected

    # -- serialization of the masters (feed-back schema) -------------------

    def masters_as_declared(self) -> dict:
        return {
            "cm_certificate": list(self.endo.certificate)
            if self.endo.is_cm else None,
            "log_relations": [list(r) for r in self.logs.master],
            "gpoint_relations": [[list(r) for r in m]
                                 for m in self.gpoint_raw],
            "unit_relations": [list(r) for r in self.unit_raw],
        }
