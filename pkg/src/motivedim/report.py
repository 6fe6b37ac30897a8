"""Input parsing, orchestration, and bit-exact report emission.

Complex numbers cross the interface as decimal-string pairs [re, im] and
are parsed at the working precision, so identical documents yield
identical binary values and byte-identical reports.  All emitted numbers
carry exactly ceil(0.3 * precision_bits) significant digits.
"""

import json

from mpmath import mp, mpc, mpf, nstr

from . import __version__
from .classify import build_partition
from .config import Bounds
from .dimension import conjecture_report, dim_motivic_galois
from .elliptic import make_lattice, wp, serre_f
from .errors import ChartSingularity, ParseError, ValidationError
from .motive import MotiveSpec, exp_G_coords
from .oracle import MotiveOracle

SCHEMA_IN = "motivedim/input-v1"
SCHEMA_OUT = "motivedim/report-v1"


def _digits(precision: int) -> int:
    return -(-3 * precision // 10)  # ceil(0.3 * P)


def _parse_number(x, what: str):
    if isinstance(x, bool) or isinstance(x, float):
        raise ParseError(
            f"{what}: numbers must be decimal strings or integers, got {x!r}")
    if isinstance(x, int):
        return mpf(x)
    if isinstance(x, str):
        try:
            return mpf(x)
        except Exception as e:
            raise ParseError(f"{what}: cannot parse {x!r} ({e})") from None
    raise ParseError(f"{what}: expected decimal string, got {type(x).__name__}")


def _parse_complex(pair, what: str):
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise ParseError(f"{what}: expected [re, im] pair")
    return mpc(_parse_number(pair[0], what), _parse_number(pair[1], what))


def _fmt(x, digits: int) -> str:
    return nstr(mpf(x), digits, strip_zeros=False)


def _fmt_complex(z, digits: int):
    return [_fmt(z.real, digits), _fmt(z.imag, digits)]


def parse_input(doc: dict, overrides: dict | None = None):
    """Validate and parse an input document into a MotiveSpec.

    ``overrides`` may supply precision/height_bound/denominator_bound/mode
    from the command line, taking precedence over the document.
    """
    if not isinstance(doc, dict):
        raise ParseError("input document must be a JSON object")
    overrides = overrides or {}
    bdoc = doc.get("bounds", {})
    if not isinstance(bdoc, dict):
        raise ParseError("bounds must be an object")

    def pick(flag, key, default):
        v = overrides.get(flag)
        if v is not None:
            return v
        return bdoc.get(key, default)

    try:
        bounds = Bounds(
            precision=int(pick("precision", "precision_bits", 256)),
            height_bound=int(pick("height_bound", "height_bound", 1000)),
            denominator_bound=int(pick("denominator_bound",
                                       "denominator_bound", 60)))
    except ValueError as e:
        raise ParseError(str(e)) from None
    mode = overrides.get("mode") or doc.get("mode", "numeric")
    if mode not in ("numeric", "declared"):
        raise ParseError(f"mode must be numeric|declared, got {mode!r}")

    for key in ("lattice", "q", "p", "t"):
        if key not in doc:
            raise ParseError(f"missing required field {key!r}")
    ldoc = doc["lattice"]
    if not isinstance(ldoc, dict) or "omega1" not in ldoc or "omega2" not in ldoc:
        raise ParseError("lattice must carry omega1 and omega2")

    declared = doc.get("declared")
    if declared is not None and not isinstance(declared, dict):
        raise ParseError("declared must be an object")

    with mp.workprec(bounds.work_prec):
        w1 = _parse_complex(ldoc["omega1"], "lattice.omega1")
        w2 = _parse_complex(ldoc["omega2"], "lattice.omega2")
        q = [_parse_complex(v, f"q[{k}]") for k, v in enumerate(doc["q"])]
        p = [_parse_complex(v, f"p[{k}]") for k, v in enumerate(doc["p"])]
        trows = doc["t"]
        if not isinstance(trows, list) or len(trows) != len(p):
            raise ParseError("t must have one row per p")
        t = [[_parse_complex(v, f"t[{i}][{j}]") for j, v in enumerate(row)]
             for i, row in enumerate(trows)]
        lattice = make_lattice(w1, w2, bounds.precision)
    return MotiveSpec(lattice=lattice, q=q, p=p, t=t, bounds=bounds,
                      mode=mode, declared=declared)


def _echo_input(spec: MotiveSpec, digits: int) -> dict:
    lat = spec.lattice
    out = {
        "lattice": {
            "omega1": _fmt_complex(lat.omega1, digits),
            "omega2": _fmt_complex(lat.omega2, digits),
        },
        "q": [_fmt_complex(v, digits) for v in spec.q],
        "p": [_fmt_complex(v, digits) for v in spec.p],
        "t": [[_fmt_complex(v, digits) for v in row] for row in spec.t],
        "mode": spec.mode,
        "bounds": {
            "precision_bits": spec.bounds.precision,
            "height_bound": spec.bounds.height_bound,
            "denominator_bound": spec.bounds.denominator_bound,
        },
    }
    if spec.declared is not None:
        out["declared"] = spec.declared
    return out


def _k_field_generators(spec: MotiveSpec, digits: int) -> dict:
    lat = spec.lattice
    with mp.workprec(spec.bounds.work_prec):
        wp_q = [_fmt_complex(wp(v, lat)[0], digits) for v in spec.q]
        wp_p = [_fmt_complex(wp(v, lat)[0], digits) for v in spec.p]
        etf = [[_fmt_complex(
            mp.exp(spec.t[i][j]) * serre_f(spec.q[j], spec.p[i], lat), digits)
            for j in range(spec.r)] for i in range(spec.n)]
        coords = []
        for i in range(spec.n):
            per_j = []
            for j in range(spec.r):
                try:
                    g = exp_G_coords(spec.p[i], spec.t[i][j], spec.q[j], lat)
                    per_j.append([_fmt_complex(c, digits) for c in g])
                except ChartSingularity:
                    per_j.append("chart_singularity")
            coords.append(per_j)
    return {"g2": _fmt_complex(lat.g2, digits),
            "g3": _fmt_complex(lat.g3, digits),
            "wp_q": wp_q, "wp_p": wp_p, "exp_t_times_f": etf,
            "gpoint_coords": coords}


def _pairs_1based(pairs) -> list:
    return [[i + 1, j + 1] for (i, j) in sorted(pairs)]


def run(doc: dict, overrides: dict | None = None) -> dict:
    """Full pipeline on a parsed input document; returns the output doc.

    In declared mode every declared relation is verified numerically
    before use (a false declaration raises ValidationError, carrying the
    residual certificate).  Numeric-mode results are flagged heuristic.
    """
    spec = parse_input(doc, overrides)
    digits = _digits(spec.bounds.precision)
    oracle = MotiveOracle(spec)
    partition = build_partition(spec, oracle=oracle)
    report = dim_motivic_galois(spec, oracle=oracle)
    periods = conjecture_report(spec, report, partition, oracle)

    pair_rows = []
    for pc in partition.pairs:
        pair_rows.append({
            "i": pc.i + 1, "j": pc.j + 1,
            "case": pc.case_label, "set": pc.set_label,
            "in_LI": pc.in_LI,
            "local_dims": list(pc.local_dims),
            "evidence": pc.evidence,
        })

    out = {
        "schema": SCHEMA_OUT,
        "tool": {"name": "motivedim", "version": __version__},
        "mode": spec.mode,
        "confidence": report.confidence,
        "input": _echo_input(spec, digits),
        "endo_field": {
            "dim_q": oracle.endo.dim_q,
            "disc": oracle.endo.disc,
            "certificate": list(oracle.endo.certificate)
            if oracle.endo.certificate else None,
        },
        "partition": {
            "NoLB": _pairs_1based(partition.NoLB),
            "LB": _pairs_1based(partition.LB),
            "LI": _pairs_1based(partition.LI),
            "basis_p": [i + 1 for i in partition.basis_p],
            "basis_q": [j + 1 for j in partition.basis_q],
            "n_prime": partition.n_prime,
            "r_prime": partition.r_prime,
        },
        "pairs": pair_rows,
        "dimension": {
            "dim_k": report.dim_k,
            "n_prime": report.n_prime,
            "r_prime": report.r_prime,
            "dim_B": report.dim_B,
            "dim_Zprime": report.dim_Zprime,
            "dim_Zquot": report.dim_Zquot,
            "dim_Zquot_qspan": report.dim_Zquot_qspan,
            "zquot_discrepancy": report.zquot_discrepancy,
            "dim_UR": report.dim_UR,
            "dim_gal": report.dim_gal,
            "rank_LB": report.rank_LB,
            "rank_LI": report.rank_LI,
            "rank_units_NoLB": report.rank_units_NoLB,
            "formula_terms": report.formula_terms,
        },
        "conjecture": {
            "bound": periods.bound,
            "generators_gpoints": [[i + 1, j + 1]
                                   for (i, j) in periods.generators_gpoints],
            "generators_units": [[i + 1, j + 1]
                                 for (i, j) in periods.generators_units],
            "tor_p": periods.tor_p,
            "tor_q": periods.tor_q,
            "flags": {
                "two_pi_in_t_span": periods.two_pi_in_t_span,
                "omega_in_point_span": periods.omega_in_point_span,
            },
            "periods": [{"label": lab, "value": _fmt_complex(val, digits)}
                        for (lab, val) in periods.periods],
        },
        "k_field_generators": _k_field_generators(spec, digits),
        "relations": oracle.masters_as_declared(),
    }
    return out


def to_json(out: dict) -> str:
    return json.dumps(out, sort_keys=True, indent=2) + "\n"


def to_text(out: dict) -> str:
    """Human-oriented summary; not stability-guaranteed."""
    d = out["dimension"]
    t = d["formula_terms"]
    lines = [
        f"motivedim {out['tool']['version']}  "
        f"(mode {out['mode']}, confidence {out['confidence']})",
        "",
        f"endomorphism field: dim_Q k = {out['endo_field']['dim_q']}"
        + (f", disc {out['endo_field']['disc']}, certificate "
           f"{out['endo_field']['certificate']}"
           if out['endo_field']['certificate'] else " (generic)"),
        "",
        "pair classification:",
    ]
    for row in out["pairs"]:
        lines.append(
            f"  ({row['i']},{row['j']})  case {row['case']:<2} "
            f"{row['set']:<4}  LI={'y' if row['in_LI'] else 'n'}  "
            f"local dims {tuple(row['local_dims'])}")
    lines += [
        "",
        f"basis: p {out['partition']['basis_p']}, q {out['partition']['basis_q']}"
        f"  (n' = {d['n_prime']}, r' = {d['r_prime']})",
        "",
        "dimension of the motivic Galois group:",
        f"  reductive part        4/dim_k        = {t['reductive']}",
        f"  abelian part          2(n'+r')       = {t['abelian_twice']}",
        f"  LI rectangle          n'r'           = {t['li_rectangle']}",
        f"  LB/LI quotient rank   u - n'r'       = {t['lb_quotient_rank']}",
        f"  NoLB unit rank        s              = {t['nolb_unit_rank']}",
        f"  total  dim Gal = {d['dim_gal']}   "
        f"(dim UR = {d['dim_UR']}, dim B = {d['dim_B']}, "
        f"u = {d['rank_LB']}, s = {d['rank_units_NoLB']})",
        "",
        f"periods-conjecture bound: {out['conjecture']['bound']} "
        f"on {len(out['conjecture']['periods'])} listed periods",
        f"  tor(p) = {out['conjecture']['tor_p']}, "
        f"tor(q) = {out['conjecture']['tor_q']}, flags: "
        f"{out['conjecture']['flags']}",
    ]
    if d["zquot_discrepancy"]:
        lines.append(
            f"  note: dim_Q<t_ij> over NoLB = {d['dim_Zquot_qspan']} differs "
            f"from the unit-rank version {d['dim_Zquot']} (2*pi*i lies in "
            f"the span)")
    return "\n".join(lines) + "\n"
