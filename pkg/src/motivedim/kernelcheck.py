"""Self-test of the elliptic kernel on built-in lattices.

Checks, per lattice and with seeded random points: the differential
equation for wp, the Legendre relation, quasi-periodicity of zeta, sigma
and the Serre function, the sigma(z) ~ z normalization, and zeta' = -wp
plus sigma'/sigma = zeta by central finite differences.  Direct residuals
must beat 10^(-0.8 D) at D emitted decimal digits; the finite-difference
residuals only need to beat their O(h^2) truncation floor (h = 2^(-P/3)).
"""

import random

from mpmath import mp, mpc, mpf, exp, sqrt

from .elliptic import make_lattice, quasi_periods, serre_f, sigma, wp, zeta


def builtin_lattices(precision: int):
    with mp.workprec(precision + 64):
        return [
            ("square", make_lattice(mpc(2), mpc(0, 2), precision)),
            ("hexagonal", make_lattice(mpc(1), (1 + 1j * sqrt(mpf(3))) / 2,
                                       precision)),
            ("generic", make_lattice(mpc(1), mpc(mpf(3) / 10, mpf(17) / 10),
                                     precision)),
        ]


def _rand_points(lat, rng, count):
    pts = []
    while len(pts) < count:
        a = rng.uniform(-0.45, 0.45)
        b = rng.uniform(-0.45, 0.45)
        if abs(a) + abs(b) < 0.05:
            continue
        pts.append(a * lat.omega1 + b * lat.omega2)
    return pts


def run_kernel_checks(precision: int = 256, seed: int = 0, points: int = 100):
    """Returns (report_lines, worst_margin, passed).

    worst_margin is max over checks of (residual_log10 - bound_log10);
    negative means everything passed with room to spare.
    """
    digits = int(precision * 0.30103)
    direct_bound = -0.8 * digits
    # central differences with h = 2^(-P/3): truncation O(h^2)
    fd_bound = float(-2 * precision / 3 * 0.30103 + 3)
    rng = random.Random(seed)
    lines = [f"kernel self-test: precision {precision} bits "
             f"({digits} digits), seed {seed}, direct bound 10^{direct_bound:.1f}, "
             f"finite-difference bound 10^{fd_bound:.1f}"]
    tiny = mpf(10) ** -300

    def log10(x):
        return float(mp.log(x, 10)) if x > 0 else -300.0

    worst_margin = -300.0
    with mp.workprec(precision + 64):
        for name, lat in builtin_lattices(precision):
            res_de = res_zq = res_sq = res_fq = res_fd = tiny
            e1, e2 = quasi_periods(lat)
            res_leg = abs(e1 * lat.omega2 - e2 * lat.omega1 - 2j * mp.pi)
            zs = _rand_points(lat, rng, points)
            q = _rand_points(lat, rng, 1)[0]
            zq_val = zeta(q, lat)
            res_sig0 = abs(sigma(mpf(10) ** -6, lat) / mpf(10) ** -6 - 1)
            for k, z in enumerate(zs):
                p, pp = wp(z, lat)
                res_de = max(res_de, abs(pp ** 2 - 4 * p ** 3 + lat.g2 * p
                                         + lat.g3) / max(1, abs(p) ** 3))
                res_zq = max(res_zq,
                             abs(zeta(z + lat.omega1, lat) - zeta(z, lat) - e1),
                             abs(zeta(z + lat.omega2, lat) - zeta(z, lat) - e2))
                res_sq = max(res_sq, abs(
                    sigma(z + lat.omega1, lat)
                    + sigma(z, lat) * exp(e1 * (z + lat.omega1 / 2))))
                res_fq = max(res_fq, abs(
                    serre_f(q, z + lat.omega1, lat)
                    - serre_f(q, z, lat) * exp(e1 * q - zq_val * lat.omega1)))
                if k < 5:
                    h = mpf(2) ** (-precision // 3)
                    dz = (zeta(z + h, lat) - zeta(z - h, lat)) / (2 * h)
                    res_fd = max(res_fd, abs(dz + p) / max(1, abs(p)))
                    ds = (sigma(z + h, lat) - sigma(z - h, lat)) / (2 * h)
                    res_fd = max(res_fd,
                                 abs(ds / sigma(z, lat) - zeta(z, lat)))
            checks = [("diff-eq", res_de, direct_bound),
                      ("legendre", res_leg, direct_bound),
                      ("zeta-qp", res_zq, direct_bound),
                      ("sigma-qp", res_sq, direct_bound),
                      ("serre-qp", res_fq, direct_bound),
                      ("sigma-norm", res_sig0, -10.0),
                      ("finite-diff", res_fd, fd_bound)]
            for label, res, bound in checks:
                margin = log10(res) - bound
                worst_margin = max(worst_margin, margin)
                flag = "ok" if margin < 0 else "FAIL"
                lines.append(f"  {name:<10} {label:<12} max residual "
                             f"10^{log10(res):8.1f}  (bound 10^{bound:.1f}) {flag}")
    passed = worst_margin < 0
    lines.append("PASS" if passed else "FAIL")
    return lines, worst_margin, passed
