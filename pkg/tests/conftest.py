import random

import pytest
from mpmath import mp, mpc, mpf, sqrt

from motivedim import Bounds, detect_cm, make_lattice

PREC = 256
AMBIENT = PREC + 74  # construct test values with headroom over work_prec

# All test-side arithmetic (building arguments, computing residuals) runs
# at ambient precision; the library manages its own working precision.
mp.prec = AMBIENT


@pytest.fixture(scope="session")
def bounds():
    return Bounds(PREC, 1000, 60)


@pytest.fixture(scope="session")
def gauss():
    with mp.workprec(AMBIENT):
        return make_lattice(mpc(2), mpc(0, 2), PREC)


@pytest.fixture(scope="session")
def hexlat():
    with mp.workprec(AMBIENT):
        return make_lattice(mpc(1), (1 + 1j * sqrt(mpf(3))) / 2, PREC)


@pytest.fixture(scope="session")
def noncm():
    # 30-digit mantissas leave no relation of height below ~10^28
    with mp.workprec(AMBIENT):
        return make_lattice(
            mpc(1), mpc("0.313372718281931598432123339873",
                        "1.700123459876234591234598762345"), PREC)


@pytest.fixture(scope="session")
def gauss_endo(gauss, bounds):
    return detect_cm(gauss, bounds)


@pytest.fixture(scope="session")
def noncm_endo(noncm, bounds):
    return detect_cm(noncm, bounds)


@pytest.fixture()
def rng(request):
    return random.Random(request.node.name)


def generic_real(rng):
    return mpf("0." + "".join(rng.choice("123456789") for _ in range(30)))


def generic_log(rng, lat):
    with mp.workprec(AMBIENT):
        return generic_real(rng) * lat.omega1 + generic_real(rng) * lat.omega2


def generic_t(rng):
    return mpc(generic_real(rng), generic_real(rng))
