import mpmath as mp
import pytest

from gammalab.errors import RefusalError
from gammalab.quadrature import integrate


def test_exponential():
    v = integrate(mp.exp, 0, 1, 40)
    with mp.workdps(60):
        assert abs(v - (mp.e - 1)) < mp.mpf("1e-40")


def test_sine_arch():
    v = integrate(mp.sin, 0, mp.pi, 40)
    with mp.workdps(60):
        assert abs(v - 2) < mp.mpf("1e-40")


def test_smooth_log_integrand():
    # int_mu-ish region of e^t/t, value checked against the series
    # primitive log t + sum (-1)^(n-1) t^n/(n n!)  (derivative e^t/t)
    with mp.workdps(50):
        a, b = mp.mpf("0.4"), mp.mpf(1)

        def primitive(t):
            return mp.log(t) + mp.nsum(
                lambda n: t**n / (n * mp.factorial(n)), [1, mp.inf]
            )

        ref = primitive(b) - primitive(a)
    v = integrate(lambda t: mp.exp(t) / t, "0.4", 1, 40)
    with mp.workdps(60):
        assert abs(v - ref) < mp.mpf("1e-38")


def test_reversed_interval_refused():
    with pytest.raises(RefusalError):
        integrate(mp.exp, 1, 0, 30)


def test_deterministic():
    a = integrate(lambda u: mp.cos(u) / u, 2, 5, 35)
    b = integrate(lambda u: mp.cos(u) / u, 2, 5, 35)
    assert a == b
