import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import assert_close
from gammalab.errors import DataError, RefusalError
from gammalab.number_theory import (
    MersenneExponents,
    divisor_gamma,
    divisor_sum,
    divisor_sum_naive,
    load_mersenne_exponents,
    mersenne_fit,
    mertens_gamma,
    sieve_log_product,
)

# D(2^k) for k = 15..23: the reference divisor-sum column
DIVISOR_COLUMN = {
    2**15: 345785,
    2**16: 736974,
    2**17: 1564762,
    2**18: 3311206,
    2**19: 6985780,
    2**20: 14698342,
    2**21: 30850276,
    2**22: 64607782,
    2**23: 135030018,
}


class TestSieve:
    def test_tiny_product_by_hand(self):
        # primes below 10: (3/2)(4/3)(6/5)(8/7) = 96/35
        rep = sieve_log_product(10)
        assert rep.prime_count == 4
        with mp.workdps(40):
            assert abs(rep.product - mp.mpf(96) / 35) < mp.mpf("1e-14")

    def test_known_prime_counts(self):
        assert sieve_log_product(10**3).prime_count == 168
        assert sieve_log_product(10**6).prime_count == 78498

    def test_naive_prime_count_oracle(self):
        # independent of the segmented machinery
        limit = 10**4
        flags = np.ones(limit, dtype=bool)
        flags[:2] = False
        for p in range(2, 101):
            if flags[p]:
                flags[p * p :: p] = False
        assert sieve_log_product(limit).prime_count == int(flags.sum())

    def test_log_sum_increasing_in_limit(self):
        sums = [sieve_log_product(n).log_product_sum for n in (10, 100, 1000)]
        assert sums[0] < sums[1] < sums[2]

    def test_segmentation_invariance(self):
        # exact accumulation: bit-identical across segment sizes
        a = sieve_log_product(10**6, segment_size=10**5)
        b = sieve_log_product(10**6, segment_size=1 << 20)
        assert a.log_product_sum == b.log_product_sum
        assert a.prime_count == b.prime_count

    def test_budget(self):
        with pytest.raises(RefusalError):
            sieve_log_product(10**7, budget=10**6)
        with pytest.raises(RefusalError):
            sieve_log_product(2)

    def test_product_column_small_rows(self):
        # the n=1e3 and 1e4 products to the printed 8 digits
        assert_close(sieve_log_product(10**3).product, "7.5094464", "5e-8")
        assert_close(sieve_log_product(10**4).product, "9.9849904", "5e-8")

    def test_mertens_gamma_formula(self):
        rep = sieve_log_product(10)
        est = mertens_gamma(rep)
        with mp.workdps(40):
            expected = mp.log(mp.pi**2 / 6 * (mp.mpf(96) / 35) / mp.log(10))
            assert abs(est.value - expected) < mp.mpf("1e-13")

    def test_mertens_gamma_decreasing_toward_reference(self):
        ests = [
            mertens_gamma(sieve_log_product(10**k)).value
            for k in range(3, 9)
        ]
        assert all(a > b for a, b in zip(ests, ests[1:]))
        from conftest import gamma_at

        with mp.workdps(40):
            assert ests[-1] > gamma_at(40)


class TestDivisorSum:
    def test_first_values(self):
        assert divisor_sum(1) == 1
        assert divisor_sum(10) == 27
        assert divisor_sum_naive(10) == 27

    def test_hyperbola_equals_naive_full_range(self):
        # exact equality for every n <= 10^4
        limit = 10**4
        d = np.zeros(limit + 1, dtype=np.int64)
        for j in range(1, limit + 1):
            d[j::j] += 1
        prefix = np.cumsum(d)
        for n in range(1, limit + 1):
            assert divisor_sum(n) == int(prefix[n])

    @given(st.integers(min_value=1, max_value=200000))
    @settings(max_examples=60, deadline=None)
    def test_hyperbola_vs_naive_random(self, n):
        assert divisor_sum(n) == divisor_sum_naive(n)

    def test_reference_column(self):
        for n, D in DIVISOR_COLUMN.items():
            assert divisor_sum(n) == D

    def test_divisor_gamma_n2(self, ctx25):
        est = divisor_gamma(2, ctx25)
        with mp.workdps(40):
            expected = (mp.mpf(3) / 2 - mp.log(2) + 1) / 2
            assert abs(est.value - expected) < mp.mpf("1e-24")
        assert est.work["D"] == 3

    def test_error_envelope(self, ctx25):
        big = divisor_gamma(4194304, ctx25)
        small = divisor_gamma(32768, ctx25)
        assert big.abs_error < small.abs_error

    def test_domain(self, ctx25):
        with pytest.raises(RefusalError):
            divisor_sum(0)
        with pytest.raises(RefusalError):
            divisor_gamma(1, ctx25)


class TestMersenne:
    def test_embedded_list(self):
        data = MersenneExponents.embedded()
        assert len(data) == 51
        assert data.exponents[:2] == (2, 3)
        assert all(a < b for a, b in zip(data.exponents, data.exponents[1:]))

    def test_fit_reference_values(self):
        slope, intercept, gamma_est = mersenne_fit(MersenneExponents.embedded())
        assert_close(slope, "2.6633", "1e-3")
        assert_close(intercept, "-2.1227", "1e-3")
        assert_close(gamma_est, "0.613", "2e-3")

    def test_two_point_fit_exact(self):
        data = MersenneExponents(exponents=(2, 8))
        slope, intercept, _ = mersenne_fit(data)
        with mp.workdps(40):
            assert abs(slope - 1 / (2 * mp.log(2))) < mp.mpf("1e-30")

    def test_load_valid_file(self, tmp_path):
        p = tmp_path / "exps.txt"
        p.write_text("# comment\n2\n3\n5\n")
        assert load_mersenne_exponents(p).exponents == (2, 3, 5)

    def test_load_rejects_composite(self, tmp_path):
        p = tmp_path / "exps.txt"
        p.write_text("2\n4\n")
        with pytest.raises(DataError, match="not prime"):
            load_mersenne_exponents(p)

    def test_load_rejects_unsorted(self, tmp_path):
        p = tmp_path / "exps.txt"
        p.write_text("3\n2\n")
        with pytest.raises(DataError, match="ascending"):
            load_mersenne_exponents(p)

    def test_load_rejects_empty(self, tmp_path):
        p = tmp_path / "exps.txt"
        p.write_text("# nothing\n")
        with pytest.raises(DataError, match="no exponents"):
            load_mersenne_exponents(p)

    def test_load_rejects_garbage(self, tmp_path):
        p = tmp_path / "exps.txt"
        p.write_text("2\nthree\n")
        with pytest.raises(DataError, match="not an integer"):
            load_mersenne_exponents(p)

    def test_degenerate_fit(self):
        with pytest.raises(DataError):
            mersenne_fit(MersenneExponents(exponents=(5,)))
