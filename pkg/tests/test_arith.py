import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from divisum.arith import (
    Factorization,
    dirichlet_L,
    divisors,
    euler_gamma,
    factorize,
    hurwitz_zeta,
    is_fundamental_discriminant,
    is_prime,
    kronecker,
    kronecker_limit_C,
    moebius,
    riemann_zeta,
    sigma,
    zeta_constants,
)


# ---------------------------------------------------------------------------
# oracles

def kronecker_oracle(a: int, n: int) -> int:
    """Brute-force Kronecker symbol: Legendre by QR search at odd primes,
    the reciprocity table at 2, multiplicativity everywhere else."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    out = 1
    if n < 0:
        n = -n
        if a < 0:
            out = -out
    for p in range(2, n + 1):
        while n % p == 0:
            n //= p
            if p == 2:
                if a % 2 == 0:
                    val = 0
                else:
                    val = 1 if a % 8 in (1, 7) else -1
            else:
                r = a % p
                if r == 0:
                    val = 0
                else:
                    val = 1 if any((x * x - r) % p == 0 for x in range(1, p)) else -1
            out *= val
    return out


def test_sigma_examples():
    assert sigma(1, 1) == 1
    assert sigma(1, 2) == 3
    assert sigma(3, 2) == 9


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 10**6), st.integers(1, 10**6), st.integers(0, 3))
def test_sigma_multiplicative(m, n, k):
    if math.gcd(m, n) == 1:
        assert sigma(k, m * n) == sigma(k, m) * sigma(k, n)


def test_sigma_brute_force():
    for n in range(1, 200):
        assert sigma(1, n) == sum(d for d in range(1, n + 1) if n % d == 0)


def test_moebius_examples():
    assert moebius(1) == 1
    assert moebius(6) == 1
    assert moebius(12) == 0


def test_moebius_sum_indicator():
    for n in range(1, 10**4 + 1):
        total = sum(moebius(d) for d in divisors(n))
        assert total == (1 if n == 1 else 0)


def test_factorize_invariants():
    for n in (1, 2, 360, 2**40 + 1, 999_999_999_989, 10**12 - 1):
        f = factorize(n)
        assert math.prod(p**e for p, e in f.factors) == n
        assert all(is_prime(p) for p, _ in f.factors)
        primes = [p for p, _ in f.factors]
        assert primes == sorted(primes)


def test_factorization_rejects_bad_data():
    with pytest.raises(ValueError):
        Factorization(6, ((3, 1), (2, 1)))
    with pytest.raises(ValueError):
        Factorization(6, ((2, 1),))


def test_kronecker_examples():
    assert kronecker(5, 1) == 1
    assert kronecker(12, 3) == 0
    assert kronecker(5, 2) == -1


def test_kronecker_against_oracle():
    for a in range(-30, 31):
        for n in range(-20, 40):
            assert kronecker(a, n) == kronecker_oracle(a, n), (a, n)


def test_kronecker_multiplicative_and_periodic():
    for D in (5, 8, 13, -3, -4, -7):
        assert is_fundamental_discriminant(D)
        period = abs(D)
        for n in range(1, 10**3):
            assert kronecker(D, n) == kronecker(D, n + period)
            for m in range(1, 30):
                assert kronecker(D, n * m) == kronecker(D, n) * kronecker(D, m)


def test_fundamental_discriminants():
    fundamentals = [d for d in range(-30, 30) if is_fundamental_discriminant(d)]
    assert fundamentals == [-24, -23, -20, -19, -15, -11, -8, -7, -4, -3,
                            1, 5, 8, 12, 13, 17, 21, 24, 28, 29]


# ---------------------------------------------------------------------------
# L-functions and constants

def test_L_trivial_character_is_zeta():
    assert abs(dirichlet_L(1, 2) - math.pi**2 / 6) < 1e-12


def test_L_minus4_leibniz():
    # Leibniz oracle: 1 - 1/3 + 1/5 - ... = pi/4, summed in pairs;
    # the pair tail is ~1/(8K), so correct for it
    K = 200_000
    acc = sum(1.0 / (4 * k + 1) - 1.0 / (4 * k + 3) for k in range(K))
    assert abs(acc + 1.0 / (8 * K) - math.pi / 4) < 1e-9
    assert abs(dirichlet_L(-4, 1) - math.pi / 4) < 1e-12


def test_L_5_2_direct_sum_oracle():
    n = np.arange(1, 10**7 + 1, dtype=np.float64)
    chi = np.array([0, 1, -1, -1, 1])[np.arange(1, 10**7 + 1) % 5]
    oracle = float(np.sum(chi / n**2))
    assert abs(dirichlet_L(5, 2) - oracle) < 1e-6


def test_L_complex_s():
    s = 1.5 + 0.7j
    n = np.arange(1, 400_001)
    chi = np.array([0, 1, -1, -1, 1])[n % 5]
    # direct sum has error ~ N^{-1/2}; pair consecutive periods to accelerate
    oracle = complex(np.sum(chi * n**(-s)))
    assert abs(dirichlet_L(5, s) - oracle) < 1e-6


def test_L_rejects_bad_input():
    with pytest.raises(ValueError):
        dirichlet_L(9, 2)
    with pytest.raises(ValueError):
        dirichlet_L(5, 0.3)


def test_euler_gamma_harmonic_oracle():
    # crude harmonic-minus-log oracle, then the Euler-Maclaurin value
    N = 10**6
    crude = sum(1.0 / k for k in range(1, N + 1)) - math.log(N)
    assert abs(crude - euler_gamma()) < 1e-6
    assert abs(euler_gamma() - float(mp.euler)) < 1e-12


def test_zeta_4_closed_form():
    assert abs(riemann_zeta(4).real - math.pi**4 / 90) < 1e-12


def test_zeta_prime_minus1():
    zc = zeta_constants()
    assert abs(zc.zeta_prime_minus1 - (-0.1654211437)) < 1e-9
    # Glaisher route: zeta'(-1) = 1/12 - log A
    glaisher = float(mp.glaisher)
    assert abs(zc.zeta_prime_minus1 - (1 / 12 - math.log(glaisher))) < 1e-12
    assert abs(zc.zeta_prime2_over_zeta2
               - float(mp.zeta(2, derivative=1) / mp.zeta(2))) < 1e-12


def test_hurwitz_zeta_vs_mpmath():
    for s, a in [(2.0, 0.25), (1.5, 0.7), (3.0 + 1.0j, 0.4)]:
        ref = complex(mp.zeta(mp.mpc(s), mp.mpf(a)))
        assert abs(hurwitz_zeta(s, a) - ref) < 1e-12


def test_kronecker_limit_constant_identity():
    # two closed forms of the same constant must agree to 1e-12
    zc = zeta_constants()
    C = kronecker_limit_C()
    lhs = 0.5 + math.log(2) - zc.euler_gamma + zc.zeta_prime2_over_zeta2
    rhs = -math.pi * C / 6 + 0.5
    assert abs(lhs - rhs) < 1e-12
