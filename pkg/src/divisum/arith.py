"""Integer and Dirichlet-series primitives.

Factorization, divisor sums, Moebius and Kronecker symbols, fundamental
discriminants, real-character L-functions and zeta constants.  Everything
here is a pure function of its arguments; inputs are expected to stay
below ~10^12 so trial division plus Pollard rho is enough.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from fractions import Fraction


# ---------------------------------------------------------------------------
# factorization

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24 (fixed witness set)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = pow(x, 2, n)
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int, rng: random.Random) -> int:
    while True:
        c = rng.randrange(1, n)
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


@dataclass(frozen=True)
class Factorization:
    """n together with its sorted prime factorization."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 0
        for p, e in self.factors:
            if e <= 0 or p <= last or not is_prime(p):
                raise ValueError(f"bad factorization of {self.n}")
            last = p
            prod *= p**e
        if prod != self.n:
            raise ValueError(f"factors do not multiply to {self.n}")


def factorize(n: int) -> Factorization:
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    m = n
    fac: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        while m % p == 0:
            fac[p] = fac.get(p, 0) + 1
            m //= p
    p = 41
    while p * p <= m and p < 100_000:
        while m % p == 0:
            fac[p] = fac.get(p, 0) + 1
            m //= p
        p += 2
    # whatever survives trial division is handled by rho (inputs < 1e12
    # have at most two factors left, but recurse to be safe)
    rng = random.Random(0xD1715)
    stack = [m] if m > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            fac[m] = fac.get(m, 0) + 1
            continue
        d = _pollard_rho(m, rng)
        stack.extend((d, m // d))
    return Factorization(n, tuple(sorted(fac.items())))


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def sigma(k: int, n: int) -> int:
    """Divisor power sum sum_{d|n} d^k."""
    if k < 0 or n < 1:
        raise ValueError("sigma(k, n) requires k >= 0, n >= 1")
    out = 1
    for p, e in factorize(n).factors:
        if k == 0:
            out *= e + 1
        else:
            out *= (p ** (k * (e + 1)) - 1) // (p**k - 1)
    return out


def moebius(n: int) -> int:
    if n < 1:
        raise ValueError("moebius requires n >= 1")
    out = 1
    for _, e in factorize(n).factors:
        if e > 1:
            return 0
        out = -out
    return out


def euler_phi(n: int) -> int:
    out = n
    for p, _ in factorize(n).factors:
        out = out // p * (p - 1)
    return out


# ---------------------------------------------------------------------------
# Kronecker symbol

def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) with the standard conventions at n in {0, -1, 2}.

    (a/0) = 1 iff a = +-1; (a/-1) = sign-of-a extension; (a/2) = 0 for even a,
    +1 for a = +-1 mod 8, -1 for a = +-3 mod 8.  Completely multiplicative in n.
    """
    if n == 0:
        return 1 if a in (1, -1) else 0
    out = 1
    if n < 0:
        n = -n
        if a < 0:
            out = -out
    # strip factors of two from the bottom
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        t = 0
        while n % 2 == 0:
            n //= 2
            t += 1
        if t % 2 == 1 and a % 8 in (3, 5):
            out = -out
    a %= n
    # Jacobi symbol on odd n via quadratic reciprocity
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                out = -out
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            out = -out
        a %= n
    return out if n == 1 else 0


# ---------------------------------------------------------------------------
# discriminants

def is_discriminant(d: int) -> bool:
    return d % 4 in (0, 1)


def is_fundamental_discriminant(d: int) -> bool:
    if d % 4 == 1:
        return d == 1 or _is_squarefree(abs(d))
    if d % 4 == 0:
        k = d // 4
        return k % 4 in (2, 3) and _is_squarefree(abs(k))
    return False


def _is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for _, e in factorize(n).factors)


@dataclass(frozen=True)
class Discriminant:
    value: int

    def __post_init__(self):
        if not is_discriminant(self.value):
            raise ValueError(f"{self.value} is not 0 or 1 mod 4")

    @property
    def is_fundamental(self) -> bool:
        return is_fundamental_discriminant(self.value)


# ---------------------------------------------------------------------------
# Hurwitz zeta / Riemann zeta by Euler-Maclaurin, with s-derivative

# Bernoulli numbers B_2, B_4, ... as exact fractions
_BERNOULLI = [
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
    Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510),
    Fraction(43867, 798), Fraction(-174611, 330), Fraction(854513, 138),
    Fraction(-236364091, 2730), Fraction(8553103, 6),
]


def hurwitz_zeta(s: complex, a: float, derivative: int = 0,
                 terms: int = 40, bern: int = 10,
                 subtract_pole: bool = False) -> complex:
    """Euler-Maclaurin evaluation of zeta(s, a), optionally d/ds zeta(s, a).

    Valid for all s != 1 reachable by the expansion (the uses here have
    Re(s) > 1/2).  `terms` direct terms plus `bern` Bernoulli corrections give
    roughly double precision for moderate |s|.  With subtract_pole the
    analytic function zeta(s, a) - 1/(s-1) is returned instead, which is
    finite at s = 1 (needed where a character sum cancels the pole).
    """
    if derivative not in (0, 1):
        raise ValueError("derivative must be 0 or 1")
    if s == 1 and not (subtract_pole and derivative == 0):
        raise ValueError("pole at s = 1")
    M = terms
    z = 0j
    for k in range(M):
        base = (k + a) ** (-s)
        z += base if derivative == 0 else -math.log(k + a) * base
    x = M + a
    lx = math.log(x)
    if derivative == 0:
        if subtract_pole:
            z += -lx if s == 1 else (x ** (1 - s) - 1.0) / (s - 1)
        else:
            z += x ** (1 - s) / (s - 1)
        z += 0.5 * x ** (-s)
    else:
        z += -(x ** (1 - s)) * lx / (s - 1) - x ** (1 - s) / (s - 1) ** 2
        if subtract_pole:
            z += 1.0 / (s - 1) ** 2
        z += -0.5 * lx * x ** (-s)
    # sum_j B_2j/(2j)! * (s)_{2j-1} * x^{-s-2j+1}
    poch = s  # (s)_1
    poch_d = 1.0 + 0j  # d/ds (s)_1
    fact = 2.0  # (2j)!
    for j in range(1, bern + 1):
        b = float(_BERNOULLI[j - 1])
        xp = x ** (-s - 2 * j + 1)
        if derivative == 0:
            z += b / fact * poch * xp
        else:
            z += b / fact * (poch_d - poch * lx) * xp
        # extend pochhammer (s)_{2j-1} -> (s)_{2j+1}
        for i in (2 * j - 1, 2 * j):
            poch_d = poch_d * (s + i) + poch
            poch = poch * (s + i)
        fact *= (2 * j + 1) * (2 * j + 2)
    return z


def riemann_zeta(s: complex, derivative: int = 0) -> complex:
    return hurwitz_zeta(s, 1.0, derivative=derivative)


def dirichlet_L(D: int, s: complex, tol: float = 1e-12) -> complex:
    """L_D(s) = sum (D/n) n^{-s} for a fundamental discriminant D, Re(s) > 1/2.

    Computed by the Hurwitz-zeta decomposition over residues mod |D|;
    the character sum over a full period vanishes, which cancels the
    pole of the individual Hurwitz terms at s = 1.
    """
    if not is_fundamental_discriminant(D):
        raise ValueError(f"D = {D} is not a fundamental discriminant")
    if complex(s).real <= 0.5:
        raise ValueError("dirichlet_L requires Re(s) > 1/2")
    if D == 1:
        return riemann_zeta(s)
    q = abs(D)
    # depth chosen from tol: error ~ (terms*q)^{-Re(s)-2*bern-1} decays fast;
    # the defaults are already ~1e-15 for q <= 50, scale terms up otherwise
    terms = 40 if q <= 50 else 80
    total = 0j
    for r in range(1, q + 1):
        chi = kronecker(D, r)
        if chi:
            # the subtracted poles cancel: sum_r chi(r) = 0 over a period
            total += chi * hurwitz_zeta(s, r / q, terms=terms,
                                        subtract_pole=True)
    val = total * q ** (-complex(s))
    if abs(val.imag) < 1e-30 and complex(s).imag == 0:
        val = complex(val.real, 0.0)
    return val


def euler_gamma(terms: int = 50) -> float:
    """Euler-Mascheroni constant by Euler-Maclaurin on the harmonic sum."""
    N = terms
    h = sum(1.0 / k for k in range(1, N + 1))
    g = h - math.log(N) - 0.5 / N
    npow = float(N * N)
    for j in range(1, 8):
        g += float(_BERNOULLI[j - 1]) / (2 * j) / npow
        npow *= N * N
    return g


@dataclass(frozen=True)
class ZetaConstants:
    zeta_prime_minus1: float
    zeta_prime2_over_zeta2: float
    euler_gamma: float

    def zeta(self, s: complex) -> complex:
        return riemann_zeta(s)


def zeta_constants() -> ZetaConstants:
    """Constants needed by the Kronecker-limit bookkeeping, ~1e-14 accurate.

    zeta'(-1) comes from the functional equation differentiated at s = -1:
    zeta'(-1) = -(1/12) (log(2 pi) - 1 + gamma - zeta'(2)/zeta(2)).
    """
    g = euler_gamma()
    z2 = riemann_zeta(2.0).real
    z2p = riemann_zeta(2.0, derivative=1).real
    ratio = z2p / z2
    zp_m1 = -(math.log(2 * math.pi) - 1.0 + g - ratio) / 12.0
    return ZetaConstants(zeta_prime_minus1=zp_m1,
                         zeta_prime2_over_zeta2=ratio,
                         euler_gamma=g)


def kronecker_limit_C() -> float:
    """The additive constant in the s=1 expansion of the weight-0 Eisenstein
    series at level 1: (6 - 72 zeta'(-1) - 6 log(4 pi)) / pi."""
    zc = zeta_constants()
    return (6.0 - 72.0 * zc.zeta_prime_minus1 - 6.0 * math.log(4 * math.pi)) / math.pi


def xi_completed(w: complex) -> complex:
    """Completed zeta xi(w) = pi^{-w/2} Gamma(w/2) zeta(w) for Re(w) > 1."""
    import mpmath as mp

    g = complex(mp.gamma(complex(w) / 2))
    return cmath.exp(-complex(w) / 2 * math.log(math.pi)) * g * riemann_zeta(w)
