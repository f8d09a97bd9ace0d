"""Truncated Fourier-Laurent series in q^(1/ell), exact or numeric.

The one data structure everything else consumes.  A series is

    q^(prefactor24/24) * sum_{v0 <= n < prec} coeffs[n - v0] * q^(n/ell),

with coefficients that are exact (int/Fraction, or any field element with
ring operations such as the quadratic-field numbers used by the CM-product
code) or numeric (complex / mpmath).  Exact identities stay bit-exact;
numeric evaluation converts explicitly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import sigma


@dataclass(frozen=True)
class ModularPoint:
    """tau = u + iv in the upper half-plane."""

    u: float
    v: float

    def __post_init__(self):
        if not self.v > 0:
            raise ValueError("ModularPoint requires v > 0")

    @property
    def tau(self) -> complex:
        return complex(self.u, self.v)

    @staticmethod
    def from_complex(z: complex) -> "ModularPoint":
        return ModularPoint(z.real, z.imag)


def sl2_reduce(tau: complex) -> tuple[complex, tuple[int, int, int, int]]:
    """Translate/invert tau into the standard level-1 fundamental domain.

    Returns (tau', (a, b, c, d)) with tau' = (a tau + b)/(c tau + d).
    """
    a, b, c, d = 1, 0, 0, 1
    for _ in range(10_000):
        n = round(tau.real)
        tau -= n
        a, b = a - n * c, b - n * d
        if abs(tau) >= 1.0 - 1e-15:
            return tau, (a, b, c, d)
        tau = -1 / tau
        a, b, c, d = -c, -d, a, b
    raise RuntimeError("fundamental-domain reduction did not terminate")


def _is_exact(c) -> bool:
    return isinstance(c, (int, Fraction))


def _as_numeric(c, like=None):
    if _is_exact(c):
        if like is not None and type(like).__module__.startswith("mpmath"):
            import mpmath as mp

            if isinstance(c, Fraction):
                return mp.mpf(c.numerator) / mp.mpf(c.denominator)
            return mp.mpf(c)
        return complex(c)
    return c


class QSeries:
    __slots__ = ("ell", "v0", "prec", "coeffs", "prefactor24")

    def __init__(self, ell, v0, prec, coeffs, prefactor24=0):
        if ell < 1:
            raise ValueError("ell must be positive")
        coeffs = list(coeffs)
        if len(coeffs) != prec - v0:
            raise ValueError("coeffs length must equal prec - v0")
        # keep the leading coefficient nonzero (zero series stays as-is
        # with an empty window collapsed onto prec)
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            v0 += 1
        if not coeffs:
            v0 = prec
        self.ell = ell
        self.v0 = v0
        self.prec = prec
        self.coeffs = tuple(coeffs)
        self.prefactor24 = prefactor24

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_terms(terms: dict, prec: int, ell: int = 1,
                   prefactor24: int = 0) -> "QSeries":
        if not terms:
            return QSeries(ell, prec, prec, [], prefactor24)
        v0 = min(terms)
        coeffs = [terms.get(n, 0) for n in range(v0, prec)]
        return QSeries(ell, v0, prec, coeffs, prefactor24)

    @staticmethod
    def one(prec: int, ell: int = 1) -> "QSeries":
        return QSeries.from_terms({0: 1}, prec, ell)

    @staticmethod
    def q_power(n: int, prec: int, ell: int = 1) -> "QSeries":
        return QSeries.from_terms({n: 1}, prec, ell)

    # -- bookkeeping ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_exact(self) -> bool:
        return all(_is_exact(c) for c in self.coeffs)

    def coeff(self, n: int):
        """Coefficient of q^(n/ell) (prefactor excluded)."""
        if n >= self.prec:
            raise ValueError(f"exponent {n}/{self.ell} beyond precision")
        if n < self.v0:
            return 0
        return self.coeffs[n - self.v0]

    def valuation(self) -> Fraction:
        """Leading exponent of q, prefactor included."""
        if self.is_zero:
            raise ValueError("zero series has no valuation")
        return Fraction(self.v0, self.ell) + Fraction(self.prefactor24, 24)

    def terms(self) -> dict:
        return {self.v0 + i: c for i, c in enumerate(self.coeffs) if c != 0}

    def __repr__(self):
        head = ", ".join(
            f"q^{self.v0 + i}" + (f"/{self.ell}" if self.ell > 1 else "") + f"*{c!r}"
            for i, c in enumerate(self.coeffs[:4])
        )
        pre = f" * q^({self.prefactor24}/24)" if self.prefactor24 else ""
        return f"QSeries({head}...; prec {self.prec}/{self.ell}{pre})"

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = self.absorbed(), other.absorbed()
        if a.prefactor24 != b.prefactor24:
            return False
        ell = math.lcm(a.ell, b.ell)
        a, b = a.with_ell(ell), b.with_ell(ell)
        lo = min(a.v0, b.v0)
        hi = min(a.prec, b.prec)
        return all(a.coeff(n) == b.coeff(n) for n in range(lo, hi))

    def __hash__(self):
        return hash((self.ell, self.v0, self.coeffs, self.prefactor24))

    def with_ell(self, new_ell: int) -> "QSeries":
        if new_ell == self.ell:
            return self
        if new_ell % self.ell:
            raise ValueError("new ell must be a multiple of the old one")
        k = new_ell // self.ell
        coeffs = [0] * (k * len(self.coeffs))
        coeffs[::k] = self.coeffs
        # prec scales to k*prec; intermediate refined slots are known-zero
        out = QSeries.__new__(QSeries)
        out.ell = new_ell
        out.v0 = k * self.v0
        out.prec = k * self.prec
        out.coeffs = tuple(coeffs)
        out.prefactor24 = self.prefactor24
        return out

    def absorbed(self) -> "QSeries":
        """Fold prefactor24 into the exponent grid when divisible."""
        p = self.prefactor24
        if p == 0:
            return self
        if (p * self.ell) % 24 == 0:
            shift = p * self.ell // 24
            return QSeries(self.ell, self.v0 + shift, self.prec + shift,
                           self.coeffs, 0)
        return self

    def truncate(self, prec: int) -> "QSeries":
        if prec >= self.prec:
            return self
        v0 = min(self.v0, prec)
        return QSeries(self.ell, v0, prec, self.coeffs[: prec - v0],
                       self.prefactor24)

    def map_coeffs(self, fn) -> "QSeries":
        return QSeries(self.ell, self.v0, self.prec,
                       [fn(c) for c in self.coeffs], self.prefactor24)

    # -- arithmetic ----------------------------------------------------------

    def _common(self, other: "QSeries"):
        ell = math.lcm(self.ell, other.ell)
        return self.with_ell(ell), other.with_ell(ell)

    def __neg__(self):
        return QSeries(self.ell, self.v0, self.prec,
                       [-c for c in self.coeffs], self.prefactor24)

    def __add__(self, other):
        if isinstance(other, (int, Fraction, float, complex)):
            other = QSeries.from_terms({0: other}, self.prec, self.ell,
                                       prefactor24=0)
            if self.prefactor24:
                raise ValueError("cannot add a scalar to a fractional-power series")
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = self._common(other)
        if a.prefactor24 != b.prefactor24:
            a, b = a.absorbed(), b.absorbed()
            if a.prefactor24 != b.prefactor24:
                # final attempt: move both onto a grid refined by 24
                a, b = a.with_ell(24 * a.ell).absorbed(), b.with_ell(24 * b.ell).absorbed()
                a, b = a._common(b)
            if a.prefactor24 != b.prefactor24:
                raise ValueError("incompatible fractional prefactors")
            a, b = a._common(b)
        prec = min(a.prec, b.prec)
        if a.is_zero:
            return b.truncate(prec)
        if b.is_zero:
            return a.truncate(prec)
        v0 = min(a.v0, b.v0)
        if prec <= v0:
            raise ValueError("empty overlap of precisions")
        coeffs = [a.coeff(n) + b.coeff(n) for n in range(v0, prec)]
        return QSeries(a.ell, v0, prec, coeffs, a.prefactor24)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, float, complex)):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QSeries):
            a, b = self._common(other)
            if a.is_zero or b.is_zero:
                prec = min(a.prec + b.v0, b.prec + a.v0)
                return QSeries(a.ell, prec, prec, [],
                               a.prefactor24 + b.prefactor24)
            prec = min(a.prec + b.v0, b.prec + a.v0)
            n_out = prec - a.v0 - b.v0
            coeffs = _convolve(a.coeffs, b.coeffs, n_out)
            return QSeries(a.ell, a.v0 + b.v0, prec, coeffs,
                           a.prefactor24 + b.prefactor24)
        # scalar
        return QSeries(self.ell, self.v0, self.prec,
                       [c * other for c in self.coeffs], self.prefactor24)

    __rmul__ = __mul__

    def inverse(self) -> "QSeries":
        if self.is_zero:
            raise ZeroDivisionError("division by the zero series")
        n = len(self.coeffs)
        lead = self.coeffs[0]
        inv_lead = Fraction(1) / lead if _is_exact(lead) else 1 / lead
        zero = 0 * inv_lead
        out = [inv_lead] + [zero] * (n - 1)
        for k in range(1, n):
            acc = zero
            for j in range(1, k + 1):
                cj = self.coeffs[j]
                if cj != 0:
                    acc = acc + cj * out[k - j]
            out[k] = -inv_lead * acc
        prec = self.prec - 2 * self.v0  # unit-part precision is preserved
        return QSeries(self.ell, -self.v0, -self.v0 + n, out,
                       -self.prefactor24).truncate(prec)

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return self * other.inverse()
        if _is_exact(other):
            other = Fraction(other)
            return self * (1 / other)
        return self * (1.0 / other)

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("only integer powers")
        if k < 0:
            return self.inverse() ** (-k)
        window = max(1, self.prec - self.v0)
        if k == 0:
            return QSeries(self.ell, 0, window, [1] + [0] * (window - 1))
        result = QSeries(self.ell, 0, window, [1] + [0] * (window - 1))
        base = self
        kk = k
        while kk:
            if kk & 1:
                result = result * base
            kk >>= 1
            if kk:
                base = base * base
        return result

    # -- calculus ------------------------------------------------------------

    def theta(self) -> "QSeries":
        """q d/dq, acting on true exponents n/ell + prefactor24/24."""
        pre = Fraction(self.prefactor24, 24)
        coeffs = []
        for i, c in enumerate(self.coeffs):
            e = Fraction(self.v0 + i, self.ell) + pre
            if _is_exact(c):
                coeffs.append(c * e if e.denominator > 1 else c * int(e))
            else:
                coeffs.append(c * float(e))
        return QSeries(self.ell, self.v0, self.prec, coeffs, self.prefactor24)

    def log(self) -> "QSeries":
        """Series log; requires leading term 1*q^0 with prefactor 0."""
        if self.is_zero or self.v0 != 0 or self.coeffs[0] != 1 or self.prefactor24:
            raise ValueError("series log needs leading coefficient 1 at q^0")
        # integrate f'/f, which divides by n and stays in the field
        d = self.theta()
        ratio = d / self
        out = [0 * c for c in self.coeffs]
        for n in range(1, self.prec):
            c = ratio.coeff(n)
            if _is_exact(c):
                out[n] = Fraction(c, n) if isinstance(c, int) else c / n
            else:
                out[n] = c / n
        return QSeries(self.ell, 0, self.prec, out)

    def exp(self) -> "QSeries":
        """Series exp; requires valuation >= 1 (in 1/ell units), prefactor 0."""
        if self.prefactor24:
            raise ValueError("series exp needs prefactor 0")
        if not self.is_zero and self.v0 < 1:
            raise ValueError("series exp needs positive valuation")
        prec = self.prec
        out = [0] * prec
        out[0] = 1
        # n e_n = sum_{k=1}^{n} k l_k e_{n-k}
        for n in range(1, prec):
            acc = None
            for k in range(1, n + 1):
                lk = self.coeff(k) if k < prec else 0
                if lk == 0:
                    continue
                t = (k * lk) * out[n - k]
                acc = t if acc is None else acc + t
            if acc is None:
                out[n] = 0
            elif _is_exact(acc):
                out[n] = Fraction(acc, n) if isinstance(acc, int) else acc / n
            else:
                out[n] = acc / n
        return QSeries(self.ell, 0, prec, out)

    # -- numerics ------------------------------------------------------------

    def evaluate(self, tau, tol: float | None = None):
        """Partial sum at tau plus a heuristic truncation-error estimate.

        The tail model multiplies the max coefficient magnitude over the last
        ten stored terms by the geometric tail of |q^(1/ell)|; because weakly
        holomorphic growth e^(c sqrt n) defeats rigorous geometric bounds, the
        estimate is cross-checked against the half-precision partial sum
        (a doubling re-check) and the larger of the two is reported.
        """
        if isinstance(tau, ModularPoint):
            tau = tau.tau
        if self.is_zero:
            return 0j, 0.0
        y = cmath.exp(2j * math.pi * tau / self.ell)
        ay = abs(y)
        if not ay < 1:
            raise ValueError("evaluation requires Im(tau) > 0")
        pref = cmath.exp(2j * math.pi * tau * self.prefactor24 / 24)
        val = 0j
        for c in reversed(self.coeffs):
            val = val * y + _as_numeric(c)
        val *= y ** self.v0 * pref
        half = 0j
        nh = max(1, len(self.coeffs) // 2)
        for c in reversed(self.coeffs[:nh]):
            half = half * y + _as_numeric(c)
        half *= y ** self.v0 * pref
        last = [abs(_as_numeric(c)) for c in self.coeffs[-10:]]
        maxc = max(last) if last else 0.0
        tail = maxc * ay ** self.prec / (1 - ay) * abs(pref)
        err = max(tail, abs(val - half) * ay ** (len(self.coeffs) - nh))
        if tol is not None and err > tol:
            raise ValueError(
                f"series truncation error {err:.3g} exceeds tol {tol:.3g}"
                " (increase prec or Im(tau))")
        return val, err

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        def enc(c):
            if isinstance(c, int):
                return str(c)
            if isinstance(c, Fraction):
                return f"{c.numerator}/{c.denominator}"
            c = complex(c)
            return [c.real, c.imag]

        return {"ell": self.ell, "v0": self.v0, "prec": self.prec,
                "prefactor24": self.prefactor24,
                "coeffs": [enc(c) for c in self.coeffs]}

    @staticmethod
    def from_json(obj: dict) -> "QSeries":
        def dec(c):
            if isinstance(c, str):
                return Fraction(c) if "/" in c else int(c)
            return complex(c[0], c[1])

        return QSeries(obj["ell"], obj["v0"], obj["prec"],
                       [dec(c) for c in obj["coeffs"]], obj["prefactor24"])


def _convolve(a, b, n_out):
    if n_out <= 0:
        return []
    a = list(a)
    b = list(b)
    int_path = all(type(x) is int for x in a) and all(type(x) is int for x in b)
    out = [0] * n_out
    if int_path:
        for i, ai in enumerate(a):
            if ai and i < n_out:
                top = min(len(b), n_out - i)
                for j in range(top):
                    out[i + j] += ai * b[j]
        return out
    for i, ai in enumerate(a):
        if ai == 0 or i >= n_out:
            continue
        top = min(len(b), n_out - i)
        for j in range(top):
            bj = b[j]
            if bj == 0:
                continue
            t = ai * bj
            out[i + j] = t if out[i + j] == 0 else out[i + j] + t
    return out


def series_arith(a: QSeries, b: QSeries, op: str, k: int | None = None) -> QSeries:
    """Dispatcher form of the ring operations (mirrors the CLI surface)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        if k is None:
            raise ValueError("pow needs an exponent")
        return a**k
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# eta quotients


@dataclass(frozen=True)
class EtaQuotient:
    """prod_{delta | level} eta(delta tau)^{r_delta}."""

    level: int
    terms: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for delta, _ in self.terms:
            if self.level % delta:
                raise ValueError(f"delta {delta} does not divide level {self.level}")

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(r for _, r in self.terms), 2)

    @property
    def prefactor24(self) -> int:
        return sum(d * r for d, r in self.terms)

    @staticmethod
    def parse(text: str) -> "EtaQuotient":
        """Parse "1^24@1" or "1^2,11^2@11" into an eta quotient."""
        body, _, lvl = text.partition("@")
        if not lvl:
            raise ValueError("expected 'delta^r,...@N'")
        terms = []
        for piece in body.split(","):
            d, _, r = piece.partition("^")
            terms.append((int(d), int(r) if r else 1))
        return EtaQuotient(int(lvl), tuple(terms))


def eta_unit(prec: int, scale: int = 1) -> QSeries:
    """q^{-scale/24} eta(scale*tau): the pentagonal-number series in q^scale."""
    terms = {}
    k = 0
    while True:
        for kk in (k, -k) if k else (0,):
            e = kk * (3 * kk - 1) // 2
            if e * scale < prec:
                terms[e * scale] = (-1) ** (kk % 2)
        if k * (3 * k - 1) // 2 * scale >= prec and \
           k * (3 * k + 1) // 2 * scale >= prec:
            break
        k += 1
    return QSeries.from_terms(terms, prec)


def eta_expand(eq: EtaQuotient, prec: int) -> QSeries:
    """Expansion of the eta quotient with prefactor24 = sum delta*r."""
    if prec <= 0:
        raise ValueError("prec must be positive")
    out = QSeries.one(prec)
    for delta, r in eq.terms:
        out = out * eta_unit(prec, delta) ** r
    return QSeries(out.ell, out.v0, out.prec, out.coeffs, eq.prefactor24)


def delta_qexp(prec: int) -> QSeries:
    """The discriminant cusp form q prod (1-q^n)^24, integer exponents."""
    eq = EtaQuotient(1, ((1, 24),))
    return eta_expand(eq, prec - 1).absorbed().truncate(prec)


# ---------------------------------------------------------------------------
# Eisenstein series and the level-1 Hecke system


def eisenstein_qexp(k: int, prec: int) -> QSeries:
    if k == 2:
        terms = {0: 1, **{n: -24 * sigma(1, n) for n in range(1, prec)}}
    elif k == 4:
        terms = {0: 1, **{n: 240 * sigma(3, n) for n in range(1, prec)}}
    elif k == 6:
        terms = {0: 1, **{n: -504 * sigma(5, n) for n in range(1, prec)}}
    else:
        raise ValueError("k must be 2, 4 or 6")
    return QSeries.from_terms(terms, prec)


def scale_exponents(f: QSeries, N: int) -> QSeries:
    """Substitute q -> q^N (i.e. tau -> N tau for prefactor-free series)."""
    if f.prefactor24:
        raise ValueError("scale_exponents expects prefactor 0")
    terms = {N * n: c for n, c in f.terms().items()}
    return QSeries.from_terms(terms, N * (f.prec - 1) + 1, f.ell)


def e2_level(N: int, prec: int) -> QSeries:
    """E_2(tau) - N E_2(N tau), holomorphic of weight 2 on Gamma_0(N)."""
    e2 = eisenstein_qexp(2, prec)
    return (e2 - N * scale_exponents(e2, N).truncate(prec)).truncate(prec)


def j_qexp(prec: int) -> QSeries:
    e4 = eisenstein_qexp(4, prec + 1)
    return (e4**3 / delta_qexp(prec + 1)).truncate(prec)


def faber_jn(n: int, prec: int) -> QSeries:
    series, _ = faber_jn_with_poly(n, prec)
    return series


def faber_jn_with_poly(n: int, prec: int):
    """n-th element of the weight-0 Hecke system at level 1.

    Normalized so the non-positive part of the expansion is q^{-n} + 24
    sigma_1(n); returned together with its coefficients as a polynomial in
    the elliptic modular invariant (index = power).
    """
    if n < 1:
        raise ValueError("n must be positive")
    work = prec + n + 1
    j = j_qexp(work)
    # polynomials tracked alongside the expansions
    jn = {1: j - 720}
    polys = {1: [Fraction(-720), Fraction(1)]}
    for m in range(2, n + 1):
        cand = jn[1] * jn[m - 1]
        poly = _poly_mul(polys[1], polys[m - 1])
        for mm in range(m - 1, 0, -1):
            c = cand.coeff(-mm)
            if c:
                cand = cand - c * jn[mm]
                poly = _poly_sub(poly, _poly_scale(polys[mm], c))
        shift = 24 * sigma(1, m) - cand.coeff(0)
        cand = cand + shift
        poly = _poly_sub(poly, _poly_scale([Fraction(-shift)], 1))
        jn[m] = cand
        polys[m] = poly
    return jn[n].truncate(prec), [Fraction(c) for c in polys[n]]


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
            for i in range(n)]


def _poly_scale(a, c):
    return [x * c for x in a]


def theta_log_deriv(f: QSeries) -> QSeries:
    """Theta f / f where Theta = q d/dq; the constant term is the valuation
    of f (prefactor included), the paper-normalized cusp order."""
    if f.is_zero:
        raise ValueError("zero series")
    d = f.theta()
    # strip the common prefactor: it contributes the constant val shift only
    ratio = QSeries(d.ell, d.v0, d.prec, d.coeffs, 0) / \
        QSeries(f.ell, f.v0, f.prec, f.coeffs, 0)
    return ratio
