"""Exact truncated Laurent series in q^(1/h) over arbitrary-precision rationals.

A QSeries stores dense coefficients for the exponent window [val, prec),
where val and prec are measured in units of 1/h (so the monomial at index k
is q^(k/h)).  prec is an exclusive knowledge bound: coefficients at indices
>= prec are unknown, and reading them is an error rather than a silent zero.
The zero series is the distinguished value with val == prec and no stored
coefficients.

Coefficients are ints where possible and fractions.Fraction otherwise; every
operation is pure and every instance immutable, so values are safe to share
across threads.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

Coeff = int | Fraction


class ZeroSeriesError(ZeroDivisionError):
    """Raised when inverting (or negatively powering) the zero series."""


class PrecisionError(Exception):
    """Raised when a coefficient beyond the truncation bound is requested."""


def _canon(c: Coeff) -> Coeff:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _all_int(coeffs) -> bool:
    return all(type(c) is int for c in coeffs)


def _conv_school(a, b, out_len: int) -> list:
    out = [0] * out_len
    for i, ai in enumerate(a):
        if i >= out_len:
            break
        if not ai:
            continue
        top = min(len(b), out_len - i)
        for j in range(top):
            bj = b[j]
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


def _conv_int(a, b, out_len: int) -> list[int]:
    """Exact truncated integer convolution via packed big-int multiplication.

    Coefficients are offset to non-negative digits, packed into byte slots,
    multiplied as one machine big-int product, then unpacked with the offset
    cross-terms removed via prefix sums.  Bit-identical to the schoolbook
    product.
    """
    la = min(len(a), out_len)
    lb = min(len(b), out_len)
    if la <= 0 or lb <= 0:
        return [0] * out_len
    a = list(a[:la])
    b = list(b[:lb])
    ma = max(1, max(abs(x) for x in a))
    mb = max(1, max(abs(x) for x in b))
    digit_bound = 4 * ma * mb * min(la, lb)
    slot = ((digit_bound.bit_length() + 1 + 7) // 8) * 8
    sb = slot // 8
    packed_a = b"".join((x + ma).to_bytes(sb, "little") for x in a)
    packed_b = b"".join((x + mb).to_bytes(sb, "little") for x in b)
    prod = int.from_bytes(packed_a, "little") * int.from_bytes(packed_b, "little")
    raw = prod.to_bytes((la + lb) * sb, "little")

    pref_a = [0]
    for x in a:
        pref_a.append(pref_a[-1] + x)
    pref_b = [0]
    for x in b:
        pref_b.append(pref_b[-1] + x)

    out = [0] * out_len
    mamb = ma * mb
    for k in range(min(out_len, la + lb - 1)):
        digit = int.from_bytes(raw[k * sb : (k + 1) * sb], "little")
        jlo, jhi = max(0, k - la + 1), min(lb - 1, k)
        ilo, ihi = max(0, k - lb + 1), min(la - 1, k)
        cnt = jhi - jlo + 1
        out[k] = (
            digit
            - ma * (pref_b[jhi + 1] - pref_b[jlo])
            - mb * (pref_a[ihi + 1] - pref_a[ilo])
            - mamb * cnt
        )
    return out


def _convolve(a, b, out_len: int) -> list:
    if out_len <= 0:
        return []
    if _all_int(a) and _all_int(b):
        return _conv_int(a, b, out_len)
    return [_canon(c) for c in _conv_school(a, b, out_len)]


class QSeries:
    """Truncated Laurent series; see the module docstring for conventions."""

    __slots__ = ("h", "val", "prec", "coeffs")

    def __init__(self, coeffs, val: int = 0, prec: int | None = None, h: int = 1):
        if h < 1:
            raise ValueError("exponent denominator must be positive")
        coeffs = [_canon(c) for c in coeffs]
        if prec is None:
            prec = val + len(coeffs)
        if len(coeffs) < prec - val:
            coeffs = coeffs + [0] * (prec - val - len(coeffs))
        else:
            coeffs = coeffs[: max(0, prec - val)]
        while coeffs and not coeffs[0]:
            coeffs.pop(0)
            val += 1
        if not any(coeffs):
            coeffs, val = [], prec
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "val", val)
        object.__setattr__(self, "prec", prec)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    # -------------------- constructors --------------------

    @classmethod
    def zero(cls, prec: int, h: int = 1) -> QSeries:
        return cls([], val=prec, prec=prec, h=h)

    @classmethod
    def one(cls, prec: int, h: int = 1) -> QSeries:
        return cls([1], val=0, prec=prec, h=h)

    @classmethod
    def monomial(cls, exponent, prec, coeff: Coeff = 1, h: int = 1) -> QSeries:
        """coeff * q^exponent; exponent and prec in q-units (int or Fraction)."""
        e = Fraction(exponent) * h
        p = Fraction(prec) * h
        if e.denominator != 1 or p.denominator != 1:
            raise ValueError("exponent does not lie on the 1/h lattice")
        return cls([coeff], val=int(e), prec=int(p), h=h)

    # -------------------- basic queries --------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def valuation(self) -> Fraction:
        """Leading exponent in q-units; raises on the zero series."""
        if self.is_zero:
            raise ZeroSeriesError("zero series has no valuation")
        return Fraction(self.val, self.h)

    def precision(self) -> Fraction:
        """Exclusive knowledge bound in q-units."""
        return Fraction(self.prec, self.h)

    def coeff(self, exponent) -> Coeff:
        """Coefficient of q^exponent; exponent beyond the bound is an error."""
        e = Fraction(exponent) * self.h
        if e >= self.prec:
            raise PrecisionError(
                f"coefficient of q^{Fraction(exponent)} requested, series known below "
                f"q^{self.precision()}"
            )
        if e.denominator != 1 or e < self.val:
            return 0
        return self.coeffs[int(e) - self.val]

    def terms(self):
        """Yield (exponent as Fraction, coefficient) for the nonzero terms."""
        for i, c in enumerate(self.coeffs):
            if c:
                yield Fraction(self.val + i, self.h), c

    # -------------------- representation --------------------

    def _fmt_exp(self, idx: int) -> str:
        e = Fraction(idx, self.h)
        if e == 1:
            return "q"
        if e.denominator == 1:
            return f"q^{e}"
        return f"q^({e})"

    def __repr__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            e = self.val + i
            mag = abs(c)
            body = self._fmt_exp(e) if e else ""
            if mag != 1 or not body:
                body = f"{mag}*{body}" if body else f"{mag}"
            parts.append(("- " if c < 0 else "+ ") + body)
            if len(parts) >= 10:
                parts.append("+ ...")
                break
        lead = " ".join(parts) or "0"
        if lead.startswith("+ "):
            lead = lead[2:]
        elif lead.startswith("- "):
            lead = "-" + lead[2:]
        tail = self._fmt_exp(self.prec)
        return f"{lead} + O({tail})"

    # -------------------- denominator plumbing --------------------

    def _scaled(self, factor: int) -> QSeries:
        """Identical series re-expressed with h multiplied by factor."""
        if factor == 1:
            return self
        coeffs = []
        for c in self.coeffs:
            coeffs.append(c)
            coeffs.extend([0] * (factor - 1))
        return QSeries(
            coeffs[: max(0, self.prec * factor - self.val * factor)],
            val=self.val * factor,
            prec=self.prec * factor,
            h=self.h * factor,
        )

    @staticmethod
    def _unified(a: QSeries, b: QSeries) -> tuple[QSeries, QSeries]:
        if a.h == b.h:
            return a, b
        target = lcm(a.h, b.h)
        return a._scaled(target // a.h), b._scaled(target // b.h)

    def normalize(self) -> QSeries:
        """Reduce h by the gcd of the recorded nonzero exponent indices."""
        if self.h == 1:
            return self
        if self.is_zero:
            prec = -((-self.prec) // self.h)
            return QSeries.zero(prec, h=1)
        g = self.h
        for i, c in enumerate(self.coeffs):
            if c:
                g = gcd(g, self.val + i)
            if g == 1:
                return self
        coeffs = [self.coeffs[k] for k in range(0, len(self.coeffs), g)]
        return QSeries(
            coeffs,
            val=self.val // g,
            prec=(self.prec - 1) // g + 1,
            h=self.h // g,
        )

    def truncate(self, bound) -> QSeries:
        """Restrict knowledge to exponents < bound (bound in q-units)."""
        b = Fraction(bound) * self.h
        idx = -((-b.numerator) // b.denominator)  # ceil
        if idx >= self.prec:
            return self
        return QSeries(list(self.coeffs[: max(0, idx - self.val)]), val=self.val, prec=idx, h=self.h)

    # -------------------- ring operations --------------------

    def __eq__(self, other) -> bool:
        """Coefficientwise equality on the common knowledge window."""
        if isinstance(other, (int, Fraction)):
            other = QSeries([other], val=0, prec=max(self.prec, 1), h=self.h)
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = QSeries._unified(self, other)
        hi = min(a.prec, b.prec)
        lo = min(a.val, b.val)
        for k in range(lo, hi):
            ca = a.coeffs[k - a.val] if a.val <= k < a.val + len(a.coeffs) else 0
            cb = b.coeffs[k - b.val] if b.val <= k < b.val + len(b.coeffs) else 0
            if ca != cb:
                return False
        return True

    __hash__ = None

    def __neg__(self) -> QSeries:
        return QSeries([-c for c in self.coeffs], val=self.val, prec=self.prec, h=self.h)

    def __add__(self, other) -> QSeries:
        if isinstance(other, (int, Fraction)):
            if not other or self.prec <= 0:
                return self
            lo = min(self.val, 0)
            window = [0] * (self.prec - lo)
            for i, c in enumerate(self.coeffs):
                window[self.val + i - lo] = c
            window[-lo] = _canon(window[-lo] + other)
            return QSeries(window, val=lo, prec=self.prec, h=self.h)
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = QSeries._unified(self, other)
        prec = min(a.prec, b.prec)
        lo = min(a.val, b.val, prec)
        window = [0] * (prec - lo)
        for src in (a, b):
            for i, c in enumerate(src.coeffs):
                k = src.val + i
                if k < prec:
                    window[k - lo] = _canon(window[k - lo] + c)
        return QSeries(window, val=lo, prec=prec, h=a.h)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__add__(-other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other) -> QSeries:
        if isinstance(other, (int, Fraction)):
            if not other:
                return QSeries.zero(self.prec, h=self.h)
            return QSeries(
                [_canon(c * other) for c in self.coeffs], val=self.val, prec=self.prec, h=self.h
            )
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = QSeries._unified(self, other)
        prec = min(a.prec + b.val, b.prec + a.val)
        if a.is_zero or b.is_zero:
            return QSeries.zero(prec, h=a.h)
        val = a.val + b.val
        out = _convolve(a.coeffs, b.coeffs, prec - val)
        return QSeries(out, val=val, prec=prec, h=a.h)

    __rmul__ = __mul__

    def __truediv__(self, other) -> QSeries:
        if isinstance(other, (int, Fraction)):
            return self.__mul__(1 / Fraction(other))
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.__mul__(other.invert())

    def invert(self) -> QSeries:
        """Multiplicative inverse; self * self.invert() == 1 up to precision."""
        if self.is_zero:
            raise ZeroSeriesError("cannot invert the zero series")
        n = len(self.coeffs)
        a = list(self.coeffs)
        lead = a[0]
        if lead in (1, -1) and _all_int(a):
            inv = self._invert_newton(a, n)
        else:
            inv = self._invert_recurrence(a, n)
        return QSeries(inv, val=-self.val, prec=self.prec - 2 * self.val, h=self.h)

    @staticmethod
    def _invert_recurrence(a, n: int) -> list:
        lead = a[0]
        out = [_canon(Fraction(1, 1) / lead)]
        for k in range(1, n):
            s = 0
            for i in range(1, min(k, len(a) - 1) + 1):
                s += a[i] * out[k - i]
            out.append(_canon(-Fraction(s, 1) / lead) if s else 0)
        return out

    @staticmethod
    def _invert_newton(a, n: int) -> list[int]:
        # doubling iteration b <- b*(2 - a*b); exact for unit integer leading term
        lead = a[0]
        out = [lead]
        m = 1
        while m < n:
            m = min(2 * m, n)
            t = _convolve(a[:m], out, m)
            t = [2 - t[0]] + [-c for c in t[1:]]
            out = _convolve(out, t, m)
        return out

    def __pow__(self, k: int) -> QSeries:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if self.is_zero:
                raise ZeroSeriesError("cannot raise the zero series to a negative power")
            return self.invert() ** (-k)
        if k == 0:
            width = self.prec - self.val if not self.is_zero else self.prec
            return QSeries.one(max(width, 1), h=self.h)
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def rescale(self, n: int) -> QSeries:
        """Substitute q -> q^n, producing f(n*tau) from f(tau)."""
        if n < 1:
            raise ValueError("rescale factor must be a positive integer")
        if n == 1:
            return self
        coeffs = [0] * (len(self.coeffs) * n)
        for i, c in enumerate(self.coeffs):
            coeffs[i * n] = c
        return QSeries(coeffs, val=self.val * n, prec=self.prec * n, h=self.h)

    def shift(self, exponent) -> QSeries:
        """Multiply by the exact monomial q^exponent (exponent a Fraction)."""
        e = Fraction(exponent)
        target = lcm(self.h, e.denominator)
        s = self._scaled(target // self.h)
        d = int(e * target)
        return QSeries(list(s.coeffs), val=s.val + d, prec=s.prec + d, h=target)


def euler_product(scale: int, prec: int) -> QSeries:
    """Prod_{n>=1} (1 - q^(scale*n)) truncated below q^prec, via the
    pentagonal-number expansion sum_k (-1)^k q^(scale*k(3k-1)/2)."""
    if scale < 1:
        raise ValueError("scale must be a positive integer")
    if prec < 1:
        raise ValueError("prec must be at least 1")
    coeffs = [0] * prec
    coeffs[0] = 1
    k = 1
    while True:
        sign = -1 if k % 2 else 1
        lo = scale * k * (3 * k - 1) // 2
        hi = scale * k * (3 * k + 1) // 2
        if lo >= prec:
            break
        coeffs[lo] += sign
        if hi < prec:
            coeffs[hi] += sign
        k += 1
    return QSeries(coeffs, val=0, prec=prec, h=1)


__all__ = ["QSeries", "euler_product", "ZeroSeriesError", "PrecisionError", "Coeff"]
