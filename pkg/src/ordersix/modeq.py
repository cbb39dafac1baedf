"""Modular equations F_n(w(tau), w(n*tau)) = 0 for the hauptmodul w.

The solver predicts the bidegree from total pole degrees on Gamma0(18n),
builds the coefficient matrix of the monomials W^i V^j from exact
q-expansions, computes the one-dimensional exact kernel, and normalizes to
a primitive integer polynomial with a deterministic sign rule.  Structural
checks cover the forced zero/nonzero coefficient pattern, X<->Y symmetry
for levels coprime to 6, and the Kronecker congruence at prime levels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .arith import is_prime, psi_index
from .cusps import cusp_set
from .eta import divisor, named_w, total_pole_degree
from .linalg import kernel_int_crt, nullspace_exact
from .series import QSeries

_EXACT_UNKNOWN_LIMIT = 50
_BASE_MARGIN = 32


class NullspaceEmptyError(Exception):
    """No relation found at the predicted bidegree; indicates a bug."""


class NullspaceAmbiguousError(Exception):
    """Kernel dimension stayed above one after the precision retry."""


class NotPrimeLevelError(ValueError):
    """Kronecker congruence is only defined for prime levels >= 5."""


class LevelNotCoprimeTo6Error(ValueError):
    """Coefficient symmetry is only claimed for levels coprime to 6."""


@dataclass(frozen=True)
class BivarPoly:
    """Bivariate integer polynomial as a sparse (i, j) -> coefficient map."""

    coeffs: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {ij: int(c) for ij, c in self.coeffs.items() if c}
        object.__setattr__(self, "coeffs", cleaned)

    @property
    def degx(self) -> int:
        return max((i for i, _ in self.coeffs), default=0)

    @property
    def degy(self) -> int:
        return max((j for _, j in self.coeffs), default=0)

    def coeff(self, i: int, j: int) -> int:
        return self.coeffs.get((i, j), 0)

    def content(self) -> int:
        g = 0
        for c in self.coeffs.values():
            g = gcd(g, abs(c))
        return g

    def normalized(self) -> tuple[BivarPoly, bool]:
        """Primitive form with the sign rule: the coefficient of
        X^degx Y^j0 is positive, j0 the least j present at i = degx.
        Returns (polynomial, sign_flipped)."""
        if not self.coeffs:
            return self, False
        g = self.content()
        dx = self.degx
        j0 = min(j for i, j in self.coeffs if i == dx)
        flip = self.coeffs[(dx, j0)] < 0
        s = -1 if flip else 1
        return BivarPoly({ij: c * s // g for ij, c in self.coeffs.items()}), flip

    def evaluate(self, xs: QSeries, ys: QSeries) -> QSeries:
        """Substitute series for X and Y; grouped so only degx + degy
        series products are needed."""
        ypow = [ys ** 0]
        for _ in range(self.degy):
            ypow.append(ypow[-1] * ys)
        total = None
        xpow = xs ** 0
        for i in range(self.degx + 1):
            inner = None
            for j in range(self.degy + 1):
                c = self.coeff(i, j)
                if not c:
                    continue
                term = ypow[j] * c
                inner = term if inner is None else inner + term
            if inner is not None:
                contrib = xpow * inner
                total = contrib if total is None else total + contrib
            if i < self.degx:
                xpow = xpow * xs
        return total if total is not None else QSeries.zero(xs.prec)

    def reduced_mod(self, p: int) -> dict[tuple[int, int], int]:
        return {ij: c % p for ij, c in self.coeffs.items() if c % p}

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self.coeffs == other.coeffs


@dataclass(frozen=True)
class ModEqResult:
    level: int
    d1: int
    d2: int
    poly: BivarPoly
    precision_used: int
    nullspace_dim: int
    normalization: str
    method: str


@dataclass(frozen=True)
class CoeffPattern:
    level: int
    forced_zero: frozenset[tuple[int, int]]
    forced_nonzero: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.forced_zero & self.forced_nonzero:
            raise AssertionError("forced zero and nonzero positions overlap")


def predict_degrees(n: int) -> tuple[int, int]:
    """(d1, d2) = total pole degrees of w and w(n*tau) on Gamma0(18n)."""
    if n < 2:
        raise ValueError("level must be at least 2")
    w = named_w()
    d1 = total_pole_degree(w.lift(18 * n))
    d2 = total_pole_degree(w.rescale(n))
    return d1, d2


def _monomial_matrix(n: int, d1: int, d2: int, margin: int):
    """Integer coefficient rows of the monomials W^i V^j, exponents 0..R-1;
    columns ordered by (i, j) lexicographic."""
    prec = d2 + n * d1 + (d1 + 1) * (d2 + 1) + margin
    w = named_w()
    ws = w.expand(prec)
    vs = w.rescale(n).expand(prec)
    if ws.h != 1 or vs.h != 1:
        raise AssertionError("hauptmodul expansions must have integer exponents")
    wpow = [ws ** 0]
    for _ in range(d2):
        wpow.append(wpow[-1] * ws)
    vpow = [vs ** 0]
    for _ in range(d1):
        vpow.append(vpow[-1] * vs)
    cols = []
    order = []
    for i in range(d2 + 1):
        for j in range(d1 + 1):
            if j == 0:
                s = wpow[i]
            elif i == 0:
                s = vpow[j]
            else:
                s = wpow[i] * vpow[j]
            cols.append(s)
            order.append((i, j))
    height = min(s.prec for s in cols)
    arrays = []
    for s in cols:
        arr = [0] * height
        for k, c in enumerate(s.coeffs):
            e = s.val + k
            if 0 <= e < height:
                arr[e] = c
        arrays.append(arr)
    rows = [list(row) for row in zip(*arrays)]
    return rows, order, height


def _solve_kernel(rows, method: str):
    """Returns (rational/int vector or None, kernel dimension)."""
    if method == "exact":
        basis = nullspace_exact(rows)
        if not basis:
            return None, 0
        return (basis[0], len(basis))
    result = kernel_int_crt(rows)
    return result.vector, result.dimension


def solve_modular_equation(n: int, method: str = "auto") -> ModEqResult:
    """Derive, verify, and normalize the level-n modular equation for w.

    Precision starts at d2 + n*d1 + #unknowns + 32 rows; if the kernel is
    not one-dimensional the margin is doubled once before giving up.
    """
    d1, d2 = predict_degrees(n)
    unknowns = (d1 + 1) * (d2 + 1)
    if method == "auto":
        method = "exact" if unknowns <= _EXACT_UNKNOWN_LIMIT else "crt"
    margin = _BASE_MARGIN
    for _attempt in range(2):
        rows, order, height = _monomial_matrix(n, d1, d2, margin)
        vec, dim = _solve_kernel(rows, method)
        if dim == 0:
            raise NullspaceEmptyError(
                f"level {n}: no kernel at bidegree ({d2}, {d1}), precision {height}"
            )
        if dim == 1:
            break
        margin *= 2
    else:
        raise NullspaceAmbiguousError(
            f"level {n}: kernel dimension {dim} persists at precision {height}"
        )
    raw = {ij: c for ij, c in zip(order, vec) if c}
    cleared = 1
    if any(isinstance(c, Fraction) for c in raw.values()):
        for c in raw.values():
            d = Fraction(c).denominator
            cleared = cleared * d // gcd(cleared, d)
        raw = {ij: int(c * cleared) for ij, c in raw.items()}
    poly = BivarPoly(raw)
    g = poly.content()
    poly, flipped = poly.normalized()
    if poly.degx != d2 or poly.degy != d1:
        raise NullspaceEmptyError(
            f"level {n}: kernel polynomial has bidegree ({poly.degx}, {poly.degy}), "
            f"expected ({d2}, {d1})"
        )
    norm_note = (
        f"denominators cleared by {cleared}, content {g} removed"
        f"{', sign flipped' if flipped else ''}"
    )
    result = ModEqResult(
        level=n,
        d1=d1,
        d2=d2,
        poly=poly,
        precision_used=height,
        nullspace_dim=1,
        normalization=norm_note,
        method=method,
    )
    res = residual_series(result)
    if not res.is_zero:
        raise NullspaceEmptyError(
            f"level {n}: residual is nonzero at exponent {res.valuation()}"
        )
    return result


def residual_series(result: ModEqResult) -> QSeries:
    """F_n evaluated on fresh expansions of w and w(n*tau)."""
    prec = result.precision_used + result.level
    w = named_w()
    ws = w.expand(prec)
    vs = w.rescale(result.level).expand(prec)
    return result.poly.evaluate(ws, vs).truncate(result.precision_used)


def predict_coefficient_pattern(n: int) -> CoeffPattern:
    """Forced coefficient positions from the cusp geometry on Gamma0(18n).

    With f1 = w, f2 = w(n*tau), a is minus the f1-order summed over common
    (f1 pole, f2 zero) cusps and b the f1-order summed over common zeros;
    the leading column i = d2 carries exactly Y^a when every f1 pole is an
    f2 pole or zero, and the i = 0 column exactly Y^b when every f1 zero is.
    The same statements with the roles swapped give the row constraints.
    """
    if n < 2:
        raise ValueError("level must be at least 2")
    N = 18 * n
    w = named_w()
    f1 = w.lift(N)
    f2 = w.rescale(n)
    ord1 = {co.cusp: co.order for co in divisor(f1)}
    ord2 = {co.cusp: co.order for co in divisor(f2)}
    d1 = -sum(o for o in ord1.values() if o < 0)
    d2 = -sum(o for o in ord2.values() if o < 0)
    cusps = cusp_set(N)

    def sets(orders):
        zeros = {x for x in cusps if orders[x] > 0}
        poles = {x for x in cusps if orders[x] < 0}
        return zeros, poles

    z1, p1 = sets(ord1)
    z2, p2 = sets(ord2)
    forced_nonzero: set[tuple[int, int]] = set()
    forced_zero: set[tuple[int, int]] = set()

    # orientation (f1, f2): constraints on the i = d2 and i = 0 columns
    a = -sum(ord1[x] for x in p1 & z2)
    b = sum(ord1[x] for x in z1 & z2)
    forced_nonzero.add((d2, a))
    if p1 <= (p2 | z2):
        forced_zero.update((d2, j) for j in range(d1 + 1) if j != a)
    forced_nonzero.add((0, b))
    if z1 <= (p2 | z2):
        forced_zero.update((0, j) for j in range(d1 + 1) if j != b)

    # swapped orientation: constraints on the j = d1 and j = 0 rows
    a_s = -sum(ord2[x] for x in p2 & z1)
    b_s = sum(ord2[x] for x in z2 & z1)
    forced_nonzero.add((a_s, d1))
    if p2 <= (p1 | z1):
        forced_zero.update((i, d1) for i in range(d2 + 1) if i != a_s)
    forced_nonzero.add((b_s, 0))
    if z2 <= (p1 | z1):
        forced_zero.update((i, 0) for i in range(d2 + 1) if i != b_s)

    forced_zero -= forced_nonzero
    return CoeffPattern(n, frozenset(forced_zero), frozenset(forced_nonzero))


def check_pattern(result: ModEqResult, pattern: CoeffPattern) -> bool:
    if result.level != pattern.level:
        raise ValueError("pattern and result are for different levels")
    for ij in pattern.forced_zero:
        if result.poly.coeff(*ij):
            return False
    for ij in pattern.forced_nonzero:
        if not result.poly.coeff(*ij):
            return False
    return True


def kronecker_frame(p: int) -> BivarPoly:
    """(X^p - Y)(X - Y^p)."""
    return BivarPoly({(p + 1, 0): 1, (p, p): -1, (1, 1): -1, (0, p + 1): 1})


def check_kronecker(result: ModEqResult) -> bool:
    """F_p == (X^p - Y)(X - Y^p) mod p, coefficientwise."""
    p = result.level
    if not is_prime(p) or p < 5:
        raise NotPrimeLevelError(f"level {p} is not a prime >= 5")
    return result.poly.reduced_mod(p) == kronecker_frame(p).reduced_mod(p)


def check_symmetry(result: ModEqResult) -> bool:
    n = result.level
    if gcd(n, 6) != 1:
        raise LevelNotCoprimeTo6Error(f"level {n} shares a factor with 6")
    c = result.poly.coeffs
    return all(c.get((j, i), 0) == v for (i, j), v in c.items())


def psi(n: int) -> int:
    """n * prod_{p | n} (1 + 1/p)."""
    if n < 1:
        raise ValueError("psi expects n >= 1")
    return psi_index(n)


def extract_inner_factor(poly: BivarPoly, p: int) -> BivarPoly:
    """G with poly == (X^p - Y)(X - Y^p) - p*X*Y*G, or raise ValueError."""
    diff = dict(kronecker_frame(p).coeffs)
    for ij, c in poly.coeffs.items():
        diff[ij] = diff.get(ij, 0) - c
    inner: dict[tuple[int, int], int] = {}
    for (i, j), c in diff.items():
        if not c:
            continue
        if i < 1 or j < 1 or c % p:
            raise ValueError(f"no inner factor: residue {c} at ({i}, {j})")
        inner[(i - 1, j - 1)] = c // p
    return BivarPoly(inner)


def format_polynomial(poly: BivarPoly, style: str = "plain") -> str:
    """Render with terms ordered by ascending Y then X power; 'latex' braces
    multi-digit exponents, 'plain' never does."""

    def var(name: str, e: int) -> str:
        if e == 0:
            return ""
        if e == 1:
            return name
        if style == "latex" and e >= 10:
            return f"{name}^{{{e}}}"
        return f"{name}^{e}"

    items = sorted(poly.coeffs.items(), key=lambda kv: (kv[0][1], kv[0][0]))
    parts = []
    for (i, j), c in items:
        body = " ".join(x for x in (var("X", i), var("Y", j)) if x)
        mag = abs(c)
        if mag != 1 or not body:
            body = f"{mag} {body}".strip()
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


__all__ = [
    "BivarPoly",
    "ModEqResult",
    "CoeffPattern",
    "NullspaceEmptyError",
    "NullspaceAmbiguousError",
    "NotPrimeLevelError",
    "LevelNotCoprimeTo6Error",
    "predict_degrees",
    "solve_modular_equation",
    "residual_series",
    "predict_coefficient_pattern",
    "check_pattern",
    "check_kronecker",
    "check_symmetry",
    "kronecker_frame",
    "extract_inner_factor",
    "format_polynomial",
    "psi",
]
