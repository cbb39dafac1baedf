"""Exact kernels of integer/rational matrices.

Two routes to the same answer:

* nullspace_exact -- Gaussian elimination over Fraction with partial
  pivoting on the bit length of numerator*denominator, usable on any
  rational matrix;
* kernel_int_crt -- row reduction modulo 30-bit primes (vectorized with
  numpy) combined by CRT and rational reconstruction, for large integer
  matrices whose kernel is expected to be one-dimensional.

The CRT route certifies its output: a prime with nullity k bounds the
rational nullity by k from above, and the reconstructed vector is accepted
only after an exact integer residual check, so the result is exact despite
the modular detour.  Both routes are deterministic and pure.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np

from .arith import integer_sqrt_bound, primes_below

_PRIME_START = (1 << 30) - 1


def nullspace_exact(rows: list[list]) -> list[list[Fraction]]:
    """Basis of the right kernel over Q, by fraction elimination.

    Pivots are chosen to minimize bit growth: among candidates in the pivot
    column, the entry with the smallest |numerator|*denominator bit length
    wins, lowest row index breaking ties.
    """
    if not rows:
        return []
    m = [[Fraction(x) for x in row] for row in rows]
    nrows, ncols = len(m), len(m[0])
    pivot_of_col: dict[int, int] = {}
    r = 0
    for c in range(ncols):
        best = None
        best_bits = None
        for i in range(r, nrows):
            x = m[i][c]
            if x:
                bits = (abs(x.numerator) * x.denominator).bit_length()
                if best_bits is None or bits < best_bits:
                    best, best_bits = i, bits
        if best is None:
            continue
        m[r], m[best] = m[best], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivot_of_col[c] = r
        r += 1
        if r == nrows:
            break
    free_cols = [c for c in range(ncols) if c not in pivot_of_col]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for c, pr in pivot_of_col.items():
            v[c] = -m[pr][fc]
        basis.append(v)
    return basis


def _echelon_mod(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Forward elimination mod p; returns the reduced matrix and pivot cols."""
    m = mat % p
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        col = m[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r, c:] = (m[r, c:] * inv) % p
        below = m[r + 1 :, c]
        hot = np.nonzero(below)[0]
        if hot.size:
            idx = hot + r + 1
            m[idx, c:] = (m[idx, c:] - np.outer(m[idx, c], m[r, c:])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def _kernel_mod(mat: np.ndarray, p: int) -> list[np.ndarray]:
    """Right kernel basis mod p (one vector per free column)."""
    m, pivots = _echelon_mod(mat, p)
    ncols = m.shape[1]
    pivset = set(pivots)
    out = []
    for fc in range(ncols):
        if fc in pivset:
            continue
        v = np.zeros(ncols, dtype=np.int64)
        v[fc] = 1
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            if c > fc:
                continue
            s = int(np.dot(m[r, c + 1 :].astype(object), v[c + 1 :].astype(object))) % p
            v[c] = (-s) % p
        out.append(v)
    return out


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    t = ((r2 - r1) * pow(m1, -1, m2)) % m2
    return r1 + m1 * t, m1 * m2


def _rational_reconstruct(x: int, m: int) -> Fraction | None:
    """num/den with x*den == num (mod m) and |num|, den <= sqrt(m/2)."""
    bound = integer_sqrt_bound(m)
    r0, r1 = m, x % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    num, den = (r1, s1) if s1 > 0 else (-r1, -s1)
    if gcd(num, den) != 1 or (num - x * den) % m != 0:
        return None
    return Fraction(num, den)


class KernelResult:
    """Outcome of kernel_int_crt: the certified dimension, and when the
    dimension is one, a primitive integer kernel vector."""

    def __init__(self, dimension: int, vector: list[int] | None, primes_used: int):
        self.dimension = dimension
        self.vector = vector
        self.primes_used = primes_used


def kernel_int_crt(rows: list[list[int]], max_primes: int = 64) -> KernelResult:
    """Kernel of an integer matrix expected to have nullity one.

    Each good prime certifies an upper bound on the rational nullity; when
    that bound is one, residues of the normalized kernel vector are CRT
    combined and rationally reconstructed until the lifted vector passes an
    exact residual check over the integers.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    prime_iter = primes_below(_PRIME_START)
    modulus = None
    residues = None
    anchor = None
    dims_seen = []
    used = 0
    for p in prime_iter:
        used += 1
        if used > max_primes:
            raise RuntimeError("kernel reconstruction did not converge")
        reduced = np.array([[x % p for x in row] for row in rows], dtype=np.int64)
        kern = _kernel_mod(reduced, p)
        dims_seen.append(len(kern))
        if len(kern) == 0:
            return KernelResult(0, None, used)
        if len(kern) != 1:
            # possibly an unlucky prime; give it two more chances
            if len(dims_seen) >= 3 and min(dims_seen) >= 2:
                return KernelResult(min(dims_seen), None, used)
            continue
        v = kern[0]
        if anchor is None:
            nz = np.nonzero(v)[0]
            anchor = int(nz[0])
        if v[anchor] % p == 0:
            continue
        scale = pow(int(v[anchor]), -1, p)
        vp = [(int(x) * scale) % p for x in v]
        if modulus is None:
            residues, modulus = vp, p
        else:
            residues = [
                _crt_pair(r1, modulus, r2, p)[0] for r1, r2 in zip(residues, vp)
            ]
            modulus *= p
        lifted = [_rational_reconstruct(r, modulus) for r in residues]
        if any(f is None for f in lifted):
            continue
        ints = _clear_denominators(lifted)
        if _is_kernel_vector(rows, ints):
            return KernelResult(1, ints, used)
    raise RuntimeError("prime supply exhausted")


def _clear_denominators(vec: list[Fraction]) -> list[int]:
    denom = 1
    for f in vec:
        denom = denom * f.denominator // gcd(denom, f.denominator)
    ints = [int(f * denom) for f in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return [x // g for x in ints] if g else ints


def _is_kernel_vector(rows: list[list[int]], vec: list[int]) -> bool:
    if not any(vec):
        return False
    for row in rows:
        if sum(a * b for a, b in zip(row, vec) if b) != 0:
            return False
    return True


__all__ = ["nullspace_exact", "kernel_int_crt", "KernelResult"]
