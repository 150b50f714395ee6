"""Exact linear algebra over the integers and rationals.

Everything here works on plain nested lists of ``int`` or ``Fraction``;
no floating point is ever involved.
"""
from __future__ import annotations

from fractions import Fraction


def inverse(matrix):
    """Gauss-Jordan inverse of a square matrix over Q."""
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _clear_denominators(matrix):
    """Scale each row to integers; returns (int_matrix, row_scales)."""
    out, scales = [], []
    for row in matrix:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = den * x.denominator // _gcd(den, x.denominator)
        out.append([int(x * den) for x in row])
        scales.append(den)
    return out, scales


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def leading_minors(matrix, stop_nonpositive: bool = False):
    """Leading principal minors of ``matrix`` by Bareiss elimination.

    Runs fraction-free elimination without pivoting and stops at the first
    vanishing pivot (or the first non-positive one with ``stop_nonpositive``),
    so the returned list may be shorter than the size.
    Entries may be ints or Fractions (each row is scaled to integers first and
    the scale is divided back out of the minors).
    """
    n = len(matrix)
    if n == 0:
        return []
    a, scales = _clear_denominators(matrix)
    minors = []
    prev = 1
    scale = 1
    for k in range(n):
        scale *= scales[k]
        pivot = a[k][k]
        minors.append(Fraction(pivot, scale) if scale != 1 else pivot)
        if pivot == 0 or (stop_nonpositive and pivot < 0):
            break
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return minors


def determinant(matrix):
    """Exact determinant by Bareiss elimination with row pivoting."""
    n = len(matrix)
    if n == 0:
        return 1
    a, scales = _clear_denominators(matrix)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    det = sign * a[n - 1][n - 1]
    total = 1
    for s in scales:
        total *= s
    return Fraction(det, total) if total != 1 else det


_MOD_PRIMES = (2**61 - 1, 2**31 - 1)


def _det_mod(a, p: int) -> int:
    m = [[x % p for x in row] for row in a]
    n = len(m)
    det = 1
    for c in range(n):
        r = next((r for r in range(c, n) if m[r][c]), None)
        if r is None:
            return 0
        if r != c:
            m[c], m[r] = m[r], m[c]
            det = -det
        piv = m[c][c]
        det = det * piv % p
        inv = pow(piv, p - 2, p)
        for i in range(c + 1, n):
            f = m[i][c] * inv % p
            if f:
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[c])]
    return det % p


def is_singular(matrix) -> bool:
    """Exact singularity test; a nonzero determinant mod some prime settles it quickly."""
    a, _ = _clear_denominators(matrix)
    if any(_det_mod(a, p) for p in _MOD_PRIMES):
        return False
    return determinant(matrix) == 0


def classify_symmetric(matrix):
    """Return ``(verdict, witness, minors)`` for a symmetric matrix.

    ``verdict`` is ``positive_definite`` when every leading principal minor is
    positive; otherwise ``degenerate`` if the matrix is singular and
    ``indefinite`` if it is not. ``witness`` is the 1-based size of the first
    non-positive leading minor (None when positive definite); ``minors`` stops
    at the witness.
    """
    minors = leading_minors(matrix, stop_nonpositive=True)
    n = len(matrix)
    for idx, m in enumerate(minors):
        if m <= 0:
            verdict = "degenerate" if is_singular(matrix) else "indefinite"
            return verdict, idx + 1, minors
    assert len(minors) == n
    return "positive_definite", None, minors
