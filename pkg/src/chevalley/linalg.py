"""Dense exact matrices over Python scalars: products, elimination, HNF."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Callable, Sequence

Matrix = list[list]


def identity(n: int, one=1, zero=0) -> Matrix:
    return [[one if r == c else zero for c in range(n)] for r in range(n)]


def zeros(rows: int, cols: int, zero=0) -> Matrix:
    return [[zero] * cols for _ in range(rows)]


def matmul(a: Matrix, b: Matrix, norm: Callable | None = None, zero=0) -> Matrix:
    """Product skipping zero entries of the left factor."""
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [zero] * cols
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for c in range(cols):
                    y = bk[c]
                    if y:
                        acc[c] = acc[c] + x * y
        if norm is not None:
            acc = [norm(x) for x in acc]
        out.append(acc)
    return out


def matadd(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(a: Matrix, s) -> Matrix:
    return [[s * x for x in row] for row in a]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def kron(a: Matrix, b: Matrix) -> Matrix:
    nb, mb = len(b), len(b[0]) if b else 0
    out = zeros(len(a) * nb, (len(a[0]) if a else 0) * mb)
    for i, ra in enumerate(a):
        for j, x in enumerate(ra):
            if x:
                for k, rb in enumerate(b):
                    row = out[i * nb + k]
                    for l, y in enumerate(rb):
                        if y:
                            row[j * mb + l] = x * y
    return out


def is_integral(a: Matrix) -> bool:
    return all(not isinstance(x, Fraction) or x.denominator == 1 for row in a for x in row)


def to_int(a: Matrix) -> Matrix:
    if not is_integral(a):
        raise ValueError("matrix has non-integral entries")
    return [[int(x) for x in row] for row in a]


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    ncols = len(m[0]) if m else 0
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q using fraction-free elimination on integer-scaled rows."""
    m = [_scale_to_int(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rk = 0
    for c in range(ncols):
        p = next((i for i in range(rk, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[rk], m[p] = m[p], m[rk]
        piv = m[rk]
        a = piv[c]
        for i in range(rk + 1, len(m)):
            b = m[i][c]
            if b:
                row = [a * x - b * y for x, y in zip(m[i], piv)]
                m[i] = _primitive(row)
        rk += 1
        if rk == len(m):
            break
    return rk


def _scale_to_int(row: Sequence) -> list[int]:
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    return [int(x * den) for x in row]


def _primitive(row: list[int]) -> list[int]:
    from math import gcd
    g = 0
    for x in row:
        g = gcd(g, x)
        if g == 1:
            return row
    return [x // g for x in row] if g else row


def solve(a: Matrix, b: Sequence) -> list[Fraction] | None:
    """One solution x of a x = b over Q, or None if inconsistent."""
    n = len(a[0]) if a else 0
    aug = [list(r) + [y] for r, y in zip(a, b)]
    red, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(red, piv):
        x[c] = row[n]
    return x


def nullspace(a: Matrix, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : a x = 0} over Q."""
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    red, piv = rref(a) if a else ([], [])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, c in zip(red, piv):
            x[c] = -row[f]
        basis.append(x)
    return basis


def inverse(a: Matrix, ring) -> Matrix:
    """Inverse over a ring descriptor, pivoting only on units."""
    n = len(a)
    m = [[ring.norm(x) for x in row] + [ring.one if i == j else ring.zero for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        p = next((i for i in range(c, n) if ring.is_unit(m[i][c])), None)
        if p is None:
            raise ZeroDivisionError("matrix is not invertible over the ring")
        m[c], m[p] = m[p], m[c]
        inv = ring.inv(m[c][c])
        m[c] = [ring.norm(x * inv) for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [ring.norm(x - f * y) for x, y in zip(m[i], m[c])]
    return [row[n:] for row in m]


def hnf(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row Hermite normal form basis of the Z-span of integer rows."""
    m = [list(map(int, r)) for r in rows if any(r)]
    if not m:
        return []
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        # gcd-combine column c into row r
        for i in range(r + 1, len(m)):
            if m[i][c]:
                a, b = m[r][c], m[i][c]
                g, s, t = _xgcd(a, b)
                ra, rb = m[r], m[i]
                m[r] = [s * x + t * y for x, y in zip(ra, rb)]
                m[i] = [(a // g) * y - (b // g) * x for x, y in zip(ra, rb)]
        if r < len(m) and m[r][c]:
            if m[r][c] < 0:
                m[r] = [-x for x in m[r]]
            piv = m[r][c]
            for i in range(r):
                q = m[i][c] // piv
                if q:
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
            r += 1
            if r == len(m):
                break
    return [row for row in m[:r] if any(row)]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def lattice_basis(vectors: Sequence[Sequence]) -> list[list[Fraction]]:
    """HNF basis of the Z-span of rational vectors."""
    den = 1
    for v in vectors:
        for x in v:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
    ints = [[int(Fraction(x) * den) for x in v] for v in vectors]
    return [[Fraction(x, den) for x in row] for row in hnf(ints)]


def dual_lattice(basis: Sequence[Sequence]) -> list[list[Fraction]]:
    """HNF basis of {f : f . b in Z for all b} for a full-rank square basis."""
    n = len(basis)
    inv = inverse([[Fraction(x) for x in row] for row in basis], _QRing)
    # rows of inv^T pair to delta with the basis rows
    return lattice_basis(transpose(inv))


class _QRing:
    one = Fraction(1)
    zero = Fraction(0)

    @staticmethod
    def norm(x):
        return x

    @staticmethod
    def is_unit(x):
        return x != 0

    @staticmethod
    def inv(x):
        return 1 / x
