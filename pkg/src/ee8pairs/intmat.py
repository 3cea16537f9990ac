"""Exact dense linear algebra over the integers and rationals.

Vectors are rows and matrices act on the right throughout the package.
Everything here is pure Python integer / Fraction arithmetic; no floats.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

IntRows = list[list[int]]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) = x*a + y*b."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _content(rows: Iterable[Iterable[int]]) -> int:
    g = 0
    for row in rows:
        for v in row:
            g = gcd(g, v)
            if g == 1:
                return 1
    return g


@dataclass(frozen=True)
class RatMatrix:
    """Dense rational matrix: integer numerators over one positive denominator.

    Normalised so den >= 1 and gcd(den, content of num) == 1.
    """

    num: tuple[tuple[int, ...], ...]
    den: int

    def __post_init__(self):
        if self.den <= 0:
            raise ValueError("denominator must be positive")
        g = gcd(self.den, _content(self.num))
        if g > 1:
            object.__setattr__(
                self, "num", tuple(tuple(v // g for v in row) for row in self.num)
            )
            object.__setattr__(self, "den", self.den // g)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int | Fraction]]) -> "RatMatrix":
        den = 1
        for row in rows:
            for v in row:
                if isinstance(v, Fraction):
                    den = den * v.denominator // gcd(den, v.denominator)
        num = tuple(
            tuple(int(v * den) if isinstance(v, Fraction) else int(v) * den for v in row)
            for row in rows
        )
        return cls(num, den)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), 1)

    @property
    def rows(self) -> int:
        return len(self.num)

    @property
    def cols(self) -> int:
        return len(self.num[0]) if self.num else 0

    def entry(self, i: int, j: int) -> Fraction:
        return Fraction(self.num[i][j], self.den)

    def row(self, i: int) -> list[Fraction]:
        return [Fraction(v, self.den) for v in self.num[i]]

    def to_fractions(self) -> list[list[Fraction]]:
        return [[Fraction(v, self.den) for v in row] for row in self.num]

    @property
    def is_integral(self) -> bool:
        return self.den == 1

    def int_rows(self) -> IntRows:
        if self.den != 1:
            raise ValueError("matrix is not integral")
        return [list(row) for row in self.num]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(tuple(zip(*self.num)) if self.num else (), self.den)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        d = self.den * other.den // gcd(self.den, other.den)
        a, b = d // self.den, d // other.den
        return RatMatrix(
            tuple(
                tuple(a * x + b * y for x, y in zip(r1, r2))
                for r1, r2 in zip(self.num, other.num)
            ),
            d,
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + other.scale(-1)

    def scale(self, c: int | Fraction) -> "RatMatrix":
        c = Fraction(c)
        return RatMatrix(
            tuple(tuple(v * c.numerator for v in row) for row in self.num),
            self.den * c.denominator,
        )

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        bt = list(zip(*other.num)) if other.num else []
        num = tuple(
            tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in self.num
        )
        return RatMatrix(num, self.den * other.den)

    def __neg__(self) -> "RatMatrix":
        return self.scale(-1)


@dataclass(frozen=True)
class SmithSequence:
    """Divisibility chain d1 | d2 | ... of a matrix; zeros only at the tail."""

    entries: tuple[int, ...]

    def __post_init__(self):
        es = self.entries
        for a, b in zip(es, es[1:]):
            if a == 0 and b != 0:
                raise ValueError("zeros must be trailing")
            if a != 0 and b % a != 0:
                raise ValueError(f"not a divisibility chain: {es}")

    @property
    def rank(self) -> int:
        return sum(1 for d in self.entries if d)

    def nontrivial(self) -> tuple[int, ...]:
        return tuple(d for d in self.entries if d > 1)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self) -> str:
        if not self.entries:
            return "()"
        out = []
        i = 0
        es = self.entries
        while i < len(es):
            j = i
            while j < len(es) and es[j] == es[i]:
                j += 1
            out.append(f"{es[i]}^{j - i}" if j - i > 1 else str(es[i]))
            i = j
        return " ".join(out)


def hnf(rows: Sequence[Sequence[int]], ncols: int | None = None):
    """Row Hermite normal form.

    Returns (H, U) with U unimodular, H = U*rows; pivots positive, entries
    above each pivot reduced into [0, pivot), zero rows last.
    """
    mat = [list(map(int, r)) for r in rows]
    m = len(mat)
    n = ncols if ncols is not None else (len(mat[0]) if mat else 0)
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    pr = 0
    for col in range(n):
        piv = next((i for i in range(pr, m) if mat[i][col]), None)
        if piv is None:
            continue
        mat[pr], mat[piv] = mat[piv], mat[pr]
        U[pr], U[piv] = U[piv], U[pr]
        for i in range(pr + 1, m):
            b = mat[i][col]
            if b == 0:
                continue
            a = mat[pr][col]
            g, x, y = xgcd(a, b)
            u, v = a // g, b // g
            mat[pr], mat[i] = (
                [x * p + y * q for p, q in zip(mat[pr], mat[i])],
                [-v * p + u * q for p, q in zip(mat[pr], mat[i])],
            )
            U[pr], U[i] = (
                [x * p + y * q for p, q in zip(U[pr], U[i])],
                [-v * p + u * q for p, q in zip(U[pr], U[i])],
            )
        if mat[pr][col] < 0:
            mat[pr] = [-v for v in mat[pr]]
            U[pr] = [-v for v in U[pr]]
        pr += 1
        if pr == m:
            break
    # reduce entries above each pivot into [0, pivot)
    for i in range(pr):
        p = next(j for j, v in enumerate(mat[i]) if v)
        for k in range(i):
            q = mat[k][p] // mat[i][p]
            if q:
                mat[k] = [a - q * b for a, b in zip(mat[k], mat[i])]
                U[k] = [a - q * b for a, b in zip(U[k], U[i])]
    return mat, U


def hnf_basis(rows: Sequence[Sequence[int]], ncols: int | None = None) -> IntRows:
    """Nonzero rows of the Hermite normal form (canonical lattice basis)."""
    H, _ = hnf(rows, ncols)
    return [r for r in H if any(r)]


def kernel(mat: "RatMatrix | Sequence[Sequence[int]]") -> IntRows:
    """Saturated basis of {x integer row : x*mat = 0}, in HNF."""
    rows = mat.num if isinstance(mat, RatMatrix) else mat
    rows = [list(map(int, r)) for r in rows]
    m = len(rows)
    H, U = hnf(rows)
    r = sum(1 for row in H if any(row))
    return hnf_basis(U[r:], m) if r < m else []


def snf(rows: Sequence[Sequence[int]]):
    """Smith normal form with transforms.

    Returns (S, U, V): U, V unimodular with U*rows*V diagonal, diagonal
    entries S forming a divisibility chain (zeros trailing).
    """
    m = [list(map(int, r)) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    U = [[int(i == j) for j in range(nr)] for i in range(nr)]
    V = [[int(i == j) for j in range(nc)] for i in range(nc)]
    diag: list[int] = []
    t = 0
    while t < min(nr, nc):
        piv = None
        for i in range(t, nr):
            for j in range(t, nc):
                if m[i][j] and (piv is None or abs(m[i][j]) < abs(m[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i0, j0 = piv
        m[t], m[i0] = m[i0], m[t]
        U[t], U[i0] = U[i0], U[t]
        for row in m:
            row[t], row[j0] = row[j0], row[t]
        for row in V:
            row[t], row[j0] = row[j0], row[t]
        while True:
            changed = False
            for i in range(t + 1, nr):
                b = m[i][t]
                if b == 0:
                    continue
                a = m[t][t]
                if b % a == 0:
                    q = b // a
                    m[i] = [p - q * r for p, r in zip(m[i], m[t])]
                    U[i] = [p - q * r for p, r in zip(U[i], U[t])]
                else:
                    g, x, y = xgcd(a, b)
                    u, v = a // g, b // g
                    m[t], m[i] = (
                        [x * p + y * q for p, q in zip(m[t], m[i])],
                        [-v * p + u * q for p, q in zip(m[t], m[i])],
                    )
                    U[t], U[i] = (
                        [x * p + y * q for p, q in zip(U[t], U[i])],
                        [-v * p + u * q for p, q in zip(U[t], U[i])],
                    )
                    changed = True
            for j in range(t + 1, nc):
                b = m[t][j]
                if b == 0:
                    continue
                a = m[t][t]
                if b % a == 0:
                    q = b // a
                    for row in m:
                        row[j] -= q * row[t]
                    for row in V:
                        row[j] -= q * row[t]
                else:
                    g, x, y = xgcd(a, b)
                    u, v = a // g, b // g
                    for row in m:
                        ct, cj = row[t], row[j]
                        row[t] = x * ct + y * cj
                        row[j] = -v * ct + u * cj
                    for row in V:
                        ct, cj = row[t], row[j]
                        row[t] = x * ct + y * cj
                        row[j] = -v * ct + u * cj
                    changed = True
            if not changed:
                if all(m[i][t] == 0 for i in range(t + 1, nr)) and all(
                    m[t][j] == 0 for j in range(t + 1, nc)
                ):
                    break
        d = m[t][t]
        bad = next(
            (
                i
                for i in range(t + 1, nr)
                if any(m[i][j] % d for j in range(t + 1, nc))
            ),
            None,
        )
        if bad is not None:
            m[t] = [p + q for p, q in zip(m[t], m[bad])]
            U[t] = [p + q for p, q in zip(U[t], U[bad])]
            continue
        if d < 0:
            m[t] = [-v for v in m[t]]
            U[t] = [-v for v in U[t]]
        diag.append(m[t][t])
        t += 1
    diag += [0] * (min(nr, nc) - len(diag))
    return SmithSequence(tuple(diag)), U, V


def smith_diagonal(rows: Sequence[Sequence[int]]) -> SmithSequence:
    return snf(rows)[0]


def solve(a: RatMatrix, b: Sequence[int | Fraction]):
    """Solve x*a = b over the rationals; None when inconsistent.

    When `a` has full row rank the solution is unique.
    """
    sols = solve_left(a, RatMatrix.from_rows([list(b)]))
    return None if sols is None else sols.row(0)


def solve_left(a: RatMatrix, b: RatMatrix):
    """Solve X*a = b for a whole matrix of right-hand sides; None if any fails."""
    m, n = a.rows, a.cols
    if b.cols != n:
        raise ValueError("shape mismatch")
    # Gaussian elimination on a^T | b^T  (columns of x indexed by rows of a)
    A = [[Fraction(a.num[i][j], a.den) for i in range(m)] for j in range(n)]
    B = [[Fraction(b.num[i][j], b.den) for i in range(b.rows)] for j in range(n)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        B[r], B[piv] = B[piv], B[r]
        pv = A[r][c]
        A[r] = [v / pv for v in A[r]]
        B[r] = [v / pv for v in B[r]]
        for i in range(n):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [p - f * q for p, q in zip(A[i], A[r])]
                B[i] = [p - f * q for p, q in zip(B[i], B[r])]
        pivots.append((r, c))
        r += 1
    for i in range(r, n):
        if any(B[i]):
            return None
    x = [[Fraction(0)] * m for _ in range(b.rows)]
    for row, col in pivots:
        for k in range(b.rows):
            x[k][col] = B[row][k]
    return RatMatrix.from_rows(x)


def det(mat: RatMatrix) -> Fraction:
    """Exact determinant (Bareiss fraction-free on the numerators)."""
    if mat.rows != mat.cols:
        raise ValueError("determinant of a non-square matrix")
    n = mat.rows
    if n == 0:
        return Fraction(1)
    return Fraction(det_int([list(r) for r in mat.num]), mat.den**n)


def det_int(m: IntRows) -> int:
    m = [row[:] for row in m]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if m[i][k]), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def write_matrix_text(rows: Sequence[Sequence[int]], den: int = 1) -> str:
    """Matrix text format: "rows cols" header, row-major entries, optional "/ d"."""
    body = "\n".join(" ".join(str(v) for v in row) for row in rows)
    header = f"{len(rows)} {len(rows[0]) if rows else 0}"
    return f"{header}\n{body}\n" + (f"/ {den}\n" if den != 1 else "")


def read_matrix_text(text: str) -> tuple[IntRows, int]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    try:
        nr, nc = map(int, lines[0].split())
    except ValueError as e:
        raise ValueError(f"bad matrix header: {lines[0]!r}") from e
    den = 1
    if lines[-1].lstrip().startswith("/"):
        den = int(lines[-1].lstrip()[1:])
        lines = lines[:-1]
    flat: list[int] = []
    for ln in lines[1:]:
        flat.extend(int(tok) for tok in ln.split())
    if len(flat) != nr * nc:
        raise ValueError(f"expected {nr * nc} entries, got {len(flat)}")
    return [flat[i * nc : (i + 1) * nc] for i in range(nr)], den
