"""Embedded lattices: integer coordinates, a rational scale, sublattice calculus.

A Lattice is a free Z-module of integer coordinate rows in an ambient space
whose inner product is (x . y) / scale.  Operations combining two lattices
require equal ambient dimension and scale; equality is canonical-basis
equality after removing common coordinate content.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

from .intmat import (
    RatMatrix,
    SmithSequence,
    det,
    det_int,
    hnf_basis,
    kernel,
    snf,
    solve_left,
)


class LatticeError(ValueError):
    pass


class GlueError(LatticeError):
    pass


@dataclass(frozen=True)
class Lattice:
    ambient_dim: int
    scale: Fraction
    basis: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.ambient_dim < 0:
            raise LatticeError("negative ambient dimension")
        object.__setattr__(self, "scale", Fraction(self.scale))
        if self.scale <= 0:
            raise LatticeError("scale must be positive")
        basis = tuple(tuple(int(v) for v in row) for row in self.basis)
        object.__setattr__(self, "basis", basis)
        for row in basis:
            if len(row) != self.ambient_dim:
                raise LatticeError("basis row width != ambient_dim")
        if basis and len(hnf_basis(basis)) != len(basis):
            raise LatticeError("basis rows are linearly dependent")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], scale: int | Fraction,
                  ambient_dim: int | None = None) -> "Lattice":
        rows = [list(map(int, r)) for r in rows]
        n = ambient_dim if ambient_dim is not None else (len(rows[0]) if rows else 0)
        return cls(n, Fraction(scale), tuple(tuple(r) for r in rows))

    @classmethod
    def zero(cls, ambient_dim: int, scale: int | Fraction = 1) -> "Lattice":
        return cls(ambient_dim, Fraction(scale), ())

    @property
    def rank(self) -> int:
        return len(self.basis)

    def gram(self) -> RatMatrix:
        return _gram_cached(self)

    def det(self) -> Fraction:
        return det(self.gram())

    @property
    def is_integral(self) -> bool:
        return self.gram().is_integral

    @property
    def is_even(self) -> bool:
        g = self.gram()
        return g.is_integral and all(g.num[i][i] % 2 == 0 for i in range(self.rank))

    def content_reduced(self) -> "Lattice":
        """Divide out common coordinate content g (scale falls by g^2)."""
        g = 0
        for row in self.basis:
            for v in row:
                g = gcd(g, v)
        if g <= 1:
            return self
        return Lattice(
            self.ambient_dim,
            self.scale / (g * g),
            tuple(tuple(v // g for v in row) for row in self.basis),
        )

    def canonical(self) -> "Lattice":
        """Content-reduced HNF representative; the equality key."""
        red = self.content_reduced()
        if not red.basis:
            return Lattice(red.ambient_dim, Fraction(1), ())
        return Lattice(
            red.ambient_dim, red.scale, tuple(map(tuple, hnf_basis(red.basis)))
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        a, b = self.canonical(), other.canonical()
        return (a.ambient_dim, a.scale, a.basis) == (b.ambient_dim, b.scale, b.basis)

    def __hash__(self):
        c = self.canonical()
        return hash((c.ambient_dim, c.scale, c.basis))

    def basis_matrix(self) -> RatMatrix:
        return RatMatrix.from_rows(self.basis)

    def contains_vector(self, v: Sequence[int | Fraction]) -> bool:
        if not self.basis:
            return all(x == 0 for x in v)
        coeff = solve_left(self.basis_matrix(), RatMatrix.from_rows([list(v)]))
        return coeff is not None and coeff.is_integral


@lru_cache(maxsize=8192)
def _gram_cached(lat: Lattice) -> RatMatrix:
    b = lat.basis
    num = tuple(tuple(sum(x * y for x, y in zip(r1, r2)) for r2 in b) for r1 in b)
    return RatMatrix(num, 1).scale(Fraction(1) / lat.scale)


def gram(lat: Lattice) -> RatMatrix:
    return lat.gram()


def _check_compatible(l1: Lattice, l2: Lattice):
    if l1.ambient_dim != l2.ambient_dim or l1.scale != l2.scale:
        raise LatticeError(
            f"ambient/scale mismatch: ({l1.ambient_dim}, {l1.scale}) vs "
            f"({l2.ambient_dim}, {l2.scale})"
        )


def lattice_sum(l1: Lattice, l2: Lattice) -> Lattice:
    """Lattice generated by both row sets; basis canonicalised by HNF."""
    _check_compatible(l1, l2)
    rows = list(l1.basis) + list(l2.basis)
    return Lattice(l1.ambient_dim, l1.scale,
                   tuple(map(tuple, hnf_basis(rows, l1.ambient_dim))))


def intersect(l1: Lattice, l2: Lattice) -> Lattice:
    """All vectors lying in both lattices."""
    _check_compatible(l1, l2)
    if not l1.basis or not l2.basis:
        return Lattice.zero(l1.ambient_dim, l1.scale)
    stacked = [list(r) for r in l1.basis] + [[-v for v in r] for r in l2.basis]
    ker = kernel(stacked)
    r1 = l1.rank
    rows = [
        [sum(k[i] * l1.basis[i][j] for i in range(r1)) for j in range(l1.ambient_dim)]
        for k in ker
    ]
    return Lattice(l1.ambient_dim, l1.scale,
                   tuple(map(tuple, hnf_basis(rows, l1.ambient_dim))))


def annihilator(host: Lattice, s: Lattice) -> Lattice:
    """Vectors of `host` orthogonal to everything in `s`."""
    _check_compatible(host, s)
    if not host.basis:
        return host
    if not s.basis:
        return host
    prod = [
        [sum(x * y for x, y in zip(hrow, srow)) for srow in s.basis]
        for hrow in host.basis
    ]
    ker = kernel(prod)
    rows = [
        [sum(k[i] * host.basis[i][j] for i in range(host.rank))
         for j in range(host.ambient_dim)]
        for k in ker
    ]
    return Lattice(host.ambient_dim, host.scale,
                   tuple(map(tuple, hnf_basis(rows, host.ambient_dim))))


def invert(m: RatMatrix) -> RatMatrix:
    inv = solve_left(m, RatMatrix.identity(m.rows))
    if inv is None:
        raise LatticeError("matrix not invertible")
    return inv


def dual(lat: Lattice) -> Lattice:
    """Dual lattice within span(lat); coordinates rescaled to stay integral."""
    if not lat.basis:
        return lat
    rows = invert(lat.gram()) @ lat.basis_matrix()
    d = rows.den
    return Lattice(lat.ambient_dim, lat.scale * d * d,
                   rows.num).content_reduced()


def discriminant_group(lat: Lattice) -> SmithSequence:
    """Smith sequence of the Gram matrix (presents dual(L)/L for integral L)."""
    g = lat.gram()
    if not g.is_integral:
        raise LatticeError("discriminant group needs an integral lattice")
    return snf(g.int_rows())[0]


def rescale(lat: Lattice, c: int | Fraction) -> Lattice:
    """Multiply the quadratic form by c (same coordinates, scale / c)."""
    c = Fraction(c)
    if c <= 0:
        raise LatticeError("rescale factor must be positive")
    return Lattice(lat.ambient_dim, lat.scale / c, lat.basis)


def _two_square_decomp(s: Fraction) -> tuple[int, Fraction, int]:
    """Write s = 2^e * r^2 * w with w odd squarefree and r rational."""
    n = s.numerator * s.denominator
    e = 0
    while n % 2 == 0:
        n //= 2
        e += 1
    m, w, d = 1, 1, 3
    while d * d <= n:
        while n % (d * d) == 0:
            n //= d * d
            m *= d
        if n % d == 0:
            n //= d
            w *= d
        d += 2
    w *= n
    return e, Fraction(m, s.denominator), w


def _lcm_frac(a: Fraction, b: Fraction) -> Fraction:
    num = a.numerator * b.numerator // gcd(a.numerator, b.numerator)
    return Fraction(num, gcd(a.denominator, b.denominator))


def unify_scales(l1: Lattice, l2: Lattice) -> tuple[Lattice, Lattice]:
    """Re-embed both lattices at one common scale.

    Allowed moves: multiply coordinates by an integer (scale * k^2) and
    duplicate coordinates side by side (scale * 2).  Works whenever the scale
    ratio is a power of two times a rational square; raises otherwise.
    """
    if l1.scale == l2.scale:
        return l1, l2
    e1, r1, w1 = _two_square_decomp(l1.scale)
    e2, r2, w2 = _two_square_decomp(l2.scale)
    if w1 != w2:
        raise LatticeError(f"scales {l1.scale} and {l2.scale} cannot be unified")
    E = max(e1, e2)
    rt = _lcm_frac(r1, r2)

    def lift(lat: Lattice, e: int, r: Fraction) -> Lattice:
        rows = [list(row) for row in lat.basis]
        width = lat.ambient_dim
        scale = lat.scale
        if (E - e) % 2 == 1:
            rows = [row + row for row in rows]
            width *= 2
            scale *= 2
            e += 1
        k = rt / r * Fraction(2) ** ((E - e) // 2)
        assert k.denominator == 1 and k > 0
        k = int(k)
        return Lattice(width, scale * k * k,
                       tuple(tuple(v * k for v in row) for row in rows))

    a, b = lift(l1, e1, r1), lift(l2, e2, r2)
    assert a.scale == b.scale
    return a, b


def direct_sum(l1: Lattice, l2: Lattice) -> Lattice:
    """Orthogonal direct sum; Gram is block diagonal."""
    a, b = unify_scales(l1, l2)
    n1, n2 = a.ambient_dim, b.ambient_dim
    rows = [list(r) + [0] * n2 for r in a.basis] + [[0] * n1 + list(r) for r in b.basis]
    return Lattice(n1 + n2, a.scale, tuple(map(tuple, rows)))


def direct_sum_all(lats: Sequence[Lattice]) -> Lattice:
    out = lats[0]
    for lat in lats[1:]:
        out = direct_sum(out, lat)
    return out


def tensor(l1: Lattice, l2: Lattice) -> Lattice:
    """Tensor product: Kronecker basis, Gram = Gram1 (x) Gram2."""
    rows = [
        [x * y for x in r1 for y in r2] for r1 in l1.basis for r2 in l2.basis
    ]
    return Lattice(l1.ambient_dim * l2.ambient_dim, l1.scale * l2.scale,
                   tuple(map(tuple, rows)))


def glue(components: Sequence[Lattice],
         glue_vectors: Sequence[Sequence[int | Fraction]]) -> Lattice:
    """Overlattice of an orthogonal sum generated by extra coset vectors.

    Components share one ambient space and must be pairwise orthogonal.  Glue
    vectors must lie in the rational span of the sum and pair integrally with
    every component (dual membership).  Whether the result is integral is the
    caller's concern: query `.is_integral` on it.
    """
    if not components:
        raise GlueError("no components")
    base = components[0]
    for c in components[1:]:
        _check_compatible(base, c)
    for i, a in enumerate(components):
        for b in components[i + 1 :]:
            for ra in a.basis:
                for rb in b.basis:
                    if sum(x * y for x, y in zip(ra, rb)) != 0:
                        raise GlueError("components are not orthogonal")
    allrows = [list(r) for c in components for r in c.basis]
    span = RatMatrix.from_rows(allrows) if allrows else None
    fracs: list[list[Fraction]] = []
    k = 1
    for gv in glue_vectors:
        gv = [Fraction(v) for v in gv]
        if span is None or solve_left(span, RatMatrix.from_rows([gv])) is None:
            raise GlueError(f"glue vector outside the component span: {gv}")
        for row in allrows:
            if (sum(x * y for x, y in zip(gv, row)) / base.scale).denominator != 1:
                raise GlueError(f"glue vector not in the dual of the sum: {gv}")
        for v in gv:
            k = k * v.denominator // gcd(k, v.denominator)
        fracs.append(gv)
    rows = [[v * k for v in row] for row in allrows]
    rows += [[int(v * k) for v in gv] for gv in fracs]
    return Lattice(
        base.ambient_dim, base.scale * k * k, tuple(map(tuple, hnf_basis(rows)))
    ).content_reduced()


def index_in(sub: Lattice, lat: Lattice) -> int:
    """|lat / sub| for a finite-index sublattice (equal ranks required)."""
    _check_compatible(sub, lat)
    if sub.rank != lat.rank:
        raise LatticeError("rank mismatch")
    if lat.rank == 0:
        return 1
    coords = solve_left(lat.basis_matrix(), sub.basis_matrix())
    if coords is None or not coords.is_integral:
        raise LatticeError("not a sublattice")
    d = det_int(coords.int_rows())
    if d == 0:
        raise LatticeError("degenerate coordinates")
    return abs(d)


def is_sublattice(sub: Lattice, lat: Lattice) -> bool:
    if sub.ambient_dim != lat.ambient_dim or sub.scale != lat.scale:
        return False
    if not sub.basis:
        return True
    coords = solve_left(lat.basis_matrix(), sub.basis_matrix())
    return coords is not None and coords.is_integral


@dataclass(frozen=True)
class Fingerprint:
    """Cheap isometry invariants: rank, determinant, Smith chain, norm counts.

    A heuristic discriminator, not a proof of isometry; it separates every
    catalog type used by the verification tables at the default bound.
    """

    rank: int
    determinant: int
    smith: tuple[int, ...]
    norm_counts: tuple[tuple[int, int], ...]

    def __str__(self) -> str:
        counts = ", ".join(f"{n}:{c}" for n, c in self.norm_counts)
        return (
            f"rank {self.rank}, det {self.determinant}, "
            f"smith {SmithSequence(self.smith)}, counts {{{counts}}}"
        )


def fingerprint(lat: Lattice, norm_bound: int = 6) -> Fingerprint:
    from .shortvec import norm_profile

    g = lat.gram()
    if not g.is_integral:
        raise LatticeError("fingerprint needs an integral lattice")
    smith = snf(g.int_rows())[0]
    d = 1
    for v in smith.entries:
        d *= v
    profile = norm_profile(lat, norm_bound)
    return Fingerprint(lat.rank, d, smith.entries, profile.counts)
