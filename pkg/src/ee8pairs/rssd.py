"""Reflection involutions attached to sublattices, and the isometries they
generate.

For a sublattice S of an integral lattice L, the map that is -1 on span(S)
and +1 on its orthogonal complement preserves L exactly when 2L lies inside
S + ann_L(S) (the RSSD condition).  Pairs of such involutions generate the
dihedral groups this package measures.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .intmat import RatMatrix, hnf_basis, kernel, solve_left
from .lattice import (
    Lattice,
    LatticeError,
    annihilator,
    invert,
    is_sublattice,
    lattice_sum,
)

DEFAULT_ORDER_CAP = 12


class CertificationError(LatticeError):
    pass


@dataclass(frozen=True)
class IsometryMap:
    """Exact rational matrix acting on ambient coordinates from the right,
    certified to preserve the ambient form and a designated lattice."""

    matrix: RatMatrix
    lattice: Lattice

    @classmethod
    def certify(
        cls,
        matrix: RatMatrix,
        lattice: Lattice,
        member: Callable[[list[int]], bool] | None = None,
    ) -> "IsometryMap":
        n = lattice.ambient_dim
        if matrix.rows != n or matrix.cols != n:
            raise CertificationError("matrix shape does not match ambient")
        if matrix @ matrix.transpose() != RatMatrix.identity(n):
            raise CertificationError("matrix does not preserve the inner product")
        images = lattice.basis_matrix() @ matrix
        if not images.is_integral:
            raise CertificationError("a basis image has non-integer coordinates")
        if member is not None:
            for row in images.num:
                if not member(list(row)):
                    raise CertificationError("a basis image leaves the lattice")
        else:
            coeff = solve_left(lattice.basis_matrix(), images)
            if coeff is None or not coeff.is_integral:
                raise CertificationError("a basis image leaves the lattice")
        return cls(matrix, lattice)

    def apply(self, v: Sequence[int | Fraction]) -> list[Fraction]:
        out = RatMatrix.from_rows([list(v)]) @ self.matrix
        return out.row(0)

    def apply_lattice(self, lat: Lattice) -> Lattice:
        """Image of a lattice under the map; coordinates must stay integral."""
        images = lat.basis_matrix() @ self.matrix
        if not images.is_integral:
            raise LatticeError("lattice image has non-integer coordinates")
        return Lattice(lat.ambient_dim, lat.scale,
                       tuple(map(tuple, hnf_basis(images.int_rows()))))


def rssd_check(lat: Lattice, s: Lattice) -> bool:
    """Does 2*lat lie inside s + ann_lat(s)?  (s must be a sublattice.)"""
    if not is_sublattice(s, lat):
        raise LatticeError("S is not a sublattice of L")
    target = lattice_sum(s, annihilator(lat, s))
    return all(
        target.contains_vector([2 * v for v in row]) for row in lat.basis
    )


def projection_matrix(s: Lattice) -> RatMatrix:
    """Orthogonal projection of the ambient space onto span(S), right action."""
    n = s.ambient_dim
    if not s.basis:
        return RatMatrix.from_rows([[0] * n for _ in range(n)])
    b = s.basis_matrix()
    gram_inv = invert(b @ b.transpose())
    return b.transpose() @ gram_inv @ b


def rssd_involution(lat: Lattice, s: Lattice) -> IsometryMap:
    """The involution that is -1 on span(S), +1 on the complement, certified
    to preserve `lat` (raises CertificationError when RSSD fails)."""
    n = lat.ambient_dim
    t = RatMatrix.identity(n) - projection_matrix(s).scale(2)
    return IsometryMap.certify(t, lat)


def product_order(a: IsometryMap, b: IsometryMap,
                  cap: int = DEFAULT_ORDER_CAP) -> int | None:
    """Smallest k <= cap with (a b)^k = identity; None past the cap."""
    return matrix_order(a.matrix @ b.matrix, cap)


def matrix_order(m: RatMatrix, cap: int = DEFAULT_ORDER_CAP) -> int | None:
    ident = RatMatrix.identity(m.rows)
    cur = m
    for k in range(1, cap + 1):
        if cur == ident:
            return k
        cur = cur @ m
    return None


def fixed_sublattice(lat: Lattice, g: IsometryMap) -> Lattice:
    """{x in lat : x g = x}, computed as a saturated kernel inside lat."""
    _require_certified(lat, g)
    n = lat.ambient_dim
    diff = lat.basis_matrix() @ (g.matrix - RatMatrix.identity(n))
    ker = kernel(diff)
    rows = [
        [sum(k[i] * lat.basis[i][j] for i in range(lat.rank)) for j in range(n)]
        for k in ker
    ]
    return Lattice(n, lat.scale, tuple(map(tuple, hnf_basis(rows, n))))


def coinvariant(lat: Lattice, g: IsometryMap) -> Lattice:
    """ann_lat(Fix_lat(g))."""
    return annihilator(lat, fixed_sublattice(lat, g))


def zg_submodule(lat: Lattice, g: IsometryMap, s: Lattice,
                 cap: int = DEFAULT_ORDER_CAP) -> Lattice:
    """Lattice generated by the orbit of S's basis under powers of g."""
    _require_certified(lat, g)
    if not is_sublattice(s, lat):
        raise LatticeError("S is not a sublattice of L")
    order = matrix_order(g.matrix, cap)
    if order is None:
        raise LatticeError(f"isometry order exceeds cap {cap}")
    rows = []
    cur = RatMatrix.identity(lat.ambient_dim)
    for _ in range(order):
        images = s.basis_matrix() @ cur
        if not images.is_integral:
            raise LatticeError("orbit vector leaves integer coordinates")
        rows.extend(images.int_rows())
        cur = cur @ g.matrix
    return Lattice(lat.ambient_dim, lat.scale,
                   tuple(map(tuple, hnf_basis(rows, lat.ambient_dim))))


def _require_certified(lat: Lattice, g: IsometryMap):
    if g.lattice.ambient_dim != lat.ambient_dim:
        raise LatticeError("map certified on a different ambient")
    if g.lattice != lat and not is_sublattice(lat, g.lattice):
        raise LatticeError("map is not certified on this lattice")
