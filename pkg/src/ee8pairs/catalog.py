"""Constructors for the named lattices: root lattices, their doubled forms,
the rank-16 Barnes-Wall lattice, and tensor products.

Standard embeddings: A_n in the zero-sum hyperplane of Z^(n+1); D_n in Z^n;
E8 with doubled coordinates at scale 4 so every vector is integral; E6 and E7
as annihilators of fixed A2 / A1 sublattices inside E8.  Constructions are
certified by their computed invariants, not by provenance.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .intmat import hnf_basis
from .lattice import Lattice, annihilator, rescale, tensor


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogId:
    family: str  # A, D, E, AA, DD, EE, BW
    n: int

    def __post_init__(self):
        fam, n = self.family, self.n
        if fam in ("A", "AA") and n < 1:
            raise CatalogError(f"{fam}{n}: need n >= 1")
        elif fam in ("D", "DD") and n < 4:
            raise CatalogError(f"{fam}{n}: need n >= 4")
        elif fam in ("E", "EE") and n not in (6, 7, 8):
            raise CatalogError(f"{fam}{n}: need n in 6, 7, 8")
        elif fam == "BW" and n != 16:
            raise CatalogError(f"BW{n}: only BW16 is provided")
        elif fam not in ("A", "D", "E", "AA", "DD", "EE", "BW"):
            raise CatalogError(f"unknown family {fam!r}")

    @classmethod
    def parse(cls, name: str) -> "CatalogId":
        m = re.fullmatch(r"(AA|DD|EE|BW|A|D|E)(\d+)", name.strip())
        if not m:
            raise CatalogError(f"cannot parse catalog id {name!r}")
        return cls(m.group(1), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.n}"


def _a_n(n: int) -> Lattice:
    rows = []
    for i in range(n):
        row = [0] * (n + 1)
        row[i], row[i + 1] = 1, -1
        rows.append(row)
    return Lattice.from_rows(rows, 1)


def _d_n(n: int) -> Lattice:
    rows = []
    for i in range(n - 1):
        row = [0] * n
        row[i], row[i + 1] = 1, -1
        rows.append(row)
    last = [0] * n
    last[n - 2] = last[n - 1] = 1
    rows.append(last)
    return Lattice.from_rows(rows, 1)


def _e8() -> Lattice:
    # doubled coordinates, scale 4: 2*(e_i - e_{i+1}), 2*(e6 + e7), (1,...,1)
    rows = [[0] * 8 for _ in range(8)]
    for i in range(6):
        rows[i][i], rows[i][i + 1] = 2, -2
    rows[6][5], rows[6][6] = 2, 2
    rows[7] = [1] * 8
    return Lattice.from_rows(rows, 4)


def _e8_sub(kind: str) -> Lattice:
    e8 = _e8()
    if kind == "E7":
        v = [[2, -2, 0, 0, 0, 0, 0, 0]]
    else:  # E6
        v = [[2, -2, 0, 0, 0, 0, 0, 0], [0, 2, -2, 0, 0, 0, 0, 0]]
    s = Lattice.from_rows(v, 4)
    return annihilator(e8, s)


@lru_cache(maxsize=None)
def root_lattice(cid: CatalogId) -> Lattice:
    """Standard embedding of a root lattice A_n / D_n / E6 / E7 / E8."""
    fam, n = cid.family, cid.n
    if fam == "A":
        return _a_n(n)
    if fam == "D":
        return _d_n(n)
    if fam == "E":
        return _e8() if n == 8 else _e8_sub(f"E{n}")
    raise CatalogError(f"{cid} is not a root lattice id")


@lru_cache(maxsize=None)
def ee_lattice(cid: CatalogId) -> Lattice:
    """The doubled form: same coordinates, Gram multiplied by 2."""
    fam = cid.family
    if fam not in ("AA", "DD", "EE"):
        raise CatalogError(f"{cid} is not a doubled-lattice id")
    return rescale(root_lattice(CatalogId(fam[0], cid.n)), 2)


@lru_cache(maxsize=None)
def bw16() -> Lattice:
    """Rank-16 Barnes-Wall lattice from the first-order Reed-Muller code.

    Vectors x in Z^16 with x mod 2 in RM(1,4) and coordinate sum = 0 mod 4,
    at scale 2.  Certified below by rank/determinant/minimum/rootlessness.
    """
    gens = [[1] * 16]
    for k in range(4):
        gens.append([(i >> k) & 1 for i in range(16)])
    for i in range(1, 16):
        row = [0] * 16
        row[0], row[i] = 2, -2
        gens.append(row)
    four = [0] * 16
    four[0] = 4
    gens.append(four)
    lat = Lattice.from_rows(hnf_basis(gens), 2)
    assert lat.rank == 16
    return lat


@lru_cache(maxsize=None)
def tensor_lattice(cid1: CatalogId, cid2: CatalogId) -> Lattice:
    """Tensor product of two root lattices (Kronecker basis and Gram)."""
    return tensor(root_lattice(cid1), root_lattice(cid2))


def catalog_lattice(name: str) -> Lattice:
    """Resolve catalog names: 'A2', 'EE8', 'BW16', 'A2*E8' (tensor)."""
    name = name.strip()
    if "*" in name:
        left, right = name.split("*", 1)
        return tensor_lattice(CatalogId.parse(left), CatalogId.parse(right))
    cid = CatalogId.parse(name)
    if cid.family == "BW":
        return bw16()
    if cid.family in ("A", "D", "E"):
        return root_lattice(cid)
    return ee_lattice(cid)
