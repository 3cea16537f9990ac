"""The Leech lattice at scale 8, octad sublattices, and isometries.

Coordinates are the integer entries of sqrt(8) times the usual unit-covolume
vectors, so MOG arrays transcribe digit for digit.  Membership has a closed
congruence form: all coordinates share a parity m, the positions whose value
deviates mod 4 support a Golay codeword, and the coordinate sum is 4m mod 8.
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .golay import (
    GolayCode,
    bit_indices,
    golay,
    octads,
    popcount,
    random_code_automorphism,
)
from .intmat import RatMatrix, hnf_basis, kernel
from .lattice import Lattice, LatticeError
from .rssd import IsometryMap

AMBIENT = 24
SCALE = 8


@lru_cache(maxsize=1)
def leech() -> Lattice:
    """Ambient 24, scale 8; generated by doubled octad words, the vector
    (-3, 1^23) and one doubled unit pair, then canonicalised by HNF."""
    gens = [[2 * (w >> i & 1) for i in range(AMBIENT)] for w in octads()]
    gens.append([-3] + [1] * 23)
    pair = [0] * AMBIENT
    pair[0] = pair[1] = 4
    gens.append(pair)
    basis = hnf_basis(gens, AMBIENT)
    lat = Lattice.from_rows(basis, SCALE)
    assert lat.rank == AMBIENT
    return lat


def leech_contains(x: Sequence[int]) -> bool:
    """Congruence membership test, equivalent to solving against the basis."""
    if len(x) != AMBIENT:
        return False
    code = golay()
    m = x[0] % 2
    deviation = 0
    total = 0
    for i, xi in enumerate(x):
        if xi % 2 != m:
            return False
        if (xi - m) % 4:
            deviation |= 1 << i
        total += xi
    if deviation not in code.words:
        return False
    return total % 8 == (4 * m) % 8


def e_octad(octad: int) -> Lattice:
    """E(O): the sublattice of the Leech lattice supported on octad O."""
    if popcount(octad) != 8 or octad not in golay().words:
        raise LatticeError(f"not an octad: {octad:#08x}")
    lam = leech()
    comp = [i for i in range(AMBIENT) if not (octad >> i & 1)]
    restricted = [[row[j] for j in comp] for row in lam.basis]
    ker = kernel(restricted)
    rows = [
        [sum(k[i] * lam.basis[i][j] for i in range(AMBIENT)) for j in range(AMBIENT)]
        for k in ker
    ]
    return Lattice(AMBIENT, Fraction(SCALE), tuple(map(tuple, hnf_basis(rows, AMBIENT))))


def _certify_on_leech(matrix: RatMatrix) -> IsometryMap:
    return IsometryMap.certify(matrix, leech(), member=leech_contains)


@lru_cache(maxsize=1)
def xi() -> IsometryMap:
    """The MOG-columnwise isometry: each column v becomes v - (sum v / 2) * 1,
    then the first column's sign is flipped.

    This is the sign choice under which the two column-0 zero-sum basis
    vectors of E(O) for the hook octad are negated; the opposite global sign
    is also a Leech isometry but disagrees with the fixed-point data the
    explicit pair constructions rely on.
    """
    num = [[0] * AMBIENT for _ in range(AMBIENT)]
    for c in range(6):
        dc = -1 if c == 0 else 1
        for s in range(4):
            for r in range(4):
                a = 1 if r == s else -1  # (2I - J) entries
                num[4 * c + s][4 * c + r] = dc * a
    return _certify_on_leech(RatMatrix(tuple(map(tuple, num)), 2))


def permutation_isometry(perm: Sequence[int]) -> IsometryMap:
    """Coordinate permutation (must preserve the Golay code to fix Leech)."""
    num = [[0] * AMBIENT for _ in range(AMBIENT)]
    for i in range(AMBIENT):
        num[i][perm[i]] = 1
    return _certify_on_leech(RatMatrix(tuple(map(tuple, num)), 1))


def sign_isometry(support: int) -> IsometryMap:
    """Sign change on the support of a Golay codeword."""
    num = [
        [(-1 if support >> i & 1 else 1) if i == j else 0 for j in range(AMBIENT)]
        for i in range(AMBIENT)
    ]
    return _certify_on_leech(RatMatrix(tuple(map(tuple, num)), 1))


def monomial_maps(code: GolayCode | None = None, seed: int = 0,
                  n_permutations: int = 4) -> list[IsometryMap]:
    """A generator set of certified monomial Leech isometries: code-preserving
    coordinate permutations found by backtracking, plus sign changes on the
    code's generator words."""
    code = code or golay()
    rng = random.Random(seed)
    maps = [permutation_isometry(random_code_automorphism(rng))
            for _ in range(n_permutations)]
    maps.extend(sign_isometry(w) for w in code.generators)
    return maps
