"""The binary Golay code in MOG coordinates.

The 24 points are arranged in a 4x6 array; coordinate index = 4*column + row
(column-major).  A 0/1 array belongs to the code iff every column has the
same parity as the top row and the column scores (GF(4) row labels 0, 1, w,
w^2 summed over marked cells) form a hexacode word.  Octad supports and code
automorphisms (via the Steiner system S(5,8,24)) are derived from the word
set itself.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

WORD_BITS = 24

# GF(4) = {0, 1, w, w^2} encoded 0..3; addition is xor
_GF4_MUL = ((0, 0, 0, 0), (0, 1, 2, 3), (0, 2, 3, 1), (0, 3, 1, 2))
_ROW_LABEL = (0, 1, 2, 3)


def popcount(x: int) -> int:
    return bin(x).count("1")


def bit_indices(mask: int) -> list[int]:
    return [i for i in range(WORD_BITS) if mask >> i & 1]


def mog_index(row: int, col: int) -> int:
    return 4 * col + row


def vector_to_mog(v: Sequence) -> list[list]:
    return [[v[mog_index(r, c)] for c in range(6)] for r in range(4)]


def mog_to_vector(rows: Sequence[Sequence]) -> list:
    v = [0] * WORD_BITS
    for r in range(4):
        for c in range(6):
            v[mog_index(r, c)] = rows[r][c]
    return v


def format_mog(v: Sequence, codeword: bool = False) -> str:
    """MOG array display: starred cells for codewords, integer cells else."""
    rows = vector_to_mog(list(v))
    if codeword:
        cells = [["*" if x else "." for x in row] for row in rows]
    else:
        cells = [[str(x) for x in row] for row in rows]
    width = max(len(c) for row in cells for c in row)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


def _hexacode() -> list[tuple[int, ...]]:
    gens = ((1, 0, 0, 1, 3, 2), (0, 1, 0, 1, 2, 3), (0, 0, 1, 1, 1, 1))
    words = set()
    for a in range(4):
        for b in range(4):
            for c in range(4):
                words.add(tuple(
                    _GF4_MUL[a][g1] ^ _GF4_MUL[b][g2] ^ _GF4_MUL[c][g3]
                    for g1, g2, g3 in zip(*gens)))
    return sorted(words)


@dataclass(frozen=True)
class GolayCode:
    words: frozenset[int]
    octad_list: tuple[int, ...]
    generators: tuple[int, ...]

    def __contains__(self, mask: int) -> bool:
        return mask in self.words

    def weight_distribution(self) -> dict[int, int]:
        dist: dict[int, int] = {}
        for w in self.words:
            k = popcount(w)
            dist[k] = dist.get(k, 0) + 1
        return dict(sorted(dist.items()))

    def is_self_dual(self) -> bool:
        gens = self.generators
        return all(popcount(a & b) % 2 == 0 for a in gens for b in gens) and len(
            gens
        ) == 12


def _gf2_basis(words: Iterable[int]) -> list[int]:
    basis: list[int] = []
    for w in sorted(words, reverse=True):
        cur = w
        for b in basis:
            cur = min(cur, cur ^ b)
        if cur:
            basis.append(cur)
            basis.sort(reverse=True)
    return basis


@lru_cache(maxsize=1)
def golay() -> GolayCode:
    hx = _hexacode()
    interp: dict[tuple[int, int], list[int]] = {}
    for mask in range(16):
        rows = [r for r in range(4) if mask >> r & 1]
        score = 0
        for r in rows:
            score ^= _ROW_LABEL[r]
        interp.setdefault((score, len(rows) % 2), []).append(mask)
    words = set()
    for h in hx:
        for parity in range(2):
            opts = [interp[(h[c], parity)] for c in range(6)]
            for bits in range(64):
                masks = [opts[c][bits >> c & 1] for c in range(6)]
                if sum(mk & 1 for mk in masks) % 2 != parity:
                    continue
                w = 0
                for c in range(6):
                    w |= masks[c] << (4 * c)
                words.add(w)
    assert len(words) == 4096
    octad_list = tuple(sorted(w for w in words if popcount(w) == 8))
    gens = tuple(_gf2_basis(words))
    assert len(gens) == 12
    return GolayCode(frozenset(words), octad_list, gens)


def octads(code: GolayCode | None = None) -> tuple[int, ...]:
    """All 759 weight-8 codeword supports, as bitmasks, sorted."""
    return (code or golay()).octad_list


def octad_from_cells(cells: Iterable[tuple[int, int]]) -> int:
    mask = 0
    for r, c in cells:
        mask |= 1 << mog_index(r, c)
    return mask


# The two octads used by the explicit pair constructions: columns 0-1 of the
# MOG, and (top row of columns 1-5) + (rows 1-3 of column 0).
OCTAD_LEFT_COLUMNS = octad_from_cells((r, c) for r in range(4) for c in (0, 1))
OCTAD_TOP_ROW_HOOK = octad_from_cells(
    [(0, c) for c in range(1, 6)] + [(r, 0) for r in (1, 2, 3)]
)


@lru_cache(maxsize=1)
def _steiner_octad_by_5set() -> dict[int, int]:
    table: dict[int, int] = {}
    for w in octads():
        pts = bit_indices(w)
        for s in combinations(pts, 5):
            key = 0
            for p in s:
                key |= 1 << p
            table[key] = w
    return table


def permutation_preserves_code(perm: Sequence[int],
                               code: GolayCode | None = None) -> bool:
    code = code or golay()
    for w in code.generators:
        img = 0
        for i in bit_indices(w):
            img |= 1 << perm[i]
        if img not in code.words:
            return False
    return True


def extend_to_code_automorphism(base_images: Sequence[int]) -> list[int] | None:
    """Backtracking completion of images of points 0..4 to a full code
    automorphism, steered by the Steiner property that five points determine
    an octad.  Returns the permutation, or None when no completion exists."""
    table = _steiner_octad_by_5set()
    f = [-1] * WORD_BITS
    used = 0
    for i, b in enumerate(base_images):
        f[i] = b
        used |= 1 << b
    dom = list(range(len(base_images)))

    def key_of(pts: Iterable[int]) -> int:
        k = 0
        for p in pts:
            k |= 1 << p
        return k

    def recurse(dom: list[int], used: int):
        if len(dom) == WORD_BITS:
            perm = list(f)
            return perm if permutation_preserves_code(perm) else None
        best = None
        for x in range(WORD_BITS):
            if f[x] != -1:
                continue
            cands = ((1 << WORD_BITS) - 1) & ~used
            hits = 0
            for s in combinations(dom[: min(len(dom), 9)], 5):
                oct_s = table[key_of(s)]
                if oct_s >> x & 1:
                    cands &= table[key_of(f[p] for p in s)]
                    hits += 1
                    if hits >= 4:
                        break
            cands &= ~used
            cnt = popcount(cands)
            if cnt == 0:
                return None
            if best is None or cnt < best[1]:
                best = (x, cnt, cands)
            if cnt == 1:
                break
        x, _, cands = best
        for y in bit_indices(cands):
            f[x] = y
            res = recurse(dom + [x], used | (1 << y))
            if res is not None:
                return res
            f[x] = -1
        return None

    return recurse(dom, used)


def random_code_automorphism(rng: random.Random) -> list[int]:
    while True:
        perm = extend_to_code_automorphism(rng.sample(range(WORD_BITS), 5))
        if perm is not None:
            return perm
