"""Builders and verification for the eleven rootless pair classes.

Four classes have fully explicit constructions (two inside the Leech lattice
from octad sublattices, one orthogonal pair, one ambient glue construction);
the remaining seven are found inside the Leech lattice by a randomized word
search over certified isometries and then committed as replayable fixtures so
verification is deterministic.
"""
from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Sequence

import numpy as np

from .catalog import CatalogId, catalog_lattice, root_lattice
from .golay import (
    OCTAD_LEFT_COLUMNS,
    OCTAD_TOP_ROW_HOOK,
    bit_indices,
    mog_to_vector,
    octads,
    random_code_automorphism,
)
from .intmat import RatMatrix, hnf_basis, smith_diagonal
from .lattice import (
    Lattice,
    LatticeError,
    annihilator,
    direct_sum_all,
    fingerprint,
    index_in,
    intersect,
    lattice_sum,
)
from .leech import AMBIENT, SCALE, e_octad, leech_contains, xi
from .rssd import (
    IsometryMap,
    fixed_sublattice,
    product_order,
    rssd_involution,
    zg_submodule,
)
from .shortvec import is_rootless, short_vector_pairs
from .table import TABLE, TableRow

FIXTURES_ENV = "EE8PAIRS_FIXTURES"

# ---------------------------------------------------------------------------
# Explicit construction data, written as 4x6 MOG arrays (index = 4*col + row).

_BETA_ARRAYS = (
    [[4, -4, 0, 0, 0, 0], [0] * 6, [0] * 6, [0] * 6],
    [[0, 4, 0, 0, 0, 0], [-4, 0, 0, 0, 0, 0], [0] * 6, [0] * 6],
    [[0] * 6, [4, -4, 0, 0, 0, 0], [0] * 6, [0] * 6],
    [[0] * 6, [0, 4, 0, 0, 0, 0], [-4, 0, 0, 0, 0, 0], [0] * 6],
    [[0] * 6, [0] * 6, [4, -4, 0, 0, 0, 0], [0] * 6],
    [[0] * 6, [0] * 6, [0, 4, 0, 0, 0, 0], [-4, 0, 0, 0, 0, 0]],
    [[-4, -4, 0, 0, 0, 0], [0] * 6, [0] * 6, [0] * 6],
    [[2, 2, 0, 0, 0, 0]] * 4,
)

_ALPHA_ARRAYS = (
    [[2, -2, 2, -2, 2, 0], [0, 0, 0, 0, 0, 2], [0, 0, 0, 0, 0, 2], [0, 0, 0, 0, 0, 2]],
    [[0, 2, 0, 2, 0, 2], [-2, 0, -2, 0, 0, -2], [0, 0, 0, 0, 2, -2], [0] * 6],
    [[0, 0, 0, 0, 0, -2], [2, -2, 2, -2, 2, 0], [0, 0, 0, 0, -2, 0], [0, 0, 0, 0, 2, 0]],
    [[0, 0, 0, 0, 0, 2], [0, 2, 0, 2, -2, 2], [-2, 0, -2, 0, 0, 0], [0, 0, 0, 0, 0, -2]],
    [[0, 0, 0, 0, 0, -2], [0, 0, 0, 0, 2, 0], [2, -2, 2, -2, 2, 0], [0, 0, 0, 0, -2, 0]],
    [[0, 0, 0, 0, 0, 2], [0, 0, 0, 0, 0, -2], [0, 2, 0, 2, -2, 2], [-2, 0, -2, 0, 0, 0]],
    [[-2, -2, -2, -2, 0, -2], [0, 0, 0, 0, -2, 0], [0, 0, 0, 0, -2, 0], [0, 0, 0, 0, -2, 0]],
    [[1, 1, 1, 1, -3, 1], [1] * 6, [1] * 6, [1] * 6],
)

_GAMMA_ARRAYS = (
    [[0] * 6, [0] * 6, [-4, 0, 0, 0, 0, 0], [4, 0, 0, 0, 0, 0]],
    [[0] * 6, [-4, 0, 0, 0, 0, 0], [4, 0, 0, 0, 0, 0], [0] * 6],
    [[0, -4, 0, 0, 0, 0], [4, 0, 0, 0, 0, 0], [0] * 6, [0] * 6],
    [[0, 4, -4, 0, 0, 0], [0] * 6, [0] * 6, [0] * 6],
    [[0, 0, 4, -4, 0, 0], [0] * 6, [0] * 6, [0] * 6],
    [[0, 0, 0, 4, -4, 0], [0] * 6, [0] * 6, [0] * 6],
    [[0] * 6, [0] * 6, [-4, 0, 0, 0, 0, 0], [-4, 0, 0, 0, 0, 0]],
    [[0, 2, 2, 2, 2, 2], [2, 0, 0, 0, 0, 0], [2, 0, 0, 0, 0, 0], [2, 0, 0, 0, 0, 0]],
)

BETAS = tuple(tuple(mog_to_vector(a)) for a in _BETA_ARRAYS)
ALPHAS = tuple(tuple(mog_to_vector(a)) for a in _ALPHA_ARRAYS)
GAMMAS = tuple(tuple(mog_to_vector(a)) for a in _GAMMA_ARRAYS)

# Sign convention for the displayed images of the last six basis vectors
# under the column isometry; any sign choice spans the same lattice, these
# fix the presentation Gram the acceptance data is stated in.
_DISPLAY_SIGNS = (-1, -1, -1, -1, 1, -1)


@dataclass(frozen=True)
class PairRecord:
    name: str
    m: Lattice
    n: Lattice
    lat: Lattice
    t_m: IsometryMap
    t_n: IsometryMap
    order_k: int | None
    frame_octad: int | None = None
    word: tuple | None = None
    l_display_basis: tuple | None = None

    @property
    def dihedral_order(self) -> int | None:
        return None if self.order_k is None else 2 * self.order_k

    def g(self) -> RatMatrix:
        return self.t_m.matrix @ self.t_n.matrix


def make_pair(name: str, m: Lattice, n: Lattice, *, frame_octad=None,
              word=None, display=None) -> PairRecord:
    lat = lattice_sum(m, n)
    t_m = rssd_involution(lat, m)
    t_n = rssd_involution(lat, n)
    k = product_order(t_m, t_n)
    return PairRecord(name, m, n, lat, t_m, t_n, k, frame_octad, word, display)


def _check_in_leech(rows: Sequence[Sequence[int]], what: str):
    for row in rows:
        if not leech_contains(list(row)):
            raise LatticeError(f"{what} vector fails Leech membership: {row}")


def build_dih6_16() -> PairRecord:
    """Octad-column pair: M on the left-column octad, N spanned by the eight
    explicit cross-octad vectors."""
    _check_in_leech(BETAS, "beta")
    _check_in_leech(ALPHAS, "alpha")
    m = Lattice(AMBIENT, Fraction(SCALE), BETAS)
    n = Lattice(AMBIENT, Fraction(SCALE), ALPHAS)
    if m != e_octad(OCTAD_LEFT_COLUMNS):
        raise LatticeError("beta rows do not span the octad sublattice")
    return make_pair("DIH6(16)", m, n, frame_octad=OCTAD_LEFT_COLUMNS,
                     display=BETAS + ALPHAS)


def build_dih6_14() -> PairRecord:
    """Hook-octad pair: M on the hook octad, N its image under the column
    isometry."""
    _check_in_leech(GAMMAS, "gamma")
    m = Lattice(AMBIENT, Fraction(SCALE), GAMMAS)
    if m != e_octad(OCTAD_TOP_ROW_HOOK):
        raise LatticeError("gamma rows do not span the octad sublattice")
    x = xi()
    n = x.apply_lattice(m)
    images = []
    for s, gamma in zip(_DISPLAY_SIGNS, GAMMAS[2:8]):
        img = x.apply(gamma)
        images.append(tuple(int(s * v) for v in img))
    _check_in_leech(images, "gamma image")
    display = GAMMAS + tuple(images)
    return make_pair("DIH6(14)", m, n, frame_octad=OCTAD_TOP_ROW_HOOK,
                     display=display)


def _disjoint_octad(octad: int) -> int:
    for cand in octads():
        if cand & octad == 0:
            return cand
    raise LatticeError("no disjoint octad found")


def build_dih4_16() -> PairRecord:
    """Orthogonal pair supported on two disjoint octads."""
    o1 = OCTAD_LEFT_COLUMNS
    o2 = _disjoint_octad(o1)
    m = e_octad(o1)
    n = e_octad(o2)
    return make_pair("DIH4(16)", m, n, frame_octad=o1,
                     display=m.basis + n.basis)


def build_dih4_15_glue() -> PairRecord:
    """Rank-15 ambient construction: two doubled-E8 copies sharing a doubled
    A1, mirrored through orthogonal 8-coordinate blocks.

    Each copy is the image of E8 under x -> (p(x) | x - p(x)) with p the
    projection onto a fixed norm-2 vector; the shared line glues the copies
    into an integral rootless rank-15 lattice with no Leech witness attached.
    """
    e8 = root_lattice(CatalogId("E", 8))  # doubled coordinates, scale 4
    v = (2, -2, 0, 0, 0, 0, 0, 0)
    vv = sum(a * a for a in v)

    def embed(x: Sequence[int], second_block: bool) -> list[int]:
        t = Fraction(sum(a * b for a, b in zip(x, v)), vv)
        proj = [t * a for a in v]
        rest = [Fraction(a) - p for a, p in zip(x, proj)]
        assert all(f.denominator == 1 for f in proj + rest)
        proj_i = [int(f) for f in proj]
        rest_i = [int(f) for f in rest]
        zeros = [0] * 8
        return proj_i + (zeros + rest_i if second_block else rest_i + zeros)

    m_rows = [embed(row, False) for row in e8.basis]
    n_rows = [embed(row, True) for row in e8.basis]
    # scale 4 coordinates with the form doubled -> scale 2
    m = Lattice.from_rows(m_rows, 2, ambient_dim=24)
    n = Lattice.from_rows(n_rows, 2, ambient_dim=24)
    rec = make_pair("DIH4(15)", m, n)
    if not rec.lat.is_integral or not is_rootless(rec.lat):
        raise LatticeError("glue construction lost integrality or rootlessness")
    return rec


# ---------------------------------------------------------------------------
# Word moves for the randomized Leech search (fast scaled-integer path).


def _xi_num() -> np.ndarray:
    num = np.zeros((AMBIENT, AMBIENT), dtype=np.int64)
    for c in range(6):
        dc = -1 if c == 0 else 1
        for s in range(4):
            for r in range(4):
                num[4 * c + s][4 * c + r] = dc * (1 if r == s else -1)
    return num


def _op_matrix(op: dict) -> tuple[np.ndarray, int]:
    if "perm" in op:
        perm = op["perm"]
        mat = np.zeros((AMBIENT, AMBIENT), dtype=np.int64)
        for i, j in enumerate(perm):
            mat[i][j] = 1
        return mat, 1
    if "sign" in op:
        d = np.ones(AMBIENT, dtype=np.int64)
        for i in op["sign"]:
            d[i] = -1
        return np.diag(d), 1
    if op.get("xi"):
        return _xi_num(), 2
    raise ValueError(f"unknown word op: {op}")


def _compose_word(word: Sequence[dict]) -> tuple[np.ndarray, int]:
    num = np.eye(AMBIENT, dtype=np.int64)
    den = 1
    for op in word:
        m, d = _op_matrix(op)
        num = num @ m
        den *= d
        g = int(np.gcd.reduce(np.abs(num), axis=None, initial=den) or 1)
        g = gcd(g, den)
        if g > 1:
            num //= g
            den //= g
    return num, den


def word_matrix(word: Sequence[dict]) -> RatMatrix:
    num, den = _compose_word(word)
    return RatMatrix(tuple(tuple(int(v) for v in row) for row in num), den)


def apply_word_to_octad(frame_octad: int, word: Sequence[dict]) -> Lattice:
    """N = E(O) . w with exact arithmetic; raises if coordinates leave Z."""
    m = e_octad(frame_octad)
    num, den = _compose_word(word)
    rows = np.array(m.basis, dtype=np.int64) @ num
    if den != 1 and (rows % den != 0).any():
        raise LatticeError("word image has non-integer coordinates")
    rows = rows // den
    return Lattice(AMBIENT, Fraction(SCALE),
                   tuple(map(tuple, hnf_basis(rows.tolist(), AMBIENT))))


def _random_word(rng: random.Random, perm_pool: list[list[int]],
                 octad_pool: tuple[int, ...]) -> list[dict]:
    def monomial() -> list[dict]:
        return [
            {"perm": rng.choice(perm_pool)},
            {"sign": bit_indices(rng.choice(octad_pool))},
        ]

    word = monomial()
    for _ in range(rng.choice((1, 1, 2, 2, 3))):
        word.append({"xi": True})
        word.extend(monomial())
    return word


def search_in_leech(target: TableRow, budget: int = 20000, seed: int = 0,
                    perm_pool_size: int = 32,
                    frame_octad: int = OCTAD_LEFT_COLUMNS):
    """Randomized witness search for an in-Leech row.

    Walks random words over certified moves, fixes M = E(frame) and tests
    N = M . w; a candidate is accepted only if the full verification report
    passes.  Deterministic for a given seed; None when the budget runs out
    (not a refutation).
    """
    if not target.in_leech:
        raise LatticeError(f"{target.name} has no Leech embedding to search")
    rng = random.Random(seed)
    perm_pool = [random_code_automorphism(rng) for _ in range(perm_pool_size)]
    octad_pool = octads()
    bm = np.array(e_octad(frame_octad).basis, dtype=np.int64)
    frames = [frame_octad]
    for trial in range(budget):
        if trial and budget >= 100 and trial % max(budget // 4, 1) == 0:
            # fall back to a fresh frame if the fixed one resists
            frames.append(rng.choice(octad_pool))
            bm = np.array(e_octad(frames[-1]).basis, dtype=np.int64)
        word = _random_word(rng, perm_pool, octad_pool)
        num, den = _compose_word(word)
        rows = bm @ num
        if den != 1:
            if (rows % den != 0).any():
                continue
            rows = rows // den
        stacked = [list(map(int, r)) for r in bm] + [list(map(int, r)) for r in rows]
        basis = hnf_basis(stacked, AMBIENT)
        if len(basis) != target.rank:
            continue
        g = [[sum(a * b for a, b in zip(x, y)) for y in basis] for x in basis]
        if any(v % SCALE for row in g for v in row):
            continue
        g = [[v // SCALE for v in row] for row in g]
        smith = smith_diagonal(g).entries
        if target.smith_expected is not None and smith != target.smith_expected:
            continue
        frame = frames[-1]
        n = Lattice(AMBIENT, Fraction(SCALE),
                    tuple(map(tuple, hnf_basis(rows.tolist(), AMBIENT))))
        rec = make_pair(target.name, e_octad(frame), n,
                        frame_octad=frame, word=tuple(word))
        report = verify_pair(rec, target)
        if report.passed:
            return rec
    return None


# ---------------------------------------------------------------------------
# Fixtures: committed witnesses for the searched rows.


def fixtures_dir() -> Path:
    env = os.environ.get(FIXTURES_ENV)
    if env:
        return Path(env)
    return Path(__file__).parent / "fixtures"


def _fixture_path(name: str) -> Path:
    safe = name.replace("(", "_").replace(")", "").replace(",", "_")
    return fixtures_dir() / f"{safe}.json"


def save_fixture(rec: PairRecord, path: Path | None = None) -> Path:
    path = path or _fixture_path(rec.name)
    payload = {
        "name": rec.name,
        "frame_octad": bit_indices(rec.frame_octad),
        "word": list(rec.word or ()),
        "n_basis": [list(row) for row in rec.n.basis],
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=1))
    return path


def load_fixture(name: str) -> dict | None:
    path = _fixture_path(name)
    if not path.exists():
        return None
    return json.loads(path.read_text())


def pair_from_fixture(fx: dict) -> PairRecord:
    frame = 0
    for i in fx["frame_octad"]:
        frame |= 1 << i
    n_rows = [list(map(int, row)) for row in fx["n_basis"]]
    _check_in_leech(n_rows, "fixture witness")
    n = Lattice(AMBIENT, Fraction(SCALE), tuple(map(tuple, n_rows)))
    return make_pair(fx["name"], e_octad(frame), n, frame_octad=frame,
                     word=tuple(fx["word"]))


def replay_word(fx: dict) -> Lattice:
    frame = 0
    for i in fx["frame_octad"]:
        frame |= 1 << i
    return apply_word_to_octad(frame, fx["word"])


# ---------------------------------------------------------------------------
# Verification.


@dataclass(frozen=True)
class Check:
    name: str
    expected: str
    computed: str
    passed: bool
    note: str = ""


@dataclass
class VerificationReport:
    row: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, expected, computed, passed, note=""):
        self.checks.append(Check(name, str(expected), str(computed), bool(passed), note))

    def to_jsonable(self) -> dict:
        return {
            "row": self.row,
            "passed": self.passed,
            "checks": [c.__dict__ for c in self.checks],
        }


def _fp(lat: Lattice):
    return fingerprint(lat)


def _catalog_fp(name: str):
    if name == "0":
        return None
    if "+" in name:
        parts = [catalog_lattice(p) for p in name.split("+")]
        return _fp(direct_sum_all(parts))
    return _fp(catalog_lattice(name))


def _type_check(report, checkname, lat: Lattice, expected_type: str | None):
    if expected_type is None:
        report.add(checkname, "(reported)",
                   f"rank {lat.rank}, smith {_smith_str(lat)}", True,
                   "no published expectation; computed value recorded")
        return
    if expected_type == "0":
        report.add(checkname, "0", f"rank {lat.rank}", lat.rank == 0)
        return
    want = _catalog_fp(expected_type)
    got = _fp(lat)
    report.add(checkname, f"~ {expected_type}", str(got), got == want)


def _smith_str(lat: Lattice) -> str:
    from .lattice import discriminant_group

    return str(discriminant_group(lat))


def _pairwise_orthogonal(lats: Sequence[Lattice]) -> bool:
    for i, a in enumerate(lats):
        for b in lats[i + 1 :]:
            for ra in a.basis:
                for rb in b.basis:
                    if sum(x * y for x, y in zip(ra, rb)) != 0:
                        return False
    return True


def verify_pair(rec: PairRecord, expected: TableRow) -> VerificationReport:
    """Check every stated invariant of a pair record against a table row."""
    from .lattice import discriminant_group

    report = VerificationReport(expected.name)
    L = rec.lat
    report.add("integral", True, L.is_integral, L.is_integral)
    report.add("even", True, L.is_even, L.is_even)
    rootless = is_rootless(L) if L.is_integral else False
    report.add("rootless", True, rootless, rootless)
    report.add("rank", expected.rank, L.rank, L.rank == expected.rank)
    report.add("dihedral_order", expected.dihedral_order, rec.dihedral_order,
               rec.dihedral_order == expected.dihedral_order)

    smith = discriminant_group(L).entries if L.is_integral else ()
    if expected.smith_expected is not None:
        ok = smith == expected.smith_expected
        report.add("smith", _fmt_smith(expected.smith_expected), _fmt_smith(smith),
                   ok, expected.smith_note or "")
    else:
        report.add("smith", "(reported)", _fmt_smith(smith), True,
                   expected.smith_note or "")

    ee8_fp = _catalog_fp("EE8")
    fm, fn = _fp(rec.m), _fp(rec.n)
    report.add("m_is_ee8", str(ee8_fp), str(fm), fm == ee8_fp)
    report.add("n_is_ee8", str(ee8_fp), str(fn), fn == ee8_fp)

    mn = intersect(rec.m, rec.n)
    fix = fixed_sublattice(L, IsometryMap(rec.g(), L))
    report.add("fix_is_intersection", "Fix_L(g) == M^N", fix == mn, fix == mn)
    _type_check(report, "intersection_type", mn, expected.intersection)

    k = rec.order_k
    if k == 2:
        _verify_dih4(report, rec, expected, mn)
    elif k == 3:
        _verify_dih6(report, rec, expected, mn)
    elif k == 4:
        _verify_dih8(report, rec, expected, mn)
    elif k == 5:
        _verify_dih10(report, rec, expected, mn)
    elif k == 6:
        _verify_dih12(report, rec, expected, mn)

    if expected.in_leech:
        witnessed = rec.lat.ambient_dim == AMBIENT and rec.lat.scale == SCALE and all(
            leech_contains(list(r)) for r in rec.m.basis + rec.n.basis
        )
        report.add("leech_witness", True, witnessed, witnessed)
    else:
        report.add("leech_witness", "none attached", rec.word is None,
                   rec.word is None, "row has no Leech embedding claim")
    return report


def _fmt_smith(entries) -> str:
    from .intmat import SmithSequence

    return str(SmithSequence(tuple(entries)))


def _verify_dih4(report, rec, expected, mn):
    ann_m = annihilator(rec.m, rec.n)
    ann_n = annihilator(rec.n, rec.m)
    parts = [p for p in (mn, ann_m, ann_n) if p.rank]
    ortho = _pairwise_orthogonal(parts)
    s = parts[0]
    for p in parts[1:]:
        s = lattice_sum(s, p)
    idx = index_in(s, rec.lat)
    want_idx = expected.decomposition_index
    report.add("decomposition_index", want_idx, idx, idx == want_idx and ortho,
               "index of (M^N + ann_M(N) + ann_N(M)) in L; value pinned by "
               "determinant arithmetic")
    _contains_check(report, rec, expected, s)


def _verify_dih6(report, rec, expected, mn):
    L = rec.lat
    g = IsometryMap(rec.g(), L)
    j = annihilator(L, fixed_sublattice(L, g))
    mj = intersect(rec.m, j)
    fmj = _fp(mj)
    kinds = {"EE6": "A2*E6", "EE8": "A2*E8"}
    kind = next((nm for nm, t in kinds.items() if fmj == _catalog_fp(nm)), None)
    report.add("m_cap_j_type", "EE6 or EE8", kind or str(fmj), kind is not None)
    if kind:
        kmod = zg_submodule(L, g, mj)
        want = _catalog_fp(kinds[kind])
        got = _fp(kmod)
        report.add("orbit_module_type", f"~ {kinds[kind]}", str(got), got == want)
    if expected.contains_isometric:
        _contains_check(report, rec, expected, L)
    else:
        ann_m = annihilator(rec.m, mn)
        ann_n = annihilator(rec.n, mn)
        annsum = lattice_sum(ann_m, ann_n)
        for nm, lt in (("ann_m", ann_m), ("ann_n", ann_n)):
            got = _fp(lt)
            want = _catalog_fp("EE6")
            report.add(f"{nm}_type", "~ EE6", str(got), got == want)
        got = _fp(annsum)
        want = _catalog_fp("A2*E6")
        report.add("ann_sum_type", "~ A2*E6", str(got), got == want)
        s = lattice_sum(mn, annsum)
        ok = _pairwise_orthogonal([mn, annsum])
        idx = index_in(s, rec.lat)
        report.add("contains", " + ".join(expected.contains),
                   f"orthogonal={ok}, index={idx}", ok,
                   "index in L recorded; no published expectation")


def _verify_dih8(report, rec, expected, mn):
    ann_m = annihilator(rec.m, rec.n)
    _type_check(report, "ann_type", ann_m, expected.ann_type)
    _halved_pair_check(report, rec, (2,))
    if expected.contains_isometric:
        _contains_check(report, rec, expected, rec.lat)
    else:
        _verify_dih8_contains(report, rec, expected)


def _verify_dih8_contains(report, rec, expected):
    """Extract the advertised orthogonal sublattice of an order-8 pair.

    ann_M(N) + ann_N(M) span the part where the halved pair acts trivially;
    the complement annihilator inside L supplies the remaining summand.
    """
    L = rec.lat
    ann_m = annihilator(rec.m, rec.n)
    ann_n = annihilator(rec.n, rec.m)
    parts = [p for p in (ann_m, ann_n) if p.rank]
    spine = parts[0] if parts else Lattice.zero(L.ambient_dim, L.scale)
    for p in parts[1:]:
        spine = lattice_sum(spine, p)
    rest = annihilator(L, spine) if spine.rank else L
    target = direct_sum_all([catalog_lattice(nm) for nm in expected.contains])
    cand = lattice_sum(spine, rest) if spine.rank else rest
    ok = _pairwise_orthogonal([spine, rest]) if spine.rank else True
    got = _fp(cand)
    want = _fp(target)
    idx = index_in(cand, L) if cand.rank == L.rank else 0
    report.add("contains", " + ".join(expected.contains), str(got),
               ok and got == want, f"index {idx} in L recorded")


def _halved_pair_check(report, rec, allowed_orders):
    """(M, M g) generates the halved dihedral group: t_M t_{Mg} = g^2.

    (g^2 itself is central for order-8 pairs, so conjugating M by it is a
    no-op; conjugating by g gives the genuine sub-pair.)
    """
    L = rec.lat
    mh = _image_lattice(rec.m, rec.g())
    sub = lattice_sum(rec.m, mh)
    t1 = rssd_involution(sub, rec.m)
    t2 = rssd_involution(sub, mh)
    k = product_order(t1, t2)
    row = _classify_row(sub, 2 * k if k else None)
    report.add("halved_pair",
               f"dihedral order in {sorted(2 * a for a in allowed_orders)}",
               f"{row or '(unrecognised)'}, order {2 * k if k else '>cap'}",
               k in allowed_orders and row is not None,
               "row type of (M, M g) recorded")


def _classify_row(lat: Lattice, dihedral: int | None) -> str | None:
    """Match a lattice against the table by (rank, Smith chain, order)."""
    from .lattice import discriminant_group

    if not lat.is_integral:
        return None
    smith = discriminant_group(lat).entries
    for row in TABLE:
        if (
            row.rank == lat.rank
            and row.smith_expected == smith
            and (dihedral is None or row.dihedral_order == dihedral)
        ):
            return row.name
    return None


def _verify_dih10(report, rec, expected, mn):
    L = rec.lat
    g = IsometryMap(rec.g(), L)
    korbit = zg_submodule(L, g, rec.m)
    got = _fp(korbit)
    want = _catalog_fp("A4*A4")
    report.add("contains", "A4*A4 (orbit module of M)", str(got), got == want,
               f"index {index_in(korbit, L) if korbit.rank == L.rank else 0} in L")
    u = _aa4_frame(rec, g)
    if u is None:
        report.add("aa4_frame", "AA4^4 with M^U ~ AA1^8", "not found", False)
        return
    fu = _fp(u)
    want_u = _fp(direct_sum_all([catalog_lattice("AA4")] * 4))
    mu = intersect(rec.m, u)
    nu = intersect(rec.n, u)
    want_a18 = _fp(direct_sum_all([catalog_lattice("AA1")] * 8))
    ok = fu == want_u and _fp(mu) == want_a18 and _fp(nu) == want_a18
    report.add("aa4_frame", "AA4^4 with M^U ~ N^U ~ AA1^8",
               f"U {fu == want_u}, M^U {_fp(mu) == want_a18}, N^U {_fp(nu) == want_a18}",
               ok)


def _aa4_frame(rec, g):
    """Greedy orthogonal frame of four order-5 orbit modules of minimal
    vectors; each orbit module of a norm-4 vector is a copy of AA4."""
    L = rec.lat
    mins = [coord for coord, nrm in short_vector_pairs(L, 4) if nrm == 4]
    chosen: list[Lattice] = []
    for coord in mins:
        if any(
            sum(a * b for a, b in zip(coord, row)) != 0
            for lt in chosen
            for row in lt.basis
        ):
            continue
        line = Lattice(L.ambient_dim, L.scale, (tuple(coord),))
        orbit = zg_submodule(L, g, line)
        if _fp(orbit) != _catalog_fp("AA4"):
            continue
        if chosen and not _pairwise_orthogonal(chosen + [orbit]):
            continue
        chosen.append(orbit)
        if len(chosen) == 4:
            u = chosen[0]
            for lt in chosen[1:]:
                u = lattice_sum(u, lt)
            return u
    return None


def _verify_dih12(report, rec, expected, mn):
    _halved_pair_check(report, rec, (3,))
    L = rec.lat
    g2 = rec.g() @ rec.g()
    mh = _image_lattice(rec.m, g2)
    nh = _image_lattice(rec.n, g2)
    f1 = intersect(rec.m, mh)
    f2 = intersect(rec.n, nh)
    aa2 = _catalog_fp("AA2")
    sub = lattice_sum(rec.m, mh)
    annsum = lattice_sum(annihilator(rec.m, f1), annihilator(mh, f1))
    got = _fp(annsum)
    want = _catalog_fp("A2*E6")
    parts_ok = _fp(f1) == aa2 and _fp(f2) == aa2 and got == want
    ortho = _pairwise_orthogonal([f1, f2, annsum])
    s = lattice_sum(lattice_sum(f1, f2), annsum)
    idx = index_in(s, L) if s.rank == L.rank else 0
    report.add("contains", " + ".join(expected.contains),
               f"AA2 {_fp(f1) == aa2}/{_fp(f2) == aa2}, A2*E6 {got == want}, "
               f"orthogonal {ortho}", parts_ok and ortho,
               f"index {idx} in L recorded")


def _image_lattice(lat: Lattice, m: RatMatrix) -> Lattice:
    images = lat.basis_matrix() @ m
    return Lattice(lat.ambient_dim, lat.scale,
                   tuple(map(tuple, hnf_basis(images.int_rows(), lat.ambient_dim))))


def _contains_check(report, rec, expected, candidate: Lattice):
    target = direct_sum_all([catalog_lattice(nm) for nm in expected.contains])
    got = _fp(candidate)
    want = _fp(target)
    label = (" ~ " if expected.contains_isometric else " >= ") + " + ".join(
        expected.contains
    )
    note = ""
    if not expected.contains_isometric and candidate.rank == rec.lat.rank:
        note = f"index {index_in(candidate, rec.lat)} in L recorded"
    report.add("contains", label, str(got), got == want, note)


# ---------------------------------------------------------------------------
# The full verification run.

_EXPLICIT_BUILDERS = {
    "DIH6(16)": build_dih6_16,
    "DIH6(14)": build_dih6_14,
    "DIH4(16)": build_dih4_16,
    "DIH4(15)": build_dih4_15_glue,
}


def full_table():
    """Verify all eleven rows: explicit builders where available, committed
    fixture witnesses otherwise.  Missing fixtures yield a failed report."""
    results = []
    for row in TABLE:
        builder = _EXPLICIT_BUILDERS.get(row.name)
        if builder is not None:
            rec = builder()
        else:
            fx = load_fixture(row.name)
            if fx is None:
                report = VerificationReport(row.name)
                report.add("witness", "committed fixture", "missing", False,
                           "run the search tool to produce one")
                results.append((row, None, report))
                continue
            rec = pair_from_fixture(fx)
        results.append((row, rec, verify_pair(rec, row)))
    return results
