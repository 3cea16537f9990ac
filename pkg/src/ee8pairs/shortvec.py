"""Exact short-vector enumeration.

Floating-point Cholesky bounds prune the search tree; every surviving
candidate is re-verified in exact integer arithmetic, with the float bound
inflated by a fixed relative margin so no exact solution is lost for the
well-conditioned Gram matrices this package works at.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .lattice import Lattice, LatticeError

_MARGIN = 1e-9
_CHUNK = 1 << 20


@dataclass(frozen=True)
class NormProfile:
    """Counts of lattice vectors by norm (both signs counted), norm 0 excluded."""

    bound: Fraction
    counts: tuple  # tuple of (norm, count), norms ascending

    def as_dict(self) -> dict:
        return dict(self.counts)


def _prepare(lat: Lattice):
    B = np.array(lat.basis, dtype=np.int64)
    G = (B @ B.T).astype(np.float64) / float(lat.scale)
    try:
        C = np.linalg.cholesky(G)
    except np.linalg.LinAlgError as e:
        raise LatticeError("lattice is not positive definite") from e
    d = np.diag(C) ** 2
    mu = C / np.diag(C)[None, :]
    return B, d, mu


def _expand_level(X, pn, k, d, mu, bnd):
    c = X[:, k + 1:] @ mu[k + 1:, k] if k + 1 < mu.shape[0] else np.zeros(len(X))
    rad = np.sqrt(np.maximum(bnd - pn, 0.0) / d[k])
    lo = np.ceil(-c - rad - 1e-9).astype(np.int64)
    hi = np.floor(-c + rad + 1e-9).astype(np.int64)
    cnt = np.maximum(hi - lo + 1, 0)
    total = int(cnt.sum())
    if total == 0:
        return None, None
    idx = np.repeat(np.arange(len(X)), cnt)
    starts = np.concatenate([[0], np.cumsum(cnt)[:-1]])
    offs = np.arange(total) - np.repeat(starts, cnt)
    vals = lo[idx] + offs
    Xn = X[idx]
    Xn = Xn.copy()
    Xn[:, k] = vals
    pnn = pn[idx] + d[k] * (vals + c[idx]) ** 2
    keep = pnn <= bnd
    return Xn[keep], pnn[keep]


def _coeff_candidates(lat: Lattice, bound: Fraction):
    """All integer coefficient vectors with float-estimated norm <= bound."""
    B, d, mu = _prepare(lat)
    r = len(d)
    bnd = float(bound) * (1.0 + _MARGIN) + 1e-12
    blocks = [(np.zeros((1, r), dtype=np.int64), np.zeros(1), r - 1)]
    leaves = []
    while blocks:
        X, pn, k = blocks.pop()
        if k < 0:
            leaves.append(X)
            continue
        Xn, pnn = _expand_level(X, pn, k, d, mu, bnd)
        if Xn is None:
            continue
        if len(Xn) > _CHUNK:
            for i in range(0, len(Xn), _CHUNK):
                blocks.append((Xn[i : i + _CHUNK], pnn[i : i + _CHUNK], k - 1))
        else:
            blocks.append((Xn, pnn, k - 1))
    if not leaves:
        return np.zeros((0, r), dtype=np.int64)
    return np.concatenate(leaves)


def _exact_filter(lat: Lattice, X: np.ndarray, bound: Fraction):
    """Exact norms for candidate coefficients; one representative per +- pair."""
    B = np.array(lat.basis, dtype=np.int64)
    r, n = B.shape
    p, q = lat.scale.numerator, lat.scale.denominator
    bn, bd = bound.numerator, bound.denominator
    xmax = int(np.abs(X).max(initial=0))
    bmax = int(np.abs(B).max(initial=0))
    coordmax = r * xmax * bmax
    safe = coordmax**2 * n * q * bd < 2**62
    results = []
    if safe:
        coords = X @ B
        nrm_num = np.einsum("ij,ij->i", coords, coords)
        ok = (nrm_num > 0) & (nrm_num * (q * bd) <= bn * p)
        coords = coords[ok]
        nrm_num = nrm_num[ok]
        for row, nn in zip(coords.tolist(), nrm_num.tolist()):
            results.append((tuple(row), Fraction(int(nn) * q, p)))
    else:
        Bi = [list(map(int, row)) for row in lat.basis]
        for x in X.tolist():
            coord = [sum(int(x[i]) * Bi[i][j] for i in range(r)) for j in range(n)]
            nn = sum(v * v for v in coord)
            nrm = Fraction(nn * q, p)
            if 0 < nrm <= bound:
                results.append((tuple(coord), nrm))
    seen = {}
    for coord, nrm in results:
        fz = next(v for v in coord if v)
        if fz < 0:
            coord = tuple(-v for v in coord)
        seen[coord] = nrm
    return sorted(seen.items(), key=lambda t: (t[1], t[0]))


def short_vector_pairs(lat: Lattice, bound: int | Fraction):
    """Sorted list of (coordinates, norm), one representative per +- pair."""
    bound = Fraction(bound)
    if lat.rank == 0 or bound <= 0:
        return []
    X = _coeff_candidates(lat, bound)
    if len(X) == 0:
        return []
    return _exact_filter(lat, X, bound)


def enumerate_up_to(lat: Lattice, bound: int | Fraction) -> list[tuple[int, ...]]:
    """Coordinate vectors with 0 < norm <= bound, one per +- pair.

    The representative has its first nonzero coordinate positive; output is
    sorted by (norm, coordinates) for determinism.
    """
    return [coord for coord, _ in short_vector_pairs(lat, bound)]


def min_norm(lat: Lattice) -> Fraction:
    """Smallest norm of a nonzero vector (positive definite, rank > 0)."""
    if lat.rank == 0:
        raise LatticeError("minimum of a rank-0 lattice")
    g = lat.gram()
    start = min(g.entry(i, i) for i in range(lat.rank))
    pairs = short_vector_pairs(lat, start)
    return pairs[0][1]


def is_rootless(lat: Lattice) -> bool:
    """True iff the lattice has no vector of norm 2."""
    if not lat.is_integral:
        raise LatticeError("rootlessness is about integral lattices")
    return all(nrm != 2 for _, nrm in short_vector_pairs(lat, 2))


def norm_profile(lat: Lattice, bound: int | Fraction) -> NormProfile:
    """Counts by norm up to `bound`, counting both v and -v."""
    bound = Fraction(bound)
    counts: dict = {}
    for _, nrm in short_vector_pairs(lat, bound):
        key = int(nrm) if nrm.denominator == 1 else nrm
        counts[key] = counts.get(key, 0) + 2
    return NormProfile(bound, tuple(sorted(counts.items())))


def brute_force_pairs(lat: Lattice, bound: int | Fraction):
    """Independent oracle: search every coefficient vector in a provably
    sufficient box derived from the inverse Gram; exact arithmetic only."""
    from .lattice import invert

    bound = Fraction(bound)
    if lat.rank == 0:
        return []
    ginv = invert(lat.gram())
    box = []
    for i in range(lat.rank):
        # x G x^T <= b  =>  x_i^2 <= b * (G^-1)_ii
        lim = ginv.entry(i, i) * bound
        m = 0
        while (m + 1) ** 2 <= lim:
            m += 1
        box.append(m)
    out = {}
    ranges = [range(-m, m + 1) for m in box]

    def rec(i, coeff):
        if i == lat.rank:
            if all(c == 0 for c in coeff):
                return
            coord = tuple(
                sum(coeff[k] * lat.basis[k][j] for k in range(lat.rank))
                for j in range(lat.ambient_dim)
            )
            nrm = Fraction(sum(v * v for v in coord)) / lat.scale
            if 0 < nrm <= bound:
                fz = next(v for v in coord if v)
                key = tuple(-v for v in coord) if fz < 0 else coord
                out[key] = nrm
            return
        for c in ranges[i]:
            rec(i + 1, coeff + [c])

    rec(0, [])
    return sorted(out.items(), key=lambda t: (t[1], t[0]))
