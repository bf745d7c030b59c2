"""Abstract order types (chirotopes) of planar point sets.

An order type records, for every triple of labeled points, whether the
triple is oriented counterclockwise (+1) or clockwise (-1).  Only the
non-degenerate case is handled: a sign is never 0.  Internally the signs of
the C(n,3) index-sorted triples live in a flat tuple; signs of unsorted
triples follow from antisymmetry.  Labels are 0-based throughout.

The 4-point axiom: for every i < j < k < l the sequence

    chi(i,j,k), chi(i,j,l), chi(i,k,l), chi(j,k,l)

changes its sign at most once.  Triple-orientation maps of point sets
sorted left to right satisfy this, and every map satisfying it (for some
labeling) is an abstract order type, realizable or not.

Compact encoding ("small lambda"): lambda[i][j] is the number of points
strictly to the right of the directed line i -> j.  Under a natural
labeling (label 0 extreme, the remaining labels sorted angularly around it)
the row of pairs (0, j) is implied, so a record consists of the entries for
pairs (i, j) with 1 <= i < j < n, one byte each, in lexicographic order:
(1,2), (1,3), ..., (n-2,n-1).  The record for n = 3 is the single byte 0x00
and the two order types on 4 points are 00 01 00 (convex) and 01 00 01
(triangular hull).
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from functools import cmp_to_key
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import (
    AxiomViolation,
    DegenerateInput,
    IndexOverlap,
    InvalidEntry,
    TruncatedFile,
)

MAX_POINTS = 16

Point = tuple[int, int]

_triple_index_cache: dict[int, dict[tuple[int, int, int], int]] = {}


def _triple_index(n: int) -> dict[tuple[int, int, int], int]:
    idx = _triple_index_cache.get(n)
    if idx is None:
        idx = {t: r for r, t in enumerate(combinations(range(n), 3))}
        _triple_index_cache[n] = idx
    return idx


def orientation(p: Point, q: Point, r: Point) -> int:
    """Exact sign of the ccw test for three points (integer arithmetic only)."""
    d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (d > 0) - (d < 0)


@dataclass(frozen=True)
class AbstractOrderType:
    """Immutable triple-orientation map on n labeled points."""

    n: int
    signs: tuple[int, ...]

    def __post_init__(self):
        if not 3 <= self.n <= MAX_POINTS:
            raise ValueError(f"unsupported point count {self.n}")
        if len(self.signs) != len(_triple_index(self.n)):
            raise ValueError("sign table has the wrong length")
        object.__setattr__(self, "_index", _triple_index(self.n))

    def chi(self, i: int, j: int, k: int) -> int:
        s = 1
        if i > j:
            i, j, s = j, i, -s
        if j > k:
            j, k, s = k, j, -s
        if i > j:
            i, j, s = j, i, -s
        return s * self.signs[self._index[(i, j, k)]]

    def __repr__(self):
        return f"AbstractOrderType(n={self.n})"


@dataclass(frozen=True)
class SmallLambdaMatrix:
    """Stored rows of a small lambda matrix: entries for pairs (i,j), 1 <= i < j < n."""

    n: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != record_size(self.n):
            raise ValueError("entry count does not match point count")

    def to_bytes(self) -> bytes:
        return bytes(self.entries)

    @classmethod
    def from_bytes(cls, n: int, buf: bytes) -> "SmallLambdaMatrix":
        for pos, v in enumerate(buf):
            if v > n - 2:
                raise InvalidEntry(f"lambda entry {v} at offset {pos} exceeds n-2={n - 2}")
        return cls(n, tuple(buf))

    def order_type(self) -> AbstractOrderType:
        """Reconstruct the (naturally labeled) orientation map for this record."""
        signs = _chi_from_lambda(self.n, self.entries)
        if signs is None:
            raise AxiomViolation(f"record {self.entries} has no consistent orientation map")
        return AbstractOrderType(self.n, signs)


def record_size(n: int) -> int:
    """Bytes per order type in the binary format: (n-1)(n-2)/2."""
    return (n - 1) * (n - 2) // 2


# ---------------------------------------------------------------------------
# point sets


def parse_point_list(text: str) -> list[Point]:
    """Parse a coordinate list written as a python-style tuple list."""
    value = ast.literal_eval(text.strip())
    return [(int(x), int(y)) for x, y in value]


def validate_point_set(points: Sequence[Point]) -> None:
    n = len(points)
    for i in range(n):
        for j in range(i + 1, n):
            if points[i] == points[j]:
                raise DegenerateInput(f"points {i} and {j} coincide", triple=(i, j))
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                if orientation(points[i], points[j], points[k]) == 0:
                    raise DegenerateInput(
                        f"points {i},{j},{k} are collinear", triple=(i, j, k)
                    )


def chirotope_from_points(
    points: Sequence[Point], canonical: bool = False
) -> AbstractOrderType:
    """Orientation map of a point set in general position.

    Labels follow the input order: chi(i,j,k) is the exact sign of the
    homogeneous determinant of points i, j, k.  Note that the 4-point axiom
    is labeling-sensitive; it is guaranteed for points sorted left to right
    and for the canonical natural labeling (canonical=True), but not for an
    arbitrary input order.  All predicates here (crossings, hull queries)
    are labeling-independent and work on the raw output.
    """
    validate_point_set(points)
    ps = list(points)
    n = len(ps)
    signs = tuple(
        orientation(ps[i], ps[j], ps[k]) for i, j, k in combinations(range(n), 3)
    )
    ot = AbstractOrderType(n, signs)
    return canonical_order_type(ot) if canonical else ot


# ---------------------------------------------------------------------------
# axioms and predicates


def _sign_changes(seq) -> int:
    changes = 0
    for a, b in zip(seq, seq[1:]):
        if a != b:
            changes += 1
    return changes


def signotope_check(ot: AbstractOrderType) -> Optional[tuple[int, int, int, int]]:
    """First lexicographic 4-tuple violating the axiom, or None if valid."""
    chi = ot.chi
    for i, j, k, l in combinations(range(ot.n), 4):
        seq = (chi(i, j, k), chi(i, j, l), chi(i, k, l), chi(j, k, l))
        if _sign_changes(seq) > 1:
            return (i, j, k, l)
    return None


def reflect(ot: AbstractOrderType) -> AbstractOrderType:
    """Mirror image: every orientation flipped."""
    return AbstractOrderType(ot.n, tuple(-s for s in ot.signs))


def restrict(ot: AbstractOrderType, keep: Sequence[int]) -> AbstractOrderType:
    """Sub-order-type induced by a subset of labels (kept in increasing order)."""
    keep = sorted(keep)
    signs = tuple(
        ot.chi(keep[a], keep[b], keep[c])
        for a, b, c in combinations(range(len(keep)), 3)
    )
    return AbstractOrderType(len(keep), signs)


def point_in_triangle(ot: AbstractOrderType, p: int, a: int, b: int, c: int) -> bool:
    s = ot.chi(a, b, p)
    return s == ot.chi(b, c, p) == ot.chi(c, a, p)


def extreme_points(ot: AbstractOrderType) -> set[int]:
    """Labels on the convex hull: points contained in no triangle of others."""
    n = ot.n
    result = set()
    for p in range(n):
        others = [x for x in range(n) if x != p]
        if not any(
            point_in_triangle(ot, p, a, b, c) for a, b, c in combinations(others, 3)
        ):
            result.add(p)
    return result


def convex_layers(ot: AbstractOrderType) -> list[int]:
    """Sizes of the hull-peeling layers (they sum to n)."""
    remaining = list(range(ot.n))
    sizes = []
    while remaining:
        if len(remaining) <= 3:
            sizes.append(len(remaining))
            break
        sub = restrict(ot, remaining)
        hull = extreme_points(sub)
        sizes.append(len(hull))
        remaining = [remaining[i] for i in range(len(remaining)) if i not in hull]
    return sizes


def segments_cross(ot: AbstractOrderType, p: int, q: int, r: int, s: int) -> bool:
    """Whether segments pq and rs cross, from orientations alone."""
    if len({p, q, r, s}) != 4:
        raise IndexOverlap(f"segment endpoints {p},{q},{r},{s} overlap")
    return ot.chi(p, q, r) != ot.chi(p, q, s) and ot.chi(r, s, p) != ot.chi(r, s, q)


# ---------------------------------------------------------------------------
# small lambda matrices and the canonical form


def small_lambda(ot: AbstractOrderType) -> SmallLambdaMatrix:
    """Stored lambda rows in the current labeling (assumed natural)."""
    return SmallLambdaMatrix(ot.n, _lambda_entries(ot, list(range(ot.n)), 1))


def _lambda_entries(ot: AbstractOrderType, perm: Sequence[int], sign: int) -> tuple:
    """Entries lambda[i][j], 1 <= i < j < n, of the relabeled (and possibly
    reflected) order type: perm[new_label] = old_label."""
    n = ot.n
    chi = ot.chi
    entries = []
    for i in range(1, n):
        pi = perm[i]
        for j in range(i + 1, n):
            pj = perm[j]
            c = 0
            for k in range(n):
                if k != i and k != j and sign * chi(pi, pj, perm[k]) < 0:
                    c += 1
            entries.append(c)
    return tuple(entries)


def _natural_labelings(ot: AbstractOrderType):
    """All natural labelings (hull point first, rest sorted around it), for
    both orientations.  The lexicographic minimum of the small lambda matrix
    over all relabelings is attained on one of these."""
    hull = sorted(extreme_points(ot))
    for sign in (1, -1):
        for h in hull:
            others = [x for x in range(ot.n) if x != h]
            # h is extreme, so "b lies to the left of h->a" is a total order
            others.sort(key=cmp_to_key(lambda a, b: -sign * ot.chi(h, a, b)))
            yield sign, [h] + others


def _canonical(ot: AbstractOrderType):
    best = None
    for sign, perm in _natural_labelings(ot):
        entries = _lambda_entries(ot, perm, sign)
        if best is None or entries < best[0]:
            best = (entries, perm, sign)
    return best


def canonical_form(ot: AbstractOrderType) -> SmallLambdaMatrix:
    """Lexicographically minimal small lambda matrix over all relabelings
    and over reflection.  Mirror images collapse to the same record."""
    entries, _, _ = _canonical(ot)
    return SmallLambdaMatrix(ot.n, entries)


def canonical_order_type(ot: AbstractOrderType) -> AbstractOrderType:
    """The order type relabeled into its canonical natural labeling."""
    _, perm, sign = _canonical(ot)
    signs = tuple(
        sign * ot.chi(perm[i], perm[j], perm[k])
        for i, j, k in combinations(range(ot.n), 3)
    )
    return AbstractOrderType(ot.n, signs)


# ---------------------------------------------------------------------------
# binary codec


def encode_olm(mats: Iterable[SmallLambdaMatrix]) -> bytes:
    return b"".join(m.to_bytes() for m in mats)


def decode_olm(data: bytes, n: int, validate: bool = False) -> list[SmallLambdaMatrix]:
    """Split a byte stream into fixed-size records.

    With validate=True every record is additionally reconstructed into an
    orientation map; records admitting none raise AxiomViolation.
    """
    size = record_size(n)
    if len(data) % size != 0:
        raise TruncatedFile(
            f"stream of {len(data)} bytes is not a multiple of record size {size}"
        )
    mats = []
    for off in range(0, len(data), size):
        mat = SmallLambdaMatrix.from_bytes(n, data[off : off + size])
        if validate:
            mat.order_type()
        mats.append(mat)
    return mats


def _chi_from_lambda(n: int, entries: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Recover the orientation map of a naturally labeled record.

    Triples containing label 0 are all +1.  The remaining signs are found by
    backtracking over triples grouped by their largest label, pruning with
    the 4-point axiom and with the per-pair right-side counts.  For a valid
    record the solution is unique; None means no solution exists.
    """
    index = _triple_index(n)
    signs = [0] * len(index)
    for i, j in combinations(range(1, n), 2):
        signs[index[(0, i, j)]] = 1

    pair_pos = {}
    pos = 0
    for i in range(1, n):
        for j in range(i + 1, n):
            pair_pos[(i, j)] = pos
            pos += 1
    target = list(entries)
    # label 0 is never on the right of i -> j, so counts above n-3 are impossible
    if any(t > n - 3 for t in target):
        return None
    cnt = [0] * len(target)
    rem = [n - 3] * len(target)

    todo = [
        (i, j, k)
        for k in range(3, n)
        for i in range(1, k)
        for j in range(i + 1, k)
    ]

    def feasible(p: int) -> bool:
        return cnt[p] <= target[p] and cnt[p] + rem[p] >= target[p]

    def assign(t: int) -> bool:
        if t == len(todo):
            return True
        i, j, k = todo[t]
        r = index[(i, j, k)]
        pij, pik, pjk = pair_pos[(i, j)], pair_pos[(i, k)], pair_pos[(j, k)]
        rem[pij] -= 1
        rem[pik] -= 1
        rem[pjk] -= 1
        for s in (1, -1):
            ok = True
            for a in range(1, i):
                seq = (
                    signs[index[(a, i, j)]],
                    signs[index[(a, i, k)]],
                    signs[index[(a, j, k)]],
                    s,
                )
                if _sign_changes(seq) > 1:
                    ok = False
                    break
            if not ok:
                continue
            # contributions: k right of (i,j) iff s<0; j right of (i,k) iff s>0;
            # i right of (j,k) iff s<0
            d_ij = 1 if s < 0 else 0
            d_ik = 1 if s > 0 else 0
            d_jk = 1 if s < 0 else 0
            cnt[pij] += d_ij
            cnt[pik] += d_ik
            cnt[pjk] += d_jk
            if feasible(pij) and feasible(pik) and feasible(pjk):
                signs[r] = s
                if assign(t + 1):
                    return True
                signs[r] = 0
            cnt[pij] -= d_ij
            cnt[pik] -= d_ik
            cnt[pjk] -= d_jk
        rem[pij] += 1
        rem[pik] += 1
        rem[pjk] += 1
        return False

    if not assign(0):
        return None
    return tuple(signs)


# ---------------------------------------------------------------------------
# optional reader for published realization files


def read_realizations(data: bytes, n: int) -> list[list[Point]]:
    """Point-set records from the published realization database format:
    one byte per coordinate for n <= 8, two bytes (little-endian) for
    n in {9, 10, 11}; each record is x1 y1 ... xn yn."""
    width = 1 if n <= 8 else 2
    size = 2 * n * width
    if len(data) % size != 0:
        raise TruncatedFile(
            f"stream of {len(data)} bytes is not a multiple of record size {size}"
        )
    sets = []
    for off in range(0, len(data), size):
        rec = data[off : off + size]
        coords = [
            int.from_bytes(rec[c : c + width], "little")
            for c in range(0, size, width)
        ]
        sets.append(list(zip(coords[0::2], coords[1::2])))
    return sets
