"""Exhaustive extension of abstract order types by one point.

Starting from the unique order type on 3 points, all abstract order types
on n+1 points are obtained by choosing the orientation of every triple
involving a new point, backtracking over the pairs (i, j) in lexicographic
order and pruning with the 4-point axiom as soon as a 4-tuple is complete.
Results are deduplicated by their canonical record and written sorted, so
repeated runs are byte-identical and shard outputs merge losslessly.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .chirotope import (
    AbstractOrderType,
    _sign_changes,
    _triple_index,
    canonical_form,
    canonical_order_type,
    decode_olm,
    record_size,
)
from .errors import OtkitError


@dataclass(frozen=True)
class ExtensionShard:
    """Slice of an extension run: input records with index % parts in
    [from_part, to_part) are processed."""

    parts: int
    from_part: int
    to_part: int
    input_path: str
    output_path: str = ""

    def __post_init__(self):
        if not 0 <= self.from_part < self.to_part <= self.parts:
            raise ValueError(
                f"bad shard range {self.from_part}..{self.to_part} of {self.parts}"
            )
        if not self.output_path:
            object.__setattr__(
                self,
                "output_path",
                f"{self.input_path}.ext{self.from_part}_{self.to_part}.bin",
            )

    def selects(self, record_index: int) -> bool:
        return self.from_part <= record_index % self.parts < self.to_part


def _extend_labeling(ot: AbstractOrderType, found: dict) -> None:
    """Append a new last point to one fixed labeling in all axiom-consistent
    ways; canonical results are added to `found`."""
    n = ot.n
    chi = ot.chi
    index = _triple_index(n + 1)
    pairs = list(combinations(range(n), 2))
    chosen: dict[tuple[int, int], int] = {}

    base = [0] * len(index)
    for i, j, k in combinations(range(n), 3):
        base[index[(i, j, k)]] = chi(i, j, k)

    def emit():
        signs = list(base)
        for (i, j), s in chosen.items():
            signs[index[(i, j, n)]] = s
        cand = canonical_order_type(AbstractOrderType(n + 1, tuple(signs)))
        key = canonical_form(cand).to_bytes()
        if key not in found:
            found[key] = cand

    def assign(t: int):
        if t == len(pairs):
            emit()
            return
        i, j = pairs[t]
        for s in (1, -1):
            ok = True
            for a in range(i):
                seq = (chi(a, i, j), chosen[(a, i)], chosen[(a, j)], s)
                if _sign_changes(seq) > 1:
                    ok = False
                    break
            if ok:
                chosen[(i, j)] = s
                assign(t + 1)
                del chosen[(i, j)]

    assign(0)


def extend_by_one(ot: AbstractOrderType) -> list[AbstractOrderType]:
    """All order types on n+1 points obtained by inserting one point.

    The 4-point axiom is labeling-sensitive, so the new point is appended
    to every naturally labeled representative of the class (each hull point
    first, both reflections); inserting only into one labeling would miss
    extensions.  Returns canonical representatives, deduplicated and sorted
    by their binary record.
    """
    from .chirotope import _natural_labelings

    reps: set[tuple[int, ...]] = set()
    for sign, perm in _natural_labelings(ot):
        reps.add(
            tuple(
                sign * ot.chi(perm[i], perm[j], perm[k])
                for i, j, k in combinations(range(ot.n), 3)
            )
        )
    found: dict[bytes, AbstractOrderType] = {}
    for signs in sorted(reps):
        _extend_labeling(AbstractOrderType(ot.n, signs), found)
    return [found[k] for k in sorted(found)]


def extend_records(records, n: int) -> set[bytes]:
    """Canonical (n+1)-point records generated from an iterable of n-point
    small lambda matrices."""
    out: set[bytes] = set()
    for mat in records:
        for ext in extend_by_one(mat.order_type()):
            out.add(canonical_form(ext).to_bytes())
    return out


def run_extension(shard: ExtensionShard, n: int, force: bool = False):
    """Process one shard of an input file; returns (processed, produced).

    The output file holds the sorted, within-shard-deduplicated canonical
    records on n+1 points.  Global deduplication across shards is a
    separate merge step (:func:`merge_dedup`).
    """
    if os.path.exists(shard.output_path) and not force:
        raise OtkitError(
            f"output {shard.output_path} exists; pass force=True to overwrite"
        )
    with open(shard.input_path, "rb") as fh:
        data = fh.read()
    mats = decode_olm(data, n)
    selected = [m for idx, m in enumerate(mats) if shard.selects(idx)]
    out = extend_records(selected, n)
    with open(shard.output_path, "wb") as fh:
        for rec in sorted(out):
            fh.write(rec)
    return len(selected), len(out)


def merge_dedup(paths: Sequence[str], n: int, output_path: str, force: bool = False) -> int:
    """Merge shard outputs into one sorted, globally deduplicated file."""
    if os.path.exists(output_path) and not force:
        raise OtkitError(f"output {output_path} exists; pass force=True to overwrite")
    size = record_size(n)
    records: set[bytes] = set()
    for path in paths:
        with open(path, "rb") as fh:
            data = fh.read()
        for m in decode_olm(data, n):
            records.add(m.to_bytes())
        del data
    with open(output_path, "wb") as fh:
        for rec in sorted(records):
            assert len(rec) == size
            fh.write(rec)
    return len(records)


def enumerate_order_types(n: int) -> list[AbstractOrderType]:
    """All abstract order types on n points, canonical, by chained extension
    from the unique 3-point order type.  Intended for small n."""
    current = [AbstractOrderType(3, (1,))]
    for _ in range(3, n):
        seen: dict[bytes, AbstractOrderType] = {}
        for ot in current:
            for ext in extend_by_one(ot):
                seen.setdefault(canonical_form(ext).to_bytes(), ext)
        current = [seen[k] for k in sorted(seen)]
    return current
