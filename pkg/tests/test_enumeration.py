import hashlib

import pytest

import oracles
from otkit.chirotope import (
    AbstractOrderType,
    canonical_form,
    decode_olm,
    signotope_check,
)
from otkit.enumeration import (
    ExtensionShard,
    enumerate_order_types,
    extend_by_one,
    merge_dedup,
    run_extension,
)
from otkit.errors import OtkitError

SEED3 = AbstractOrderType(3, (1,))


def test_extend_seed_gives_two():
    assert len(extend_by_one(SEED3)) == 2


def test_counts_match_independent_oracle():
    # the oracle enumerates all axiom-consistent sign vectors from scratch
    # and counts orbits under relabeling + reflection
    for n in (4, 5, 6):
        assert len(enumerate_order_types(n)) == oracles.count_order_type_classes(n)


def test_known_counts_small():
    assert [len(enumerate_order_types(n)) for n in (4, 5, 6, 7)] == [2, 3, 16, 135]


def test_outputs_valid_and_canonical():
    for n in (4, 5, 6):
        for ot in enumerate_order_types(n):
            assert signotope_check(ot) is None
            mat = canonical_form(ot)
            assert canonical_form(mat.order_type()) == mat


def test_shard_selection():
    shard = ExtensionShard(parts=3, from_part=1, to_part=2, input_path="x")
    assert [i for i in range(9) if shard.selects(i)] == [1, 4, 7]
    assert shard.output_path == "x.ext1_2.bin"


def test_shard_bad_range():
    with pytest.raises(ValueError):
        ExtensionShard(parts=2, from_part=2, to_part=1, input_path="x")


def _write_seed(path):
    path.write_bytes(b"\x00")
    return str(path)


def test_run_extension_transcript(tmp_path):
    seed = _write_seed(tmp_path / "n3.bin")
    shard = ExtensionShard(parts=1, from_part=0, to_part=1, input_path=seed)
    processed, produced = run_extension(shard, 3)
    assert (processed, produced) == (1, 2)
    data = (tmp_path / "n3.bin.ext0_1.bin").read_bytes()
    assert data == bytes([0, 1, 0, 1, 0, 1])


def test_run_extension_refuses_overwrite(tmp_path):
    seed = _write_seed(tmp_path / "n3.bin")
    shard = ExtensionShard(parts=1, from_part=0, to_part=1, input_path=seed)
    run_extension(shard, 3)
    with pytest.raises(OtkitError):
        run_extension(shard, 3)
    run_extension(shard, 3, force=True)  # force path works


def _chain(tmp_path, up_to):
    """n=3 seed extended file by file up to `up_to` points."""
    current = tmp_path / "n3.bin"
    current.write_bytes(b"\x00")
    for n in range(3, up_to):
        shard = ExtensionShard(1, 0, 1, str(current))
        run_extension(shard, n, force=True)
        current = tmp_path / f"n{n + 1}.bin"
        import os

        os.replace(shard.output_path, current)
    return current


def test_chain_to_six(tmp_path):
    path = _chain(tmp_path, 6)
    assert len(decode_olm(path.read_bytes(), 6, validate=True)) == 16


def test_sharding_invariance(tmp_path):
    base = _chain(tmp_path, 5)  # 3 records at n=5
    single = ExtensionShard(1, 0, 1, str(base))
    run_extension(single, 5, force=True)
    whole = open(single.output_path, "rb").read()

    outs = []
    for frm in range(2):
        shard = ExtensionShard(2, frm, frm + 1, str(base))
        run_extension(shard, 5, force=True)
        outs.append(shard.output_path)
    merged = tmp_path / "merged.bin"
    count = merge_dedup(outs, 6, str(merged))
    assert merged.read_bytes() == whole
    assert count == 16


def test_determinism(tmp_path):
    base = _chain(tmp_path, 6)
    digests = set()
    for _ in range(2):
        shard = ExtensionShard(1, 0, 1, str(base))
        run_extension(shard, 6, force=True)
        digests.add(hashlib.sha256(open(shard.output_path, "rb").read()).hexdigest())
    assert len(digests) == 1


def test_merge_dedup_removes_duplicates(tmp_path):
    a = tmp_path / "a.bin"
    b = tmp_path / "b.bin"
    a.write_bytes(bytes([0, 1, 0, 1, 0, 1]))
    b.write_bytes(bytes([1, 0, 1]))
    out = tmp_path / "out.bin"
    assert merge_dedup([str(a), str(b)], 4, str(out)) == 2
    assert out.read_bytes() == bytes([0, 1, 0, 1, 0, 1])
