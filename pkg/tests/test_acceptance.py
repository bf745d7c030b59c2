"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s`.  Criterion 7 is the
documented long run (hours) and only executes when a graph6 file with all
triangulations on 11 vertices is supplied via OTKIT_TRIANGULATIONS_FILE;
criterion 10 documents what is out of desk scale.
"""

import os
import random

import pytest

import oracles
from conftest import all_triangulation_candidates
from otkit.bounds import (
    labeled_stacked_count,
    min_universal_size_counting,
    solve_alpha,
)
from otkit.chirotope import chirotope_from_points, decode_olm
from otkit.cli import main as cli_main
from otkit.data import conflict_graphs, listing1_points
from otkit.embedding import decide_embeddable, verify_witness
from otkit.enumeration import ExtensionShard, enumerate_order_types, run_extension
from otkit.graphs import (
    count_labeled_stackings,
    emit_edge_list,
    filter_max_degree,
    generate_stacked,
    parse_graph6,
    read_graph6_file,
    recognize_stacked,
)
from otkit.search import StatMatrix, export_lp, min_hitting_set

LONG = os.environ.get("OTKIT_LONG") == "1"


def test_criterion_01_codec_bit_exact(tmp_path, capsys):
    seed = tmp_path / "n3.bin"
    seed.write_bytes(b"\x00")
    code = cli_main(["extend", "3", str(seed), "1", "0", "1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "total solutions: 2/1" in out
    data = (tmp_path / "n3.bin.ext0_1.bin").read_bytes()
    assert data == bytes([0x00, 0x01, 0x00, 0x01, 0x00, 0x01])
    print("ACCEPTANCE 1: PASS - n=4 codec bytes 00 01 00 01 00 01, 2 solutions")


def test_criterion_02_enumeration_counts():
    expected = {}
    for n in (4, 5, 6, 7):
        expected[n] = oracles.count_order_type_classes(n)
    assert expected == {4: 2, 5: 3, 6: 16, 7: 135}
    got = {n: len(enumerate_order_types(n)) for n in (4, 5, 6, 7)}
    assert got == expected
    print("ACCEPTANCE 2: PASS - counts 2/3/16/135 match the independent oracle")


@pytest.mark.skipif(not LONG, reason="optional n=8 oracle run; set OTKIT_LONG=1")
def test_criterion_02b_enumeration_n8():
    assert len(enumerate_order_types(8)) == 3315
    print("ACCEPTANCE 2b: PASS - 3315 order types on 8 points")


def test_criterion_03_stacked_generation():
    family = generate_stacked(11)
    assert len(family) == 434
    deg10 = filter_max_degree(family, 10, exact=True)
    assert len(deg10) == 82
    print("ACCEPTANCE 3: PASS - 434 stacked triangulations at n=11, 82 with max degree 10")


def test_criterion_04_graph6():
    line1 = (
        "0 1 0 2 0 3 0 4 1 2 1 4 1 5 1 6 2 3 2 6 2 7 3 4 3 7 4 5 4 7 5 6 5 7 6 7"
    )
    line2 = (
        "0 1 0 2 0 3 0 4 1 2 1 4 1 5 2 3 2 5 2 6 2 7 3 4 3 7 4 5 4 6 4 7 5 6 6 7"
    )
    assert emit_edge_list(parse_graph6("G|tJH{")) == line1
    assert emit_edge_list(parse_graph6("G|thXs")) == line2
    print("ACCEPTANCE 4: PASS - graph6 decodes byte-exact to the reference edge lists")


def test_criterion_05_sat_vs_bruteforce():
    cands = {n: all_triangulation_candidates(n) for n in (4, 5, 6)}
    pairs = 0
    for no in (4, 5, 6):
        for ot in enumerate_order_types(no):
            for ng in (4, 5, 6):
                if ng > no:
                    continue
                for g in cands[ng]:
                    w = decide_embeddable(g, ot)
                    want = oracles.embed_oracle(g.n, sorted(g.edges), ot.n, ot.chi)
                    assert (w is not None) == want, (no, ng, sorted(g.edges))
                    if w is not None:
                        assert verify_witness(g, ot, w) is None
                    pairs += 1
    print(f"ACCEPTANCE 5: PASS - SAT agrees with brute force on all {pairs} pairs")


def test_criterion_06_conflict_collection_on_listing1():
    gs = conflict_graphs("g+h")
    assert len(gs) == 49
    ot = chirotope_from_points(listing1_points())
    for g in gs:
        assert recognize_stacked(g) is not None
        w = decide_embeddable(g, ot)
        assert w is not None
        assert verify_witness(g, ot, w) is None
    print("ACCEPTANCE 6: PASS - all 49 conflict graphs are stacked and embed on the 12 points")


@pytest.mark.skipif(
    not os.environ.get("OTKIT_TRIANGULATIONS_FILE"),
    reason="long run (hours): set OTKIT_TRIANGULATIONS_FILE to a graph6 file "
    "with all 1,249 triangulations on 11 vertices",
)
def test_criterion_07_full_11_universality():
    gs = read_graph6_file(os.environ["OTKIT_TRIANGULATIONS_FILE"])
    assert len(gs) == 1249
    ot = chirotope_from_points(listing1_points())
    for g in gs:
        assert decide_embeddable(g, ot) is not None
    print("ACCEPTANCE 7: PASS - the 12-point set embeds all 1,249 triangulations")


def test_criterion_08_hitting_set_exactness(tmp_path):
    rng = random.Random(20240823)
    solved_lp = 0
    for trial in range(200):
        rows = rng.randint(1, 20)
        cols = rng.randint(1, 12)
        bits = [[rng.randint(0, 1) for _ in range(cols)] for _ in range(rows)]
        if not all(0 in row for row in bits):
            continue
        m = StatMatrix(bits)
        exact = len(min_hitting_set(m, "exact"))
        assert exact == oracles.hitting_set_oracle(bits), (trial, bits)
        if trial % 10 == 0:
            p = tmp_path / f"i{trial}.lp"
            export_lp(m, p)
            assert oracles.parse_lp_and_solve(p) == exact
            solved_lp += 1
    assert solved_lp > 0
    print(f"ACCEPTANCE 8: PASS - exact = exhaustive on 200 matrices, GLPK agrees on {solved_lp} LP files")


def test_criterion_09_bounds():
    a = solve_alpha(1e-9)
    assert abs(a - 1.293) <= 1e-3
    for n in range(4, 9):
        assert labeled_stacked_count(n) == count_labeled_stackings(n)
    assert min_universal_size_counting(20) == 21
    print("ACCEPTANCE 9: PASS - alpha=1.293..., stacking counts match, counting bound(20)=21")


def test_criterion_10_desk_scale_documented(tmp_path):
    """The full-scale survivor counts (262,386,428 / 287,871 / 2,194), the
    nonexistence of an 11-universal 11-point set, and the size-40/37 lower
    bounds all need the complete n=11 order-type sweep (hundreds of CPU
    days) and are NOT reproduced here.  This test documents that the
    sharded pipeline the sweep would use is functional end to end at a
    small scale."""
    # enumerate to n=5 via two shards, merge, then filter/stat/cover on 4-point data
    seed = tmp_path / "n3.bin"
    seed.write_bytes(b"\x00")
    s = ExtensionShard(1, 0, 1, str(seed))
    run_extension(s, 3)
    n4 = tmp_path / "n4.bin"
    os.replace(s.output_path, n4)
    outs = []
    for frm in (0, 1):
        sh = ExtensionShard(2, frm, frm + 1, str(n4))
        run_extension(sh, 4)
        outs.append(sh.output_path)
    merged = tmp_path / "n5.bin"
    code = cli_main(["merge-dedup", "5", str(merged)] + outs)
    assert code == 0
    assert len(decode_olm(merged.read_bytes(), 5, validate=True)) == 3
    print(
        "ACCEPTANCE 10: PASS (documentary) - full n=11 sweep out of desk scale; "
        "sharded pipeline verified end to end at n<=5"
    )
