import logging

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from permuframe.cayley import adjacent_set, all_transpositions_set
from permuframe.frames import build_compatible_frame
from permuframe.perm import Permutation, lex_ordering, paper_s3_ordering
from permuframe.ranked import RankedDataset, RankingError, coefficient_report, ingest_rankings, read_rankings


def write(tmp_path, text, name="ballots.csv"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_single_row(tmp_path):
    order = paper_s3_ordering()
    f = ingest_rankings(write(tmp_path, 'ranking,count\n"2,1,3",5\n'), 3, order)
    assert f.tolist() == [0, 5, 0, 0, 0, 0]


def test_unquoted_ranking(tmp_path):
    f = ingest_rankings(write(tmp_path, "ranking,count\n2,1,3,5\n"), 3, paper_s3_ordering())
    assert f.tolist() == [0, 5, 0, 0, 0, 0]


def test_empty_file(tmp_path):
    assert ingest_rankings(write(tmp_path, ""), 3, lex_ordering(3)).tolist() == [0] * 6
    assert ingest_rankings(write(tmp_path, "ranking,count\n"), 3, lex_ordering(3)).tolist() == [0] * 6


def test_uniform_ballots_hit_only_trivial_block(tmp_path):
    order = lex_ordering(3)
    text = "ranking,count\n" + "".join(f'"{p}",1\n' for p in order)
    f = ingest_rankings(write(tmp_path, text), 3, order)
    assert f.tolist() == [1] * 6
    report = coefficient_report(build_compatible_frame(3, adjacent_set(3)), f)
    assert report.nonzero_groups() == [((3,), 2.0)]


@pytest.mark.parametrize("text", ['"1,2",1\n', '"1,1,2",1\n', '"1,2,3",x\n', '"1,2,3",-1\n', '"1,2,3"\n'])
def test_malformed_rows(tmp_path, text):
    with pytest.raises(RankingError):
        read_rankings(write(tmp_path, text), 3)


def test_duplicates_summed_with_warning(tmp_path, caplog):
    with caplog.at_level(logging.WARNING):
        ds = read_rankings(write(tmp_path, '"1,2,3",2\n"1,2,3",1.5\n'), 3)
    assert ds.counts == {Permutation.identity(3): 3.5}
    assert "duplicate" in caplog.text


def test_csv_roundtrip(tmp_path):
    text = 'ranking,count\n"3,1,2",1.25\n"1,2,3",2\n"3,1,2",0.75\n'
    ds = read_rankings(write(tmp_path, text), 3)
    again = read_rankings(write(tmp_path, ds.to_csv(), "out.csv"), 3)
    assert again.counts == {Permutation.parse("1,2,3"): 2.0, Permutation.parse("3,1,2"): 2.0}
    order = lex_ordering(3)
    assert RankedDataset.from_signal(ds.to_signal(order), order).counts == ds.counts


def test_report_examples():
    frame = build_compatible_frame(3, adjacent_set(3))
    zero = coefficient_report(frame, np.zeros(6))
    assert zero.total_energy == 0 and all(r.coefficient == 0 for r in zero.rows)
    atom = frame.atoms[3]
    single = coefficient_report(frame, atom.signal)
    assert single.nonzero_groups() == [(atom.shape, atom.eigenvalue)]
    with pytest.raises(RankingError):
        coefficient_report(frame, np.zeros(5))


def test_report_csv_layout():
    frame = build_compatible_frame(3, adjacent_set(3))
    text = coefficient_report(frame, np.arange(6.0)).to_csv()
    lines = text.splitlines()
    assert lines[0] == "partition,lambda,i,atom,coefficient"
    assert "partition,lambda,energy" in lines
    assert lines[-2].startswith("total,,")


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(0, 100, allow_nan=False), min_size=24, max_size=24))
def test_energy_bookkeeping_s4(counts):
    frame = _frame4()
    f = np.array(counts)
    report = coefficient_report(frame, f)
    assert abs(report.total_energy - f @ f) < 1e-8 * max(1.0, f @ f)


_CACHE = {}


def _frame4():
    if "f" not in _CACHE:
        _CACHE["f"] = build_compatible_frame(4, all_transpositions_set(4))
    return _CACHE["f"]
