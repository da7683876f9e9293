import pytest

from permuframe.cayley import adjacent_set, all_transpositions_set
from permuframe.irreps import build_all_tables
from permuframe.perm import lex_ordering, paper_s3_ordering


@pytest.fixture(scope="session")
def s3_order():
    return paper_s3_ordering()


@pytest.fixture(scope="session")
def s3_fixture_tables(s3_order):
    return build_all_tables(3, s3_order, source="fixture")


@pytest.fixture(scope="session")
def yor_tables():
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = build_all_tables(n, lex_ordering(n))
        return cache[n]

    return get


PRESETS = {"adjacent": adjacent_set, "all_transpositions": all_transpositions_set}
