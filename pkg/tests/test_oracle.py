import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quasidyn.errors import DomainError, ResourceLimitExceeded
from quasidyn.oracle import (
    NonexistenceCertificate,
    avector_array,
    avector_from_table,
    count_latin_squares,
    count_latin_squares_by_rows,
    enumerate_automorphic,
    first_clash,
    make_avector,
    search_idempotent,
    sum_contradiction_report,
    table_from_avector,
    verify_lemma,
)
from quasidyn.quasigroup import (
    LatinSquare,
    build_translation_quasigroup,
    check_latin,
    is_automorphism,
    is_idempotent,
    quasigroup_from_square,
    translation,
)

# Latin a-vector tables are the orthomorphisms of Z_n.
AUTOMORPHIC_COUNTS = {1: 1, 2: 0, 3: 3, 4: 0, 5: 15, 6: 0, 7: 133}


@pytest.mark.parametrize("n", [1, 3, 5, 7])
def test_translation_table_has_a_vector_lambda_t(n):
    lam = (n + 1) // 2
    a = make_avector([lam * t % n for t in range(n)])
    table = table_from_avector(a)
    assert table == build_translation_quasigroup(n).table
    assert avector_from_table(table) == a


def test_table_from_avector_rows_are_shifted_copies():
    table = table_from_avector(make_avector([1, 0, 3, 2]))
    assert table[0] == (1, 0, 3, 2)
    assert table[1] == (3, 2, 1, 0)


def test_make_avector_range():
    with pytest.raises(DomainError):
        make_avector([0, 4, 1, 2])
    with pytest.raises(DomainError):
        make_avector([])


@pytest.mark.parametrize("n, count", sorted(AUTOMORPHIC_COUNTS.items()))
def test_enumerate_automorphic_counts(n, count):
    result = enumerate_automorphic(n)
    assert result.count == count
    assert (result.count == 0) == (n % 2 == 0)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_enumeration_lists_the_translation_square(n):
    result = enumerate_automorphic(n, collect=True)
    assert len(result.tables) == result.count
    assert build_translation_quasigroup(n).table in result.tables
    assert all(check_latin(t) is None for t in result.tables)


@pytest.mark.parametrize("n", [1, 3, 5, 7])
def test_every_listed_table_admits_the_successor_automorphism(n):
    for table in enumerate_automorphic(n, collect=True).tables:
        q = quasigroup_from_square(LatinSquare.from_rows(table))
        assert is_automorphism(q, translation(n))
        assert q.automorphic_translation == translation(n)


def test_avector_array_matches_table_view():
    a = make_avector([1, 0, 3, 2])
    assert avector_array(a).tolist() == [list(r) for r in table_from_avector(a)]


def test_enumeration_in_worker_processes_matches():
    assert enumerate_automorphic(5, workers=2).count == 15


def test_enumeration_limits():
    with pytest.raises(ResourceLimitExceeded):
        enumerate_automorphic(9)
    with pytest.raises(DomainError):
        enumerate_automorphic(0)


@pytest.mark.slow
def test_enumerate_automorphic_order_8():
    result = enumerate_automorphic(8, workers=2)
    assert result.count == 0
    assert result.candidates == 40320


def test_verify_lemma():
    rows = verify_lemma(6)
    assert [r.n for r in rows] == [1, 2, 3, 4, 5, 6]
    assert all(r.holds for r in rows)
    assert [r.count for r in rows] == [1, 0, 3, 0, 15, 0]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([4, 6, 8]).flatmap(lambda n: st.permutations(list(range(n)))))
def test_sum_contradiction_for_distinct_vectors(entries):
    n = len(entries)
    report = sum_contradiction_report(n, make_avector(entries))
    assert report.row_sums_constant and report.col_sums_constant
    assert report.row_sum == n // 2
    assert report.col_sum == 0
    assert report.contradiction


def test_sum_contradiction_preconditions():
    with pytest.raises(DomainError):
        sum_contradiction_report(3, make_avector([0, 2, 1]))
    with pytest.raises(DomainError):
        sum_contradiction_report(4, make_avector([0, 0, 1, 2]))
    with pytest.raises(DomainError):
        sum_contradiction_report(4, make_avector([0, 1]))


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 12), (4, 576)])
def test_count_latin_squares(n, count):
    assert count_latin_squares(n) == count
    assert count_latin_squares_by_rows(n) == count


@pytest.mark.slow
def test_count_latin_squares_order_5():
    assert count_latin_squares(5) == 161280


def test_count_latin_squares_limit():
    with pytest.raises(ResourceLimitExceeded):
        count_latin_squares(6)
    with pytest.raises(ResourceLimitExceeded):
        count_latin_squares_by_rows(6)


@pytest.mark.parametrize("n", [1, 3, 4, 5, 7, 8, 9])
def test_search_idempotent_finds_squares(n):
    found = search_idempotent(n)
    assert isinstance(found, LatinSquare)
    assert found.order == n
    assert is_idempotent(found)
    assert check_latin(found.array) is None


def test_search_idempotent_is_deterministic():
    assert search_idempotent(4) == search_idempotent(4)


def test_search_idempotent_order_2_certificate():
    cert = search_idempotent(2)
    assert isinstance(cert, NonexistenceCertificate)
    assert cert.n == 2
    assert cert.clash == (0, 1)
    assert cert.nodes_explored >= 1


def test_first_clash_only_for_order_2():
    assert first_clash(2) == (0, 1)
    assert first_clash(3) is None
    assert first_clash(4) is None


def test_search_idempotent_limit():
    with pytest.raises(ResourceLimitExceeded):
        search_idempotent(13)

