import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quasidyn.errors import (
    DomainError,
    EvenOrderUnsupported,
    LatinViolation,
    NoIdempotentSquare,
    ResourceLimitExceeded,
)
from quasidyn.quasigroup import (
    FiniteQuasigroup,
    LatinSquare,
    Permutation,
    build_cyclic_group,
    build_idempotent_quasigroup,
    build_translation_quasigroup,
    check_latin,
    default_quasigroup,
    identity_permutation,
    is_associative,
    is_automorphism,
    is_commutative,
    is_idempotent,
    left_div,
    mul,
    quasigroup_from_square,
    right_div,
    translation,
)

ODD_ORDERS = [1, 3, 5, 7, 9, 11, 13, 15]


def test_translation_quasigroup_order_3():
    q = build_translation_quasigroup(3)
    assert q.table == ((0, 2, 1), (2, 1, 0), (1, 0, 2))
    assert q.is_idempotent
    assert q.automorphic_translation == translation(3)


@pytest.mark.parametrize("n", ODD_ORDERS)
def test_translation_quasigroup_is_latin_idempotent_and_automorphic(n):
    q = build_translation_quasigroup(n)
    t = q.table
    assert check_latin(t) is None
    assert is_idempotent(q.square)
    assert is_commutative(q.square)
    assert is_automorphism(q, translation(n))
    for x in range(n):
        for y in range(n):
            assert t[(x + 1) % n][(y + 1) % n] == (t[x][y] + 1) % n


@pytest.mark.parametrize("n", [2, 4, 6, 10])
def test_translation_quasigroup_rejects_even_orders(n):
    with pytest.raises(EvenOrderUnsupported) as exc:
        build_translation_quasigroup(n)
    assert exc.value.n == n
    assert "oracle automorphic" in str(exc.value)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_divisions_undo_multiplication(data):
    n = data.draw(st.sampled_from([1, 3, 5, 7, 9, 11]))
    q = build_translation_quasigroup(n)
    x = data.draw(st.integers(0, n - 1))
    y = data.draw(st.integers(0, n - 1))
    z = mul(q, x, y)
    assert left_div(q, x, z) == y
    assert right_div(q, z, y) == x
    assert mul(q, x, left_div(q, x, y)) == y
    assert mul(q, right_div(q, x, y), y) == x


@pytest.mark.parametrize("x, y", [(-1, 0), (0, 3), (3, 3)])
def test_symbols_out_of_range(x, y):
    q = build_translation_quasigroup(3)
    with pytest.raises(DomainError):
        mul(q, x, y)


def test_latin_square_reports_first_bad_column():
    with pytest.raises(LatinViolation) as exc:
        LatinSquare.from_rows([[0, 1], [0, 1]])
    assert (exc.value.axis, exc.value.index) == ("column", 0)


def test_check_latin_row_violation():
    assert check_latin([[0, 1, 2], [1, 1, 0], [2, 0, 1]]) == ("row", 1)
    assert check_latin([[0, 1], [1, 0]]) is None


def test_commutativity():
    assert is_commutative(build_cyclic_group(4).square)
    skew = LatinSquare.from_rows([[0, 1, 2], [2, 0, 1], [1, 2, 0]])
    assert not is_commutative(skew)


@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_successor_is_not_an_automorphism_of_the_cyclic_group(n):
    q = build_cyclic_group(n)
    assert not is_automorphism(q, translation(n))
    assert is_automorphism(q, identity_permutation(n))


def test_automorphism_order_mismatch():
    with pytest.raises(DomainError):
        is_automorphism(build_translation_quasigroup(3), translation(5))


def test_translation_permutations():
    assert translation(5).is_translation()
    assert identity_permutation(1).is_translation()
    assert not identity_permutation(3).is_translation()
    assert not Permutation((1, 0, 2)).is_translation()
    assert Permutation((2, 0, 1)).is_translation()
    with pytest.raises(DomainError):
        Permutation((0, 0, 1))


@pytest.mark.parametrize("n", [1, 3, 4, 5, 6, 7, 8])
def test_idempotent_quasigroup(n):
    q = build_idempotent_quasigroup(n)
    assert q.is_idempotent
    assert q.order == n
    assert check_latin(q.table) is None
    assert all(q.table[x][x] == x for x in range(n))


def test_idempotent_quasigroup_order_4_extends_order_3():
    q = build_idempotent_quasigroup(4)
    assert q.table == ((0, 3, 1, 2), (2, 1, 3, 0), (3, 0, 2, 1), (1, 2, 0, 3))


@pytest.mark.parametrize("n", [14, 20, 34, 48, 64])
def test_idempotent_quasigroup_large_even_orders(n):
    q = build_idempotent_quasigroup(n)
    assert q.order == n
    assert check_latin(q.array) is None
    assert is_idempotent(q.square)


def test_idempotent_quasigroup_of_order_2_does_not_exist():
    with pytest.raises(NoIdempotentSquare) as exc:
        build_idempotent_quasigroup(2)
    cert = exc.value.certificate
    assert cert.n == 2
    assert cert.clash == (0, 1)


def test_default_quasigroup():
    assert default_quasigroup(2) == build_cyclic_group(2)
    assert default_quasigroup(5) == build_translation_quasigroup(5)
    assert default_quasigroup(4).is_idempotent


def test_flags_are_validated():
    square = build_cyclic_group(3).square
    with pytest.raises(DomainError):
        FiniteQuasigroup(square=square, is_idempotent=True)
    with pytest.raises(DomainError):
        FiniteQuasigroup(square=square, automorphic_translation=translation(3))


def test_quasigroup_from_square_detects_flags():
    q = quasigroup_from_square(build_translation_quasigroup(5).square)
    assert q.is_idempotent
    assert q.automorphic_translation == translation(5)
    plain = quasigroup_from_square(build_cyclic_group(5).square)
    assert not plain.is_idempotent
    assert plain.automorphic_translation is None


def test_order_limit_from_environment(monkeypatch):
    monkeypatch.setenv("QUASIDYN_MAX_ORDER", "9")
    build_cyclic_group(9)
    with pytest.raises(ResourceLimitExceeded):
        build_cyclic_group(10)
    with pytest.raises(ResourceLimitExceeded):
        build_translation_quasigroup(11)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 9])
def test_cyclic_group_is_associative(n):
    assert is_associative(build_cyclic_group(n).square)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_translation_quasigroup_is_not_associative(n):
    # (0*0)*1 = lam but 0*(0*1) = lam*lam
    assert not is_associative(build_translation_quasigroup(n).square)


def test_idempotent_squares_beyond_order_1_are_not_groups():
    assert is_associative(build_idempotent_quasigroup(1).square)
    for n in (3, 4, 6, 8):
        assert not is_associative(build_idempotent_quasigroup(n).square)


def test_array_and_table_views_agree():
    q = build_translation_quasigroup(5)
    assert q.array.tolist() == [list(r) for r in q.table]
    assert not q.array.flags.writeable
    assert LatinSquare.from_array(q.array) == q.square
    assert hash(LatinSquare.from_array(q.array)) == hash(q.square)


def test_check_latin_accepts_arrays_and_ragged_rows():
    assert check_latin(build_cyclic_group(4).array) is None
    assert check_latin([[0, 1], [1]]) == ("row", 1)
    assert check_latin([[0, 1, 2], [1, 2, 0], [2, 0, 0]]) == ("row", 2)
