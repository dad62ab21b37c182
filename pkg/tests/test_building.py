import pytest

from jgrass.building import Building, BuildingError, Flag, parse_types
from jgrass.gf import make_field
from jgrass.linalg import span, unit
from jgrass.quadform import MINUS, PLUS

F2 = make_field(2, 1)


def test_parse_types_sorted():
    assert parse_types("3,1") == (1, 3)
    assert parse_types("-,+,1") == (1, PLUS, MINUS)
    assert parse_types(["+", 2]) == (2, PLUS)


def test_diagrams():
    A = Building("A", 4, F2)
    assert A.neighbours(2) == {1, 3}
    D = Building("D", 4, F2)
    assert D.neighbours(2) == {1, PLUS, MINUS}
    assert D.neighbours(PLUS) == {2}


@pytest.mark.parametrize("family,n,J,expected", [
    ("A", 3, (1, 3), [2]),
    ("A", 4, (1, 3), [2]),
    ("A", 4, (1, 4), [2, 3]),
    ("D", 4, (PLUS, MINUS), [2]),
    ("D", 4, (1, MINUS), [2]),
    ("D", 4, (1, PLUS, MINUS), [2]),
    ("D", 3, (PLUS, MINUS), [1]),
    ("D", 5, (1, PLUS), [2, 3]),
    ("A", 3, (1, 2), []),
])
def test_splitting_types(family, n, J, expected):
    assert Building(family, n, F2).splitting_types(J) == expected


def test_signs_never_split():
    for n in (3, 4, 5):
        D = Building("D", n, F2)
        for J in ((1,), (1, n - 2), (PLUS, MINUS, 1)):
            assert not D.splits(PLUS, J) and not D.splits(MINUS, J)


def test_flags_and_incidence():
    D = Building("D", 3, F2)
    S = D.space
    M = S.reference_maximal
    p = span([unit(6, 0)], F2, 6)
    assert D.is_flag({1: p, PLUS: M})
    Mp, Mm = S.maximal_pair(span([unit(6, 0), unit(6, 2)], F2, 6))
    assert D.incident(PLUS, Mp, MINUS, Mm)
    assert not D.is_flag({1: span([unit(6, 0), unit(6, 1)], F2, 6)})
    fl = Flag({3: span([unit(4, 0), unit(4, 1), unit(4, 2)], F2, 4), 1: span([unit(4, 0)], F2, 4)})
    assert fl.types == (1, 3)
    assert Building("A", 3, F2).is_flag(fl)


def test_errors():
    with pytest.raises(BuildingError):
        Building("C", 3, F2)
    with pytest.raises(BuildingError):
        Building("D", 2, F2)
    with pytest.raises(BuildingError):
        Building("A", 3, F2).splits(7, (1,))
