import json
from enum import Enum
from fractions import Fraction

import numpy as np
import pytest

from spinorlab.definitions import (
    Chirality,
    Dictionary,
    IndexRole,
    List,
    ListEntry,
    Space,
    cell_name,
    format_level,
    level,
)

all_roles = ["vector-up", "vector-down", "spinor+", "spinor-", "dual-spinor+", "dual-spinor-", "scalar"]


@pytest.mark.parametrize("role", all_roles)
def test_index_roles_exist(role):
    assert isinstance(IndexRole(role), Enum)
    assert IndexRole(role) == role


@pytest.mark.parametrize("role", all_roles)
def test_index_role_dual_is_involution(role):
    assert IndexRole(role).dual.dual is IndexRole(role)


def test_index_role_pairs():
    assert IndexRole.VECTOR_UP.dual is IndexRole.VECTOR_DOWN
    assert IndexRole.SPINOR_MINUS.dual is IndexRole.DUAL_MINUS
    assert IndexRole.VECTOR_DOWN.is_vector
    assert not IndexRole.SPINOR_PLUS.is_vector


@pytest.mark.parametrize(
    "space, symbol, rank",
    [("lie", "𝔤", 2), ("ricci", "𝔉", 2), ("cotton", "𝔄", 3), ("weyl", "ℭ", 4), ("torsion", "𝔚", 3)],
)
def test_spaces(space, symbol, rank):
    assert Space(space).symbol == symbol
    assert Space(space).tensor_rank == rank


def test_chirality():
    assert Chirality(1) is Chirality.PLUS
    assert Chirality.PLUS.opposite is Chirality.MINUS
    assert Chirality.MINUS.sign == "-"


@pytest.mark.parametrize(
    "value, expected",
    [("-3/2", Fraction(-3, 2)), (2, Fraction(2)), (Fraction(1, 2), Fraction(1, 2))],
)
def test_level(value, expected):
    assert level(value) == expected


def test_format_level():
    assert format_level(Fraction(-1, 2)) == "-1/2"
    assert format_level(Fraction(3)) == "3"
    assert format_level(float("inf")) == "inf"


def test_cell_name():
    assert cell_name(Space.WEYL, Fraction(2), 0) == "ℭ_2^0"
    assert cell_name(Space.COTTON, Fraction(-3, 2), 1) == "𝔄_-3/2^1"


def test_dictionary():
    assert len(Dictionary()) == 0
    assert len(Dictionary({"one": {"two": 2}})) == 1
    assert isinstance(Dictionary({"one": {"two": 2}}).one, Dictionary)
    assert Dictionary({"one": {"two": 2}}).one.two == 2
    assert Dictionary({"one": {"two": 2}})["one"]["two"] == 2
    assert Dictionary({"three": 3}, four=4).four == 4


def test_dictionary_attribute_assignment():
    report = Dictionary()
    report.residuals = {"weyl": 0.0}
    assert report["residuals"].weyl == 0.0
    with pytest.raises(AttributeError):
        _ = report.missing


def test_dictionary_to_json():
    report = Dictionary(
        level=Fraction(-1, 2),
        space=Space.WEYL,
        value=np.array([1 + 2j]),
        real=np.array([1.5]),
        flag=np.bool_(True),
        count=np.int64(3),
        scalar=2j,
        nested={"infinite": float("inf")},
    )
    payload = report.to_json()
    assert payload == {
        "level": "-1/2",
        "space": "weyl",
        "value": [[1.0, 2.0]],
        "real": [1.5],
        "flag": True,
        "count": 3,
        "scalar": [0.0, 2.0],
        "nested": {"infinite": "inf"},
    }
    json.dumps(payload)


def test_list():
    assert len(List()) == 0
    list_entries = [{"one": "1"}, {"two": "2"}, {"three": "3"}]
    test_list = List(list_entries, entry_class=ListEntry)
    assert len(test_list) == 3
    assert issubclass(type(test_list[0]), ListEntry)
    assert test_list[0].one == "1"


def test_list_actions():
    list_one = List([{"one": "1"}, {"two": "2"}, {"three": "3"}], entry_class=ListEntry)
    list_two = List([{"four": "4"}], entry_class=ListEntry)

    assert list_one[1:3] == [ListEntry({"two": "2"}), ListEntry({"three": "3"})]
    assert list_one + list_two == [
        ListEntry({"one": "1"}),
        ListEntry({"two": "2"}),
        ListEntry({"three": "3"}),
        ListEntry({"four": "4"}),
    ]
    assert list_one.copy() == list_one
    assert list_two.to_json() == [{"four": "4"}]
