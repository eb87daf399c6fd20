import json

import pytest
from hypothesis import given, settings

from superkit import builtin, load_algebra, load_map, save_algebra, save_map
from superkit.errors import AxiomViolation, ParseError, SkewConflict
from superkit.formats import canonicalize, change_field, dumps, read_document, write_document
from superkit.linalg import Field

from strategies import F5, random_f5_algebras

SL2_SPARSE = {
    "format": "superkit-algebra/1",
    "name": "sl2",
    "field": {"kind": "Q"},
    "even": ["h", "e", "f"],
    "odd": [],
    "brackets": {"e,f": {"h": "1"}, "h,e": {"e": "2"}, "h,f": {"f": "-2"}},
}


def doc(**over):
    d = json.loads(json.dumps(SL2_SPARSE))
    d.update(over)
    return d


def test_skew_pairs_completed():
    assert load_algebra(SL2_SPARSE) == builtin("sl2")


def test_skew_conflict():
    bad = doc(even=["a", "b", "c"], brackets={"a,b": {"c": "1"}, "b,a": {"c": "1"}})
    with pytest.raises(SkewConflict):
        load_algebra(bad)


def test_empty_table_is_abelian():
    L = load_algebra(doc(brackets={}))
    assert all(x == 0 for plane in L.constants for row in plane for x in row)


def test_jacobi_failure_reported():
    bad = doc(brackets={"h,e": {"e": "1"}, "e,f": {"h": "1"}})
    with pytest.raises(AxiomViolation) as info:
        load_algebra(bad)
    assert info.value.report.jacobi


@pytest.mark.parametrize("broken", [
    {"format": "nope"},
    {"field": {"kind": "Fp", "p": 4}},
    {"brackets": {"h,x": {"e": "1"}}},
    {"brackets": {"h": {"e": "1"}}},
    {"brackets": {"h,e": {"e": "1/0"}}},
    {"brackets": {"h,e": {"e": 2.5}}},
    {"even": "h"},
])
def test_malformed(broken):
    with pytest.raises(ParseError):
        load_algebra(doc(**broken))


def test_canonical_form_is_sorted_and_complete():
    text = dumps(save_algebra(load_algebra(SL2_SPARSE)))
    d = json.loads(text)
    assert set(d["brackets"]) == {"e,f", "f,e", "h,e", "e,h", "h,f", "f,h"}
    assert d["brackets"]["f,h"] == {"f": "2"}
    assert text == json.dumps(d, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


@pytest.mark.parametrize("name", ["sl2", "osp12", "gl11", "aff2", "heisenberg", "abelian", "sl2+osp12"])
def test_roundtrip_catalog(name):
    d = save_algebra(builtin(name))
    assert save_algebra(load_algebra(d)) == d
    assert canonicalize(canonicalize(SL2_SPARSE)) == canonicalize(SL2_SPARSE)


@settings(max_examples=30, deadline=None)
@given(random_f5_algebras())
def test_roundtrip_random(L):
    d = save_algebra(L)
    assert load_algebra(json.loads(dumps(d))) == L


def test_file_io(tmp_path):
    path = tmp_path / "a.json"
    write_document(save_algebra(builtin("osp12")), path)
    parsed, raw = read_document(path)
    assert load_algebra(parsed) == builtin("osp12")
    assert raw.decode() == dumps(save_algebra(builtin("osp12")))
    with pytest.raises(ParseError):
        read_document(tmp_path / "missing.json")


def test_map_roundtrip():
    O = builtin("osp12")
    f = -1 * O.identity_map()
    d = save_map(f)
    assert d["parity"] == "even" and d["matrix"][0][0] == "-1"
    assert load_map(d, O, O) == f


def test_map_errors():
    O, S = builtin("osp12"), builtin("sl2")
    d = save_map(O.identity_map())
    with pytest.raises(ParseError):
        load_map(d, S, S)
    with pytest.raises(ParseError):
        load_map(dict(d, matrix=d["matrix"][:2]), O, O)
    odd_decl = dict(d, parity="odd")
    with pytest.raises(ParseError):
        load_map(odd_decl, O, O)


def test_change_field():
    O = builtin("osp12")
    assert change_field(O, F5) == builtin("osp12", F5)
    assert change_field(O, O.field) is O
    halves = load_algebra(doc(brackets={"h,e": {"e": "1/2"}, "h,f": {"f": "-1/2"}}))
    with pytest.raises(ParseError):
        change_field(halves, Field.prime(2))
    with pytest.raises(ParseError):
        change_field(builtin("osp12", F5), Field.rationals())
    with pytest.raises(ParseError):
        change_field(builtin("osp12", F5), Field.prime(7))
