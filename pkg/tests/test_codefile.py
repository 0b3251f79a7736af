import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mccac import codefile
from mccac.constructions import catalog
from mccac.core import Code, CodeParams, SchedulingPattern, verify_code
from mccac.errors import ParseError, ValidationError

GOLDEN = """{
  "schema_version": 1,
  "M": 3,
  "L": 5,
  "w": 3,
  "restricted": false,
  "provenance": "two",
  "patterns": [
    [[0, 0], [0, 1], [0, 2]],
    [[1, 0], [1, 1], [1, 2]]
  ]
}
"""


def _doc(**over):
    obj = {"schema_version": 1, "M": 3, "L": 5, "w": 3, "patterns": [[[0, 0], [0, 1], [0, 2]]]}
    obj.update(over)
    return json.dumps(obj)


def test_golden_bytes():
    code = Code(CodeParams(3, 5, 3), catalog("example1").patterns[:2])
    assert codefile.dumps(code, provenance="two") == GOLDEN


def test_empty_code():
    text = codefile.dumps(Code(CodeParams(2, 4, 2), ()))
    assert '"patterns": []' in text
    assert len(codefile.loads(text).code) == 0


@pytest.mark.parametrize("name", ["example1", "example6"])
def test_round_trip(name, tmp_path):
    code = catalog(name)
    path = tmp_path / "c.json"
    codefile.save(code, path, restricted=False, provenance=name)
    cf = codefile.load_file(path)
    assert cf.code == code and cf.provenance == name and not cf.restricted
    assert path.read_text() == codefile.dumps(code, provenance=name)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4), st.integers(1, 9), st.data())
def test_round_trip_random(M, L, data):
    cells = [(m, t) for m in range(M) for t in range(L)]
    w = data.draw(st.integers(1, min(4, len(cells))))
    pats = data.draw(st.lists(st.lists(st.sampled_from(cells), min_size=w, max_size=w, unique=True), max_size=5))
    code = Code(CodeParams(M, L, w), tuple(SchedulingPattern(tuple(p)) for p in pats))
    back = codefile.loads(codefile.dumps(code, restricted=True, provenance="x"))
    assert back.code == code and back.restricted


def test_weight_mismatch_strict():
    text = _doc(patterns=[[[0, 0], [0, 1], [0, 2], [1, 3]]])
    with pytest.raises(ValidationError, match="patterns\\[0\\]"):
        codefile.loads(text)


def test_weight_mismatch_lenient():
    text = _doc(patterns=[[[0, 0], [0, 1], [0, 2], [1, 3]]])
    code = codefile.loads(text, strict=False).code
    assert verify_code(code).weight_violations == [0]


def test_unknown_schema():
    with pytest.raises(ParseError, match="schema_version"):
        codefile.loads(_doc(schema_version=99))


def test_bad_json_location():
    with pytest.raises(ParseError, match="line 2"):
        codefile.loads('{\n  "M": ,\n}')


@pytest.mark.parametrize(
    "over,field",
    [
        ({"M": "3"}, "M"),
        ({"L": True}, "L"),
        ({"restricted": 1}, "restricted"),
        ({"provenance": 5}, "provenance"),
        ({"patterns": {}}, "patterns"),
        ({"patterns": [[[0, 0, 1]]]}, "patterns\\[0\\]\\[0\\]"),
        ({"extra": 1}, "extra"),
    ],
)
def test_field_errors(over, field):
    with pytest.raises(ParseError, match=field):
        codefile.loads(_doc(**over))


def test_missing_field():
    obj = json.loads(_doc())
    del obj["w"]
    with pytest.raises(ParseError, match="'w'"):
        codefile.loads(json.dumps(obj))


def test_out_of_range():
    with pytest.raises(ValidationError):
        codefile.loads(_doc(patterns=[[[0, 0], [0, 1], [3, 2]]]))
    with pytest.raises(ValidationError):
        codefile.loads(_doc(patterns=[[[0, 0], [0, 1], [0, 5]]]))


def test_repeated_entry():
    with pytest.raises(ValidationError):
        codefile.loads(_doc(patterns=[[[0, 0], [0, 0], [0, 2]]]))


def test_duplicate_codewords_load():
    p = [[0, 0], [0, 1], [0, 2]]
    code = codefile.loads(_doc(patterns=[p, p])).code
    assert len(code) == 2 and not verify_code(code).valid


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        codefile.load(tmp_path / "nope.json")
