import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import permutations
from derangement_cliques.errors import InvalidPermutation, ParseError
from derangement_cliques.groupfile import (
    make_record,
    parse_group_file,
    parse_group_text,
    serialize,
    write_group_file,
)
from derangement_cliques.perm import PermGroup, alt4_on_pairs

SAMPLE = """# Alt(4) on the six 2-subsets
name: alt4_deg6
degree: 6
tag: order=12
tag: omega=3
gen: [3,0,4,1,5,2]
gen: [1,2,0,5,3,4]
"""


def test_parse_sample():
    rec = parse_group_text(SAMPLE)
    assert rec.name == "alt4_deg6" and rec.degree == 6
    assert rec.tag("order") == "12" and rec.tag("missing") is None
    assert rec.comments == ("Alt(4) on the six 2-subsets",)
    assert rec.group().same_group(alt4_on_pairs())


def test_canonical_round_trip():
    assert serialize(parse_group_text(SAMPLE)) == SAMPLE


def test_whitespace_is_tolerated():
    text = "name:  g\n\ndegree: 3\ngen: [ 1, 2, 0 ]\n"
    assert parse_group_text(text).generators[0].images == (1, 2, 0)


def test_no_generators_means_trivial_group():
    rec = parse_group_text("name: t\ndegree: 4\n")
    assert rec.group().order == 1


@pytest.mark.parametrize("text, line", [
    ("name: a\nname: b\ndegree: 2\n", 2),
    ("name: a\ndegree: x\n", 2),
    ("name: a\ndegree: 2\nfoo: 1\n", 3),
    ("name: a\ndegree: 2\ngen: 1,0\n", 3),
    ("name: a\ndegree: 2\ngen: [1,z]\n", 3),
    ("name: a\ndegree: 2\ntag: novalue\n", 3),
    ("name: a\ndegree: 2\njunk\n", 3),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_group_text(text)
    assert info.value.line == line


def test_missing_header_fields():
    with pytest.raises(ParseError):
        parse_group_text("degree: 3\n")
    with pytest.raises(ParseError):
        parse_group_text("name: a\n")


def test_bad_generators():
    with pytest.raises(InvalidPermutation, match="line 3"):
        parse_group_text("name: a\ndegree: 3\ngen: [0,1]\n")
    with pytest.raises(InvalidPermutation, match="line 3"):
        parse_group_text("name: a\ndegree: 3\ngen: [0,1,1]\n")


def test_file_and_stream(tmp_path):
    rec = parse_group_text(SAMPLE)
    path = tmp_path / "g.grp"
    write_group_file(rec, path)
    assert parse_group_file(path) == rec
    assert parse_group_file(str(path)) == rec
    assert parse_group_file(io.StringIO(SAMPLE)) == rec


@settings(max_examples=50)
@given(st.lists(permutations(n=7), min_size=1, max_size=4),
       st.dictionaries(st.sampled_from(["order", "omega", "note"]), st.integers(0, 999)))
def test_serialize_round_trip(gens, tags):
    rec = make_record("g", PermGroup(7, gens), tags, comments=["random"])
    assert parse_group_text(serialize(rec)) == rec


def test_with_tags_overrides():
    rec = parse_group_text(SAMPLE).with_tags(omega=4, exceptional=True)
    assert rec.tag("omega") == "4" and rec.tag("exceptional") == "true"
