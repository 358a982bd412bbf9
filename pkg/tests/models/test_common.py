import pytest

from ccnsim.exceptions import MalformedNameError
from ccnsim.models.common import ContentName, is_prefix_of, parse_name


@pytest.mark.parametrize(
    "text,components",
    [
        ("/Sea/item042", ("Sea", "item042")),
        ("/a", ("a",)),
        ("/a/b/c", ("a", "b", "c")),
    ],
)
def test_parse_name(text, components):
    assert parse_name(text).components == components


@pytest.mark.parametrize("text", ["", "Sea/item042", "/", "/a//b", "/a/"])
def test_parse_name_malformed(text):
    with pytest.raises(MalformedNameError):
        parse_name(text)


@pytest.mark.parametrize("text", ["/Sea/item042", "/a", "/x/y/z/w"])
def test_name_serialization_round_trip(text):
    assert str(parse_name(text)) == text


def test_content_name_rejects_bad_components():
    with pytest.raises(MalformedNameError):
        ContentName(())
    with pytest.raises(MalformedNameError):
        ContentName(("a/b",))
    with pytest.raises(MalformedNameError):
        ContentName(("a", ""))


def test_content_name_helpers():
    name = parse_name("/Sea") / "item001"

    assert name == parse_name("/Sea/item001")
    assert len(name) == 2
    assert name.prefix(1) == parse_name("/Sea")


def test_content_names_are_ordered_by_components():
    names = [parse_name(text) for text in ["/b", "/a/z", "/a"]]

    assert sorted(names) == [parse_name("/a"), parse_name("/a/z"), parse_name("/b")]


@pytest.mark.parametrize(
    "prefix,name,expected",
    [
        ("/Sea", "/Sea/item042", True),
        ("/Sea/item042", "/Sea", False),
        ("/Sea", "/Sea", True),
        ("/Sea", "/Sun/item042", False),
        ("/Se", "/Sea/item042", False),
    ],
)
def test_is_prefix_of(prefix, name, expected):
    assert is_prefix_of(parse_name(prefix), parse_name(name)) is expected


def test_prefix_relation_is_transitive_and_antisymmetric():
    a, b, c = parse_name("/a"), parse_name("/a/b"), parse_name("/a/b/c")

    assert is_prefix_of(a, b) and is_prefix_of(b, c) and is_prefix_of(a, c)
    same_length = parse_name("/a/b")
    assert is_prefix_of(b, same_length) and b == same_length
