from factcat.dot import generators, to_dot
from factcat.fincat import category
from oracles import cyclic_group

A3 = category("012", [("a", "0", "1"), ("b", "1", "2"), ("ba", "0", "2")], [("b", "a", "ba")], name="A3")
ISO2 = category("01", [("a", "0", "1"), ("b", "1", "0")], [("b", "a", "id_0"), ("a", "b", "id_1")], name="iso2")


def test_composites_are_not_generators():
    assert generators(A3) == ["a", "b"]
    assert generators(cyclic_group(4)) == ["g1"]


def test_dot_output():
    text = to_dot(A3)
    assert text.startswith('digraph "A3" {')
    assert text.count("->") == 2 and '"0";' in text
    assert text.endswith("}\n")


def test_invertible_edges_are_two_headed():
    text = to_dot(ISO2)
    assert "dir=both" in text
    assert text.count("->") == 1


def test_names_are_quoted():
    C = category(['a"b'], name='we"ird')
    assert '"a\\"b";' in to_dot(C)
    assert 'digraph "we\\"ird"' in to_dot(C)
