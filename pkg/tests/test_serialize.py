import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from factcat import serialize as ser
from factcat.corpus import DATA, write_corpus
from factcat.errors import MalformedInput
from factcat.fincat import FinFunctor
from oracles import poset


def canonical_again(path):
    """Load a corpus file and dump it back, keeping path links where the file had them."""
    doc = json.loads(path.read_text(encoding="utf-8"))
    kind, obj = ser.load(path)
    if isinstance(obj, FinFunctor):
        dom = doc["dom"] if isinstance(doc["dom"], str) else None
        cod = doc["cod"] if isinstance(doc["cod"], str) else None
        return ser.dumps(ser.functor_doc(obj, dom, cod))
    return ser.dumps(ser.to_doc(obj))


def test_corpus_files_round_trip_byte_for_byte():
    files = sorted(p for p in DATA.glob("*.json") if p.name != "manifest.json")
    assert len(files) >= 50
    for path in files:
        assert canonical_again(path) == path.read_text(encoding="utf-8"), path.name


def test_files_are_canonical_text():
    for path in DATA.glob("*.json"):
        raw = path.read_bytes()
        assert raw.endswith(b"\n") and b"\r" not in raw
        raw.decode("utf-8")


def test_corpus_writer_is_reproducible(tmp_path):
    write_corpus(tmp_path)
    shipped = {p.name: p.read_bytes() for p in DATA.glob("*.json")}
    fresh = {p.name: p.read_bytes() for p in tmp_path.glob("*.json")}
    assert fresh == shipped


def test_embedded_functor_round_trip(corpus, tmp_path):
    for name, F in corpus.functors.items():
        path = tmp_path / f"{name}.json"
        ser.write(path, ser.functor_doc(F))
        _, G = ser.load(path, "functor")
        assert G == F and G.dom == F.dom and G.cod == F.cod
        assert path.read_text(encoding="utf-8") == ser.dumps(ser.functor_doc(G))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.data())
def test_random_categories_round_trip(n, data):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rel = data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    P = poset(n, rel)
    text = ser.dumps(ser.category_doc(P))
    back = ser.category_from_doc(json.loads(text))
    assert back == P
    assert ser.dumps(ser.category_doc(back)) == text


@pytest.mark.parametrize(
    "content",
    [
        "not json",
        '{"kind": "category"}',
        '{"kind": "sheaf", "version": 1}',
        '{"kind": "category", "version": 1, "objects": ["x"], "morphisms": [{"name": "f", "src": "x"}], "compose": []}',
    ],
)
def test_malformed_documents(tmp_path, content):
    path = tmp_path / "bad.json"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(MalformedInput):
        ser.load(path)


def test_wrong_kind_and_missing_file(tmp_path):
    with pytest.raises(MalformedInput):
        ser.load(DATA / "cat_A2.json", "functor")
    with pytest.raises(MalformedInput):
        ser.load(tmp_path / "absent.json")


def test_broken_link_is_malformed(tmp_path):
    doc = json.loads((DATA / "fun_A2_to_1.json").read_text(encoding="utf-8"))
    path = tmp_path / "fun.json"
    ser.write(path, doc)  # the linked category files are not next to it
    with pytest.raises(MalformedInput):
        ser.load(path)
