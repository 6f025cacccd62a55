"""Acceptance criteria over the fixtures corpus, one line per criterion.

Run directly (``python tests/test_acceptance.py``) to print just the lines;
under pytest they are collected into the terminal summary.
"""

import subprocess
import sys

import pytest

from conftest import ACCEPTANCE_LINES
from factcat import suites
from factcat.corpus import DATA

CRITERIA = [
    (1, "factorization soundness", suites.factorization_soundness),
    (2, "oracle equivalence", suites.oracle_equivalence),
    (3, "class laws", suites.class_laws),
    (4, "ultimacy theory", suites.ultimacy_theory),
    (5, "core lemmas", suites.core_lemmas),
    (6, "grothendieck round trip", suites.grothendieck_round_trip),
    (7, "fs1 bipullback", suites.fs1_bipullback),
    (8, "pi1 universal property", suites.pi1_universal_property),
    (9, "polynomial layer", suites.polynomial_layer),
]

# minimum fixture counts per criterion
MINIMA = {
    6: lambda c: len(c.pseudofunctors) >= 5,
    7: lambda c: sum(x for *_, x in c.fs1_pairs.values()) >= 6 and sum(not x for *_, x in c.fs1_pairs.values()) >= 2,
    8: lambda c: len(c.pi1_pairs) >= 4,
    9: lambda c: len(c.polynomial_pairs) >= 4,
}


def record(label, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} {label}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def test_corpus_size(corpus):
    ok = len(corpus.categories) >= 12 and len(corpus.functors) >= 25
    assert record("corpus size", ok, f"corpus has {len(corpus.categories)} categories, {len(corpus.functors)} functors")


@pytest.mark.parametrize("number,name,suite", CRITERIA, ids=[c[1].replace(" ", "_") for c in CRITERIA])
def test_criterion(corpus, number, name, suite):
    result = suite(corpus)
    enough = MINIMA.get(number, lambda c: True)(corpus)
    detail = result.line().split(" ", 1)[1]
    if not enough:
        detail += " (too few fixtures)"
    assert record(f"criterion {number}", result.ok and enough and result.checked > 0, detail), result.failures


def _verify_once(tmp_path, tag):
    out = tmp_path / f"report_{tag}.json"
    proc = subprocess.run(
        [sys.executable, "-m", "factcat.cli", "verify", "--corpus", str(DATA / "manifest.json"), "--out", str(out)],
        capture_output=True,
    )
    return proc.returncode, out.read_bytes()


def test_determinism(tmp_path):
    code1, first = _verify_once(tmp_path, 1)
    code2, second = _verify_once(tmp_path, 2)
    ok = code1 == code2 == 0 and first == second
    assert record("criterion 10", ok, f"two verify runs byte-identical ({len(first)} bytes, exit {code1}/{code2})")


if __name__ == "__main__":
    import tempfile
    from pathlib import Path

    c = suites.builtin_corpus()
    record("corpus size", len(c.categories) >= 12 and len(c.functors) >= 25, "corpus size")
    for number, name, suite in CRITERIA:
        r = suite(c)
        record(f"criterion {number}", r.ok and MINIMA.get(number, lambda _: True)(c), r.line().split(" ", 1)[1])
    with tempfile.TemporaryDirectory() as d:
        a, b = _verify_once(Path(d), 1), _verify_once(Path(d), 2)
        record("criterion 10", a == b and a[0] == 0, "two verify runs byte-identical")
