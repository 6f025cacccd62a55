from itertools import product

from hypothesis import given
from hypothesis import strategies as st

from factcat.rewriting import RewritingSystem, complete, critical_pairs, shortlex


def run(gen):
    while True:
        try:
            next(gen)
        except StopIteration as stop:
            return stop.value


def normal_forms(system, letters, max_len):
    return {system.reduce(w) for n in range(max_len + 1) for w in product(letters, repeat=n)}


# S3 = <s, t | ss, tt, ststst>, evaluated independently as permutations of 3 points
S, T = 0, 1
PERM = {S: (1, 0, 2), T: (0, 2, 1)}
S3_EQUATIONS = [((S, S), ()), ((T, T), ()), ((S, T, S, T, S, T), ())]


def evaluate(word):
    p = (0, 1, 2)
    for x in word:
        p = tuple(PERM[x][i] for i in p)
    return p


def test_shortlex_orders_by_length_first():
    assert shortlex((1,)) < shortlex((0, 0))
    assert shortlex((0, 1)) < shortlex((1, 0))


def test_reduce_applies_rules_to_completion():
    R = RewritingSystem({(1, 0): (0, 1)})
    assert R.reduce((1, 1, 0, 0)) == (0, 0, 1, 1)
    assert R.is_reduced((0, 0, 1)) and not R.is_reduced((1, 0))


def test_critical_pairs_from_overlap_and_inclusion():
    assert critical_pairs(((0, 0), ()), ((0, 0), ())) == [((0,), (0,))]
    assert critical_pairs(((0, 1, 0), ()), ((1,), ())) == [((), (0, 0))]


def test_cyclic_monoid():
    R = run(complete([((0, 0, 0), ())]))
    assert normal_forms(R, [0], 6) == {(), (0,), (0, 0)}


def test_free_commutative_monoid_on_two_letters():
    R = run(complete([((1, 0), (0, 1))]))
    assert R.rules == {(1, 0): (0, 1)}


def test_s3_has_six_normal_forms():
    R = run(complete(S3_EQUATIONS))
    assert len(normal_forms(R, [S, T], 8)) == 6


def test_completed_system_is_confluent():
    R = run(complete(S3_EQUATIONS))
    items = list(R.rules.items())
    for r1 in items:
        for r2 in items:
            for u, v in critical_pairs(r1, r2):
                assert R.reduce(u) == R.reduce(v)


def test_rules_are_interreduced():
    R = run(complete(S3_EQUATIONS))
    for lhs, rhs in R.rules.items():
        assert R.is_reduced(rhs)
        others = RewritingSystem({l: r for l, r in R.rules.items() if l != lhs})
        assert others.is_reduced(lhs)


@given(st.lists(st.sampled_from([S, T]), max_size=14), st.lists(st.sampled_from([S, T]), max_size=14))
def test_s3_normal_forms_decide_the_word_problem(u, v):
    R = run(complete(S3_EQUATIONS))
    assert (R.reduce(tuple(u)) == R.reduce(tuple(v))) == (evaluate(u) == evaluate(v))


def test_completion_yields_per_rule():
    gen = complete(S3_EQUATIONS)
    steps = 0
    while True:
        try:
            assert next(gen) == "rule"
            steps += 1
        except StopIteration:
            break
    assert steps >= 3
