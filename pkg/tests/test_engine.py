import random

import numpy as np
import pytest

from helpers import all_periodic_colorings, longest_avoiding, periodic_avoids

from cuberamsey.classify import p_prime_two_cliques
from cuberamsey.embedding import p_prime, w_prime
from cuberamsey.engine import (
    WindowAutomaton,
    canonical_form,
    decide,
    enumerate_witnesses,
    gcd_reduce,
    lift_witness,
    n_T_upper_bound,
    verify_coloring,
    verify_finite,
)
from cuberamsey.model import (
    CliqueUnion,
    FiniteColoring,
    PeriodicColoring,
    ResourceError,
    SetFamily,
    TwoCliqueAnalysis,
)
from cuberamsey.repro import four_clique_witness, mod4_alternating

F = SetFamily.parse


def random_family(rng, max_diam=8, max_sets=4):
    fam = []
    for _ in range(rng.randint(1, max_sets)):
        k = rng.randint(2, 4)
        fam.append([0] + rng.sample(range(1, max_diam + 1), k - 1))
    return fam


# ---------------------------------------------------------------------------
# examples


def test_decide_examples():
    d = decide(F("{0,1};{0,2}"), 2)
    assert d.is_ramsey and d.n_min == 3 and d.upper_bound == 10
    d = decide(F("{0,1};{0,2}"), 3)
    assert not d.is_ramsey and d.witness.period == 3 and len(set(d.witness.colors)) == 3
    d = decide(F("{0,2};{0,4}"), 2)
    assert d.is_ramsey and d.n_min == 5
    d = decide(F("{0,4};{0,12}"), 2)
    assert not d.is_ramsey and verify_coloring(d.witness, F("{0,4};{0,12}"))


def test_decide_four_clique_family():
    pp = p_prime(CliqueUnion.parse("1:0,5:4,7:6,11:10"))
    d = decide(pp)
    assert not d.is_ramsey
    assert verify_coloring(d.witness, pp)
    assert verify_coloring(four_clique_witness(), pp)


def test_decide_singleton_and_empty():
    d = decide(F("{3};{0,5}"))
    assert d.is_ramsey and d.n_min == 1
    with pytest.raises(ValueError, match="vacuous family"):
        decide([])
    with pytest.raises(ValueError):
        decide(F("{0,1}"), 1)


@pytest.mark.parametrize(
    "fam, g, reduced",
    [("{0,4};{0,12}", 4, "{0,1};{0,3}"), ("{0,2};{0,4}", 2, "{0,1};{0,2}"), ("{0,3};{0,5}", 1, "{0,3};{0,5}")],
)
def test_gcd_reduce_examples(fam, g, reduced):
    rp = gcd_reduce(F(fam), 2)
    assert rp.gcd_modulus == g and rp.reduced_family == F(reduced)
    assert rp.window_width == F(reduced).max_diameter


@pytest.mark.parametrize(
    "fam, t, bound", [("{0,1};{0,2}", 2, 10), ("{0,1}", 2, 3), ("{0,4};{0,12}", 2, 49164)]
)
def test_n_T_upper_bound_examples(fam, t, bound):
    assert n_T_upper_bound(F(fam), t) == bound


def test_n_T_upper_bound_is_exact_integer():
    assert n_T_upper_bound(F("{0,200}"), 3) == 200 * (3**200 + 1)


def test_verify_coloring_examples():
    pp = p_prime(CliqueUnion.parse("1:0,5:4,7:6,11:10"))
    assert verify_coloring(four_clique_witness(), pp).ok
    c = mod4_alternating()
    assert verify_coloring(c, F("{0,4};{0,12}")).ok
    v = verify_coloring(c, F("{0,2}")).violation
    assert v is not None and c(v.offset) == c(v.offset + 2) == v.color
    assert not verify_coloring(PeriodicColoring((0, 1, 1)), F("{0}"))


def test_four_clique_coloring_encoding():
    c = four_clique_witness()
    s = "RRRRBBBRRBRBRBRRBBB"
    assert c.period == 38
    assert all("RB"[c(2 * j)] == s[j] and "RB"[c(2 * j + 1)] == s[j] for j in range(19))


def test_verify_finite():
    f = FiniteColoring((0, 1, 0, 1, 1), offset=10)
    v = verify_finite(f, F("{0,2}")).violation
    assert v.offset == 10
    assert verify_finite(FiniteColoring((0, 1)), F("{0,5}")).ok


def test_enumerate_witnesses_examples():
    assert enumerate_witnesses(F("{0,2};{0,4}"), 2, 20) == []
    ws = enumerate_witnesses(F("{0,1}"), 2, 20)
    assert [w.to_text() for w in ws] == ["period=2:RB"]


def test_enumerate_witnesses_matches_brute_force():
    rng = random.Random(11)
    for _ in range(15):
        fam = random_family(rng, max_diam=5, max_sets=3)
        maxp = 12
        expected = set()
        for p in range(1, maxp + 1):
            for cols in all_periodic_colorings(p):
                c = PeriodicColoring(cols)
                if c.minimal_period() == p and periodic_avoids(cols, fam):
                    expected.add(canonical_form(cols))
        got = {canonical_form(w.primitive().colors) for w in enumerate_witnesses(fam, 2, maxp)}
        if gcd_reduce(fam, 2).gcd_modulus == 1:
            assert got == expected, fam
        else:
            assert got <= expected, fam


def test_enumerate_witnesses_budget_error():
    with pytest.raises(ResourceError):
        enumerate_witnesses(F("{0,1,2,3,4,5,6,7,8,9,10,11,12}"), 2, 20, max_states=50)


def test_decide_budget_error():
    with pytest.raises(ResourceError):
        decide(F("{0,1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23,24,25}"), 2, max_states=1000)


# ---------------------------------------------------------------------------
# properties


def test_soundness_against_exhaustive_search():
    rng = random.Random(12)
    checked = 0
    for _ in range(60):
        fam = random_family(rng, max_diam=6)
        t = rng.choice((2, 2, 3))
        d = decide(fam, t)
        assert d.upper_bound == n_T_upper_bound(fam, t)
        if d.is_ramsey:
            assert d.n_min <= d.upper_bound
            if d.n_min <= 24:
                assert longest_avoiding(fam, t, 30) == d.n_min - 1
                checked += 1
        else:
            assert verify_coloring(d.witness, fam)
            assert periodic_avoids(d.witness.colors, fam)
            assert longest_avoiding(fam, t, 30) == 30
    assert checked > 5


def test_scaling_does_not_change_verdict():
    rng = random.Random(13)
    for _ in range(40):
        fam = SetFamily(random_family(rng))
        m = rng.randint(2, 7)
        a, b = decide(fam), decide(fam.scaled(m))
        assert a.is_ramsey == b.is_ramsey
        if a.is_ramsey:
            assert b.n_min == m * (a.n_min - 1) + 1


def test_translation_and_supersets_do_not_matter():
    rng = random.Random(14)
    for _ in range(40):
        fam = random_family(rng)
        moved = []
        for s in fam:
            k = rng.randint(-9, 9)
            moved.append([x + k for x in s])
        extra = [s + [max(s) + rng.randint(1, 4)] for s in fam]
        base = decide(fam)
        for other in (moved, fam + extra):
            d = decide(other)
            assert d.is_ramsey == base.is_ramsey and d.n_min == base.n_min


def test_shortest_witness_is_shortest():
    # shortest at the gcd-reduced level, so only coprime families are compared
    rng = random.Random(15)
    for _ in range(30):
        fam = random_family(rng, max_diam=5, max_sets=2)
        d = decide(fam)
        if d.is_ramsey or d.gcd != 1:
            continue
        p = d.witness.period
        for q in range(1, p):
            assert not any(periodic_avoids(c, fam) for c in all_periodic_colorings(q)), (fam, q)


def test_lift_witness():
    w = PeriodicColoring((0, 1))
    assert lift_witness(w, 3).colors == (0, 0, 0, 1, 1, 1)


def test_automaton_states_are_valid_windows():
    fam = F("{0,1};{0,3}")
    auto = WindowAutomaton(fam, 2)
    states, _ = auto.fixpoint()
    assert len(states) > 0
    for x in states:
        cols = auto.window_colors(int(x))
        assert len(cols) == 3
        assert all(cols[i] != cols[i + 1] for i in range(2))


def test_two_clique_witnesses_alternate_at_fixed_distance():
    for a1 in range(1, 13):
        for a2 in range(1, 13):
            an = TwoCliqueAnalysis(a1, 0, a2, 0)
            r1, r2 = sorted((an.r1, an.r2))
            if r1 == r2:
                assert decide(p_prime_two_cliques(a1, a2)).is_ramsey
                continue
            step = an.g * 2**r1
            for w in enumerate_witnesses(p_prime_two_cliques(a1, a2), 2, 48):
                assert all(w(x) != w(x + step) for x in range(w.period)), (a1, a2, w)


def test_overlap_aware_family_is_used():
    u = CliqueUnion.two(7, 2, 3, 2, 2)
    assert decide(w_prime(u)).is_ramsey
    assert not decide(w_prime(CliqueUnion.two(7, 2, 3, 2, 3))).is_ramsey


def test_decide_is_deterministic():
    fam = F("{0,3};{0,5,7}")
    assert decide(fam).to_json() == decide(fam).to_json()
    assert np.array_equal(decide(fam, 3).witness.colors, decide(fam, 3).witness.colors)
