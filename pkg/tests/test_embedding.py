import itertools
import random

import pytest

from cuberamsey.embedding import (
    FlipProfile,
    clique_layer_interval,
    dichotomy_case,
    embedding_layers,
    enumerate_overlap_profiles,
    interval_bounds,
    min_layers,
    p_prime,
    p_star,
    profile_is_feasible,
    w_prime,
    w_star,
    w_star_witnesses,
)
from cuberamsey.model import CliqueSpec, CliqueUnion, LayerSet, SetFamily, normalize, reduce_family
from cuberamsey.oracle import brute_force_w_star, realize_union

EXAMPLE_S = CliqueUnion.parse("3:1,1:0")


@pytest.mark.parametrize(
    "a, t, bi, b, expected",
    [(4, 2, 6, 6, (2,)), (3, 1, 0, 0, (3,)), (3, 1, 2, 2, (1, 3))],
)
def test_clique_layer_interval_examples(a, t, bi, b, expected):
    assert clique_layer_interval(a, t, bi, b) == expected


def test_clique_layer_interval_matches_direct_count():
    # |A ^ B| over all a-subsets A of [a+t] with |B & [a+t]| = b_i
    for a, t in itertools.product(range(0, 5), range(0, 4)):
        n = a + t
        for bi in range(n + 1):
            B = (1 << bi) - 1
            got = {bin(A ^ B).count("1") for A in range(1 << n) if bin(A).count("1") == a}
            assert clique_layer_interval(a, t, bi, bi) == LayerSet(got)


def test_clique_layer_interval_errors():
    with pytest.raises(ValueError):
        clique_layer_interval(3, 1, 5, 5)
    with pytest.raises(ValueError):
        clique_layer_interval(3, 1, 2, 1)


def test_embedding_layers_examples():
    assert embedding_layers(EXAMPLE_S, FlipProfile(0, (0, 0), 0)) == (1, 3)
    s1 = CliqueUnion.parse("4:2,8:1")
    assert embedding_layers(s1, FlipProfile(6, (6, 0), 0)) == (2, 14)
    assert embedding_layers(s1, FlipProfile(2, (0, 2), 0)) == (6, 8)
    with pytest.raises(ValueError):
        embedding_layers(s1, FlipProfile(3, (0, 2), 0))


W6 = "{1,3};{2,4};{3,5};{0,4};{1,5};{2,6};{0,2,4};{1,3,5};{2,4,6}"
W5 = "{1,3};{2,4};{0,4};{1,5};{0,2,4};{1,3,5}"


def test_w_star_examples():
    assert w_star(EXAMPLE_S, dim=6) == SetFamily.parse(W6)
    assert w_star(EXAMPLE_S) == SetFamily.parse(W5)
    assert w_star(CliqueUnion.parse("1:0")) == SetFamily.parse("{0};{1}")


def test_w_star_witness_profiles_reproduce_their_sets():
    u = CliqueUnion.parse("4:2,8:1")
    for e, fp in w_star_witnesses(u).items():
        assert embedding_layers(u, fp) == e


def test_w_prime_p_star_p_prime_s1():
    u = CliqueUnion.parse("4:2,8:1")
    assert p_star(u) == SetFamily.parse("{4,8};{2,14};{1,13};{7,11}")
    assert p_prime(u) == SetFamily.parse("{0,4};{0,12}")
    assert w_prime(u) == SetFamily.parse("{0,2};{0,4};{0,12}")
    assert w_prime(EXAMPLE_S) == SetFamily.parse("{0,2};{0,4}")


def test_w_prime_equals_reduced_w_star():
    rng = random.Random(5)
    for _ in range(60):
        pairs = [(rng.randint(0, 6), rng.randint(0, 4)) for _ in range(rng.randint(1, 3))]
        if sum(a + t for a, t in pairs) == 0:
            continue
        u = CliqueUnion.disjoint(*pairs)
        assert w_prime(u) == reduce_family(w_star(u)), u


@pytest.mark.parametrize("text, size", [("1:0,5:4,7:6,9:8", 16), ("1:0,5:4,7:6,11:10", 13)])
def test_p_prime_four_cliques(text, size):
    assert len(p_prime(CliqueUnion.parse(text))) == size


def test_overlap_profiles():
    u = CliqueUnion.two(2, 1, 2, 1, 1)
    profiles = enumerate_overlap_profiles(u)
    assert FlipProfile(3, (3, 1), 0) in profiles
    assert all(profile_is_feasible(u, fp) for fp in profiles)
    same = CliqueUnion.two(2, 1, 2, 1, 3)
    assert all(fp.per_clique[0] == fp.per_clique[1] for fp in enumerate_overlap_profiles(same))
    with pytest.raises(ValueError, match="only pairwise overlap supported"):
        enumerate_overlap_profiles(CliqueUnion.parse("1:0,1:0,1:0"))


def test_overlap_w_star_small_realization():
    u = CliqueUnion.two(2, 1, 2, 1, 1)
    assert brute_force_w_star(realize_union(u)) == w_star(u)


def test_w_star_matches_oracle_on_grid():
    one = [(a, t) for a in range(0, 5) for t in range(0, 3) if a + t]
    for (a1, t1), (a2, t2) in itertools.combinations_with_replacement(one, 2):
        for c in range(0, min(a1 + t1, a2 + t2) + 1):
            u = CliqueUnion.two(a1, t1, a2, t2, c)
            if u.dimension <= 10:
                assert brute_force_w_star(realize_union(u)) == w_star(u), u


def test_w_star_with_extra_dimensions_matches_oracle():
    from cuberamsey.oracle import VertexSet

    for text in ("2:1", "1:1,2:0", "3:1,1:0"):
        u = CliqueUnion.parse(text)
        vs = realize_union(u)
        for extra in (1, 2):
            assert brute_force_w_star(VertexSet(u.dimension + extra, vs.vertices)) == w_star(u, u.dimension + extra)


@pytest.mark.parametrize("text, k", [("4:2,8:1", 2), ("3:0", 1), ("1:0,5:4,7:6,11:10", 4)])
def test_min_layers(text, k):
    assert min_layers(CliqueUnion.parse(text)) == k


def test_dichotomy_exactly_one_case():
    for a, t in itertools.product(range(1, 9), range(0, 8)):
        for bi in range(a + t + 1):
            lo, hi = interval_bounds(a, t, bi)
            case = dichotomy_case(a, t, bi)
            if case == "inner":
                assert t < bi < a
                assert (lo, hi) == (a - 2 * bi, a - 2 * (bi - t))
            else:
                assert lo == -a or hi == a


def test_principal_equals_full_when_slack_large():
    rng = random.Random(6)
    for _ in range(80):
        s = rng.randint(1, 3)
        ws = [rng.randint(1, 8) for _ in range(s)]
        u = CliqueUnion.disjoint(*((a, a - 1 + rng.randint(0, 1)) for a in ws))
        assert w_prime(u) == p_prime(u), u


def test_sign_or_progression_dichotomy():
    rng = random.Random(7)
    prog = LayerSet((0, 2, 4))
    for _ in range(40):
        s = rng.randint(1, 3)
        ws = [rng.randint(1, 9) for _ in range(s)]
        u = CliqueUnion.disjoint(*((a, rng.randint(2, 3)) for a in ws))
        signs = [normalize(x * a for x, a in zip(xs, ws)) for xs in itertools.product((1, -1), repeat=s)]
        for e in w_star(u):
            assert e.contains_translate_of(prog) or any(e.contains_translate_of(sg) for sg in signs), (u, e)


def test_overlap_only_shrinks_up_to_translates():
    for a1, t1, a2, t2 in itertools.product(range(1, 5), range(0, 3), range(1, 5), range(0, 3)):
        base = w_prime(CliqueUnion.two(a1, t1, a2, t2))
        for c in range(1, min(a1 + t1, a2 + t2) + 1):
            for e in w_prime(CliqueUnion.two(a1, t1, a2, t2, c)):
                assert any(e.contains_translate_of(f) for f in base), (a1, t1, a2, t2, c, e)


def test_two_clique_principal_formula():
    for a1, a2 in itertools.product(range(1, 13), repeat=2):
        u = CliqueUnion.disjoint((a1, 2), (a2, 3))
        expected = reduce_family([{0, abs(a1 - a2)}, {0, a1 + a2}])
        assert p_prime(u) == expected


def test_weight_zero_clique_contributes_b():
    u = CliqueUnion.disjoint((0, 2))
    assert w_star(u) == SetFamily.parse("{0};{1};{2}")
    assert CliqueSpec(0, 0).order == 0
