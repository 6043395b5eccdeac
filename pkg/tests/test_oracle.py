import itertools
import random

import numpy as np
import pytest

from cuberamsey.embedding import w_star
from cuberamsey.model import CliqueUnion, LayerSet, ResourceError, SetFamily
from cuberamsey.oracle import (
    CubeColoring,
    VertexSet,
    brute_force_w_star,
    contains_monochromatic_copy,
    find_layered_subcube,
    layered_coloring,
    monochromatic_member,
    realize_union,
    simple_automorphism_image,
)

EXAMPLE_S = CliqueUnion.parse("3:1,1:0")


def test_realize_union_examples():
    vs = realize_union(EXAMPLE_S)
    assert vs.n == 5
    got = sorted(sorted(x) for x in vs.as_sets())
    assert got == sorted([[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4], [5]])
    vs = realize_union(CliqueUnion.parse("2:1"))
    assert sorted(sorted(x) for x in vs.as_sets()) == [[1, 2], [1, 3], [2, 3]]


def test_realize_union_overlap_ground_sets():
    vs = realize_union(CliqueUnion.two(2, 1, 2, 1, 1))
    assert vs.n == 5
    sets = [frozenset(x) for x in vs.as_sets()]
    for g in ({1, 2, 3}, {3, 4, 5}):
        assert {frozenset(c) for c in itertools.combinations(sorted(g), 2)} <= set(sets)
    assert len(sets) == 6


def test_realize_union_weights():
    rng = random.Random(31)
    for _ in range(30):
        pairs = [(rng.randint(0, 4), rng.randint(0, 3)) for _ in range(rng.randint(1, 3))]
        if sum(a + t for a, t in pairs) == 0:
            continue
        vs = realize_union(CliqueUnion.disjoint(*pairs))
        assert vs.weights() == LayerSet({a for a, t in pairs})


def test_simple_automorphism_is_involution_and_isometry():
    rng = random.Random(32)
    vs = realize_union(EXAMPLE_S)
    for _ in range(20):
        b = rng.randrange(1 << vs.n)
        img = simple_automorphism_image(vs, b)
        assert sorted(simple_automorphism_image(img, b).vertices) == sorted(vs.vertices)
        assert sorted(img.vertices) == sorted(v ^ b for v in vs.vertices)
        for u, v in itertools.combinations(vs.vertices, 2):
            assert bin((u ^ b) ^ (v ^ b)).count("1") == bin(u ^ v).count("1")
    with pytest.raises(ValueError):
        simple_automorphism_image(vs, 1 << vs.n)


def test_brute_force_examples():
    assert brute_force_w_star(VertexSet(3, (0,))) == SetFamily.parse("{0};{1};{2};{3}")
    w6 = "{1,3};{2,4};{3,5};{0,4};{1,5};{2,6};{0,2,4};{1,3,5};{2,4,6}"
    vs = realize_union(EXAMPLE_S)
    assert brute_force_w_star(VertexSet(6, vs.vertices)) == SetFamily.parse(w6)


def test_brute_force_budget():
    with pytest.raises(ResourceError):
        brute_force_w_star(VertexSet(21, (0,)))


def test_cube_coloring_text():
    cc = CubeColoring.from_text("RBBR")
    assert cc.n == 2 and cc.colors == (0, 1, 1, 0) and cc.to_text() == "RBBR"
    with pytest.raises(ValueError):
        CubeColoring.from_text("RBB")


def test_constant_coloring_contains_everything():
    cc = CubeColoring(5, (0,) * 32)
    w = contains_monochromatic_copy(cc, realize_union(EXAMPLE_S))
    assert w is not None


def parity_coloring(n):
    return CubeColoring(n, tuple(bin(v).count("1") % 2 for v in range(1 << n)))


def test_parity_coloring_copies():
    cc = parity_coloring(6)
    vs = realize_union(EXAMPLE_S)
    w = contains_monochromatic_copy(cc, vs)
    assert w is not None
    assert len({cc.colors[w.apply(v)] for v in vs.vertices}) == 1
    mixed = realize_union(CliqueUnion.parse("1:0,2:0"))
    assert contains_monochromatic_copy(cc, mixed) is None


def test_copy_witness_is_an_embedding():
    rng = random.Random(33)
    vs = realize_union(CliqueUnion.parse("2:1"))
    for _ in range(10):
        cc = CubeColoring(5, tuple(rng.randrange(2) for _ in range(32)))
        w = contains_monochromatic_copy(cc, vs)
        if w is None:
            continue
        img = [w.apply(v) for v in vs.vertices]
        assert len({cc.colors[x] for x in img}) == 1
        for (u, v), (x, y) in zip(itertools.combinations(vs.vertices, 2), itertools.combinations(img, 2)):
            assert bin(u ^ v).count("1") == bin(x ^ y).count("1")


def test_copy_errors():
    vs = realize_union(EXAMPLE_S)
    with pytest.raises(ValueError):
        contains_monochromatic_copy(CubeColoring(4, (0,) * 16), vs)
    with pytest.raises(ResourceError):
        contains_monochromatic_copy(CubeColoring(11, (0,) * 2048), vs)


def test_layered_subcube():
    rng = np.random.default_rng(34)
    cc = CubeColoring(9, tuple(int(x) for x in rng.integers(0, 2, 512)))
    w = find_layered_subcube(cc, 2)
    assert w is not None
    verts = w.vertices()
    for k in range(3):
        layer = [v for i, v in enumerate(verts) if bin(i).count("1") == k]
        assert len({cc.colors[v] for v in layer}) == 1
    assert find_layered_subcube(layered_coloring([0, 1, 0, 1, 1], 4), 4) is not None
    with pytest.raises(ValueError):
        find_layered_subcube(cc, 10)


def test_monochromatic_member():
    fam = SetFamily.parse("{0,2};{1,5}")
    assert monochromatic_member([0, 1, 0], fam) == LayerSet((0, 2))
    assert monochromatic_member([0, 1, 1, 0, 0], fam) is None


@pytest.mark.parametrize(
    "u, n",
    [
        (CliqueUnion.parse("3:1,1:0"), 6),
        (CliqueUnion.parse("2:1"), 5),
        (CliqueUnion.parse("1:1,2:0"), 5),
        (CliqueUnion.two(2, 1, 2, 1, 1), 6),
    ],
)
def test_layered_copy_iff_monochromatic_layer_set(u, n):
    # exhaustive over every 2-coloring of the layers
    vs = realize_union(u)
    fam = w_star(u, dim=n)
    for bits in itertools.product((0, 1), repeat=n + 1):
        found = contains_monochromatic_copy(layered_coloring(bits, n), vs) is not None
        assert found == (monochromatic_member(bits, fam) is not None), (u, bits)
