import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from cubeknot.cubes import (CubeConfig, CubeError, LittleCube, base_config, block_permutation,
                            compose_operad, config_from_json, config_to_json, permute, project)
from cubeknot.rational import Q

from helpers import interval_compose, new_rng, random_config

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def intervals(config):
    return [[(F(int(lo.numerator), int(lo.denominator)), F(int(hi.numerator), int(hi.denominator)))
             for lo, hi in c.intervals()] for c in config]


def test_base_config_values():
    # Q_i = [-1 + (4i-2)/(2n+1), -1 + 4i/(2n+1)] x [0, 2/(2n+1)]
    assert intervals(base_config(1)) == [[(F(-1, 3), F(1, 3)), (0, F(2, 3))]]
    assert intervals(base_config(2)) == [[(F(-3, 5), F(-1, 5)), (0, F(2, 5))],
                                         [(F(1, 5), F(3, 5)), (0, F(2, 5))]]
    assert len(base_config(0)) == 0


def test_base_config_heights_are_zero():
    for n in range(1, 7):
        assert project(base_config(n)).t == (0,) * n


def test_project_examples():
    c = LittleCube(((Q(1, 2), 0), (Q(1, 4), Q(1, 2))))
    p = project(CubeConfig(2, (c,)))
    assert p.pi == (LittleCube(((Q(1, 2), 0),)),)
    assert p.t == (Q(1, 4),)
    ident = project(CubeConfig.identity(2))
    assert ident.pi == (LittleCube.identity(1),) and ident.t == (-1,)
    with pytest.raises(CubeError):
        project(CubeConfig.identity(1))


def test_compose_frozen_example():
    # worked out by substituting interval endpoints by hand
    result = compose_operad(base_config(2), [base_config(1), base_config(2)])
    assert intervals(result) == [
        [(F(-7, 15), F(-1, 3)), (F(1, 5), F(1, 3))],
        [(F(7, 25), F(9, 25)), (F(1, 5), F(7, 25))],
        [(F(11, 25), F(13, 25)), (F(1, 5), F(7, 25))],
    ]


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_compose_matches_interval_oracle(seed):
    rng = new_rng(seed)
    outer = random_config(rng, rng.randint(1, 3))
    inners = [random_config(rng, rng.randint(0, 3)) for _ in outer]
    got = intervals(compose_operad(outer, inners))
    want = [interval_compose(o, i) for o, inner in zip(intervals(outer), map(intervals, inners))
            for i in inner]
    assert got == want


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_operad_laws(seed):
    rng = new_rng(seed)
    a = random_config(rng, rng.randint(1, 3))
    bs = [random_config(rng, rng.randint(0, 2)) for _ in a]
    cs = [[random_config(rng, rng.randint(0, 2)) for _ in b] for b in bs]
    left = compose_operad(compose_operad(a, bs), [c for cl in cs for c in cl])
    right = compose_operad(a, [compose_operad(b, cl) for b, cl in zip(bs, cs)])
    assert left == right
    assert compose_operad(CubeConfig.identity(2), [a]) == a
    assert compose_operad(a, [CubeConfig.identity(2)] * len(a)) == a


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_equivariance(seed):
    rng = new_rng(seed)
    a = random_config(rng, rng.randint(1, 4))
    bs = [random_config(rng, rng.randint(0, 2)) for _ in a]
    perm = list(range(len(a)))
    rng.shuffle(perm)
    left = compose_operad(permute(a, perm), [bs[p] for p in perm])
    right = permute(compose_operad(a, bs), block_permutation([len(b) for b in bs], perm))
    assert left == right


def test_permute():
    c = base_config(3)
    assert permute(c, [0, 1, 2]) == c
    assert permute(permute(c, [2, 0, 1]), [1, 2, 0]) == c
    swapped = permute(base_config(2), [1, 0])
    assert swapped.cubes == (base_config(2)[1], base_config(2)[0])
    with pytest.raises(CubeError):
        permute(c, [0, 0, 1])


def test_projection_of_composite():
    rng = new_rng(5)
    for _ in range(30):
        outer = random_config(rng, 2)
        inners = [random_config(rng, 2) for _ in outer]
        comp = project(compose_operad(outer, inners))
        want = [o.axes[1][0] * t + o.axes[1][1]
                for o, inner in zip(outer, inners) for t in project(inner).t]
        assert list(comp.t) == want


def test_disjointness_preserved():
    rng = new_rng(6)
    for _ in range(30):
        outer = random_config(rng, 3)
        c = compose_operad(outer, [random_config(rng, 2) for _ in outer])
        CubeConfig(2, c.cubes)  # revalidates


def test_invalid_cubes():
    with pytest.raises(CubeError):
        LittleCube(((0, 0),))
    with pytest.raises(CubeError):
        LittleCube(((Q(1, 2), Q(3, 4)),))
    with pytest.raises(CubeError):
        CubeConfig(2, (LittleCube.identity(2), LittleCube.from_intervals((0, 1), (0, 1))))
    with pytest.raises(CubeError):
        compose_operad(base_config(2), [base_config(1)])
    with pytest.raises(CubeError):
        compose_operad(base_config(1), [CubeConfig.identity(3)])
    with pytest.raises(TypeError):
        LittleCube(((0.5, 0),))


def test_shared_faces_allowed():
    CubeConfig(1, (LittleCube.from_intervals((-1, 0)), LittleCube.from_intervals((0, 1))))


def test_json_round_trip():
    rng = new_rng(7)
    for _ in range(20):
        c = random_config(rng, 3)
        text = json.dumps(config_to_json(c))
        assert config_from_json(json.loads(text)) == c
    obj = config_to_json(base_config(1))
    assert obj["schema"] == "cubeknot/1"
    assert obj["cubes"][0]["axes"][0] == [{"num": "1", "den": "3"}, {"num": "0", "den": "1"}]
