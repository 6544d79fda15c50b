import pytest

from cubeknot.catalog import load
from cubeknot.cubes import base_config
from cubeknot.invariants import (DiagramError, close_long, coloring_determinant, determinant,
                                 framing_number, gauss_code, knot_determinant, knot_diagram,
                                 linking_number, long_knot_diagram, long_pair_diagram,
                                 project_to_diagram, writhe)
from cubeknot.rational import Q
from cubeknot.tube import AXIS, kappa, unknot

from helpers import gauss_linking, new_rng, random_rotation


def pts(*ps):
    return tuple(tuple(Q(c) for c in p) for p in ps)


# two unit squares through each other's centres
HOPF_A = pts((-1, -1, 0), (1, -1, 0), (1, 1, 0), (-1, 1, 0))
HOPF_B = pts((0, 0, -1), (0, 0, 1), (2, 0, 1), (2, 0, -1))
SPLIT_B = pts((5, 0, -1), (5, 0, 1), (7, 0, 1), (7, 0, -1))


def kink(up=True):
    h = Q(1, 10) if up else Q(-1, 10)
    return pts((-1, 0, 0), (Q(1, 5), 0, 0), (Q(1, 5), Q(1, 5), 0), (0, Q(1, 5), 0),
               (0, Q(-1, 5), h), (Q(2, 5), Q(-1, 5), h), (Q(2, 5), 0, 0), (1, 0, 0))


def test_axis_has_no_crossings():
    d = long_knot_diagram(AXIS.vertices)
    assert d.crossings == ()
    assert writhe(d) == 0 and determinant(d) == 1


def test_hopf_link_against_gauss_integral():
    d = project_to_diagram([HOPF_A, HOPF_B])
    assert len(d.crossings) == 2
    assert len({c.sign for c in d.crossings}) == 1
    lk = linking_number(d)
    assert abs(lk) == 1
    assert abs(gauss_linking(HOPF_A, HOPF_B) - lk) < 1e-6


def test_split_link():
    assert linking_number(project_to_diagram([HOPF_A, SPLIT_B])) == 0


def test_linking_symmetric_and_reversal():
    lk = linking_number(project_to_diagram([HOPF_A, HOPF_B]))
    assert linking_number(project_to_diagram([HOPF_B, HOPF_A])) == lk
    assert linking_number(project_to_diagram([HOPF_A, HOPF_B[::-1]])) == -lk


def test_catalog_trefoil_diagram():
    d = knot_diagram(load("trefoil"))
    assert len(d.crossings) == 3
    assert {c.sign for c in d.crossings} == {-1}
    assert writhe(d) == -3
    assert gauss_code(d) == "O1- U2- O3- U1- O2- U3-"


def test_kink_changes_writhe_by_one():
    up, down = knot_diagram(kink(True)), knot_diagram(kink(False))
    assert writhe(up) - writhe(long_knot_diagram(AXIS.vertices)) in (1, -1)
    assert writhe(up) == -writhe(down)
    assert determinant(up) == determinant(down) == 1


@pytest.mark.parametrize("name,det", [("trefoil", 3), ("trefoil_mirror", 3),
                                      ("figure8", 5), ("figure8_mirror", 5)])
def test_catalog_determinants(name, det):
    d = knot_diagram(load(name))
    assert determinant(d) == det
    # independent route: Fox colouring matrix, i.e. the Alexander matrix at -1
    assert coloring_determinant(d) == det


def test_connected_sum_determinant():
    f = kappa(base_config(2), [load("trefoil"), load("figure8")])
    d = knot_diagram(f)
    assert determinant(d) == coloring_determinant(d) == 15


def test_projection_independence():
    rng = new_rng(11)
    for name, fr in (("trefoil", 2), ("figure8", -1)):
        f = load(name, fr)
        for _ in range(10):
            rot = random_rotation(rng)
            assert knot_determinant(f, rot) == knot_determinant(f)
            assert framing_number(f, rot) == fr


def test_framing_number_examples():
    assert framing_number(unknot()) == 0
    assert framing_number(unknot(2)) == 2
    f = kappa(base_config(2), [load("trefoil", 1), load("figure8", 3)])
    assert framing_number(f) == 4


def test_framing_number_detects_mismatch():
    from dataclasses import replace
    f = kappa(base_config(1), [load("trefoil", 1)])
    with pytest.raises(ValueError):
        framing_number(replace(f, framing=2, pushoff=f.pushoff))


def test_intersecting_curves_rejected():
    a = pts((-1, 0, 0), (1, 0, 0), (1, 1, 0), (-1, 1, 0))
    b = pts((0, -1, 0), (0, 2, 0), (0, 2, 1), (0, -1, 1))
    with pytest.raises(DiagramError):
        project_to_diagram([a, b])


def test_closure_requires_long_ends():
    with pytest.raises(ValueError):
        close_long(pts((-1, 0, 0), (1, 1, 0)))


def test_component_count_checked():
    with pytest.raises(ValueError):
        linking_number(long_knot_diagram(AXIS.vertices))
    with pytest.raises(ValueError):
        determinant(long_pair_diagram(AXIS.vertices, pts((-1, Q(1, 2), 0), (1, Q(1, 2), 0))))
