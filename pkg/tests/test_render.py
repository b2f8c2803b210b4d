from fractions import Fraction

import pytest

from sphsep.errors import DimensionError
from sphsep.formats import Instance
from sphsep.harness import gen_disjoint_closed, gen_intersecting_closed, gen_open_pair
from sphsep.render import render_svg
from sphsep.separation import separate_closed, separate_open


def inst_of(b1, b2):
    return Instance(b1.dim, sides=(b1.rays, b2.rays))


def test_2d_antipodal_elements(antipodal):
    svg = render_svg(inst_of(*antipodal), separate_closed(*antipodal))
    assert svg.count('class="ray ') == 2
    assert svg.count('class="separator"') == 1
    assert 'viewBox="0 0 800 800"' in svg
    # separator is vertical through the centre for u = (1, 0)
    assert 'x1="400.000" y1="775.000" x2="400.000" y2="25.000"' in svg


def test_2d_quadrants_sectors_and_arc(quadrants):
    svg = render_svg(inst_of(*quadrants), separate_closed(*quadrants))
    assert svg.count('class="sector') == 2
    assert svg.count('class="e-arc"') == 1


def test_2d_witness(nested):
    svg = render_svg(inst_of(*nested), separate_closed(*nested))
    assert 'class="witness"' in svg and 'class="separator"' not in svg


def test_3d_without_certificate():
    b1, b2 = gen_disjoint_closed(3, 4, Fraction(1, 10), 3)
    svg = render_svg(inst_of(b1, b2))
    assert 'class="separator"' not in svg
    assert svg.count('class="generator') == 8


def test_3d_with_separator():
    b1, b2 = gen_disjoint_closed(3, 4, Fraction(1, 10), 3)
    svg = render_svg(inst_of(b1, b2), separate_closed(b1, b2))
    assert svg.count('class="separator"') == 1


def test_open_instances_render():
    for n in (2, 3):
        p1, p2 = gen_open_pair(n, 3, 7, True)
        render_svg(Instance(n, sides=(p1, p2)), separate_open(p1, p2))


def test_deterministic():
    b1, b2 = gen_intersecting_closed(2, 4, 11)
    inst = inst_of(b1, b2)
    cert = separate_closed(b1, b2)
    assert render_svg(inst, cert) == render_svg(inst, cert)


def test_4d_rejected():
    b1, b2 = gen_disjoint_closed(4, 3, Fraction(1, 10), 0)
    with pytest.raises(DimensionError, match="render supports n≤3"):
        render_svg(inst_of(b1, b2))
