import math

import pytest

import hyperslice as hs


def test_spec_normalizes():
    s = hs.SectionSpec([3.0, 4.0], 0.1)
    assert s.a == pytest.approx([0.6, 0.8])
    assert s.b == pytest.approx(0.7 - 0.1)
    d = hs.SectionSpec.diagonal(5, 1.0)
    assert d.b == pytest.approx(math.sqrt(5) / 2 - 1.0)


def test_three_methods_agree():
    s = hs.SectionSpec.diagonal(5, 1.0)
    v = hs.section_volume(s)
    assert v.value == pytest.approx(hs.closed_form_max(5, 1.0), rel=1e-12)
    assert v.cut.kind == "corner"
    assert v.cut.count_below == 1
    assert abs(hs.section_volume_integral(s).value - v.value) < 1e-8
    mc = hs.mc_section_volume(s, samples=200000, seed=3)
    assert abs(mc.estimate - v.value) <= 4 * mc.std_error


def test_central_hexagon():
    v = hs.section_volume(hs.SectionSpec.diagonal(3, 0.0))
    assert v.value == pytest.approx(3 * math.sqrt(3) / 4, rel=1e-14)


def test_errors_carry_kind():
    with pytest.raises(hs.Error) as info:
        hs.SectionSpec([1.0, -1.0], 0.1)
    assert info.value.kind == "invalid_input"
    with pytest.raises(hs.Error) as info:
        hs.maximize(5, 0.4)
    assert info.value.kind == "domain"


def test_maximize_finds_diagonal():
    r = hs.maximize(4, 0.5 * math.sqrt(3.4), starts=8, seed=1)
    assert not r.degenerate
    assert r.angle_to_diagonal < 1e-4
    assert r.best_V == pytest.approx(r.closed_form_V, rel=1e-9)


def test_certificates():
    rep = hs.sign_certificates(7, hs.default_y_grid(500))
    assert rep.roots_excluded
    assert rep.max_alpha < 0
    assert hs.certify_rigorous(7).certified
    roots = hs.quad_roots(hs.quad_coeffs(5, 0.3))
    assert roots[-1] == pytest.approx(1.3, rel=1e-12)
    assert hs.decay_inequality_check(6, 1.05).holds
