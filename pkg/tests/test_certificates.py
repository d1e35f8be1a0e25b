import random
from fractions import Fraction

import pytest

from tronlab.certificates import (
    DIAGNOSTIC_BOUNDS,
    FIFTH,
    HARD_BOUNDS,
    certify,
    check_combinations,
    format_certificate,
)
from tronlab.decomposition import decompose
from tronlab.graphs import Graph, Instance
from tronlab.solver import game_value

from conftest import (
    double_spider_instance,
    path_instance,
    random_tree_instance,
    star_instance,
)


def test_certify_p5(p5_uniform):
    cert = certify(p5_uniform)
    assert cert.delta == Fraction(-1, 5)
    eq3 = cert.bound("anchor_left")
    eq4 = cert.bound("anchor_right")
    assert eq3.rhs == Fraction(1, 5)
    assert eq4.rhs == Fraction(-1, 5)  # tight
    assert eq3.verdict == eq4.verdict == "holds"
    assert cert.bound("quarter").verdict == "holds"
    assert cert.bound("fifth").verdict == "holds"
    assert cert.bound("split_point").verdict == "not_applicable"
    # With B(v of the right anchor) landing at the far left end, the dash
    # strategy applies and its bound holds.
    dash = cert.bound("dash_to_d")
    assert dash.applicable and dash.verdict == "holds"
    assert not cert.violations
    assert not cert.failed_combinations


def test_certify_k13(k13_uniform):
    cert = certify(k13_uniform)
    assert cert.delta == Fraction(-1, 4)
    assert cert.bound("anchor_left").rhs == Fraction(-1, 4)  # tight
    assert cert.bound("anchor_right").rhs == Fraction(1, 2)
    assert cert.bound("fifth").verdict == "holds"
    assert not cert.violations


def test_certify_skew_edge(skew_edge):
    cert = certify(skew_edge)
    assert cert.delta == Fraction(-1)
    for b in cert.bounds:
        assert b.verdict in ("holds", "not_applicable")


def test_dual_orientation_matches_flipped_decomposition(p5_uniform):
    rng = random.Random(13)
    for _ in range(25):
        inst = random_tree_instance(rng.randint(2, 9), rng)
        report = game_value(inst)
        normal = certify(inst, report=report, dec=decompose(inst, report=report))
        flipped = certify(
            inst, report=report, dec=decompose(inst, report=report, orient="high")
        )
        for b in normal.bounds:
            twin = flipped.bound(
                b.name, "dual" if b.orientation == "as_stated" else "as_stated"
            )
            assert (b.applicable, b.rhs, b.verdict) == (
                twin.applicable,
                twin.rhs,
                twin.verdict,
            )


def test_quarter_chain_values(p5_uniform, k13_uniform):
    cert = certify(p5_uniform)
    eq3, eq4 = cert.bound("anchor_left").rhs, cert.bound("anchor_right").rhs
    assert 2 * eq3 + 2 * eq4 == 0 <= 1
    cert = certify(k13_uniform)
    eq3, eq4 = cert.bound("anchor_left").rhs, cert.bound("anchor_right").rhs
    assert 2 * eq3 + 2 * eq4 == Fraction(1, 2) <= 1


def test_alpha_identity_exact():
    rng = random.Random(19)
    for _ in range(30):
        inst = random_tree_instance(rng.randint(2, 9), rng)
        dec = decompose(inst)
        L, R = dec.left, dec.right
        assert 3 * L.alpha == L.r + 2 * L.y + L.z + L.x + R.x - R.z
        assert 3 * R.alpha == R.r + 2 * R.y + R.z + R.x + L.x - L.z


def test_combination_checks_always_pass():
    rng = random.Random(37)
    instances = [double_spider_instance(leg) for leg in (1, 2, 3)]
    instances += [random_tree_instance(rng.randint(2, 10), rng) for _ in range(120)]
    for inst in instances:
        cert = certify(inst)
        assert not cert.failed_combinations, inst.digest()
        again = check_combinations(cert)
        assert all(c.ok for c in again)


def test_no_violations_and_conditional_bounds_fire():
    rng = random.Random(2026)
    instances = [double_spider_instance(leg) for leg in (1, 2, 3)]
    instances += [
        random_tree_instance(rng.randint(2, 11), rng, mode=m)
        for _ in range(250)
        for m in ("uniform", "random")
    ]
    fired = {name: 0 for name in HARD_BOUNDS + DIAGNOSTIC_BOUNDS}
    for inst in instances:
        cert = certify(inst)
        assert not cert.violations, (inst.digest(), cert.violations)
        for b in cert.bounds:
            if b.applicable:
                fired[b.name] += 1
    assert fired["dash_to_d"] > 0
    assert fired["split_point"] > 0
    assert fired["anchor_left"] == fired["anchor_right"] == fired["fifth"]


def test_split_point_requires_dash_failure():
    # Regression: the alpha-discounted bound is only valid when Bob's
    # reply beats the far anchor to d. This instance satisfies the naive
    # condition but not the gate, and its naive rhs is below delta.
    text = (
        "tron v1\nn 9\n"
        "w 0 2/11\nw 1 5/44\nw 2 0/1\nw 3 1/11\nw 4 0/1\n"
        "w 5 9/44\nw 6 1/4\nw 7 5/44\nw 8 1/22\n"
        "e 0 4\ne 1 3\ne 1 5\ne 2 4\ne 2 6\ne 4 5\ne 5 8\ne 7 8\n"
    )
    from tronlab.graphs import parse_instance

    inst = parse_instance(text)
    report = game_value(inst)
    dec = decompose(inst, report=report)
    g = inst.graph
    L = dec.left
    a_l, a_r = dec.crossing
    assert L.e is not None
    assert g.dist(a_r, L.d) <= g.dist(L.e, L.d)
    naive_rhs = (L.y + L.z + L.r - L.alpha) - (dec.right.x + dec.right.y)
    assert report.delta > naive_rhs  # the naive bound is genuinely false
    cert = certify(inst, report=report, dec=dec)
    sp = cert.bound("split_point")
    assert not sp.applicable
    assert "dash" in sp.reason
    assert cert.bound("dash_to_d").verdict == "holds"
    assert not cert.violations


def test_format_certificate_stable(p5_uniform):
    text = format_certificate(certify(p5_uniform))
    assert "bound anchor_left as_stated yes 1/5 holds" in text
    assert "check fifth_chain dual ok" in text
    assert text == format_certificate(certify(p5_uniform))


def test_reversed_tie_break_keeps_all_verdicts():
    # The reply table under the largest-index tie-break still yields a
    # crossing edge, a lawful decomposition, and a fully green report.
    rng = random.Random(47)
    instances = [double_spider_instance(2)]
    instances += [random_tree_instance(rng.randint(2, 9), rng) for _ in range(40)]
    for inst in instances:
        report = game_value(inst, tie_break="high")
        dec = decompose(inst, report=report, tie_break="high")
        cert = certify(inst, report=report, dec=dec)
        assert not cert.violations, inst.digest()
        assert not cert.failed_combinations, inst.digest()


def test_theorem_bound_every_instance():
    rng = random.Random(43)
    for _ in range(60):
        inst = random_tree_instance(rng.randint(2, 10), rng)
        cert = certify(inst)
        assert cert.delta <= FIFTH
        assert cert.bound("fifth").verdict == "holds"
        assert cert.bound("fifth", "dual").verdict == "holds"
