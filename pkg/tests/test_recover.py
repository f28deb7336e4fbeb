import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as hst

from quantumtree import polynomials as pc
from quantumtree import recover as rc
from quantumtree import scattering as sc
from quantumtree import sturm as st
from quantumtree import trees as tc

from conftest import all_trees, path, star


def test_interpolation_from_forward_records():
    for tree in all_trees(2, 5):
        for pot in (st.Potential.zero(1.0), st.Potential.constant(-2.0, 1.0)):
            rec = sc.scattering_info(tree, pot)
            psi, psihat = rc.interpolate_polynomials(rec)
            assert psi == pc.psi(tree)
            assert psihat == pc.psi_hat(tree)


def test_interpolation_rejects_corrupted_record():
    rec = sc.scattering_info(path(3), st.Potential.zero(1.0))
    rec.f[1] += 0.4
    with pytest.raises(ValueError, match="rounding margin exceeded"):
        rc.interpolate_polynomials(rec)


def test_interpolation_consistency_check():
    rec = sc.scattering_info(path(3), st.Potential.zero(1.0))
    rec.f = [v + 1.0 for v in rec.f]  # psi picks up +1, so psi(1) != 0
    with pytest.raises(ValueError, match="consistency check failed"):
        rc.interpolate_polynomials(rec)


def test_recover_d0():
    for tree in all_trees(2, 6):
        assert rc.recover_d0(pc.psi(tree), pc.psi_hat(tree)) == tc.degree(
            tree, tree.root)
    with pytest.raises(ValueError, match="non-integer degree ratio"):
        rc.recover_d0(pc.poly([0, 1, 1]), pc.poly([1, 1, 1]))
    with pytest.raises(ValueError, match="non-integer degree ratio"):
        rc.recover_d0(pc.poly([0, 0, 0, 3]), pc.poly([0, 0, -2]))


def test_reciprocal_degree_sum():
    for tree in all_trees(2, 6):
        got = rc.reciprocal_degree_sum(pc.psi(tree), pc.psi_hat(tree))
        kids = tree.children()[tree.root]
        want = sum(Fraction(1, tc.degree(tree, c)) for c in kids)
        assert got == want


def test_diophantine_reciprocals():
    assert rc.diophantine_reciprocals(Fraction(11, 12), 3) == [
        (2, 3, 12), (2, 4, 6), (3, 3, 4)]
    assert rc.diophantine_reciprocals(1, 2) == [(2, 2)]
    assert rc.diophantine_reciprocals(2, 2) == [(1, 1)]
    assert rc.diophantine_reciprocals(Fraction(1, 7), 1) == [(7,)]
    assert rc.diophantine_reciprocals(3, 1) == []
    for sol in rc.diophantine_reciprocals(Fraction(5, 6), 4):
        assert sum(Fraction(1, d) for d in sol) == Fraction(5, 6)
        assert list(sol) == sorted(sol)


def test_split_psihat(snowflake_polys):
    _psi, psihat = snowflake_polys
    cat = pc.subtree_catalog(3)
    splits = rc.split_psihat(psihat, 3, cat)
    strs = [[pc.poly_str(f) for f in s] for s in splits]
    assert ["-3z^3+2z", "-3z^3+2z", "4z^4-3z^2"] in strs
    for s in splits:
        prod = pc.ONE
        for f in s:
            prod = pc.poly_mul(prod, f)
        assert prod == psihat
    with pytest.raises(ValueError, match="no admissible splitting"):
        rc.split_psihat(pc.poly([1, 0, 1]), 1, cat)


def test_undetermined_coefficients(snowflake, snowflake_polys):
    psi, psihat = snowflake_polys
    factors = [b[0] for b in pc.branch_polynomials(snowflake)]
    nums = rc.undetermined_coefficients(psi, psihat, factors)
    assert [pc.poly_str(n) for n in nums] == ["z^2", "z^2", "-z^3"]


def test_undetermined_coefficients_end_fragment():
    tree = path(3)
    factors = [b[0] for b in pc.branch_polynomials(tree)]
    nums = rc.undetermined_coefficients(pc.psi(tree), pc.psi_hat(tree),
                                        factors)
    assert [pc.poly_str(f) for f in factors] == ["2z^2-1"]
    assert [pc.poly_str(n) for n in nums] == ["-z"]


def test_undetermined_coefficients_rejects_power_factor(snowflake_polys):
    psi, psihat = snowflake_polys
    z4 = pc.poly([0, 0, 0, 0, 1])
    rest = pc.poly_divexact(psihat, z4)
    with pytest.raises(ValueError, match="degree overflow|singular system"):
        rc.undetermined_coefficients(psi, psihat, [z4, rest, pc.ONE])


def test_undetermined_coefficients_bad_product(snowflake_polys):
    psi, psihat = snowflake_polys
    with pytest.raises(ValueError, match="singular system"):
        rc.undetermined_coefficients(psi, psihat, [pc.poly([0, 1])] * 3)


def test_recover_shape_flagship(snowflake, snowflake_polys):
    psi, psihat = snowflake_polys
    result = rc.recover_shape(psi, psihat)
    assert len(result.shapes) == 1
    assert tc.is_isomorphic(result.shapes[0], snowflake)
    accepted = [e for e in result.trace if e["status"] == "accepted"]
    assert len(accepted) == 1
    assert accepted[0]["d0"] == 3
    assert accepted[0]["diophantine"] == [[3, 3, 4]]


def test_recover_shape_result_json(snowflake_polys):
    psi, psihat = snowflake_polys
    obj = json.loads(rc.recover_shape(psi, psihat).to_json())
    assert set(obj) == {"shapes", "trace"}
    assert obj["shapes"][0]["p"] == 11
    assert {"branch", "d0", "splitting", "diophantine",
            "status"} <= set(obj["trace"][0])


def test_recover_shape_no_shape():
    with pytest.raises(ValueError, match="no shape found"):
        rc.recover_shape(pc.poly([0, 2, 0, -2]), pc.poly([-2, 0, 2]))


def test_recover_shape_reference(reference_trees):
    for name, (tree, _psi, _psihat) in reference_trees.items():
        result = rc.recover_shape(pc.psi(tree), pc.psi_hat(tree))
        codes = [tc.canonical_code(s) for s in result.shapes]
        assert tc.canonical_code(tree) in codes, name


@settings(max_examples=40, deadline=None)
@given(hst.integers(2, 6), hst.randoms(use_true_random=False))
def test_recover_shape_round_trip(p, rng):
    pool = tc.enumerate_rooted_trees(p)
    tree = pool[rng.randrange(len(pool))]
    psi, psihat = pc.psi(tree), pc.psi_hat(tree)
    result = rc.recover_shape(psi, psihat)
    codes = [tc.canonical_code(s) for s in result.shapes]
    assert tc.canonical_code(tree) in codes
    for shape in result.shapes:
        assert pc.psi(shape) == psi
        assert pc.psi_hat(shape) == psihat


def test_recover_snowflake(snowflake, snowflake_polys):
    psi, psihat = snowflake_polys
    got = rc.recover_snowflake(psi, psihat)
    assert got is not None and tc.is_isomorphic(got, snowflake)
    # a depth-three chain is not a snowflake
    chain = path(4)
    assert rc.recover_snowflake(pc.psi(chain), pc.psi_hat(chain)) is None
    # depth-two trees recover themselves
    for tree in (star(4), path(3)):
        got = rc.recover_snowflake(pc.psi(tree), pc.psi_hat(tree))
        assert got is not None and tc.is_isomorphic(got, tree)
