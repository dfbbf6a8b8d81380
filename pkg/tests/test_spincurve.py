import random

import pytest

from dgmf import (
    GroupElement,
    SpinDataError,
    build_obstruction,
    check_equivariance,
    check_projection_commutation,
    fundamental_mf,
    gauge_intertwiner,
    homology_ranks,
    residue_structure,
    rigidification_transport_check,
    solve_f_minus_one,
    twisted_diagonal_glue,
    two_term_realization,
    cech_oracle,
)
from dgmf.specfile import parse_spec

BROAD = """[field]
order = 4
[potential]
variables = x:1
W = x^2
d = 2
[group]
generator = diag(-1)
J = diag(-1)
J_sqrt = z
[curve]
component c0
bundle c0 = 0
marking c0 at 1 gamma diag(1) rig 1
marking c0 at -1 gamma diag(1) rig z
divisor c0 at 0 mult 1
eta c0 = (2) / (t^2 + (-1))
"""

NARROW = """[field]
order = 4
[potential]
variables = x:1
W = x^2
d = 2
[group]
generator = diag(-1)
J = diag(-1)
J_sqrt = z
[curve]
component c0
bundle c0 = -1
marking c0 at 1 gamma diag(-1) rig 1
marking c0 at -1 gamma diag(-1) rig 1
divisor c0 at 0 mult 1
"""

DISCONNECTED = """[field]
order = 4
[potential]
variables = x:1
W = x^2
d = 2
[group]
generator = diag(-1)
J = diag(-1)
J_sqrt = z
[curve]
component c0
component c1
bundle c0 = 0
bundle c1 = 0
marking c0 at 1 gamma diag(1) rig 1
marking c0 at -1 gamma diag(1) rig z
marking c1 at 1 gamma diag(1) rig 1
marking c1 at -1 gamma diag(1) rig z
divisor c0 at 0 mult 1
divisor c1 at 0 mult 1
eta c0 = (2) / (t^2 + (-1))
eta c1 = (2) / (t^2 + (-1))
"""

GLUED = """[field]
order = 4
[potential]
variables = x:1
W = x^2
d = 2
[group]
generator = diag(-1)
J = diag(-1)
J_sqrt = z
[curve]
component c0
component c1
bundle c0 = 0
bundle c1 = 0
marking c0 at 1 gamma diag(1) rig 1
marking c1 at -1 gamma diag(1) rig z
node c0 at -1 rig z ~ c1 at 1 rig 1
divisor c0 at 0 mult 1
divisor c1 at 0 mult 1
"""


def _spec(text):
    return parse_spec(text).spin_spec()


def test_two_term_realization_frozen_example():
    spec = _spec(BROAD)
    model = two_term_realization(spec)
    F = spec.field
    z = F.zeta
    assert model.dim_a == 2 and model.dim_b == 1
    assert model.z_matrix == [[F.one, F.one], [-z, z]]
    assert model.homology() == cech_oracle(spec)
    assert model.z_square_invertible()


def test_fundamental_mf_frozen_example():
    spec = _spec(BROAD)
    r = fundamental_mf(spec)
    F = spec.field
    z = F.zeta
    ring = r.mf.ring
    x1, x2 = ring.gen("x1"), ring.gen("x2")
    assert (r.mf.rank0, r.mf.rank1) == (1, 1)
    assert r.mf.potential == x1 * x1 + x2 * x2
    assert r.mf.delta0 == [[2 * x1 + (-2 * z) * x2]]
    half = F.scalar(1) / F.scalar(2)
    assert r.mf.delta1 == [[half * x1 + half * z * x2]]
    r.mf.verify()


def test_certificate_shape():
    r = fundamental_mf(_spec(BROAD))
    cert = r.certificate()
    assert cert["rank"] == [1, 1]
    assert cert["two_term_homology"] == {"h0": 1, "h1": 0}
    assert "sign_convention" in cert


def test_narrow_concentrated_gives_unit():
    r = fundamental_mf(_spec(NARROW))
    assert r.mf.metadata.get("narrow_concentrated") is True
    assert (r.mf.rank0, r.mf.rank1) == (1, 0)
    assert not r.mf.potential


def test_narrow_general_zero_potential():
    r = fundamental_mf(_spec(NARROW.replace("bundle c0 = -1",
                                            "bundle c0 = 0")))
    assert not r.mf.potential
    assert r.mf.metadata["projection"]["sector"] == []


def test_missing_bundle_degrees_rejected():
    with pytest.raises(SpinDataError, match="bundle"):
        _spec(BROAD.replace("bundle c0 = 0\n", ""))


def test_divisor_on_marking_rejected():
    with pytest.raises(SpinDataError, match="avoid markings"):
        _spec(BROAD.replace("divisor c0 at 0 mult 1",
                            "divisor c0 at 1 mult 1"))


def test_eta_validation():
    with pytest.raises(SpinDataError, match="pole at infinity"):
        _spec(BROAD.replace("(2) / (t^2 + (-1))", "(2*t) / (t^2 + (-1))"))
    with pytest.raises(SpinDataError, match="simple poles"):
        _spec(BROAD.replace("(2) / (t^2 + (-1))", "(2) / (t^2 + (-4))"))


def test_divisor_too_small():
    with pytest.raises(SpinDataError, match="increase D"):
        fundamental_mf(_spec(BROAD.replace("divisor c0 at 0 mult 1\n", "")))


def test_residue_constraint_violation():
    spec = _spec(BROAD)
    model = two_term_realization(spec)
    obs = build_obstruction(spec, model)
    u = obs.u_ring
    # perturb the obstruction class off the image of the differential
    obs.c = obs.c + u.gen("u1") * u.gen("u1")
    with pytest.raises(SpinDataError, match="residue constraint"):
        solve_f_minus_one(spec, model, obs)


def test_divisor_stability():
    """Enlarging D must not change the answer: same potential up to the
    sector coordinates, same fiber homology at zero-locus points."""
    spec_a = _spec(BROAD)
    spec_b = _spec(BROAD.replace("divisor c0 at 0 mult 1",
                                 "divisor c0 at 0 mult 1\ndivisor c0 at 2 mult 1"))
    ra = fundamental_mf(spec_a)
    rb = fundamental_mf(spec_b)
    F = spec_a.field
    z = F.zeta
    pts = [(F.zero, F.zero), (F.one, z), (F.one, -z),
           (F.scalar(2), F.scalar(2) * z), (F.scalar(3), -F.scalar(3) * z)]
    for p in pts:
        assert ra.fiber_data(list(p)) == rb.fiber_data(list(p))
    # origin is the one noncontractible point of this family
    assert ra.fiber_data([F.zero, F.zero]) == (1, 1, "noncontractible")
    assert ra.fiber_data([F.one, z])[2] == "contractible"


def test_equivariance_report():
    spec = _spec(BROAD)
    r = fundamental_mf(spec)
    report = check_equivariance(spec, r)
    assert not report["trivial"]
    assert report["elements"]
    assert all(e["verdict"] == "equivariant" for e in report["elements"])


def test_pivot_order_gauge():
    spec = _spec(BROAD)
    r1 = fundamental_mf(spec)
    r2 = fundamental_mf(spec, pivot_order=[1, 0])
    assert r1.mf.potential == r2.mf.potential
    # the two curvings are gauge equivalent; verification is exact inside
    got = gauge_intertwiner(r1.scheme_out, -r1.f_out,
                            -_transplant(r2.f_out, r1.scheme_out))
    assert got is not None


def _transplant(elt, scheme):
    from dgmf.factorizations import SuperElement
    return SuperElement(scheme, dict(elt.coefficients))


def test_rigidification_transport():
    spec = _spec(BROAD)
    r = fundamental_mf(spec)
    F = spec.field
    eps = GroupElement.diagonal(spec.vring, [F.scalar(-1)])
    assert rigidification_transport_check(spec, r, 0, eps)
    assert rigidification_transport_check(spec, r, 1, eps)


def test_residue_structure_and_triangle():
    spec = _spec(BROAD)
    lm = residue_structure(spec)
    rng = random.Random(77)
    for _ in range(10):
        form = lm.random_form(rng)
        assert not lm.total_residue(form)
    report = lm.residue_triangle_report()
    assert report["inclusion_injective"]
    assert report["residue_kills_omega"]
    assert report["connecting_is_summation"]


def test_projection_commutation():
    lm = residue_structure(_spec(BROAD))
    ok, _info = check_projection_commutation(lm)
    assert ok


def test_twisted_diagonal_glue():
    report = twisted_diagonal_glue(_spec(DISCONNECTED), _spec(GLUED))
    assert report["cartesian"]
    assert report["counterexample"] is None
    assert report["potentials_match"]
    assert report["pulled_back_potential"] == report["glued_potential"]


def test_glue_rejects_wrong_lambda():
    bad = GLUED.replace("J_sqrt = z", "J_sqrt = 1")
    with pytest.raises(SpinDataError, match="lambda"):
        twisted_diagonal_glue(_spec(DISCONNECTED.replace("J_sqrt = z",
                                                         "J_sqrt = 1")),
                              _spec(bad))
