from fractions import Fraction

import pytest

from hopfforge import catalog
from hopfforge.algebra import Presentation
from hopfforge.grading import (FiltrationError, PowerSeries, Signature,
                               certify, certify_filtration, default_truncation,
                               graded_coproduct_leading, hilbert_divides,
                               hilbert_series, signature)
from hopfforge.hopf import PresentedHopfAlgebra, solve_antipode, verify_hopf
from hopfforge.tensor import tensor_product as tp


def test_b_certificate_dims():
    H = catalog.build_b_lambda(1)
    assert H.filtration.truncation == 6
    assert H.filtration.graded_dims == (1, 2, 4, 6, 9, 12, 16)
    # cumulative filtration dimensions follow
    assert H.filtration.cumulative(2) == 7


def test_e_certificate_passes_at_5():
    H = catalog.build_e(truncation=5)
    assert H.filtration.graded_dims == (1, 2, 4, 7, 11, 16)


def test_overdeclared_weight_yields_reweight_error():
    # declare Z in weight 3 while its actual filtration degree is 2
    pres = Presentation([("X", 1), ("Y", 1), ("Z", 3)], {
        ("Y", "X"): {(0, 1, 0): -1},
        ("Z", "X"): {(0, 0, 1): -1, (0, 1, 0): 1},
        ("Z", "Y"): {(0, 2, 0): Fraction(1, 2)},
    })
    one = pres.one()
    X, Y, Z = pres.gen("X"), pres.gen("Y"), pres.gen("Z")
    H = PresentedHopfAlgebra(pres, {
        "X": tp(one, X) + tp(X, one),
        "Y": tp(one, Y) + tp(Y, one),
        "Z": tp(one, Z) + tp(X, Y) + tp(Z, one),
    }, antipodes={"X": -X, "Y": -Y, "Z": -Z + X * Y})
    H.certify_presentation()
    solve_antipode(H)
    assert verify_hopf(H).passed
    with pytest.raises(FiltrationError, match="reweight Z to 2"):
        certify_filtration(H, 4)


def test_underdeclared_weight_rejected_at_construction():
    pres = Presentation([("X", 1), ("Y", 1), ("Z", 1)], {})
    one = pres.one()
    X, Y, Z = pres.gen("X"), pres.gen("Y"), pres.gen("Z")
    with pytest.raises(ValueError, match="reweight Z"):
        PresentedHopfAlgebra(pres, {
            "X": tp(one, X) + tp(X, one),
            "Y": tp(one, Y) + tp(Y, one),
            "Z": tp(one, Z) + tp(X, Y) + tp(Z, one),
        })


def test_signatures():
    assert str(signature(catalog.build_b_lambda(1))) == "(1^2, 2)"
    assert str(signature(catalog.build_e())) == "(1^2, 2, 3)"
    for preset, n in (("abelian3", 3), ("nonabelian2", 2), ("heisenberg", 3)):
        sig = signature(catalog.build_enveloping_preset(preset))
        assert sig.pairs == ((1, n),)


def test_signature_invariants():
    sig = signature(catalog.build_e())
    assert sig.generator_count == 4
    assert sig.total == 1 + 1 + 2 + 3


def test_hilbert_series_product_formula():
    sig = Signature(((1, 2), (2, 1)))
    assert hilbert_series(sig, 4).coeffs == (1, 2, 4, 6, 9)
    ones = Signature(((1, 1),))
    assert hilbert_series(ones, 7).coeffs == (1,) * 8
    # multiplicativity over a signature split
    left = hilbert_series(Signature(((1, 2),)), 4).coeffs
    right = hilbert_series(Signature(((2, 1),)), 4).coeffs
    product = [sum(left[i] * right[n - i] for i in range(n + 1))
               for n in range(5)]
    assert tuple(product) == hilbert_series(sig, 4).coeffs


def test_hilbert_matches_certificate_dims():
    for H in (catalog.build_b_lambda(0), catalog.build_e(),
              catalog.build_enveloping_preset("heisenberg")):
        sig = signature(H)
        series = hilbert_series(sig, H.filtration.truncation)
        assert series.coeffs == H.filtration.graded_dims


def test_hilbert_divides():
    full = Signature(((1, 2), (2, 1)))
    assert hilbert_divides(Signature(((1, 1), (2, 1))), full) == Signature(((1, 1),))
    assert hilbert_divides(full, full) == Signature(())
    assert hilbert_divides(Signature(((1, 3),)), full) is None


def test_graded_coproduct_leading():
    H = catalog.build_b_lambda(1)
    pres = H.presentation
    X, Y, Z = pres.gen("X"), pres.gen("Y"), pres.gen("Z")
    one = pres.one()
    assert graded_coproduct_leading(H, "Z") \
        == tp(one, Z) + tp(X, Y) + tp(Z, one)
    assert graded_coproduct_leading(H, "X") == tp(one, X) + tp(X, one)
    E = catalog.build_e()
    ep = E.presentation
    eX, eY, eZ, eW = (ep.gen(g) for g in ("X", "Y", "Z", "W"))
    eone = ep.one()
    assert graded_coproduct_leading(E, "W") \
        == (tp(eone, eW) + tp(eW, eone) + tp(eZ, eX) - tp(eX, eZ)
            + tp(eX, eX * eY) + tp(eX * eY, eX))


def _leading_part(H, x):
    """Weight-homogeneous top part of the coproduct of a homogeneous element."""
    pres = H.presentation
    w = x.weight
    t = H.coproduct(x)
    mw = pres.monomial_weight
    from hopfforge.tensor import TensorElement
    return TensorElement(pres, 2, {k: c for k, c in t.terms.items()
                                   if mw(k[0]) + mw(k[1]) == w})


def test_leading_coproduct_is_coassociative_on_generators():
    for H in (catalog.build_b_lambda(1), catalog.build_e()):
        pres = H.presentation
        mw = pres.monomial_weight
        for g in pres.names:
            t = graded_coproduct_leading(H, g)
            left = t.apply_to_leg(1, lambda e: _leading_part(H, e))
            right = t.apply_to_leg(2, lambda e: _leading_part(H, e))
            assert left == right
            # and the total weight of every term equals the generator weight
            w = pres.weights[pres.index(g)]
            assert all(sum(mw(m) for m in key) == w for key in t.terms)


def test_default_truncation():
    assert default_truncation(catalog.build_b_lambda(1)) == 6
    assert default_truncation(catalog.build_e()) == 6


def test_power_series_str():
    assert str(PowerSeries(4, (1, 2, 4, 6, 9))) == "1 + 2*t + 4*t^2 + 6*t^3 + 9*t^4"


def test_kernel_dimensions_against_independent_route():
    # recompute ker of the n-fold reduced coproduct by chaining leg maps
    # on tensors (a different code path from the memoized iterates used by
    # the certifier) and compare with the certified monomial counts
    from hopfforge import linalg
    from hopfforge.tensor import TensorElement
    H = catalog.build_b_lambda(1)
    pres = H.presentation
    monos = pres.monomials_up_to(4, include_identity=False)
    for n in range(1, 5):
        rows = {}
        for col, m in enumerate(monos):
            t = H.reduced_coproduct(pres.monomial(m))
            for _ in range(n - 1):
                t = t.apply_to_leg(1, H.reduced_coproduct)
            for key, c in t.terms.items():
                rows.setdefault(key, {})[col] = c
        kernel_dim = len(monos) - linalg.rank(list(rows.values()), len(monos))
        expected = len(pres.monomials_up_to(min(n, 4), include_identity=False))
        assert kernel_dim == expected


def test_certify_report_mentions_truncation():
    H = catalog.build_b_lambda(2)
    report = certify(H, 6)
    assert report.passed
    assert any("order 6" in c.details for c in report.checks if c.name == "filtration")
