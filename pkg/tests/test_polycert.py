import json

import pytest

from ti_trees.characterize import check_tree
from ti_trees.polycert import (
    CertifierInapplicable,
    EmptyInterval,
    HFamilySpec,
    LinPoly,
    QuadPoly,
    QuotientLadder,
    ResidueEnumeration,
    SFamilySpec,
    certificate_from_dict,
    certificate_to_dict,
    certify_family,
    certify_h_family,
    certify_no_divisor,
    certify_starlike_family,
    format_family_line,
    lin_mul,
    lower_g_approx,
    lower_sqrt_approx,
    parse_family_file,
    parse_family_line,
    shift_family,
    upper_g_approx,
    upper_sqrt_approx,
)


def test_poly_arithmetic():
    assert lin_mul(LinPoly(5, 12), LinPoly(5, 12)) == QuadPoly(25, 120, 144)
    assert QuadPoly(33, 120, 144)(0) == 33
    assert LinPoly(4, 12) * (-1) == LinPoly(-4, -12)
    assert (LinPoly(3, 2) + LinPoly(1, 1))(5) == 4 + 3 * 5
    assert (QuadPoly(1, 2, 3) - QuadPoly(1, 1, 1)) == QuadPoly(0, 1, 2)
    assert -LinPoly(2, -3) == LinPoly(-2, 3)
    assert str(QuadPoly(-54, -252, -288)) == "-288t^2-252t-54"


def test_lower_sqrt_examples():
    assert lower_sqrt_approx(QuadPoly(33, 120, 144)) == LinPoly(5, 12)
    # 3^2 = 9 is not strictly below 9, so the free term drops to 1
    assert lower_sqrt_approx(QuadPoly(9, 0, 0)) == LinPoly(1, 0)
    assert lower_sqrt_approx(QuadPoly(177, 112, 16)) == LinPoly(13, 4)
    with pytest.raises(ValueError):
        lower_sqrt_approx(QuadPoly(-1, 0, 0))
    with pytest.raises(CertifierInapplicable):
        lower_sqrt_approx(QuadPoly(0, 8, 4))


def test_upper_sqrt_examples():
    assert upper_sqrt_approx(QuadPoly(177, 1032, 1296)) == LinPoly(15, 36)
    # equality at the free term bumps 3 to 5
    assert upper_sqrt_approx(QuadPoly(9, 0, 0)) == LinPoly(5, 2)
    assert upper_sqrt_approx(QuadPoly(145, 148, 36)) == LinPoly(13, 6)


def test_sqrt_sandwich_property():
    polys = [
        QuadPoly(33, 120, 144),
        QuadPoly(57, 120, 144),
        QuadPoly(73, 216, 144),
        QuadPoly(41, 20, 4),
        QuadPoly(193, 792, 0),
        QuadPoly(7, 0, 0),
    ]
    for a in polys:
        lo = lower_sqrt_approx(a)
        hi = upper_sqrt_approx(a)
        assert lo.c0 % 2 == 1 and lo.c1 % 2 == 0 and lo.c0 > 0 and lo.c1 >= 0
        assert hi.c0 % 2 == 1 and hi.c1 % 2 == 0 and hi.c0 > 0 and hi.c1 >= 2
        for t in range(101):
            assert lo(t) ** 2 < a(t) < hi(t) ** 2, (a, t)


def test_g_approx_examples():
    assert lower_g_approx(QuadPoly(4, 12), LinPoly(7, 12)) == LinPoly(7, 12)
    assert upper_g_approx(QuadPoly(28, 48), LinPoly(17, 36)) == LinPoly(15, 36)
    # perfect-square discriminant with unit free term cannot be bounded
    with pytest.raises(CertifierInapplicable):
        lower_g_approx(QuadPoly(0, 0, 0), LinPoly(1, 2))


def test_g_approx_contract_violations():
    with pytest.raises(ValueError):
        lower_g_approx(QuadPoly(0, 0, 0), LinPoly(2, 2))  # even free term
    with pytest.raises(ValueError):
        upper_g_approx(QuadPoly(0, 0, 0), LinPoly(3, 3))  # odd slope
    with pytest.raises(CertifierInapplicable):
        upper_g_approx(QuadPoly(100, 0, 0), LinPoly(3, 0))  # negative discriminant


X1 = SFamilySpec((LinPoly(7, 12), LinPoly(6, 12), LinPoly(3, 12), LinPoly(1, 0)))
H1 = HFamilySpec(LinPoly(1, 1), (LinPoly(6, 2), LinPoly(5, 2)), (LinPoly(2, 1), LinPoly(1, 0)))
REMARK = SFamilySpec((LinPoly(7, 33), LinPoly(6, 33), LinPoly(3, 0), LinPoly(1, 0)))


def test_certify_no_divisor_empty_interval_case():
    order, one, zero = LinPoly(18, 36), LinPoly(1, 0), LinPoly(0, 0)
    a1, a4 = LinPoly(7, 12), LinPoly(1, 0)
    cert = certify_no_divisor(
        order - one - a1 - a4,
        a4 - a1,
        zero,
        zero,
        order + one - 2 * a1,
        order + one - 2 * a4,
        order - one,
        order - one,
        case="alpha(1,4)",
    )
    assert cert.fundament == QuadPoly(-54, -252, -288)
    assert cert.lower == LinPoly(13, 24)
    assert cert.upper == LinPoly(12, 24)
    assert isinstance(cert.discharge, EmptyInterval)


def test_certify_no_divisor_residue_case():
    order, one, zero = LinPoly(18, 36), LinPoly(1, 0), LinPoly(0, 0)
    a3, a4 = LinPoly(3, 12), LinPoly(1, 0)
    cert = certify_no_divisor(
        order - one - a3 - a4,
        a4 - a3,
        zero,
        zero,
        order + one - 2 * a3,
        order + one - 2 * a4,
        order - one,
        order - one,
        case="alpha(3,4)",
    )
    assert cert.fundament == QuadPoly(-26, -204, -288)
    discharge = cert.discharge
    assert isinstance(discharge, ResidueEnumeration)
    (case,) = discharge.cases
    assert case.modulus == LinPoly(16, 24)
    assert case.remainder == LinPoly(26, 12)
    assert case.threshold == 1  # only t = 0 needs a manual divisibility check
    assert case.checks[0].divides is False


def test_certify_no_divisor_ladder_case():
    order, one, zero = LinPoly(18, 36), LinPoly(1, 0), LinPoly(0, 0)
    a1, a2 = LinPoly(7, 12), LinPoly(6, 12)
    cert = certify_no_divisor(
        order - one - a1 - a2,
        a2 - a1,
        zero,
        zero,
        order + one - 2 * a1,
        order + one - 2 * a2,
        order - one,
        order - one,
        case="alpha(1,2)",
    )
    assert cert.fundament == QuadPoly(-4, -12, 0)
    assert isinstance(cert.discharge, QuotientLadder)
    assert cert.discharge.steps == ("lower-bound-exceeds-magnitude",)


def test_certify_starlike_family_x1():
    cert = certify_starlike_family(X1)
    assert len(cert.cases) == 6
    assert cert.order == LinPoly(18, 36)
    assert "even-order" in cert.attestations
    by_case = {c.case: c for c in cert.cases}
    assert isinstance(by_case["alpha(1,4)"].discharge, EmptyInterval)
    assert isinstance(by_case["alpha(2,4)"].discharge, EmptyInterval)
    assert isinstance(by_case["alpha(3,4)"].discharge, ResidueEnumeration)


def test_certify_h_family_h1():
    cert = certify_h_family(H1)
    assert len(cert.cases) == 8
    by_case = {c.case: c for c in cert.cases}
    gamma1 = by_case["gamma(1)"]
    assert gamma1.fundament == QuadPoly(-10, -4, 0)
    assert gamma1.lower == LinPoly(8, 2) and gamma1.upper == LinPoly(7, 4)
    assert isinstance(gamma1.discharge, QuotientLadder)
    beta = by_case["beta(1,2)"]
    assert isinstance(beta.discharge, EmptyInterval)
    assert beta.lower == LinPoly(15, 5) and beta.upper == LinPoly(14, 5)


def test_certify_remark_family_inapplicable():
    with pytest.raises(CertifierInapplicable) as excinfo:
        certify_starlike_family(REMARK)
    assert excinfo.value.case == "alpha(1,3)"
    assert "slope" in excinfo.value.reason


def test_certify_precondition_rejections():
    with pytest.raises(CertifierInapplicable) as excinfo:
        certify_starlike_family(
            SFamilySpec((LinPoly(5, 2), LinPoly(5, 2), LinPoly(3, 2)))
        )
    assert excinfo.value.step == "preconditions"
    # odd order polynomial
    with pytest.raises(CertifierInapplicable) as excinfo:
        certify_starlike_family(
            SFamilySpec((LinPoly(4, 2), LinPoly(2, 2), LinPoly(1, 2)))
        )
    assert excinfo.value.step == "preconditions"


def test_h_family_stated_then_shifted():
    stated = HFamilySpec(
        LinPoly(1, 2), (LinPoly(6, 4), LinPoly(5, 4)), (LinPoly(1, 2), LinPoly(2, 0))
    )
    with pytest.raises(CertifierInapplicable):
        certify_h_family(stated)
    shifted, base = shift_family(stated, 1)
    assert shifted == HFamilySpec(
        LinPoly(3, 2), (LinPoly(10, 4), LinPoly(9, 4)), (LinPoly(3, 2), LinPoly(2, 0))
    )
    assert [str(spec) for spec in base] == ["DS:1;6,5;1,2"]
    assert check_tree(base[0]).is_ti
    cert = certify_h_family(shifted)
    assert len(cert.cases) == 8


def test_shift_family_basics():
    same, base = shift_family(X1, 0)
    assert same == X1 and base == []
    shifted, base = shift_family(X1, 2)
    assert [(b.c0, b.c1) for b in shifted.branches] == [(31, 12), (30, 12), (27, 12), (1, 0)]
    assert [str(s) for s in base] == ["S:7,6,3,1", "S:19,18,15,1"]


def test_family_members_check_out():
    for t in range(6):
        assert check_tree(X1.instantiate(t)).is_ti
        assert check_tree(H1.instantiate(t)).is_ti


def test_family_line_round_trip():
    for line in ("S | 7,12 6,12 3,12 1,0", "H | 1,1 | 6,2 5,2 | 2,1 1,0"):
        assert format_family_line(parse_family_line(line)) == line
    with pytest.raises(ValueError):
        parse_family_line("Q | 1,2")
    with pytest.raises(ValueError):
        parse_family_line("H | 1,1 | 6,2 | 2,1 1,0")


def test_family_file_skips_comments(x_families, h_families):
    assert len(x_families) == 4 and len(h_families) == 7
    text = "# header\n\nS | 7,12 6,12 3,12 1,0\n"
    assert parse_family_file(text) == [X1]


def test_certificate_json_round_trip():
    cert = certify_family(X1)
    data = json.loads(json.dumps(certificate_to_dict(cert)))
    assert certificate_from_dict(data) == cert
    cert = certify_family(H1)
    data = json.loads(json.dumps(certificate_to_dict(cert)))
    assert certificate_from_dict(data) == cert


def test_structural_spec_validation():
    with pytest.raises(ValueError):
        SFamilySpec((LinPoly(1, 0), LinPoly(1, 0)))
    with pytest.raises(ValueError):
        SFamilySpec((LinPoly(0, 1), LinPoly(1, 0), LinPoly(1, 0)))
    with pytest.raises(ValueError):
        HFamilySpec(LinPoly(1, -1), (LinPoly(2, 0), LinPoly(1, 0)), (LinPoly(2, 0), LinPoly(1, 0)))
    with pytest.raises(ValueError):
        shift_family(X1, -1)
