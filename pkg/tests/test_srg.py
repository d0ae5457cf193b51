import pytest
from hypothesis import given, strategies as st

from sandpile_srg.errors import (
    ComplementDegenerate,
    ConferenceOddity,
    InvalidParameters,
    NonIntegralMultiplicity,
)
from sandpile_srg.formats import parse_parameter_table
from sandpile_srg.srg import (
    SrgParams,
    complement_params,
    critical_group_order,
    exponent_bound,
    laplacian_spectrum,
    validate_params,
)

from conftest import data_text


@pytest.mark.parametrize("params, expected", [
    ((10, 3, 0, 1), (2, 5, 5, 4)),
    ((16, 6, 2, 2), (4, 6, 8, 9)),
    ((99, 14, 1, 2), (11, 54, 18, 44)),
])
def test_spectrum_examples(params, expected):
    spec = laplacian_spectrum(SrgParams(*params))
    assert spec.integral
    assert (spec.r, spec.f, spec.s, spec.g) == expected


def test_pentagon_is_conference():
    spec = laplacian_spectrum(SrgParams(5, 2, 0, 1))
    assert not spec.integral
    assert (spec.f, spec.g) == (2, 2)


def test_bad_quadruples_rejected():
    with pytest.raises(InvalidParameters):
        SrgParams(8, 3, 0, 2)
    with pytest.raises(InvalidParameters):
        SrgParams(10, 9, 8, 1)      # complete graph


def test_nonintegral_multiplicity():
    # satisfies the edge count but f = 14/3
    with pytest.raises(NonIntegralMultiplicity):
        laplacian_spectrum(SrgParams(7, 4, 1, 4))
    rep = validate_params(7, 4, 1, 4)
    assert rep.identity_ok and not rep.multiplicities_integral and not rep.feasible


def test_conference_oddity():
    # non-square discriminant but not a conference graph
    with pytest.raises(ConferenceOddity):
        laplacian_spectrum(SrgParams(7, 3, 0, 2))


def test_validate_examples():
    rep = validate_params(28, 9, 0, 4)
    assert rep.identity_ok and rep.multiplicities_integral
    assert not rep.absolute_bound_ok and not rep.feasible
    assert any("27" in n for n in rep.notes)

    rep = validate_params(SrgParams(10, 3, 0, 1))
    assert rep.feasible and rep.identity_ok and rep.absolute_bound_ok and not rep.conference

    rep = validate_params(8, 3, 0, 2)
    assert not rep.identity_ok and not rep.feasible


@given(st.tuples(*[st.integers(-50, 200)] * 4))
def test_validate_never_raises(q):
    rep = validate_params(*q)
    assert isinstance(rep.feasible, bool)


def test_order_and_exponent():
    petersen = laplacian_spectrum(SrgParams(10, 3, 0, 1))
    assert critical_group_order(petersen, 10) == 2000
    assert exponent_bound(petersen) == 10
    rook = laplacian_spectrum(SrgParams(16, 6, 2, 2))
    assert exponent_bound(rook) == 32
    conway = laplacian_spectrum(SrgParams(99, 14, 1, 2))
    assert critical_group_order(conway, 99) == 11 ** 54 * 18 ** 44 // 99
    assert critical_group_order(conway, 99) == 11 ** 53 * 2 ** 44 * 9 ** 43


def test_complement_examples():
    assert complement_params(SrgParams(27, 10, 1, 5)) == SrgParams(27, 16, 10, 8)
    assert complement_params(SrgParams(10, 3, 0, 1)) == SrgParams(10, 6, 3, 4)
    with pytest.raises(ComplementDegenerate):
        complement_params(SrgParams(6, 4, 2, 4))        # complement is 3K2


# random feasible-looking parameter sets: pick k, lambda, mu and solve for v
@st.composite
def srg_like(draw):
    k = draw(st.integers(2, 60))
    lam = draw(st.integers(0, k - 2))
    mu = draw(st.integers(1, k))
    num = k * (k - lam - 1)
    if num % mu:
        mu = 1
    return num // mu + k + 1, k, lam, mu


@given(srg_like())
def test_spectrum_identities(q):
    try:
        params = SrgParams(*q)
        spec = laplacian_spectrum(params)
    except (InvalidParameters, NonIntegralMultiplicity, ConferenceOddity):
        return
    v, k, lam, mu = q
    if not spec.integral:
        assert spec.f == spec.g == (v - 1) // 2
        return
    assert 0 < spec.r < spec.s
    assert spec.f + spec.g == v - 1
    assert spec.r * spec.f + spec.s * spec.g == v * k
    assert spec.r + spec.s == 2 * k - lam + mu
    assert spec.r * spec.s == mu * v


@given(srg_like())
def test_complement_involution(q):
    try:
        params = SrgParams(*q)
        co = complement_params(params)
    except (InvalidParameters, ComplementDegenerate):
        return
    assert complement_params(co) == params
    try:
        spec, cospec = laplacian_spectrum(params), laplacian_spectrum(co)
    except (NonIntegralMultiplicity, ConferenceOddity):
        return
    if spec.integral:
        # complement eigenvalues are v - r, v - s with the multiplicities carried along
        v = params.v
        assert {(v - spec.r, spec.f), (v - spec.s, spec.g)} == {(cospec.r, cospec.f), (cospec.s, cospec.g)}


def test_appendix_rows_reproduce_spectrum():
    rows = parse_parameter_table(data_text("appendix.txt"))
    assert len(rows) == 394
    for row in rows:
        spec = laplacian_spectrum(SrgParams(*row.params))
        assert (spec.r, spec.f, spec.s, spec.g) == (row.r_L, row.f, row.s_L, row.g), row
