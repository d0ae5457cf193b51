import dataclasses

import pytest
from hypothesis import given, settings, strategies as st

from sandpile_srg._arith import prime_divisors, valuation
from sandpile_srg.errors import (
    ConferenceGraph,
    E0OutOfRange,
    HypothesisViolation,
    MuDivisibilityContradiction,
)
from sandpile_srg.formats import parse_parameter_table
from sandpile_srg.graphs import kneser, laplacian, petersen, rook, schlafli, srg_parameters
from sandpile_srg.groups import AbelianGroup, critical_group, laplacian_local_divisors
from sandpile_srg.linalg import PrimeLocalDivisors
from sandpile_srg.predict import (
    Affine,
    ConstraintsOnly,
    Exact,
    NotApplicable,
    RankParametrized,
    consistency_check,
    corollary1_case,
    e_list,
    eigen_multiplicity_bound,
    multiplicity_bound_violations,
    nonexistence_28_report,
    predict_all,
    predict_prime,
    predict_theorem1,
    predict_theorem3,
    predict_theorem4,
    prime_context,
)
from sandpile_srg.srg import SrgParams, critical_group_order, laplacian_spectrum

from conftest import chang_complement, data_text, integral_srgs

P = SrgParams
APPENDIX = [SrgParams(*r.params) for r in parse_parameter_table(data_text("appendix.txt"))]


def G(spec):
    return AbelianGroup(spec)


# context normalisation

def test_prime_context_examples():
    c = prime_context(P(190, 84, 33, 40), 2)
    assert (c.a, c.b, c.gamma) == (0, 4, 1)
    assert (c.r, c.f, c.s, c.g) == (95, 56, 80, 133)
    assert c.swapped

    c = prime_context(P(28, 9, 0, 4), 7)
    assert (c.a, c.b, c.gamma, c.r, c.s) == (0, 1, 1, 8, 14)

    c = prime_context(P(25, 12, 5, 6), 5)
    assert (c.a, c.b, c.gamma, c.r, c.s) == (1, 1, 2, 10, 15)

    with pytest.raises(ConferenceGraph):
        prime_context(P(13, 6, 2, 3), 13)


# structure theorems

def test_single_valuation_examples():
    assert predict_theorem1(prime_context(P(190, 84, 33, 40), 2)).group == G({2: [0, 0, 1, 132]})
    conway = P(99, 14, 1, 2)
    assert predict_theorem1(prime_context(conway, 11)).group == G({11: [53]})
    assert predict_theorem1(prime_context(conway, 2)).group == G({2: [44]})
    assert predict_theorem1(prime_context(conway, 3)).group == G({3: [0, 43]})
    assert predict_theorem1(prime_context(P(28, 9, 0, 4), 7)).group == G({7: [5]})
    with pytest.raises(HypothesisViolation):
        predict_theorem1(prime_context(P(25, 12, 5, 6), 5))


def test_corollary_examples():
    cor = corollary1_case(prime_context(P(28, 9, 0, 4), 7))
    assert (cor.case, cor.e0) == (3, 22)
    cor = corollary1_case(prime_context(P(99, 14, 1, 2), 11))
    assert (cor.case, cor.e0, cor.group) == (3, 45, G({11: [53]}))
    cor = corollary1_case(prime_context(P(190, 84, 33, 40), 2))
    assert cor.case == 2 and cor.e0 == 56
    with pytest.raises(HypothesisViolation):
        corollary1_case(prime_context(P(36, 14, 4, 6), 2))


def test_corollary_mu_contradiction():
    ctx = prime_context(P(28, 9, 0, 4), 7)          # case 3 needs 7 not dividing mu
    # graft on a valid parameter set whose mu is a multiple of 7
    with_mu7 = next(p for p in APPENDIX if p.mu % 7 == 0)
    with pytest.raises(MuDivisibilityContradiction):
        corollary1_case(dataclasses.replace(ctx, params=with_mu7))


def test_two_level_examples():
    ctx = prime_context(P(25, 12, 5, 6), 5)
    assert predict_theorem3(ctx, 9).group == G({5: [8, 7]})
    assert predict_theorem3(ctx, 12).group == G({5: [2, 10]})
    sym = predict_theorem3(ctx)
    assert isinstance(sym, RankParametrized) and sym.e0_range == (2, 13)
    assert sym.render() == "(Z/5)^{26-2e0} + (Z/25)^{e0-2}"
    with pytest.raises(E0OutOfRange):
        predict_theorem3(ctx, 1)
    ctx = prime_context(P(88, 27, 6, 9), 3)
    assert predict_theorem3(ctx).render() == "(Z/3)^{87-2e0} + (Z/9)^{e0}"
    assert predict_theorem3(ctx, 40).group == G({3: [7, 40]})


def test_two_case_family_examples():
    moore = predict_theorem4(prime_context(P(3250, 57, 0, 1), 5))
    a, b = moore.cases
    assert a.render() == "(Z/5)^{1520-e0} + (Z/25)^{1732-e0} + (Z/125)^{e0-3}"
    assert b.render() == "(Z/5)^{1521-e0} + (Z/25)^{1730-e0} + (Z/125)^{e0-2}"

    schl = predict_theorem4(prime_context(P(27, 16, 10, 8), 2))
    assert len(schl.cases) == 1
    assert schl.cases[0].at(6) == G({2: [14, 0, 6]})

    ctx = prime_context(P(28, 15, 6, 10), 2)
    assert (ctx.a, ctx.r, ctx.f, ctx.b, ctx.s, ctx.g, ctx.gamma) == (1, 14, 20, 2, 20, 7, 2)
    at7 = dict(predict_theorem4(ctx, 7).candidates(7))
    assert at7["B"] == G({2: [14, 0, 6]})
    assert at7["A"] == G({2: [13, 2, 5]})
    at8 = dict(predict_theorem4(ctx, 8).candidates(8))
    assert at8["A"] == G({2: [12, 1, 6]})
    assert "B" not in at8 or at8["B"] != at8["A"]
    with pytest.raises(E0OutOfRange):
        predict_theorem4(ctx, 30)
    with pytest.raises(HypothesisViolation):
        predict_theorem4(prime_context(P(25, 12, 5, 6), 5))


def test_affine_rendering():
    assert str(Affine(1520, -1)) == "1520-e0"
    assert str(Affine(-3, 1)) == "e0-3"
    assert str(Affine(87, -2)) == "87-2e0"
    assert str(Affine(0, 1)) == "e0"
    assert str(Affine(5)) == "5"
    assert str(Affine(2, 1)) == "e0+2"


# eigenvalue bounds

def test_eigen_bound_examples():
    e5 = PrimeLocalDivisors(5, (6, 3), 1)
    assert eigen_multiplicity_bound(e5, 1, True).bound == 9
    e5_rank = PrimeLocalDivisors(5, (6, 3), 1)
    assert eigen_multiplicity_bound(e5_rank, 0, True).bound == 6
    rook2 = PrimeLocalDivisors(2, (6, 0, 0, 5, 0, 4), 1)
    assert eigen_multiplicity_bound(rook2, 3, False).bound == 10
    assert multiplicity_bound_violations(rook2, 2, 6) == []
    assert multiplicity_bound_violations(PrimeLocalDivisors(2, (1, 1), 1), 0, 5)


# dispatch

def test_predict_all_examples():
    rep = predict_all(P(99, 14, 1, 2))
    assert all(isinstance(pred, Exact) for _, pred in rep.entries)
    assert rep.exact_group() == G({2: [44], 3: [0, 43], 11: [53]})
    assert rep.exact_group().order() == rep.order

    rep = predict_all(P(88, 27, 6, 9))
    kinds = {p: type(pred) for p, pred in rep.entries}
    assert kinds == {2: Exact, 3: RankParametrized, 11: Exact}
    assert rep.exact_group() is None

    rep = predict_all(P(81, 40, 13, 26))
    assert isinstance(rep.prediction(3), ConstraintsOnly)
    assert rep.prediction(3).cap == 4

    with pytest.raises(ConferenceGraph):
        predict_all(P(5, 2, 0, 1))

    assert isinstance(predict_prime(P(10, 3, 0, 1), 3), NotApplicable)


def test_prediction_json_shape():
    data = predict_all(P(28, 15, 6, 10)).to_json()
    assert data["order"] == str(critical_group_order(laplacian_spectrum(P(28, 15, 6, 10)), 28))
    by_p = {d["p"]: d for d in data["predictions"]}
    assert by_p[2]["variant"] == "RankParametrized"
    assert [c["label"] for c in by_p[2]["cases"]] == ["A", "B"]
    assert by_p[5]["group"] == {"5": [7]}


# consistency checks

def _computed(Gr, p):
    L = laplacian(Gr)
    K = critical_group(L)
    return K, laplacian_local_divisors(L, p, 8).p_rank


def test_consistency_examples():
    K, e0 = _computed(schlafli(), 2)
    assert consistency_check(predict_prime(P(27, 16, 10, 8), 2), K, e0).status == "Match"

    K, e0 = _computed(chang_complement(), 2)
    assert e0 == 8
    v = consistency_check(predict_prime(P(28, 15, 6, 10), 2), K, e0)
    assert (v.status, v.case) == ("MatchWithCase", "A")

    K, e0 = _computed(kneser(8, 2), 2)
    assert e0 == 7
    v = consistency_check(predict_prime(P(28, 15, 6, 10), 2), K, e0)
    assert (v.status, v.case) == ("MatchWithCase", "B")

    K, e0 = _computed(petersen(), 2)
    perturbed = K + G({2: [1]})
    v = consistency_check(predict_prime(P(10, 3, 0, 1), 2), perturbed, e0)
    assert v.status == "Mismatch" and not v.ok
    v = consistency_check(predict_prime(P(10, 3, 0, 1), 2), K, e0 + 1)
    assert v.status == "Mismatch"

    K, e0 = _computed(rook(4), 2)
    pred = predict_prime(P(16, 6, 2, 2), 2)
    assert isinstance(pred, ConstraintsOnly)
    assert consistency_check(pred, K, e0).status == "Match"
    assert consistency_check(pred, K + G({2: [1]}), e0).status == "Mismatch"

    assert consistency_check(NotApplicable(7, "x"), K, 16).status == "Match"
    assert consistency_check(NotApplicable(2, "x"), K, 6).status == "Mismatch"


# the srg(28,9,0,4) argument

def test_nonexistence_report():
    rep = nonexistence_28_report()
    assert (rep.p, rep.corollary_case, rep.rank, rep.kernel_dim) == (7, 3, 22, 6)
    assert rep.independent_vectors == 7 and rep.contradiction
    assert rep.absolute_bound == 27 and not rep.absolute_bound_ok
    assert rep.lambda_zero_disjoint
    assert (rep.neighbourhood_size, rep.remainder_size, rep.remainder_degree) == (8, 10, 1)
    assert rep.disjoint_edges == 6 and rep.pair_entry == 2
    assert rep.to_json()["params"] == [28, 9, 0, 4]


# invariants over the whole appendix table

def _orders_at(pred):
    """(e0, group) pairs at both ends of every case range."""
    out = []
    for case in pred.cases:
        for e0 in sorted(set(case.e0_range)):
            out.append((e0, case.at(e0)))
    return out


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(APPENDIX), st.data())
def test_prediction_invariants(params, data):
    spec = laplacian_spectrum(params)
    p = data.draw(st.sampled_from(prime_divisors(spec.r * spec.s)))
    ctx = prime_context(params, p)
    assert ctx.a <= ctx.b
    assert valuation(ctx.r, p) == ctx.a and valuation(ctx.s, p) == ctx.b
    pred = predict_prime(params, p)
    expected = ctx.order_exponent
    if isinstance(pred, Exact):
        groups = [(pred.e0, pred.group)]
        assert pred.e0 in (ctx.f, ctx.f + 1)
        assert (pred.e0 == ctx.f + 1) == (ctx.gamma == ctx.b)
        assert pred.case == (1 if ctx.gamma == 0 else 3 if ctx.gamma == ctx.b else 2)
    elif isinstance(pred, RankParametrized):
        groups = _orders_at(pred)
        lo, hi = pred.e0_range
        assert lo <= hi
        if pred.theorem == "theorem3":
            assert pred.cases[0].at(lo).multiplicities(p)[1:] == ()
            if (ctx.f + ctx.g + ctx.gamma) % 2 == 0:
                assert pred.cases[0].at(hi).multiplicities(p)[:1] in ((0,), ())
        if pred.theorem == "theorem4" and ctx.gamma == 0:
            assert len(pred.cases) == 1
            case = pred.cases[0]
            for e0 in range(case.e0_range[0], case.e0_range[1] + 1):
                ms = case.at(e0).multiplicities(p) + (0, 0, 0)
                assert ms[2] == e0
    else:
        assert isinstance(pred, (ConstraintsOnly, NotApplicable))
        groups = []
    for e0, grp in groups:
        assert grp.order() == p ** expected
        assert len(grp.multiplicities(p)) <= ctx.a + ctx.b


# predictor against computation on every built-in graph with integral spectrum

INTEGRAL = integral_srgs()


@pytest.mark.parametrize("label, Gr", INTEGRAL, ids=[l for l, _ in INTEGRAL])
def test_predictions_match_computation(label, Gr):
    params = srg_parameters(Gr)
    L = laplacian(Gr)
    K = critical_group(L)
    for p, pred in predict_all(params).entries:
        e = laplacian_local_divisors(L, p, ctx_cap(params, p))
        verdict = consistency_check(pred, K, e.p_rank)
        assert verdict.status in ("Match", "MatchWithCase"), (p, str(verdict))
        assert e_list(K, p, e.p_rank) == tuple(e.e[:len(e_list(K, p, e.p_rank))])


@pytest.mark.parametrize("label, Gr", INTEGRAL, ids=[l for l, _ in INTEGRAL])
def test_multiplicity_bounds_on_builtins(label, Gr):
    params = srg_parameters(Gr)
    spec = laplacian_spectrum(params)
    L = laplacian(Gr)
    for p in prime_divisors(spec.r * spec.s * params.v):
        e = laplacian_local_divisors(L, p, ctx_cap(params, p))
        for eta, m in ((spec.r, spec.f), (spec.s, spec.g)):
            i = valuation(eta, p)
            assert multiplicity_bound_violations(e, i, m) == [], (p, eta, m)
            for j in range(i + 1):
                assert m <= eigen_multiplicity_bound(e, j, False).bound


def ctx_cap(params, p):
    return max(valuation(params.mu * params.v, p), 1)
