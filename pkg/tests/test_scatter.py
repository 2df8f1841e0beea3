"""Scatteredness verdicts: brute force vs criteria, family predicates, bounds."""

import math
import random

import pytest

from scatterlab.errors import (
    NormOne,
    NotNormalized,
    OutOfTheoremScope,
    PreconditionViolated,
    ScanCapExceeded,
    ZeroInput,
)
from scatterlab.field import make_field
from scatterlab.linpoly import Binomial, LinearizedPoly
from scatterlab.scatter import (
    cmpz6_criterion,
    cmpz8_criterion,
    classify_binomial,
    is_scattered_bruteforce,
    is_scattered_curve_criterion,
    lang_weil_lower_bound,
    linear_set_size,
    lp_criterion,
    max_linear_set_size,
    scan_binomials,
)


def monomial(ctx, s):
    coeffs = [0] * ctx.n
    coeffs[s % ctx.n] = 1
    return LinearizedPoly(ctx, coeffs)


def family_poly(ctx, s, j, delta):
    # delta x^{q^s} + x^{q^j}
    coeffs = [0] * ctx.n
    coeffs[s % ctx.n] = delta
    coeffs[j % ctx.n] = 1
    return LinearizedPoly(ctx, coeffs)


# -- brute force oracle ---------------------------------------------------------


def test_identity_map_not_scattered():
    ctx = make_field(2, 1, 3)
    f = monomial(ctx, 0)
    assert linear_set_size(f) == 1
    v = is_scattered_bruteforce(f)
    assert not v.scattered and v.linear_set_size == 1
    assert v.witness is not None


def test_monomial_baseline_exhaustive():
    # x^{q^s} is scattered exactly when gcd(s, n) = 1
    for args in [(2, 1, 4), (2, 1, 6), (3, 1, 4), (2, 2, 3), (5, 1, 3)]:
        ctx = make_field(*args)
        for s in range(1, ctx.n):
            v = is_scattered_bruteforce(monomial(ctx, s))
            assert v.scattered == (math.gcd(s, ctx.n) == 1), (args, s)


def test_bruteforce_verdict_invariants():
    ctx = make_field(3, 1, 4)
    rng = random.Random(1)
    mx = max_linear_set_size(ctx)
    for _ in range(60):
        f = LinearizedPoly(ctx, [rng.randrange(ctx.size) for _ in range(4)])
        if f.is_zero():
            continue
        v = is_scattered_bruteforce(f)
        assert v.max_size == mx == (ctx.size - 1) // (ctx.q - 1)
        assert v.scattered == (v.linear_set_size == mx)
        assert (v.witness is None) == v.scattered
        if v.witness:
            x, y = v.witness
            assert ctx.mul(f.evaluate(x), y) == ctx.mul(f.evaluate(y), x)
            assert not ctx.in_subfield(ctx.div(x, y), 1)


def test_fibers_are_coset_unions():
    # the fiber of every f(x)/x value has size divisible by q - 1
    for args in [(3, 1, 2), (2, 2, 2), (2, 1, 4)]:
        ctx = make_field(*args)
        rng = random.Random(2)
        for _ in range(40):
            f = LinearizedPoly(ctx, [rng.randrange(ctx.size) for _ in range(ctx.n)])
            fibers: dict[int, int] = {}
            for x in range(1, ctx.size):
                v = ctx.div(f.evaluate(x), x)
                fibers[v] = fibers.get(v, 0) + 1
            assert all(c % (ctx.q - 1) == 0 for c in fibers.values())


def test_scan_cap_respected():
    ctx = make_field(2, 1, 6, scan_cap=10)
    with pytest.raises(ScanCapExceeded):
        linear_set_size(monomial(ctx, 1))
    with pytest.raises(ScanCapExceeded):
        is_scattered_bruteforce(monomial(ctx, 1))


# -- curve criterion -------------------------------------------------------------


@pytest.mark.parametrize("args", [(2, 1, 4), (2, 1, 5), (3, 1, 4), (2, 2, 3)])
def test_curve_criterion_matches_bruteforce_exhaustively(args):
    ctx = make_field(*args)
    n = ctx.n
    for I in range(1, n):
        for J in range(I + 1, n):
            if math.gcd(I, J, n) != 1:
                continue
            for alpha in range(1, ctx.size):
                b = Binomial(ctx, I, J, alpha)
                bf = is_scattered_bruteforce(b)
                cv = is_scattered_curve_criterion(b)
                assert bf.scattered == cv.scattered, (args, I, J, alpha)
                if cv.witness:
                    x, y = cv.witness
                    assert ctx.mul(b.evaluate(x), y) == ctx.mul(b.evaluate(y), x)
                    assert not ctx.in_subfield(ctx.div(x, y), 1)


def test_curve_criterion_rejects_bad_shapes():
    ctx = make_field(2, 1, 6)
    with pytest.raises(NotNormalized):
        is_scattered_curve_criterion(Binomial(ctx, 3, 1, 5))
    with pytest.raises(NotNormalized):
        is_scattered_curve_criterion(Binomial(ctx, 2, 4, 5))  # gcd(2,4,6)=2


def test_curve_scan_helper_consistent():
    ctx = make_field(3, 1, 4)
    seen = dict(scan_binomials(ctx, 1, 3))
    assert len(seen) == ctx.size - 1
    for alpha in (1, 5, 17, 80):
        assert seen[alpha].scattered == is_scattered_bruteforce(Binomial(ctx, 1, 3, alpha)).scattered


# -- I+J=n family ---------------------------------------------------------------


def test_lp_criterion_matches_bruteforce():
    for args in [(2, 1, 4), (3, 1, 4), (2, 1, 5)]:
        ctx = make_field(*args)
        n = ctx.n
        for s in range(1, n):
            if s == (n - s) % n:
                continue
            for delta in range(1, ctx.size):
                f = family_poly(ctx, s, n - s, delta)
                truth = is_scattered_bruteforce(f).scattered
                out = lp_criterion(ctx, s, delta)
                if math.gcd(s, n) == 1:
                    assert out.predicted_scattered == truth, (args, s, delta)
                else:
                    assert not out.predicted_scattered
                assert out.clause == ("LP-i" if out.predicted_scattered else "none")


def test_lp_norm_one_gives_witness_via_curve():
    ctx = make_field(3, 1, 5)
    # delta with N(delta) = 1: not scattered, witness must exist
    delta = ctx.pow_(ctx.generator, ctx.q - 1)  # norm = g^((q-1)(q^5-1)/(q-1)) = 1
    assert ctx.norm(delta) == 1
    assert not lp_criterion(ctx, 1, delta).predicted_scattered
    b = Binomial(ctx, 1, 4, ctx.inv(delta))  # delta x^q + x^{q^4}, rescaled
    v = is_scattered_curve_criterion(b)
    assert not v.scattered and v.witness is not None


def test_lp_zero_and_range():
    ctx = make_field(2, 1, 4)
    assert not lp_criterion(ctx, 1, 0).predicted_scattered
    with pytest.raises(PreconditionViolated):
        lp_criterion(ctx, 0, 3)
    with pytest.raises(PreconditionViolated):
        lp_criterion(ctx, 4, 3)


def test_lp_generator_delta_scattered():
    for args in [(3, 1, 4), (2, 2, 4)]:
        ctx = make_field(*args)
        out = lp_criterion(ctx, 1, ctx.generator)
        assert out.predicted_scattered  # generator norm generates F_q*, q > 2


# -- half-spread n=6 -------------------------------------------------------------


@pytest.mark.parametrize("pe", [(2, 1), (3, 1)])
def test_cmpz6_matches_bruteforce_exhaustively(pe):
    ctx = make_field(*pe, 6)
    scattered = 0
    for delta in range(1, ctx.size):
        truth = is_scattered_bruteforce(family_poly(ctx, 1, 4, delta)).scattered
        try:
            pred = cmpz6_criterion(ctx, delta).predicted_scattered
        except NormOne:
            pred = False
        assert pred == truth, (pe, delta)
        scattered += truth
    if ctx.q == 2:
        assert scattered == 0
    else:
        assert scattered > 0  # existence for q > 2


def test_cmpz6_q4_sampled_against_bruteforce():
    ctx = make_field(2, 2, 6)
    rng = random.Random(10)
    deltas = [rng.randrange(1, ctx.size) for _ in range(120)]
    for delta in deltas:
        truth = is_scattered_bruteforce(family_poly(ctx, 1, 4, delta)).scattered
        try:
            pred = cmpz6_criterion(ctx, delta).predicted_scattered
        except NormOne:
            pred = False
        assert pred == truth, delta


def test_cmpz6_errors():
    ctx = make_field(3, 1, 6)
    with pytest.raises(ZeroInput):
        cmpz6_criterion(ctx, 0)
    with pytest.raises(NormOne):
        cmpz6_criterion(ctx, 1)  # 1^{1+q^3} = 1
    with pytest.raises(PreconditionViolated):
        cmpz6_criterion(make_field(3, 1, 4), 2)


def test_cmpz6_norm_one_kernel_explains_exclusion():
    ctx = make_field(3, 1, 6)
    # delta^{1+q^3} = 1 forces kernel dimension 3 = n/2
    step = (ctx.size - 1) // (ctx.q**3 + 1)
    delta = ctx.pow_(ctx.generator, step * 2)
    assert ctx.mul(delta, ctx.frobenius(delta, 3)) == 1
    assert family_poly(ctx, 1, 4, delta).kernel_dim() == 3


# -- half-spread n=8 -------------------------------------------------------------


def test_cmpz8_even_q_never_scattered():
    ctx = make_field(2, 1, 8)
    for delta in range(1, 200):
        out = cmpz8_criterion(ctx, delta)
        assert not out.predicted_scattered and out.clause == "none"


def test_cmpz8_odd_q_condition_and_spot_bruteforce():
    ctx = make_field(3, 1, 8)
    minus1 = ctx.neg(1)
    hits = []
    for delta in range(1, ctx.size):
        out = cmpz8_criterion(ctx, delta)
        assert out.predicted_scattered == (ctx.pow_(delta, 1 + 81) == minus1)
        if out.predicted_scattered:
            assert out.clause == "CMPZ8-iii"
            hits.append(delta)
    assert len(hits) == 82  # solutions of delta^{82} = -1 in a cyclic group
    rng = random.Random(11)
    for delta in rng.sample(hits, 4):
        assert is_scattered_bruteforce(family_poly(ctx, 1, 5, delta)).scattered
    for delta in [2, 5, 100, 700]:
        if ctx.pow_(delta, 82) != minus1:
            assert not is_scattered_bruteforce(family_poly(ctx, 1, 5, delta)).scattered


def test_cmpz8_wrong_n_rejected():
    with pytest.raises(PreconditionViolated):
        cmpz8_criterion(make_field(3, 1, 6), 2)


# -- classification ---------------------------------------------------------------


def test_classify_lp_clause():
    ctx = make_field(3, 1, 5)
    g = ctx.generator
    out = classify_binomial(Binomial(ctx, 1, 4, g))
    assert out.predicted_scattered and out.clause == "LP-i"
    norm_one = ctx.pow_(g, (ctx.size - 1) // (ctx.q - 1))
    assert ctx.norm(norm_one) == 1
    out2 = classify_binomial(Binomial(ctx, 1, 4, norm_one))
    assert not out2.predicted_scattered and out2.clause == "none"


def test_classify_no_clause_shape():
    ctx = make_field(3, 1, 5)
    for alpha in (1, 2, 7, 50):
        out = classify_binomial(Binomial(ctx, 1, 2, alpha))
        assert not out.predicted_scattered and out.clause == "none"


@pytest.mark.parametrize("IJ", [(1, 4), (2, 5)])
def test_classify_half_spread_n6_matches_bruteforce(IJ):
    # both orientations of the n=6 half-spread shape, every coefficient
    ctx = make_field(3, 1, 6)
    I, J = IJ
    for alpha in range(1, ctx.size):
        b = Binomial(ctx, I, J, alpha)
        assert classify_binomial(b).predicted_scattered == is_scattered_bruteforce(b).scattered


def test_classify_n8_clause():
    ctx = make_field(3, 1, 8)
    minus1 = ctx.neg(1)
    rng = random.Random(12)
    for _ in range(40):
        alpha = rng.randrange(1, ctx.size)
        out = classify_binomial(Binomial(ctx, 1, 5, alpha))
        assert out.predicted_scattered == (ctx.pow_(alpha, 82) == minus1)
    # gcd(I, 8) != 1 shape never fires a clause
    for alpha in (1, 2, 77):
        out = classify_binomial(Binomial(ctx, 2, 6, alpha))
        assert not out.predicted_scattered and out.clause == "none"


def test_classify_out_of_scope():
    ctx = make_field(2, 1, 9)
    with pytest.raises(OutOfTheoremScope):
        classify_binomial(Binomial(ctx, 1, 4, 3))  # gcd(J-I, 9) = 3
    # gcd(J-I, n) = 1 keeps n = 9 in scope
    out = classify_binomial(Binomial(ctx, 1, 5, 3))
    assert out.clause == "none"


def test_classify_flags_below_threshold():
    ctx = make_field(3, 1, 5)
    out = classify_binomial(Binomial(ctx, 1, 4, ctx.generator))
    assert out.details.get("below_threshold") is True


# -- adjoint invariance ------------------------------------------------------------


def test_scatteredness_invariant_under_adjoint():
    rng = random.Random(13)
    for args in [(2, 1, 4), (3, 1, 4), (2, 1, 5), (2, 2, 3)]:
        ctx = make_field(*args)
        n = ctx.n
        for _ in range(40):
            I, J = sorted(rng.sample(range(1, n), 2))
            b = Binomial(ctx, I, J, rng.randrange(1, ctx.size))
            assert is_scattered_bruteforce(b).scattered == \
                is_scattered_bruteforce(b.adjoint()).scattered


# -- point-count lower bound --------------------------------------------------------


def test_lang_weil_degree_one():
    ok, lower = lang_weil_lower_bound(2, 1, 101)
    assert ok == (101 > 2 * 3 * 1)
    assert lower == 101**2 - 5 * 101  # (d-1)(d-2) = 0, d^{13/3} = 1


def test_lang_weil_threshold():
    assert lang_weil_lower_bound(2, 3, 55)[0] is False   # 55 > 54 fails
    assert lang_weil_lower_bound(2, 3, 55 + 1)[0] is True


def test_lang_weil_conservative_rounding():
    # exact: q^2 - 2*1*q^{3/2} - 5*4^{13/3} q; rounded-up factors only shrink it
    q, d = 10**6, 3
    ok, lower = lang_weil_lower_bound(2, d, q)
    assert ok
    exact = q**2 - (d - 1) * (d - 2) * q**1.5 - 5 * d ** (13 / 3) * q
    assert lower <= exact
    assert lower > 0


def test_lang_weil_rejects_bad_input():
    with pytest.raises(PreconditionViolated):
        lang_weil_lower_bound(0, 3, 5)
    with pytest.raises(PreconditionViolated):
        lang_weil_lower_bound(2, 0, 5)


def test_lang_weil_theorem_instantiation():
    # the n <= 8 classification rests on surfaces of degree at most 8 * 2^8;
    # its stated q-threshold must satisfy the dimension-2 hypothesis
    q0 = 162019556021
    degree = 8 * 2**8
    ok, _ = lang_weil_lower_bound(2, degree, q0)
    assert ok
    assert not lang_weil_lower_bound(2, degree, 2 * 3 * degree**2)[0]
