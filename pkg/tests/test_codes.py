import numpy as np
import pytest

from kasami import codes
from kasami.errors import MissingGamma, ParameterError, UnexpectedGamma
from kasami.field import build_tower


@pytest.mark.parametrize("args", [(3, 2, 1, 1), (3, 2, 0, 1), (3, 2, 0, 2), (3, 3, 1, 1)])
def test_minimal_polynomials(args):
    P, ctx = build_tower(*args)
    for e in codes.CodeSpec(P, "C2").exponents:
        f = codes.min_poly(ctx, P, e)
        coset = codes.cyclotomic_coset(-e, ctx.order, P.p**P.t)
        assert len(f) - 1 == len(coset) and f[-1] == 1
        assert codes.poly_eval(ctx, f, ctx.power_of_primitive(-e)) == 0
        assert ctx.in_subfield(np.array(f), P.t).all()


def test_min_poly_rejects_bad_t(t321):
    P, ctx = t321
    with pytest.raises(ParameterError):
        codes.min_poly(ctx, P, 4, t=2)


def test_parity_check_degree_matches_dimension():
    for args in ((3, 2, 1, 1), (3, 2, 0, 2), (3, 3, 1, 1)):
        P, ctx = build_tower(*args)
        for code in codes.CODES:
            spec = codes.CodeSpec(P, code)
            assert len(codes.parity_check_poly(ctx, spec)) - 1 == spec.dimension


@pytest.mark.parametrize("args", [(3, 2, 1, 1), (3, 2, 0, 2)])
def test_codewords_are_annihilated_and_cyclic(args):
    P, ctx = build_tower(*args)
    rng = np.random.default_rng(4)
    alphas = ctx.subfield(P.m)
    for code in codes.CODES:
        spec = codes.CodeSpec(P, code)
        h = codes.parity_check_poly(ctx, spec)
        words = {tuple(w) for w in codes.all_codewords(ctx, spec).tolist()}
        assert len(words) == P.p ** (P.t * spec.dimension)
        for _ in range(5):
            a, b = int(rng.choice(alphas)), int(rng.integers(ctx.q))
            g = int(rng.integers(ctx.q)) if spec.uses_gamma else None
            w = codes.codeword(ctx, spec, a, b, g)
            assert codes.annihilated(ctx, w, h)
            assert tuple(np.roll(w, 1).tolist()) in words


def test_gamma_argument_checks(t321):
    P, ctx = t321
    with pytest.raises(MissingGamma):
        codes.codeword(ctx, codes.CodeSpec(P, "C2"), 1, 1)
    with pytest.raises(UnexpectedGamma):
        codes.codeword(ctx, codes.CodeSpec(P, "C1"), 1, 1, 1)
    with pytest.raises(ParameterError):
        codes.CodeSpec(P, "C3")


@pytest.mark.parametrize("args", [(3, 2, 1, 1), (3, 2, 0, 1), (3, 2, 0, 2), (3, 2, 3, 1)])
def test_weight_distribution_routes_agree(args):
    P, ctx = build_tower(*args)
    for code in codes.CODES:
        spec = codes.CodeSpec(P, code)
        th = codes.weight_distribution(ctx, spec, "theorem")
        assert codes.weight_distribution(ctx, spec, "brute") == th
        assert codes.weight_distribution(ctx, spec, "direct") == th
        if P.t == 1:
            assert codes.weight_distribution(ctx, spec, "pushforward") == th


def test_weight_pushforward_at_331(t331):
    P, ctx = t331
    for code in codes.CODES:
        spec = codes.CodeSpec(P, code)
        assert (codes.weight_distribution(ctx, spec, "pushforward")
                == codes.weight_distribution(ctx, spec, "theorem"))


def test_single_weight_two_ways(t321):
    P, ctx = t321
    rng = np.random.default_rng(8)
    alphas = ctx.subfield(P.m)
    for code in codes.CODES:
        spec = codes.CodeSpec(P, code)
        for _ in range(10):
            a, b = int(rng.choice(alphas)), int(rng.integers(ctx.q))
            g = int(rng.integers(ctx.q)) if spec.uses_gamma else None
            assert (codes.codeword_weight(ctx, spec, a, b, g, "direct")
                    == codes.codeword_weight(ctx, spec, a, b, g, "sum"))


def test_weight_formula_integrality():
    P, _ = build_tower(3, 2, 1)
    with pytest.raises(ArithmeticError):
        codes.weight_from_R(P, 1)


