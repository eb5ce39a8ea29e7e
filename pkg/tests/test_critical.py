"""Symbolic Sturm chain, critical polynomials, and the packed kernels."""

import random
from fractions import Fraction

import pytest

from rct.critical import (
    RootVerdict,
    check_substitutable_pair,
    critical_polynomials,
    has_d_distinct_real_roots,
    in_S_n,
    symbolic_sturm,
    verify_pair_chain,
)
from rct.parse import parse_poly
from rct.poly import SparsePoly, divide_exact, shd
from rct.sturm import count_distinct_roots_total, sturm_sequence


def _coeff_point(rng, d, span=6):
    return {f"a{i}": Fraction(rng.randint(-span, span), rng.randint(1, 3))
            for i in range(1, d + 1)}


def test_F2_is_the_quadratic_discriminant():
    cs = critical_polynomials(2)
    assert len(cs.F) == 1
    assert cs.F[0] == parse_poly("a1^2 - 4*a2")


def test_d3_values():
    cs = critical_polynomials(3)
    assert cs.F[0] == parse_poly("a1^2 - 3*a2")
    disc = parse_poly(
        "18*a1*a2*a3 - 4*a1^3*a3 + a1^2*a2^2 - 4*a2^3 - 27*a3^2")
    assert cs.F[1] == disc  # F_3 is exactly the classical discriminant


def test_F_d_vanishes_on_double_roots():
    rng = random.Random(41)
    x = SparsePoly.variable("x")
    for d in (3, 4, 5):
        cs = critical_polynomials(d)
        for _ in range(8):
            f = (x - Fraction(rng.randint(-4, 4), rng.randint(1, 3))) ** 2
            for _ in range(d - 2):
                f = f * (x - Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
            dense = f.dense_coeffs("x")
            pt = {f"a{i}": dense[d - i] for i in range(1, d + 1)}
            assert cs.F[d - 2].evaluate(pt) == 0


def test_critical_polynomials_are_graded():
    for d in range(2, 7):
        cs = critical_polynomials(d)
        assert len(cs.F) == d - 1
        for j in range(2, d + 1):
            F = cs.F[j - 2]
            v = shd(F)
            assert v.value == j * (j - 1)
            assert all(c.denominator == 1 for c in F.terms.values())


def test_chain_shape():
    for d in range(2, 7):
        seq = symbolic_sturm(d)
        assert len(seq) == d + 1
        assert [p.degree for p in seq] == list(range(d, -1, -1))


def test_pair_offsets_alternate():
    for d in range(2, 7):
        offsets = verify_pair_chain(d)
        assert offsets == [0 if i % 2 == 0 else 2 for i in range(d)]


def test_pair_checker_rejects_bad_degrees():
    seq = symbolic_sturm(4)
    with pytest.raises(ValueError):
        check_substitutable_pair(seq[0], seq[2])


def test_specialization_matches_direct_chain():
    # the symbolic chain evaluated at a generic point is the Sturm chain
    # of the specialized polynomial, entry by entry
    rng = random.Random(42)
    for d in range(2, 6):
        seq = symbolic_sturm(d)
        done = 0
        while done < 8:
            pt = _coeff_point(rng, d)
            dense = [pt[f"a{i}"] for i in range(d, 0, -1)] + [Fraction(1)]
            f = SparsePoly.from_dense("x", dense)
            direct = sturm_sequence(f, "x")
            if len(direct.polys) != d + 1:
                continue  # non-generic point: chain degenerates
            for j, sym in enumerate(seq):
                assert sym.evaluate_coeffs(pt) == list(direct.polys[j]), (d, j)
            done += 1


def test_leading_coefficient_identity():
    # lc(f_j) = F_j * w_scale2[j] * w_factor[j]^2 exactly, per point
    rng = random.Random(43)
    for d in range(2, 7):
        cs = critical_polynomials(d)
        done = 0
        while done < 6:
            pt = _coeff_point(rng, d)
            try:
                lhs = cs.lead_coeff(d).evaluate(pt)
            except ZeroDivisionError:
                continue
            if lhs == 0:
                continue
            for j in range(2, d + 1):
                lc = cs.lead_coeff(j).evaluate(pt)
                wf = cs.w_factor[j - 2].evaluate(pt)
                rhs = cs.F[j - 2].evaluate(pt) * cs.w_scale2[j - 2] * wf ** 2
                assert lc == rhs, (d, j)
            done += 1


def test_verdicts_on_known_polynomials():
    assert has_d_distinct_real_roots([0, -1]) is RootVerdict.TRUE    # x^2 - 1
    assert has_d_distinct_real_roots([0, 1]) is RootVerdict.FALSE    # x^2 + 1
    assert has_d_distinct_real_roots([0, 0]) is RootVerdict.DEGENERATE  # x^2
    assert has_d_distinct_real_roots([0, -1, 0]) is RootVerdict.TRUE  # x^3 - x
    assert has_d_distinct_real_roots([0, 1, 0]) is RootVerdict.FALSE  # x^3 + x
    assert has_d_distinct_real_roots([0, 0, 0]) is RootVerdict.DEGENERATE


def test_in_S_n_is_exact_on_degenerate_points():
    # (x-1)^2 (x+2): the F-route degenerates, the Sturm fallback decides
    f = parse_poly("(x-1)^2 * (x+2)")
    dense = f.dense_coeffs("x")
    coeffs = [dense[2], dense[1], dense[0]]
    assert has_d_distinct_real_roots(coeffs) is RootVerdict.DEGENERATE
    assert in_S_n(coeffs) is False
    # x(x-1)(x+1) scaled so a coefficient vanishes but roots stay distinct
    assert in_S_n([0, -1, 0]) is True


def test_in_S_n_matches_sturm_random():
    rng = random.Random(44)
    for d in range(2, 6):
        for _ in range(120):
            coeffs = [Fraction(rng.randint(-3, 3)) for _ in range(d)]
            f = SparsePoly.from_dense(
                "x", list(reversed([Fraction(1)] + coeffs)))
            want = count_distinct_roots_total(f, "x") == d
            assert in_S_n(coeffs) is want, coeffs


def test_degree_bounds_enforced():
    with pytest.raises(ValueError):
        critical_polynomials(1)
    with pytest.raises(ValueError):
        critical_polynomials(9)
    with pytest.raises(ValueError):
        symbolic_sturm(1)


# ---- packed-exponent kernel ----


from rct.critical import _BITS, _wp_divexact, _wp_mul  # noqa: E402


def _rand_wp(rng, nvars, nterms, max_exp=6, max_coeff=50):
    out = {}
    for _ in range(nterms):
        key = 0
        for i in range(nvars):
            key |= rng.randint(0, max_exp) << (_BITS * i)
        c = rng.randint(-max_coeff, max_coeff)
        if c:
            out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


def _dict_mul(a, b):
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = ka + kb
            s = out.get(k, 0) + va * vb
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def test_wp_mul_small():
    rng = random.Random(51)
    for _ in range(40):
        a = _rand_wp(rng, 3, rng.randint(1, 10))
        b = _rand_wp(rng, 3, rng.randint(1, 10))
        assert _wp_mul(a, b) == _dict_mul(a, b)


def test_wp_mul_vectorized_paths():
    rng = random.Random(52)
    # large enough to cross the numpy threshold; int64-safe coefficients
    a = _rand_wp(rng, 4, 160, max_exp=5, max_coeff=10 ** 4)
    b = _rand_wp(rng, 4, 160, max_exp=5, max_coeff=10 ** 4)
    assert _wp_mul(a, b) == _dict_mul(a, b)
    # coefficients near 2^45 force the split kernel
    big_a = {k: v * (2 ** 41 + 7) for k, v in a.items()}
    big_b = {k: v * (2 ** 41 + 13) for k, v in b.items()}
    assert _wp_mul(big_a, big_b) == _dict_mul(big_a, big_b)
    # beyond the split bound: exact dict fallback
    huge_a = {k: v * (2 ** 61 + 3) for k, v in a.items()}
    huge_b = {k: v * (2 ** 61 + 9) for k, v in b.items()}
    assert _wp_mul(huge_a, huge_b) == _dict_mul(huge_a, huge_b)


def test_wp_mul_identity_and_zero():
    rng = random.Random(53)
    a = _rand_wp(rng, 3, 8)
    assert _wp_mul(a, {0: 1}) == a
    assert _wp_mul(a, {}) == {}


def test_wp_divexact_roundtrip():
    rng = random.Random(54)
    for _ in range(30):
        a = _rand_wp(rng, 3, rng.randint(1, 12), max_exp=5)
        b = _rand_wp(rng, 3, rng.randint(1, 8), max_exp=5)
        if not a or not b:
            continue
        prod = _wp_mul(a, b)
        assert _wp_divexact(prod, b, 3) == a


def test_wp_divexact_rejects_inexact():
    x_sq_plus_1 = {2: 1, 0: 1}
    x_minus_1 = {1: 1, 0: -1}
    with pytest.raises(ArithmeticError):
        _wp_divexact(x_sq_plus_1, x_minus_1, 1)


def test_wp_divexact_large_roundtrip():
    rng = random.Random(55)
    a = _rand_wp(rng, 4, 300, max_exp=5, max_coeff=10 ** 6)
    b = _rand_wp(rng, 4, 40, max_exp=5, max_coeff=10 ** 6)
    prod = _wp_mul(a, b)
    assert _wp_divexact(prod, b, 4) == a


# ---- chain disk cache ----


def test_chain_cache_roundtrip(tmp_path, monkeypatch):
    import rct.critical as crit

    monkeypatch.setenv("RCT_CACHE_DIR", str(tmp_path))
    monkeypatch.setattr(crit, "_DISK_CACHE_MIN_D", 3)
    crit._chain_cache.pop(3, None)
    try:
        ch = crit._get_chain(3)
        files = list(tmp_path.glob("chain-*-d3.json.gz"))
        assert len(files) == 1
        loaded = crit._load_cached_chain(3)
        assert loaded is not None
        assert loaded.prs == ch.prs
        assert loaded.signs == ch.signs
        assert loaded.scalars == ch.scalars
        # corruption is detected and discarded, never trusted
        files[0].write_bytes(b"not gzip json")
        assert crit._load_cached_chain(3) is None
    finally:
        crit._chain_cache.pop(3, None)


def test_chain_cache_disabled_by_env(tmp_path, monkeypatch):
    import rct.critical as crit

    monkeypatch.setenv("RCT_CACHE_DIR", str(tmp_path))
    monkeypatch.setenv("RCT_NO_CACHE", "1")
    assert crit._chain_cache_path(5) is None


def test_cache_verification_rejects_wrong_chain(tmp_path, monkeypatch):
    # a structurally valid file whose polynomials were tampered with
    import rct.critical as crit

    monkeypatch.setenv("RCT_CACHE_DIR", str(tmp_path))
    monkeypatch.setattr(crit, "_DISK_CACHE_MIN_D", 3)
    crit._chain_cache.pop(3, None)
    try:
        ch = crit._get_chain(3)
        tampered = crit._Chain._from_parts(
            3,
            [[{k: v + (1 if i == 2 and j == 0 else 0)
               for k, v in wp.items()} or wp for j, wp in enumerate(entry)]
             for i, entry in enumerate(ch.prs)],
            ch.signs, ch.scalars, ch.expos)
        crit._store_cached_chain(tampered)
        assert crit._load_cached_chain(3) is None
    finally:
        crit._chain_cache.pop(3, None)
