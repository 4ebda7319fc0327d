#include "difflarge/series.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace testsupport;

namespace {

TruncSeries S(const BaseFieldPtr& b, long lowest, std::initializer_list<const char*> cs,
              long prec = TruncSeries::kExact) {
    std::vector<FieldElem> v;
    for (const char* c : cs) v.push_back(F(c, b));
    return TruncSeries(b, lowest, v, prec);
}

Rational fact(unsigned k) {
    Rational r = 1;
    for (unsigned i = 2; i <= k; ++i) r *= i;
    return r;
}

// binom(1/2, k) * 2^k
Rational sqrt_coeff(unsigned k) {
    Rational c = 1;
    for (unsigned i = 0; i < k; ++i) c *= (Rational(1, 2) - i) / Rational(i + 1) * 2;
    return c;
}

TruncSeries random_series(std::mt19937& rng, const BaseFieldPtr& b, long prec) {
    std::uniform_int_distribution<long> lo(-3, 2);
    long l = lo(rng);
    std::vector<FieldElem> cs;
    for (long e = l; e < prec; ++e) cs.push_back(random_diffpoly(rng, b, 0, 2, 2).expr());
    for (auto& c : cs)
        if (!b->is_field_elem(c)) c = FieldElem(1);
    return TruncSeries(b, l, cs, prec);
}

} // namespace

TEST(SeriesDerive, Examples) {
    auto q = q_base();
    EXPECT_EQ(series_derive(TruncSeries::t_power(q, 1)), TruncSeries::constant(q, 1));
    EXPECT_EQ(series_derive(TruncSeries::constant(u_base(), F("u", u_base()))),
              TruncSeries::constant(u_base(), 1));
    EXPECT_EQ(series_derive(TruncSeries::t_power(q, -1)), -TruncSeries::t_power(q, -2));
    for (long n = -5; n <= 5; ++n)
        EXPECT_EQ(series_derive(TruncSeries::t_power(q, n)),
                  TruncSeries::constant(q, n) * TruncSeries::t_power(q, n - 1));
}

TEST(SeriesDerive, PrecisionDropsByOne) {
    auto s = S(q_base(), 0, {"1", "2", "3"}, 3);
    auto d = series_derive(s);
    EXPECT_EQ(d.prec(), 2);
    EXPECT_EQ(d, S(q_base(), 0, {"2", "6"}, 2));
}

TEST(SeriesDerive, LeibnizAndLinearityOnRandomPairs) {
    std::mt19937 rng(73);
    for (auto b : {q_base(), u_base(), uv_base()}) {
        for (int i = 0; i < 350; ++i) {
            auto x = random_series(rng, b, 4), y = random_series(rng, b, 5);
            EXPECT_EQ(series_derive(x + y), series_derive(x) + series_derive(y));
            EXPECT_EQ(series_derive(x * y), x * series_derive(y) + series_derive(x) * y);
        }
    }
}

TEST(SeriesArithmetic, PrecisionTracking) {
    auto q = q_base();
    auto a = S(q, 1, {"1", "1"}, 3);  // t + t^2 + O(t^3)
    auto b = S(q, -1, {"1"}, 2);      // t^-1 + O(t^2)
    auto p = a * b;
    EXPECT_EQ(p.prec(), 2);  // min(3 - 1, 2 + 1)
    EXPECT_EQ(p, S(q, 0, {"1", "1"}, 2));
    EXPECT_EQ((a + b).prec(), 2);
    EXPECT_THROW(p.coeff(2), InvalidArgument);
}

TEST(JetToSeries, Examples) {
    auto q = q_base();
    std::vector<FieldElem> expo;
    for (unsigned k = 0; k < 8; ++k) expo.push_back(FieldElem(1 / fact(k)));
    EXPECT_EQ(jet_to_series(Jet(8, FieldElem(1)), 8, q), TruncSeries(q, 0, expo, 8));
    EXPECT_EQ(jet_to_series(J({"3", "-2", "5"}), 3, q), S(q, 0, {"3", "-2", "5/2"}, 3));

    auto b = u_base();
    auto y = jet_to_series(J({"u", "0"}, b), 2, b);
    EXPECT_EQ(y, S(b, 0, {"u", "-1"}, 2));
    EXPECT_EQ(series_derive(S(b, 0, {"u", "-1"})), TruncSeries(b));
}

TEST(JetToSeries, TwistReproducesTheJet) {
    std::mt19937 rng(79);
    for (auto b : {u_base(), uv_base()}) {
        for (int t = 0; t < 10; ++t) {
            Jet jet;
            for (int k = 0; k < 6; ++k) jet.push_back(random_diffpoly(rng, b, 0, 2, 2).expr());
            for (auto& c : jet)
                if (!b->is_field_elem(c)) c = FieldElem(2);
            TruncSeries y = jet_to_series(jet, 6, b);
            TruncSeries d = y;
            for (int k = 0; k < 6; ++k) {
                EXPECT_EQ(d.coeff(0), jet[k]);
                d = series_derive(d);
            }
        }
    }
}

TEST(TaylorSolve, Exponential) {
    DLProblem p{P("x' - x"), P("1"), J({"1", "1"}), ProblemKind::Strict};
    auto s = taylor_solve(p, 8);
    for (unsigned k = 0; k < 8; ++k) EXPECT_EQ(s.y.coeff(k), FieldElem(1 / fact(k)));
    EXPECT_EQ(s.residual_prec, 7);
    EXPECT_EQ(undet_coeffs_solve(p, 8).y, s.y);

    p.witness = J({"2", "2"});
    auto two = undet_coeffs_solve(p, 6);
    for (unsigned k = 0; k < 6; ++k) EXPECT_EQ(two.y.coeff(k), FieldElem(2 / fact(k)));
}

TEST(TaylorSolve, SquareRootGerm) {
    DLProblem p{P("x*x' - 1"), P("x"), J({"1", "1"}), ProblemKind::Strict};
    auto s = taylor_solve(p, 6);
    EXPECT_EQ(s.y, S(q_base(), 0, {"1", "1", "-1/2", "1/2", "-5/8", "7/8"}, 6));
    for (unsigned k = 0; k < 6; ++k) EXPECT_EQ(s.y.coeff(k), FieldElem(sqrt_coeff(k)));
    EXPECT_EQ(s.residual_prec, 5);
    auto o = undet_coeffs_solve(p, 6);
    EXPECT_EQ(o.y, s.y);
    EXPECT_EQ(o.jet, s.jet);
}

TEST(TaylorSolve, AffineGerm) {
    DLProblem p{P("x''"), P("1"), J({"0", "1", "0"}), ProblemKind::Strict};
    auto s = taylor_solve(p, 6);
    EXPECT_EQ(s.y, S(q_base(), 1, {"1"}, 6));
    EXPECT_EQ(undet_coeffs_solve(p, 6).y, s.y);
}

TEST(TaylorSolve, TwistedSecondOrderResidual) {
    auto b = u_base();
    DLProblem p{P("x'' - u*x", b), P("1", b), J({"1", "0", "u"}, b), ProblemKind::Strict};
    auto s = taylor_solve(p, 12);
    auto r = diff_eval_ring(p.f, s.y);
    EXPECT_GE(r.prec(), 10);
    for (long e = 0; e < 10; ++e) EXPECT_TRUE(r.coeff(e).is_zero());
    EXPECT_EQ(undet_coeffs_solve(p, 12).y, s.y);
}

TEST(TaylorSolve, Rejections) {
    DLProblem bad{P("x'^2 - x"), P("x"), J({"0", "0"}), ProblemKind::Strict};
    EXPECT_THROW(taylor_solve(bad, 6), PreconditionFailed);
    EXPECT_THROW(undet_coeffs_solve(bad, 6), PreconditionFailed);
    // y = u solves x' = 1 over Q(u), so g = x - u vanishes on it.
    auto b = u_base();
    DLProblem flat{P("x' - 1", b), P("x - u", b), J({"u", "1"}, b), ProblemKind::Strict};
    EXPECT_THROW(taylor_solve(flat, 6), InconclusiveNonvanishing);
    EXPECT_THROW(undet_coeffs_solve(flat, 6), InconclusiveNonvanishing);
}

TEST(HenselRoot, Examples) {
    auto q = q_base();
    EXPECT_EQ(hensel_root({TruncSeries(q)}, 5, q), TruncSeries::constant(q, -1).truncate(5));

    auto f = hensel_root({TruncSeries::t_power(q, 1)}, 16, q);
    std::vector<Rational> cat{1};
    for (unsigned k = 0; k + 1 < 16; ++k) {
        Rational c = 0;
        for (unsigned i = 0; i <= k; ++i) c += cat[i] * cat[k - i];
        cat.push_back(c);
    }
    for (unsigned k = 0; k < 16; ++k) EXPECT_EQ(f.coeff(k), FieldElem(-cat[k]));
    auto eq = TruncSeries::constant(q, 1) + f + TruncSeries::t_power(q, 1) * f * f;
    EXPECT_TRUE(eq.is_zero());
    EXPECT_EQ(eq.prec(), 16);

    auto g = hensel_root({TruncSeries::t_power(q, 2)}, 9, q);
    EXPECT_EQ(g, S(q, 0, {"-1", "0", "-1", "0", "-2", "0", "-5", "0", "-14"}, 9));

    EXPECT_THROW(hensel_root({TruncSeries::constant(q, 1)}, 4, q), InvalidArgument);
}

TEST(HenselRoot, CubicWithTwistedCoefficients) {
    auto b = u_base();
    std::vector<TruncSeries> mus{S(b, 1, {"u", "1"}), S(b, 2, {"1/u"})};
    auto f = hensel_root(mus, 10, b);
    auto eq = TruncSeries::constant(b, 1) + f + mus[0] * f * f + mus[1] * f * f * f;
    EXPECT_TRUE(eq.truncate(10).is_zero());
    EXPECT_EQ(f.coeff(0), FieldElem(-1));
}

TEST(DistinctSolutions, ParametrizedWitnesses) {
    DLProblem p{P("x'^2 - x"), P("x"), J({"1", "1"}), ProblemKind::Strict};
    auto sols = distinct_solutions(p, 5, 8, 8);
    ASSERT_EQ(sols.size(), 5u);
    for (unsigned q = 1; q <= 5; ++q) {
        EXPECT_EQ(sols[q - 1].jet[0], FieldElem(q * q));
        EXPECT_EQ(sols[q - 1].jet[1], FieldElem(q));
    }
    for (std::size_t i = 0; i < sols.size(); ++i)
        for (std::size_t j = i + 1; j < sols.size(); ++j) EXPECT_FALSE(sols[i].y == sols[j].y);
}

TEST(DistinctSolutions, ExponentialMultiplesAndEmptySearch) {
    DLProblem p{P("x' - x"), P("1"), J({"1", "1"}), ProblemKind::Strict};
    auto sols = distinct_solutions(p, 3, 5, 4);
    ASSERT_EQ(sols.size(), 3u);
    for (const auto& s : sols) EXPECT_EQ(s.jet[0], s.jet[1]);

    try {
        distinct_solutions(p, 2, 5, 0);
        FAIL();
    } catch (const FewerFound& e) {
        EXPECT_EQ(e.found(), 0u);
    }
}
