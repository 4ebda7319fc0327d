#include "support.hpp"

#include <gtest/gtest.h>

using namespace testsupport;

TEST(LeaderData, Examples) {
    auto a = leader_data(P("x''"));
    EXPECT_EQ(a.order, 2u);
    EXPECT_EQ(a.degree, 1u);
    EXPECT_EQ(a.separant, P("1"));
    EXPECT_EQ(a.initial, P("1"));

    auto b = leader_data(P("x'^2 - x"));
    EXPECT_EQ(b.order, 1u);
    EXPECT_EQ(b.degree, 2u);
    EXPECT_EQ(b.separant, P("2*x'"));
    EXPECT_EQ(b.initial, P("1"));

    auto c = leader_data(P("x*x'^2 + x'"));
    EXPECT_EQ(c.order, 1u);
    EXPECT_EQ(c.degree, 2u);
    EXPECT_EQ(c.separant, P("2*x*x' + 1"));
    EXPECT_EQ(c.initial, P("x"));
}

TEST(LeaderData, RejectsXFree) {
    EXPECT_THROW(leader_data(P("0")), OrderUndefined);
    EXPECT_THROW(leader_data(P("u^2+1", u_base())), OrderUndefined);
}

TEST(TotalDerivative, Examples) {
    EXPECT_EQ(total_derivative(P("3")), P("0"));
    EXPECT_EQ(total_derivative(P("x'^2 - x")), P("2*x'*x'' - x'"));
    EXPECT_EQ(total_derivative(P("u*x", u_base())), P("x + u*x'", u_base()));
    EXPECT_EQ(total_derivative(P("1/u", u_base())), P("-1/u^2", u_base()));
}

TEST(TotalDerivative, CapIsEnforced) {
    EXPECT_THROW(total_derivative(P("x^(5)"), 5), DerivativeCapExceeded);
    EXPECT_NO_THROW(total_derivative(P("x^(4)"), 5));
}

TEST(TotalDerivative, IsADerivationOnRandomPairs) {
    std::mt19937 rng(23);
    for (auto base : {q_base(), u_base(), uv_base()}) {
        for (int i = 0; i < 400; ++i) {
            DiffPoly f = random_diffpoly(rng, base, 2, 3, 3);
            DiffPoly g = random_diffpoly(rng, base, 2, 3, 3);
            EXPECT_EQ(total_derivative(f + g), total_derivative(f) + total_derivative(g));
            EXPECT_EQ(total_derivative(f * g), f * total_derivative(g) + g * total_derivative(f));
        }
    }
}

TEST(TotalDerivative, LinearInNewLeaderWithSameSeparant) {
    std::mt19937 rng(29);
    for (int i = 0; i < 200; ++i) {
        DiffPoly f = random_diffpoly(rng, uv_base(), 2, 3, 4);
        if (!f.order()) continue;
        auto lf = leader_data(f);
        auto ld = leader_data(total_derivative(f));
        EXPECT_EQ(ld.order, lf.order + 1);
        EXPECT_EQ(ld.degree, 1u);
        EXPECT_EQ(ld.separant, lf.separant);
    }
}

TEST(DiffEvalJet, Examples) {
    EXPECT_EQ(diff_eval_jet(P("x' - x"), J({"1", "1"})), FieldElem(0));
    EXPECT_EQ(diff_eval_jet(P("x*x' - 1"), J({"2", "1/2"})), FieldElem(0));
    auto f = P("x'^2 - x");
    EXPECT_EQ(diff_eval_jet(f, J({"0", "0"})), FieldElem(0));
    EXPECT_EQ(diff_eval_jet(leader_data(f).separant, J({"0", "0"})), FieldElem(0));
    EXPECT_EQ(diff_eval_jet(P("u*x' + x", u_base()), J({"u", "1/u"}, u_base())), F("u + 1", u_base()));
}

TEST(DiffEvalJet, TooShort) {
    EXPECT_THROW(diff_eval_jet(P("x''"), J({"1", "2"})), JetTooShort);
}

TEST(Parser, Examples) {
    auto b = q_base();
    EXPECT_EQ(P("x'' - x*x'"), DiffPoly::x(b, 2) - DiffPoly::x(b, 0) * DiffPoly::x(b, 1));
    EXPECT_EQ(P("x'^2 - x"), DiffPoly::x(b, 1).pow(2) - DiffPoly::x(b, 0));
    EXPECT_EQ(P("x^(5) + x^(0)"), DiffPoly::x(b, 5) + DiffPoly::x(b, 0));
    EXPECT_EQ(P("-x^2^2"), -DiffPoly::x(b, 0).pow(4));
    EXPECT_EQ(P("3/2*x"), DiffPoly::constant(b, Rational(3, 2)) * DiffPoly::x(b, 0));
    EXPECT_EQ(P("(x+1)^(2)"), P("x^2 + 2*x + 1"));
}

TEST(Parser, Errors) {
    try {
        P("x^('");
        FAIL();
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.offset(), 3u);
    }
    try {
        P("x + w");
        FAIL();
    } catch (const UnknownIdentifier& e) {
        EXPECT_EQ(e.offset(), 4u);
    }
    EXPECT_THROW(P("x^-1"), SyntaxError);
    EXPECT_THROW(P("x^(2/3)"), SyntaxError);
    EXPECT_THROW(P("(x+1)^(1/2)"), SyntaxError);
    EXPECT_THROW(P("1/x"), SyntaxError);
    EXPECT_THROW(P("1/(u-u)", u_base()), SyntaxError);
    EXPECT_THROW(P("x +"), SyntaxError);
    EXPECT_THROW(P("x^(65)"), DerivativeCapExceeded);
}

TEST(Printer, CanonicalText) {
    EXPECT_EQ(print_diffpoly(P("x'^2 - x")), "x'^2 - x");
    EXPECT_EQ(print_diffpoly(P("-x*x' + x''")), "x'' - x'*x");
    EXPECT_EQ(print_diffpoly(P("x^(4) - 1/2")), "x^(4) - 1/2");
    EXPECT_EQ(print_diffpoly(P("0")), "0");
    EXPECT_EQ(print_diffpoly(P("x'' - u*x", u_base())), "x'' - u*x");
}

TEST(Printer, RoundTripsOnRandomPolynomials) {
    std::mt19937 rng(31);
    for (auto base : {q_base(), u_base(), uv_base()}) {
        for (int i = 0; i < 300; ++i) {
            DiffPoly f = random_diffpoly(rng, base, 4, 3, 4);
            DiffPoly g = random_diffpoly(rng, base, 0, 2, 2);
            if (g.is_zero() || !g.is_x_free()) g = DiffPoly::constant(base, 7);
            DiffPoly h(base, f.expr() / g.expr());
            std::string text = print_diffpoly(h);
            EXPECT_EQ(parse_diffpoly(text, base), h) << text;
            EXPECT_EQ(print_diffpoly(parse_diffpoly(text, base)), text);
        }
    }
}
