#include "difflarge/ratfunc.hpp"

#include "difflarge/errors.hpp"

namespace difflarge {

RatFunc::RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw InvalidArgument("rational function with zero denominator");
    normalize();
}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = MultiPoly(1);
        return;
    }
    if (!den_.is_constant()) {
        MultiPoly g = poly_gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = *exact_divide(num_, g);
            den_ = *exact_divide(den_, g);
        }
    }
    Rational lc = den_.leading_coefficient();
    if (lc != 1) {
        Rational inv = 1 / lc;
        num_ *= inv;
        den_ *= inv;
    }
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, Normalized{}); }

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
        if (a.den_.is_constant()) return RatFunc(a.num_ + b.num_, a.den_, RatFunc::Normalized{});
        return RatFunc(a.num_ + b.num_, a.den_);
    }
    MultiPoly g = poly_gcd(a.den_, b.den_);
    MultiPoly da = *exact_divide(a.den_, g);
    MultiPoly db = *exact_divide(b.den_, g);
    return RatFunc(a.num_ * db + b.num_ * da, da * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    if (a.den_.is_constant() && b.den_.is_constant())
        return RatFunc(a.num_ * b.num_, MultiPoly(1), RatFunc::Normalized{});
    // Cross-cancel first to keep the products small.
    MultiPoly g1 = poly_gcd(a.num_, b.den_);
    MultiPoly g2 = poly_gcd(b.num_, a.den_);
    MultiPoly n = *exact_divide(a.num_, g1) * *exact_divide(b.num_, g2);
    MultiPoly d = *exact_divide(a.den_, g2) * *exact_divide(b.den_, g1);
    Rational lc = d.leading_coefficient();
    return RatFunc(n * Rational(1 / lc), d * Rational(1 / lc), RatFunc::Normalized{});
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw InvalidArgument("inverse of zero");
    Rational lc = num_.leading_coefficient();
    return RatFunc(den_ * Rational(1 / lc), num_ * Rational(1 / lc), Normalized{});
}

RatFunc RatFunc::pow(unsigned e) const {
    return RatFunc(num_.pow(e), den_.pow(e), Normalized{});
}

RatFunc RatFunc::derivative(Var v) const {
    if (den_.is_constant()) return RatFunc(num_.derivative(v), den_, Normalized{});
    return RatFunc(num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_);
}

RatFunc apply_derivation(const RatFunc& e, const std::vector<std::optional<RatFunc>>& images) {
    // D(n/d) = (D(n) d - n D(d)) / d^2 with D(p) = sum_v dp/dv * image(v).
    auto derive_poly = [&](const MultiPoly& p) {
        RatFunc out;
        for (Var v : p.variables()) {
            if (v >= images.size() || !images[v] || images[v]->is_zero()) continue;
            out += RatFunc(p.derivative(v)) * *images[v];
        }
        return out;
    };
    RatFunc dn = derive_poly(e.num());
    if (e.is_polynomial()) return dn * RatFunc(MultiPoly(1), e.den());
    RatFunc dd = derive_poly(e.den());
    RatFunc d(e.den());
    return (dn * d - RatFunc(e.num()) * dd) / (d * d);
}

RatFunc substitute(const MultiPoly& p, const std::vector<std::optional<RatFunc>>& values) {
    // Bring every substituted value to a common denominator per variable so
    // the sum is assembled as one polynomial and normalized once.
    std::vector<std::uint32_t> maxdeg(values.size(), 0);
    for (Var v : p.variables())
        if (v < values.size() && values[v]) maxdeg[v] = p.degree_in(v);

    MultiPoly den(1);
    for (Var v = 0; v < values.size(); ++v)
        if (maxdeg[v] > 0) den = den * values[v]->den().pow(maxdeg[v]);

    std::vector<std::vector<MultiPoly>> num_pows(values.size()), den_pows(values.size());
    auto power = [](std::vector<MultiPoly>& cache, const MultiPoly& base, std::uint32_t e) {
        if (cache.empty()) cache.emplace_back(1);
        while (cache.size() <= e) cache.push_back(cache.back() * base);
        return cache[e];
    };

    MultiPoly num;
    for (const auto& [m, c] : p.terms()) {
        std::vector<std::uint32_t> rest;
        MultiPoly term(c);
        for (Var v = 0; v < m.width(); ++v) {
            auto e = m.exponent(v);
            if (e == 0) continue;
            if (v < values.size() && values[v]) {
                term = term * power(num_pows[v], values[v]->num(), e);
                if (maxdeg[v] > e) term = term * power(den_pows[v], values[v]->den(), maxdeg[v] - e);
            } else {
                if (rest.size() <= v) rest.resize(v + 1, 0);
                rest[v] = e;
            }
        }
        for (Var v = 0; v < values.size(); ++v) {
            if (maxdeg[v] == 0 || m.exponent(v) > 0) continue;
            term = term * power(den_pows[v], values[v]->den(), maxdeg[v]);
        }
        num += term.mul_monomial(Monomial(std::move(rest)), 1);
    }
    return RatFunc(std::move(num), std::move(den));
}

RatFunc substitute(const RatFunc& e, const std::vector<std::optional<RatFunc>>& values) {
    RatFunc n = substitute(e.num(), values);
    if (e.is_polynomial()) return n * RatFunc(MultiPoly(1), e.den());
    return n / substitute(e.den(), values);
}

} // namespace difflarge
