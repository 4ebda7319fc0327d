#pragma once

#include "difflarge/base_field.hpp"
#include "difflarge/errors.hpp"

#include <concepts>
#include <optional>
#include <vector>

namespace difflarge {

inline constexpr unsigned kDefaultDerivativeCap = 64;

// f in K{x}: a rational function in the flat variables (u, x_0, x_1, ...)
// whose denominator involves no x_j, i.e. a polynomial in the x_j with
// coefficients in K.
class DiffPoly {
public:
    explicit DiffPoly(BaseFieldPtr base = BaseFieldSpec::rationals());
    // Throws InvalidArgument if the denominator of e involves some x_j.
    DiffPoly(BaseFieldPtr base, RatFunc e);

    static DiffPoly x(BaseFieldPtr base, unsigned j);
    static DiffPoly constant(BaseFieldPtr base, const FieldElem& c);

    const BaseFieldPtr& base() const { return base_; }
    const RatFunc& expr() const { return expr_; }

    bool is_zero() const { return expr_.is_zero(); }
    bool is_x_free() const { return !order(); }
    // Highest j with x_j occurring; empty for x-free polynomials.
    std::optional<unsigned> order() const;
    unsigned degree_in(unsigned j) const;

    // Coefficient of x_j^e, viewing the polynomial as univariate in x_j.
    DiffPoly coefficient_in(unsigned j, unsigned e) const;
    // d/dx_j.
    DiffPoly partial(unsigned j) const;

    DiffPoly operator-() const { return DiffPoly(base_, -expr_); }
    friend DiffPoly operator+(const DiffPoly& a, const DiffPoly& b);
    friend DiffPoly operator-(const DiffPoly& a, const DiffPoly& b);
    friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
    DiffPoly& operator+=(const DiffPoly& o) { return *this = *this + o; }
    DiffPoly& operator-=(const DiffPoly& o) { return *this = *this - o; }
    DiffPoly& operator*=(const DiffPoly& o) { return *this = *this * o; }
    DiffPoly pow(unsigned e) const { return DiffPoly(base_, expr_.pow(e)); }

    // Exact quotient in K[x], if b divides *this.
    std::optional<DiffPoly> divide(const DiffPoly& b) const;

    bool operator==(const DiffPoly& o) const {
        return same_base(base_, o.base_) && expr_ == o.expr_;
    }

private:
    BaseFieldPtr base_;
    RatFunc expr_;
};

// Values of x_0, x_1, ... at a point.
using Jet = std::vector<FieldElem>;

struct LeaderData {
    unsigned order = 0;
    unsigned degree = 0;
    DiffPoly separant;
    DiffPoly initial;
};

// Throws OrderUndefined for zero or x-free f.
LeaderData leader_data(const DiffPoly& f);

// D(f) = f^delta + sum_i df/dx_i * x_{i+1}. Throws DerivativeCapExceeded if
// the result would mention x_j with j > cap.
DiffPoly total_derivative(const DiffPoly& f, unsigned cap = kDefaultDerivativeCap);

// f^delta: the base derivation applied to every coefficient.
DiffPoly coefficient_derivative(const DiffPoly& f);

// Substitutes x_i := c_i. Throws JetTooShort when c does not reach ord f.
FieldElem diff_eval_jet(const DiffPoly& f, const Jet& c);

// Terms of f grouped by their x-monomial.
struct XTerm {
    FieldElem coeff;
    std::vector<unsigned> exps; // exps[j] is the power of x_j
};
std::vector<XTerm> x_terms(const DiffPoly& f);

// An element of a differential ring over the same base field K.
template <typename R>
concept DifferentialRingElem = requires(const R& a, const FieldElem& c) {
    { a.base() } -> std::convertible_to<BaseFieldPtr>;
    { a.derive() } -> std::convertible_to<R>;
    { a.lift(c) } -> std::convertible_to<R>;
    { a + a } -> std::convertible_to<R>;
    { a * a } -> std::convertible_to<R>;
};

// f(a, delta a, ..., delta^n a) computed in a's ring.
template <DifferentialRingElem R>
R diff_eval_ring(const DiffPoly& f, const R& a) {
    if (!same_base(f.base(), a.base()))
        throw BaseFieldMismatch("polynomial and ring element live over different base fields");
    auto terms = x_terms(f);
    unsigned n = 0;
    for (const auto& t : terms) n = std::max<unsigned>(n, t.exps.size());

    std::vector<std::vector<R>> powers; // powers[j][e] = (delta^j a)^e
    R cur = a;
    for (unsigned j = 0; j < n; ++j) {
        if (j > 0) cur = cur.derive();
        powers.push_back({a.lift(FieldElem(1)), cur});
    }
    auto power = [&](unsigned j, unsigned e) -> const R& {
        auto& p = powers[j];
        while (p.size() <= e) p.push_back(p.back() * p[1]);
        return p[e];
    };

    R sum = a.lift(FieldElem());
    for (const auto& t : terms) {
        R term = a.lift(t.coeff);
        for (unsigned j = 0; j < t.exps.size(); ++j)
            if (t.exps[j] > 0) term = term * power(j, t.exps[j]);
        sum = sum + term;
    }
    return sum;
}

} // namespace difflarge
