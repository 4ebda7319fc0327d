#pragma once

#include "difflarge/multipoly.hpp"

#include <optional>
#include <vector>

namespace difflarge {

// Quotient of two polynomials over Q, kept in lowest terms with a monic
// denominator, so equal functions have identical representations.
class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(const Rational& c) : num_(c), den_(1) {} // NOLINT
    RatFunc(long c) : RatFunc(Rational(c)) {}        // NOLINT
    RatFunc(MultiPoly p) : num_(std::move(p)), den_(1) {} // NOLINT
    // Throws InvalidArgument when den is zero.
    RatFunc(MultiPoly num, MultiPoly den);

    static RatFunc variable(Var v) { return RatFunc(MultiPoly::variable(v)); }

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }
    Rational constant_value() const { return num_.constant_value(); }
    bool uses(Var v) const { return num_.uses(v) || den_.uses(v); }
    Var width() const { return std::max(num_.width(), den_.width()); }

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    // Throws InvalidArgument on zero.
    RatFunc inverse() const;
    RatFunc pow(unsigned e) const;
    RatFunc derivative(Var v) const;

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

private:
    struct Normalized {};
    RatFunc(MultiPoly num, MultiPoly den, Normalized)
        : num_(std::move(num)), den_(std::move(den)) {}
    void normalize();

    MultiPoly num_;
    MultiPoly den_;
};

// Applies the derivation that sends variable v to images[v] (variables
// beyond the vector, or with an empty slot, are treated as constants).
RatFunc apply_derivation(const RatFunc& e, const std::vector<std::optional<RatFunc>>& images);

// Simultaneous substitution v := values[v] for every filled slot.
RatFunc substitute(const RatFunc& e, const std::vector<std::optional<RatFunc>>& values);
RatFunc substitute(const MultiPoly& p, const std::vector<std::optional<RatFunc>>& values);

} // namespace difflarge
