#pragma once

#include "difflarge/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace difflarge {

using Var = std::uint32_t;

// Exponent vector over a flat variable universe. Variable 0 is the most
// significant in the lexicographic tie-break. Trailing zero exponents are
// never stored, so equal monomials have equal representations whatever the
// size of the universe.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<std::uint32_t> exps);

    static Monomial variable(Var v, std::uint32_t power = 1);

    std::uint32_t exponent(Var v) const { return v < exps_.size() ? exps_[v] : 0; }
    std::uint32_t degree() const { return degree_; }
    std::size_t width() const { return exps_.size(); }
    bool is_one() const { return exps_.empty(); }
    const std::vector<std::uint32_t>& exponents() const { return exps_; }

    bool divides(const Monomial& other) const;
    Monomial operator*(const Monomial& other) const;
    // Requires divides(other).
    Monomial quotient_of(const Monomial& other) const;
    Monomial with_exponent(Var v, std::uint32_t e) const;
    Monomial gcd(const Monomial& other) const;

    bool operator==(const Monomial& other) const { return exps_ == other.exps_; }

private:
    void trim();

    std::vector<std::uint32_t> exps_;
    std::uint32_t degree_ = 0;
};

// Graded lexicographic order: total degree first, then the exponent of the
// lowest-indexed variable where the two differ.
std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b);

struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return grlex_compare(a, b) == std::strong_ordering::greater;
    }
};

// Sparse polynomial over Q in the flat variable universe. Terms are kept in
// descending graded-lex order; zero coefficients are never stored.
class MultiPoly {
public:
    using TermMap = std::map<Monomial, Rational, GrlexGreater>;

    MultiPoly() = default;
    MultiPoly(const Rational& c); // NOLINT: implicit constant embedding
    MultiPoly(long c) : MultiPoly(Rational(c)) {} // NOLINT

    static MultiPoly variable(Var v);
    static MultiPoly monomial(const Monomial& m, const Rational& c = 1);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_monomial() const { return terms_.size() == 1; }
    // Only meaningful when is_constant().
    Rational constant_value() const;

    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    // Leading term under graded-lex; the polynomial must be nonzero.
    const Monomial& leading_monomial() const { return terms_.begin()->first; }
    const Rational& leading_coefficient() const { return terms_.begin()->second; }

    std::uint32_t total_degree() const;
    std::uint32_t degree_in(Var v) const;
    bool uses(Var v) const { return degree_in(v) > 0; }
    // One past the highest variable index that occurs.
    Var width() const;
    std::set<Var> variables() const;

    Rational coefficient(const Monomial& m) const;
    void add_term(const Monomial& m, const Rational& c);

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
    MultiPoly& operator*=(const Rational& c);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    MultiPoly mul_monomial(const Monomial& m, const Rational& c) const;

    MultiPoly pow(unsigned e) const;
    MultiPoly derivative(Var v) const;

    // View as a univariate polynomial in v: degree -> coefficient (v-free).
    std::map<std::uint32_t, MultiPoly> coefficients_in(Var v) const;
    static MultiPoly from_coefficients(Var v, const std::map<std::uint32_t, MultiPoly>& coeffs);
    MultiPoly leading_coefficient_in(Var v) const;

    // Substitute v := value.
    MultiPoly substitute(Var v, const MultiPoly& value) const;
    // Relabel variables through `map` (old index -> new index).
    MultiPoly rename(const std::vector<Var>& map) const;

    // Rational content: positive q with (*this)/q having coprime integer
    // coefficients. Zero for the zero polynomial.
    Rational content() const;
    // *this / content(), sign-adjusted so the leading coefficient is positive.
    MultiPoly primitive() const;
    MultiPoly monic() const;

    bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }

    std::string debug_string() const;

private:
    TermMap terms_;
};

// Exact quotient a / b if b divides a in Q[vars].
std::optional<MultiPoly> exact_divide(const MultiPoly& a, const MultiPoly& b);

// Pseudo-remainder of a by b with respect to v (b must involve v or be nonzero).
MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, Var v);

// Content of p viewed as a polynomial in v: gcd of its coefficients.
MultiPoly content_in(const MultiPoly& p, Var v);

// Greatest common divisor, normalized primitive with positive leading
// coefficient; gcd(a, 0) is the normalized a and gcd(0, 0) = 0.
MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);

struct SquarefreeDecomposition {
    Rational content;
    // Pairwise coprime square-free factors, each primitive with positive
    // leading coefficient, ordered by multiplicity then graded-lex.
    std::vector<std::pair<MultiPoly, unsigned>> factors;
};

// Throws InvalidArgument on zero input.
SquarefreeDecomposition squarefree_decompose(const MultiPoly& p);

// Canonical ordering used for factor lists: total degree, then terms.
bool canonical_less(const MultiPoly& a, const MultiPoly& b);

} // namespace difflarge
