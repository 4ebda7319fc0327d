#pragma once

#include "difflarge/diffpoly.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace difflarge {

// Expression tree for the surface syntax of K{x}.
struct Ast {
    enum class Kind { Number, Generator, Derivative, Neg, Sum, Difference, Product, Quotient, Power };

    Kind kind = Kind::Number;
    Rational value;          // Number
    unsigned index = 0;      // Generator id, derivative order, or exponent
    std::vector<Ast> kids;
    std::size_t offset = 0;  // position in the source text
};

// Grammar:
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := ('-' | '+') unary | power
//   power  := atom ('^' integer)*
//   atom   := integer | name | 'x' '\''* | 'x^(' integer ')' | '(' expr ')'
// Throws SyntaxError, UnknownIdentifier, DerivativeCapExceeded.
Ast parse_ast(std::string_view text, const std::vector<std::string>& generators,
              unsigned derivative_cap = kDefaultDerivativeCap);

// Divisors must be x-free and nonzero (SyntaxError otherwise).
DiffPoly to_diffpoly(const Ast& ast, const BaseFieldPtr& base);

DiffPoly parse_diffpoly(std::string_view text, const BaseFieldPtr& base,
                        unsigned derivative_cap = kDefaultDerivativeCap);

// An element of K; throws SyntaxError if the text mentions x.
FieldElem parse_field_elem(std::string_view text, const BaseFieldSpec& base);

// Canonical text: terms descending by (order, leader degree, graded-lex),
// reparses to the same polynomial.
std::string print_diffpoly(const DiffPoly& f);
std::string print_field_elem(const FieldElem& e, const BaseFieldSpec& base);

std::string x_name(unsigned j);

} // namespace difflarge
