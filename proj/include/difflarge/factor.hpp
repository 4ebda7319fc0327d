#pragma once

#include "difflarge/multipoly.hpp"

#include <string>
#include <variant>
#include <vector>

namespace difflarge {

// content * prod(factors) == input. Factors are irreducible over Q,
// primitive with positive leading coefficient, repeated according to
// multiplicity and sorted by canonical_less.
struct Factorization {
    Rational content;
    std::vector<MultiPoly> factors;
};

struct Inconclusive {
    std::string reason;
};

using FactorOutcome = std::variant<Factorization, Inconclusive>;

inline constexpr unsigned kDefaultFactorDegreeBound = 12;

// Factorization over Q of a polynomial in exactly one variable: square-free
// split, factorization modulo a small prime, Hensel lifting and factor
// recombination. Throws InvalidArgument for zero, constant or multivariate input.
Factorization univar_factor_q(const MultiPoly& p);

// Multivariate factorization over Q by Kronecker substitution into the
// univariate factorizer followed by subset recombination with exact trial
// division. Never returns a wrong factorization: anything outside the
// supported size yields Inconclusive.
FactorOutcome kronecker_factor(const MultiPoly& p,
                               unsigned degree_bound = kDefaultFactorDegreeBound);

// Multiplies a factorization back out.
MultiPoly expand(const Factorization& f);

} // namespace difflarge
