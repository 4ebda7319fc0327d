#pragma once

#include "difflarge/diffpoly.hpp"
#include "difflarge/factor.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace difflarge {

// i_f^initial_power * s_f^separant_power * g
//     = sum_j cofactors[j] * D^j f + remainder,
// with the remainder reduced with respect to f. When the two powers agree
// (the usual case) r is their common value and the multiplier is (i_f s_f)^r.
struct ReductionCertificate {
    DiffPoly remainder;
    unsigned r = 0;
    unsigned initial_power = 0;
    unsigned separant_power = 0;
    std::map<unsigned, DiffPoly> cofactors;

    bool unified() const { return initial_power == separant_power; }
};

// Throws OrderUndefined for x-free f.
ReductionCertificate ritt_reduce(const DiffPoly& g, const DiffPoly& f,
                                 unsigned cap = kDefaultDerivativeCap);

// g has order <= ord f and degree in f's leader below f's.
bool is_reduced(const DiffPoly& g, const DiffPoly& f);

// Re-expands the identity and checks reducedness of the remainder.
bool verify_certificate(const ReductionCertificate& cert, const DiffPoly& g, const DiffPoly& f);

enum class Irreducibility { Assume, Auto };

// Irreducible factors of f over K that involve x, repeated by multiplicity;
// empty when the factorizer is inconclusive.
std::optional<std::vector<DiffPoly>> x_factors(const DiffPoly& f,
                                               unsigned degree_bound = kDefaultFactorDegreeBound);

// Throws RequiresIrreducible if f splits over K, FactorizationInconclusive if
// that cannot be decided within the degree bound.
void require_irreducible(const DiffPoly& f, unsigned degree_bound = kDefaultFactorDegreeBound);

// Membership of g in [f] : s_f^oo for irreducible f.
bool saturation_member(const DiffPoly& g, const DiffPoly& f, Irreducibility mode,
                       unsigned degree_bound = kDefaultFactorDegreeBound);

// A factor h of f with ord h = ord f, h(c) = 0 and s_h(c) != 0. `factors`
// must multiply to f up to a unit of K; without it f is factored here.
DiffPoly select_smooth_factor(const DiffPoly& f, const Jet& c,
                              const std::optional<std::vector<DiffPoly>>& factors = std::nullopt,
                              unsigned degree_bound = kDefaultFactorDegreeBound);

enum class ProblemKind { Strict, Wide };

struct DLProblem {
    DiffPoly f;
    DiffPoly g;
    Jet witness;
    ProblemKind kind = ProblemKind::Strict;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool valid() const { return violations.empty(); }
};

ValidationReport problem_validate(const DLProblem& p);

} // namespace difflarge
