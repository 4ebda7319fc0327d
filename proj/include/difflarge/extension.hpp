#pragma once

#include "difflarge/dvariety.hpp"

#include <memory>

namespace difflarge {

// K_1 = K(x_0..x_{n-1})[x_n]/(f) with the derivation induced by the section
// of f. Elements are rational functions in (u, x_0..x_n) whose denominator
// is free of x_n and whose numerator has x_n-degree below deg f.
class ExtensionField {
public:
    const DiffPoly& f() const { return f_; }
    const SectionData& section() const { return section_; }
    const BaseFieldPtr& base() const { return f_.base(); }
    unsigned order() const { return n_; }
    unsigned degree() const { return d_; }
    Var leader() const { return xn_; }

    // Canonical representative of the class of e; e may have any
    // denominator not divisible by f. Throws ReducibleDetected when a
    // denominator shares a factor with f.
    RatFunc canonical(const RatFunc& e) const;
    // Inverse of a canonical nonzero element.
    RatFunc invert(const RatFunc& e) const;
    RatFunc derive(const RatFunc& e) const;

private:
    friend std::shared_ptr<const ExtensionField> build_extension(const DiffPoly&, Irreducibility,
                                                                 unsigned);
    ExtensionField(DiffPoly f, SectionData s);

    RatFunc reduce_num(const RatFunc& e) const;

    DiffPoly f_;
    SectionData section_;
    unsigned n_ = 0;
    unsigned d_ = 0;
    Var xn_ = 0;
    std::vector<RatFunc> fpoly_; // f as a polynomial in x_n over K(x_<n)
    std::vector<std::optional<RatFunc>> images_;
};

using ExtensionPtr = std::shared_ptr<const ExtensionField>;

// Throws InvalidArgument for ord f < 1, RequiresIrreducible or
// FactorizationInconclusive in Auto mode, ReducibleDetected if s_f is not
// invertible modulo f.
ExtensionPtr build_extension(const DiffPoly& f, Irreducibility mode = Irreducibility::Auto,
                             unsigned degree_bound = kDefaultFactorDegreeBound);

class ExtensionElem {
public:
    ExtensionElem(ExtensionPtr field, const RatFunc& e);

    static ExtensionElem generator(ExtensionPtr field, unsigned j);

    const ExtensionPtr& field() const { return field_; }
    const RatFunc& rep() const { return rep_; }
    const BaseFieldPtr& base() const { return field_->base(); }
    bool is_zero() const { return rep_.is_zero(); }

    ExtensionElem derive() const;
    ExtensionElem lift(const FieldElem& c) const { return ExtensionElem(field_, c); }
    // Throws InvalidArgument on zero, ReducibleDetected on a zero divisor.
    ExtensionElem inverse() const;

    friend ExtensionElem operator+(const ExtensionElem& a, const ExtensionElem& b);
    friend ExtensionElem operator-(const ExtensionElem& a, const ExtensionElem& b);
    friend ExtensionElem operator*(const ExtensionElem& a, const ExtensionElem& b);
    ExtensionElem operator-() const { return ExtensionElem(field_, -rep_, Canonical{}); }

    bool operator==(const ExtensionElem& o) const { return rep_ == o.rep_; }

private:
    struct Canonical {};
    ExtensionElem(ExtensionPtr field, RatFunc e, Canonical) : field_(std::move(field)), rep_(std::move(e)) {}

    ExtensionPtr field_;
    RatFunc rep_;
};

inline ExtensionElem ext_invert(const ExtensionElem& e) { return e.inverse(); }
inline ExtensionElem ext_derive(const ExtensionElem& e) { return e.derive(); }

struct SolutionReport {
    bool f_vanishes = false;
    bool g_nonzero = false;
    // x_0..x_{n-1} are the generators of a rational function field.
    bool transcendence_by_construction = false;
    RatFunc f_value;
    RatFunc g_value;

    bool success() const { return f_vanishes && g_nonzero; }
};

// Evaluates f and g at a = class of x_0.
SolutionReport verify_diff_solution(const DLProblem& p, const ExtensionPtr& field);

} // namespace difflarge
