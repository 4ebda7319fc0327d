#pragma once

#include "difflarge/ratfunc.hpp"

#include <memory>
#include <string>
#include <vector>

namespace difflarge {

// An element of K = Q(u_1..u_k): a rational function in variables 0..k-1.
using FieldElem = RatFunc;

// The differential base field (K, delta) with K = Q(u_1..u_k) and a declared
// image delta(u_i) in K for every generator. Generator u_i is flat variable
// i - 1; the differential variable's derivatives x_j sit at k + j.
class BaseFieldSpec {
public:
    // Throws InvalidArgument if the derivation list does not match the
    // generators or an image mentions a non-generator variable.
    BaseFieldSpec(std::vector<std::string> generators, std::vector<FieldElem> derivations);

    // Q with the trivial derivation.
    static std::shared_ptr<const BaseFieldSpec> rationals();

    std::size_t size() const { return generators_.size(); }
    const std::vector<std::string>& generators() const { return generators_; }
    const std::vector<FieldElem>& derivations() const { return derivations_; }
    bool is_trivial() const;

    // Flat index of x_j.
    Var x_var(std::uint32_t j) const { return static_cast<Var>(size() + j); }
    bool is_x_var(Var v) const { return v >= size(); }
    bool is_field_elem(const RatFunc& e) const { return e.width() <= size(); }

    // Derivation images for the generators, ready for apply_derivation.
    std::vector<std::optional<RatFunc>> generator_images() const;

    bool operator==(const BaseFieldSpec& o) const {
        return generators_ == o.generators_ && derivations_ == o.derivations_;
    }

private:
    std::vector<std::string> generators_;
    std::vector<FieldElem> derivations_;
};

using BaseFieldPtr = std::shared_ptr<const BaseFieldSpec>;

bool same_base(const BaseFieldPtr& a, const BaseFieldPtr& b);

// delta(e), extended from the generators by linearity, Leibniz and the
// quotient rule; zero on Q.
FieldElem base_derive(const FieldElem& e, const BaseFieldSpec& spec);

} // namespace difflarge
