#include "difflarge/base_field.hpp"

#include "difflarge/errors.hpp"

namespace difflarge {

BaseFieldSpec::BaseFieldSpec(std::vector<std::string> generators,
                             std::vector<FieldElem> derivations)
    : generators_(std::move(generators)), derivations_(std::move(derivations)) {
    if (generators_.size() != derivations_.size())
        throw InvalidArgument("derivation list length differs from generator count");
    for (std::size_t i = 0; i < derivations_.size(); ++i)
        if (!is_field_elem(derivations_[i]))
            throw InvalidArgument("derivation of '" + generators_[i] +
                                  "' mentions a non-generator variable");
}

BaseFieldPtr BaseFieldSpec::rationals() {
    static const BaseFieldPtr q = std::make_shared<const BaseFieldSpec>(
        std::vector<std::string>{}, std::vector<FieldElem>{});
    return q;
}

bool BaseFieldSpec::is_trivial() const {
    for (const auto& d : derivations_)
        if (!d.is_zero()) return false;
    return true;
}

std::vector<std::optional<RatFunc>> BaseFieldSpec::generator_images() const {
    std::vector<std::optional<RatFunc>> images;
    for (const auto& d : derivations_) images.emplace_back(d);
    return images;
}

bool same_base(const BaseFieldPtr& a, const BaseFieldPtr& b) {
    return a == b || (a && b && *a == *b);
}

FieldElem base_derive(const FieldElem& e, const BaseFieldSpec& spec) {
    if (e.is_constant()) return FieldElem();
    return apply_derivation(e, spec.generator_images());
}

} // namespace difflarge
