#include "difflarge/diffpoly.hpp"

#include <map>

namespace difflarge {

namespace {

void require_same(const DiffPoly& a, const DiffPoly& b) {
    if (!same_base(a.base(), b.base()))
        throw BaseFieldMismatch("differential polynomials over different base fields");
}

} // namespace

DiffPoly::DiffPoly(BaseFieldPtr base) : base_(std::move(base)) {}

DiffPoly::DiffPoly(BaseFieldPtr base, RatFunc e) : base_(std::move(base)), expr_(std::move(e)) {
    if (!base_->is_field_elem(RatFunc(expr_.den())))
        throw InvalidArgument("denominator involves the differential variable");
}

DiffPoly DiffPoly::x(BaseFieldPtr base, unsigned j) {
    Var v = base->x_var(j);
    return DiffPoly(std::move(base), RatFunc::variable(v));
}

DiffPoly DiffPoly::constant(BaseFieldPtr base, const FieldElem& c) {
    if (!base->is_field_elem(c)) throw InvalidArgument("constant is not in the base field");
    return DiffPoly(std::move(base), c);
}

std::optional<unsigned> DiffPoly::order() const {
    Var w = expr_.num().width();
    if (w <= base_->size()) return std::nullopt;
    return static_cast<unsigned>(w - base_->size() - 1);
}

unsigned DiffPoly::degree_in(unsigned j) const { return expr_.num().degree_in(base_->x_var(j)); }

DiffPoly DiffPoly::coefficient_in(unsigned j, unsigned e) const {
    auto coeffs = expr_.num().coefficients_in(base_->x_var(j));
    auto it = coeffs.find(e);
    if (it == coeffs.end()) return DiffPoly(base_);
    return DiffPoly(base_, RatFunc(it->second, expr_.den()));
}

DiffPoly DiffPoly::partial(unsigned j) const {
    Var v = base_->x_var(j);
    return DiffPoly(base_, RatFunc(expr_.num().derivative(v), expr_.den()));
}

DiffPoly operator+(const DiffPoly& a, const DiffPoly& b) {
    require_same(a, b);
    return DiffPoly(a.base_, a.expr_ + b.expr_);
}

DiffPoly operator-(const DiffPoly& a, const DiffPoly& b) {
    require_same(a, b);
    return DiffPoly(a.base_, a.expr_ - b.expr_);
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
    require_same(a, b);
    return DiffPoly(a.base_, a.expr_ * b.expr_);
}

std::optional<DiffPoly> DiffPoly::divide(const DiffPoly& b) const {
    require_same(*this, b);
    if (b.is_zero()) throw InvalidArgument("division by zero");
    RatFunc q = expr_ / b.expr_;
    if (!base_->is_field_elem(RatFunc(q.den()))) return std::nullopt;
    return DiffPoly(base_, std::move(q));
}

LeaderData leader_data(const DiffPoly& f) {
    auto n = f.order();
    if (f.is_zero() || !n) throw OrderUndefined("order is undefined for x-free polynomials");
    LeaderData ld;
    ld.order = *n;
    ld.degree = f.degree_in(*n);
    ld.separant = f.partial(*n);
    ld.initial = f.coefficient_in(*n, ld.degree);
    return ld;
}

DiffPoly coefficient_derivative(const DiffPoly& f) {
    if (f.base()->is_trivial()) return DiffPoly(f.base());
    return DiffPoly(f.base(), apply_derivation(f.expr(), f.base()->generator_images()));
}

DiffPoly total_derivative(const DiffPoly& f, unsigned cap) {
    const auto& base = *f.base();
    auto images = base.generator_images();
    if (auto n = f.order()) {
        if (*n + 1 > cap)
            throw DerivativeCapExceeded("derivative index " + std::to_string(*n + 1) +
                                        " exceeds cap " + std::to_string(cap));
        for (unsigned j = 0; j <= *n; ++j) images.emplace_back(RatFunc::variable(base.x_var(j + 1)));
    }
    return DiffPoly(f.base(), apply_derivation(f.expr(), images));
}

FieldElem diff_eval_jet(const DiffPoly& f, const Jet& c) {
    auto n = f.order();
    if (!n) return f.expr();
    if (c.size() <= *n)
        throw JetTooShort("jet of length " + std::to_string(c.size()) + " for order " +
                          std::to_string(*n));
    const auto& base = *f.base();
    std::vector<std::optional<RatFunc>> values(base.size());
    for (unsigned j = 0; j <= *n; ++j) {
        if (!base.is_field_elem(c[j])) throw InvalidArgument("jet entry is not in the base field");
        values.emplace_back(c[j]);
    }
    return substitute(f.expr(), values);
}

std::vector<XTerm> x_terms(const DiffPoly& f) {
    const auto k = f.base()->size();
    std::map<std::vector<unsigned>, MultiPoly> grouped;
    for (const auto& [m, c] : f.expr().num().terms()) {
        std::vector<unsigned> xs;
        std::vector<std::uint32_t> us;
        for (Var v = 0; v < m.width(); ++v) {
            if (v < k) us.push_back(m.exponent(v));
            else xs.push_back(m.exponent(v));
        }
        while (!xs.empty() && xs.back() == 0) xs.pop_back();
        grouped[xs].add_term(Monomial(us), c);
    }
    std::vector<XTerm> out;
    for (auto& [xs, p] : grouped) out.push_back({RatFunc(p, f.expr().den()), xs});
    return out;
}

} // namespace difflarge
