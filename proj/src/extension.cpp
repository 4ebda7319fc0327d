#include "difflarge/extension.hpp"

namespace difflarge {

namespace {

// Polynomial in one variable over a field of rational functions; index is degree.
using UPoly = std::vector<RatFunc>;

void trim(UPoly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

UPoly to_upoly(const MultiPoly& p, Var v) {
    auto cs = p.coefficients_in(v);
    UPoly u;
    if (cs.empty()) return u;
    u.resize(cs.rbegin()->first + 1);
    for (auto& [d, c] : cs) u[d] = RatFunc(c);
    return u;
}

RatFunc from_upoly(const UPoly& u, Var v) {
    RatFunc out;
    RatFunc xp(1);
    RatFunc x = RatFunc::variable(v);
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (!u[j].is_zero()) out += u[j] * xp;
        if (j + 1 < u.size()) xp *= x;
    }
    return out;
}

UPoly mul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

UPoly sub(UPoly a, const UPoly& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

// a = q b + r with deg r < deg b.
std::pair<UPoly, UPoly> divmod(UPoly a, const UPoly& b) {
    UPoly q;
    std::size_t db = b.size() - 1;
    RatFunc lcinv = b.back().inverse();
    trim(a);
    while (a.size() > db) {
        std::size_t shift = a.size() - 1 - db;
        RatFunc c = a.back() * lcinv;
        if (q.size() <= shift) q.resize(shift + 1);
        q[shift] = c;
        for (std::size_t i = 0; i <= db; ++i)
            if (!b[i].is_zero()) a[i + shift] -= c * b[i];
        a.back() = RatFunc();
        trim(a);
    }
    return {q, a};
}

} // namespace

ExtensionField::ExtensionField(DiffPoly f, SectionData s)
    : f_(std::move(f)), section_(std::move(s)) {
    auto ld = leader_data(f_);
    n_ = ld.order;
    d_ = ld.degree;
    const auto& base = *f_.base();
    xn_ = base.x_var(n_);
    for (auto& c : to_upoly(f_.expr().num(), xn_)) fpoly_.push_back(c / RatFunc(f_.expr().den()));

    images_ = base.generator_images();
    for (unsigned i = 0; i < n_; ++i) images_.emplace_back(RatFunc::variable(base.x_var(i + 1)));
    images_.emplace_back(canonical(section_.numerator_h.expr() / section_.separant.expr()));
}

RatFunc ExtensionField::reduce_num(const RatFunc& e) const {
    if (e.num().degree_in(xn_) < d_) return e;
    auto [q, r] = divmod(to_upoly(e.num(), xn_), fpoly_);
    return from_upoly(r, xn_) / RatFunc(e.den());
}

RatFunc ExtensionField::canonical(const RatFunc& e) const {
    if (!e.den().uses(xn_)) return reduce_num(e);
    RatFunc dinv = invert(reduce_num(RatFunc(e.den())));
    return reduce_num(RatFunc(e.num()) * dinv);
}

RatFunc ExtensionField::invert(const RatFunc& e) const {
    if (e.is_zero()) throw InvalidArgument("inverse of zero");
    UPoly r0 = fpoly_, r1 = to_upoly(e.num(), xn_);
    UPoly s0, s1{RatFunc(1)};
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1);
        UPoly s = sub(s0, mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.size() > 1)
        throw ReducibleDetected("element shares a factor with f; f is reducible over K(x_0..x_{n-1})");
    return reduce_num(from_upoly(s0, xn_) * RatFunc(e.den()) / r0[0]);
}

RatFunc ExtensionField::derive(const RatFunc& e) const {
    return canonical(apply_derivation(e, images_));
}

ExtensionPtr build_extension(const DiffPoly& f, Irreducibility mode, unsigned degree_bound) {
    auto ld = leader_data(f);
    if (ld.order < 1) throw InvalidArgument("extension needs ord f >= 1");
    if (mode == Irreducibility::Auto) require_irreducible(f, degree_bound);
    SectionData s = section_numerator(f);
    return ExtensionPtr(new ExtensionField(f, std::move(s)));
}

ExtensionElem::ExtensionElem(ExtensionPtr field, const RatFunc& e)
    : field_(std::move(field)), rep_(field_->canonical(e)) {}

ExtensionElem ExtensionElem::generator(ExtensionPtr field, unsigned j) {
    unsigned n = field->order();
    ExtensionElem e(field, RatFunc::variable(field->base()->x_var(std::min(j, n))));
    for (unsigned k = n; k < j; ++k) e = e.derive();
    return e;
}

ExtensionElem ExtensionElem::derive() const {
    return ExtensionElem(field_, field_->derive(rep_), Canonical{});
}

ExtensionElem ExtensionElem::inverse() const {
    return ExtensionElem(field_, field_->invert(rep_), Canonical{});
}

namespace {

void same_field(const ExtensionElem& a, const ExtensionElem& b) {
    if (a.field() != b.field() && !(a.field()->f() == b.field()->f()))
        throw BaseFieldMismatch("elements of different extension fields");
}

} // namespace

ExtensionElem operator+(const ExtensionElem& a, const ExtensionElem& b) {
    same_field(a, b);
    return ExtensionElem(a.field_, a.rep_ + b.rep_, ExtensionElem::Canonical{});
}

ExtensionElem operator-(const ExtensionElem& a, const ExtensionElem& b) {
    same_field(a, b);
    return ExtensionElem(a.field_, a.rep_ - b.rep_, ExtensionElem::Canonical{});
}

ExtensionElem operator*(const ExtensionElem& a, const ExtensionElem& b) {
    same_field(a, b);
    return ExtensionElem(a.field_, a.field_->canonical(a.rep_ * b.rep_), ExtensionElem::Canonical{});
}

SolutionReport verify_diff_solution(const DLProblem& p, const ExtensionPtr& field) {
    if (!(p.f == field->f())) throw InvalidArgument("extension was not built from the problem's f");
    ExtensionElem a = ExtensionElem::generator(field, 0);
    SolutionReport rep;
    ExtensionElem fv = diff_eval_ring(p.f, a);
    ExtensionElem gv = diff_eval_ring(p.g, a);
    rep.f_vanishes = fv.is_zero();
    rep.g_nonzero = !gv.is_zero();
    rep.transcendence_by_construction = field->order() >= 1;
    rep.f_value = fv.rep();
    rep.g_value = gv.rep();
    return rep;
}

} // namespace difflarge
