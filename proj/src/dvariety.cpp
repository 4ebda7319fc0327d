#include "difflarge/dvariety.hpp"

namespace difflarge {

namespace {

std::vector<std::optional<RatFunc>> section_images(const SectionData& s) {
    const auto& base = *s.f.base();
    auto images = base.generator_images();
    for (unsigned i = 0; i < s.order; ++i) images.emplace_back(RatFunc::variable(base.x_var(i + 1)));
    images.emplace_back(s.numerator_h.expr() / s.separant.expr());
    return images;
}

FieldElem eval_at(const RatFunc& e, const BaseFieldSpec& base, const Jet& c) {
    std::vector<std::optional<RatFunc>> values(base.size());
    for (const auto& x : c) values.emplace_back(x);
    FieldElem den = substitute(e.den(), values);
    if (den.is_zero()) throw InternalError("denominator vanishes at a smooth point");
    return substitute(e.num(), values) / den;
}

} // namespace

SectionData section_numerator(const DiffPoly& f) {
    auto ld = leader_data(f);
    if (ld.separant.is_zero()) throw ZeroSeparant("f is not separable in its leader");
    SectionData s{f, ld.order, DiffPoly(f.base()), ld.separant};
    DiffPoly acc = coefficient_derivative(f);
    for (unsigned i = 0; i < ld.order; ++i) acc += DiffPoly::x(f.base(), i + 1) * f.partial(i);
    s.numerator_h = -acc;
    if (!section_derive(f.expr(), s).is_zero())
        throw InternalError("section does not annihilate f");
    return s;
}

RatFunc section_derive(const RatFunc& e, const SectionData& s) {
    if (e.width() > s.f.base()->x_var(s.order + 1))
        throw InvalidArgument("expression exceeds the order of the section");
    return apply_derivation(e, section_images(s));
}

Jet jet_extend(const DiffPoly& f, const Jet& c, unsigned N, JetMode mode) {
    auto ld = leader_data(f);
    unsigned n = ld.order;
    if (c.size() != n + 1) throw InvalidArgument("witness length differs from ord f + 1");
    if (N < n) throw InvalidArgument("N below the order of f");
    if (!diff_eval_jet(f, c).is_zero()) throw PreconditionFailed("f does not vanish at the jet");
    FieldElem sc = diff_eval_jet(ld.separant, c);
    if (sc.is_zero()) throw PreconditionFailed("separant vanishes at the jet");

    const auto& base = *f.base();
    Jet out = c;
    if (mode == JetMode::Symbolic) {
        SectionData s = section_numerator(f);
        RatFunc e = RatFunc::variable(base.x_var(n));
        for (unsigned k = n + 1; k <= N; ++k) {
            e = section_derive(e, s);
            out.push_back(eval_at(e, base, c));
        }
    } else {
        DiffPoly dk = f;
        for (unsigned k = n + 1; k <= N; ++k) {
            dk = total_derivative(dk, N);
            DiffPoly rest = dk - ld.separant * DiffPoly::x(f.base(), k);
            if (rest.degree_in(k) != 0) throw InternalError("prolongation not linear in its leader");
            out.push_back(-diff_eval_jet(rest, out) / sc);
        }
    }
    return out;
}

DPointReport dpoint_check(const DLProblem& p, const Jet& c) {
    auto ld = leader_data(p.f);
    if (c.size() != ld.order + 1) throw InvalidArgument("jet length differs from ord f + 1");
    DPointReport r;
    r.on_locus = diff_eval_jet(p.f, c).is_zero();
    FieldElem sc = diff_eval_jet(ld.separant, c);
    r.smooth = !sc.is_zero();
    auto og = p.g.order();
    if (og && *og > ld.order) throw JetTooShort("g has higher order than the jet");
    r.avoids = r.smooth && !diff_eval_jet(p.g, c).is_zero();
    return r;
}

} // namespace difflarge
