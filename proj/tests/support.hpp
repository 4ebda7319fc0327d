#pragma once

#include "difflarge/parser.hpp"

#include <memory>
#include <random>

namespace testsupport {

using namespace difflarge;

inline BaseFieldPtr q_base() { return BaseFieldSpec::rationals(); }

// Q(u) with delta u = 1.
inline BaseFieldPtr u_base() {
    static const BaseFieldPtr b = std::make_shared<const BaseFieldSpec>(
        std::vector<std::string>{"u"}, std::vector<FieldElem>{FieldElem(1)});
    return b;
}

// Q(u, v) with delta u = u^2 + 1, delta v = u/v.
inline BaseFieldPtr uv_base() {
    static const BaseFieldPtr b = [] {
        std::vector<std::string> g{"u", "v"};
        auto plain = std::make_shared<const BaseFieldSpec>(g, std::vector<FieldElem>(2));
        return std::make_shared<const BaseFieldSpec>(
            g, std::vector<FieldElem>{parse_field_elem("u^2 + 1", *plain),
                                      parse_field_elem("u/v", *plain)});
    }();
    return b;
}

inline DiffPoly P(const std::string& s, const BaseFieldPtr& b = q_base()) {
    return parse_diffpoly(s, b);
}

inline FieldElem F(const std::string& s, const BaseFieldPtr& b = q_base()) {
    return parse_field_elem(s, *b);
}

inline Jet J(std::initializer_list<const char*> xs, const BaseFieldPtr& b = q_base()) {
    Jet j;
    for (const char* s : xs) j.push_back(F(s, b));
    return j;
}

// Random differential polynomial of order <= max_order in the base's
// generators and x_0..x_{max_order}.
inline DiffPoly random_diffpoly(std::mt19937& rng, const BaseFieldPtr& base, unsigned max_order,
                                unsigned max_deg, int terms) {
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<unsigned> deg(0, max_deg);
    Var nvars = static_cast<Var>(base->size() + max_order + 1);
    std::uniform_int_distribution<Var> var(0, nvars - 1);
    MultiPoly p;
    for (int t = 0; t < terms; ++t) {
        MultiPoly m(coef(rng));
        unsigned d = deg(rng);
        for (unsigned k = 0; k < d; ++k) m = m * MultiPoly::variable(var(rng));
        p += m;
    }
    return DiffPoly(base, RatFunc(p));
}

} // namespace testsupport
