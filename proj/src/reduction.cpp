#include "difflarge/reduction.hpp"

namespace difflarge {

namespace {

struct Reducer {
    const DiffPoly& f;
    unsigned n;
    unsigned d;
    DiffPoly s;
    DiffPoly i;
    unsigned cap;
    std::vector<DiffPoly> derivs; // derivs[k] = D^k f

    DiffPoly h;
    std::map<unsigned, DiffPoly> cof;
    unsigned a = 0; // power of i
    unsigned b = 0; // power of s

    Reducer(const DiffPoly& f_, const DiffPoly& g, unsigned cap_)
        : f(f_), cap(cap_), h(g) {
        auto ld = leader_data(f);
        n = ld.order;
        d = ld.degree;
        s = ld.separant;
        i = ld.initial;
        derivs.push_back(f);
    }

    const DiffPoly& deriv(unsigned k) {
        while (derivs.size() <= k) derivs.push_back(total_derivative(derivs.back(), cap));
        return derivs[k];
    }

    void scale(const DiffPoly& m) {
        h = m * h;
        for (auto& [j, c] : cof) c = m * c;
    }

    void add_cof(unsigned j, const DiffPoly& q) {
        auto [it, fresh] = cof.try_emplace(j, q);
        if (!fresh) it->second += q;
    }

    // One pseudo-division step of h against `by` on x_v^e, whose leading
    // coefficient in x_v is lead with degree dl.
    void step(unsigned v, unsigned e, unsigned j, const DiffPoly& lead, unsigned dl, unsigned& power) {
        DiffPoly lc = h.coefficient_in(v, e);
        DiffPoly xp = DiffPoly::x(f.base(), v).pow(e - dl);
        const DiffPoly& by = deriv(j);
        if (auto q = lc.divide(lead)) {
            DiffPoly m = *q * xp;
            h -= m * by;
            add_cof(j, m);
        } else {
            scale(lead);
            DiffPoly m = lc * xp;
            h -= m * by;
            add_cof(j, m);
            ++power;
        }
    }

    void reduce_algebraic() {
        while (!h.is_zero() && h.order() == n && h.degree_in(n) >= d) step(n, h.degree_in(n), 0, i, d, a);
    }

    void run() {
        while (!h.is_zero() && h.order() && *h.order() > n) {
            unsigned m = *h.order();
            step(m, h.degree_in(m), m - n, s, 1, b);
        }
        reduce_algebraic();
        // Bring the multiplier to the form (i s)^r.
        for (int round = 0; round < 16 && a != b; ++round) {
            if (a < b) {
                scale(i.pow(b - a));
                a = b;
            } else {
                scale(s.pow(a - b));
                b = a;
                reduce_algebraic();
            }
        }
        for (auto it = cof.begin(); it != cof.end();) {
            if (it->second.is_zero()) it = cof.erase(it);
            else ++it;
        }
    }
};

} // namespace

ReductionCertificate ritt_reduce(const DiffPoly& g, const DiffPoly& f, unsigned cap) {
    if (!same_base(g.base(), f.base())) throw BaseFieldMismatch("g and f over different base fields");
    Reducer red(f, g, cap);
    red.run();
    ReductionCertificate cert{red.h, 0, red.a, red.b, std::move(red.cof)};
    if (cert.unified()) cert.r = cert.initial_power;
    return cert;
}

bool is_reduced(const DiffPoly& g, const DiffPoly& f) {
    auto ld = leader_data(f);
    auto og = g.order();
    if (!og) return true;
    return *og <= ld.order && g.degree_in(ld.order) < ld.degree;
}

bool verify_certificate(const ReductionCertificate& cert, const DiffPoly& g, const DiffPoly& f) {
    auto ld = leader_data(f);
    DiffPoly lhs = ld.initial.pow(cert.initial_power) * ld.separant.pow(cert.separant_power) * g;
    DiffPoly rhs = cert.remainder;
    DiffPoly dj = f;
    unsigned j = 0;
    for (const auto& [k, c] : cert.cofactors) {
        for (; j < k; ++j) dj = total_derivative(dj);
        rhs += c * dj;
    }
    if (cert.unified() && cert.r != cert.initial_power) return false;
    return lhs == rhs && is_reduced(cert.remainder, f);
}

std::optional<std::vector<DiffPoly>> x_factors(const DiffPoly& f, unsigned degree_bound) {
    if (f.is_zero()) throw InvalidArgument("cannot factor zero");
    auto out = kronecker_factor(f.expr().num(), degree_bound);
    if (std::holds_alternative<Inconclusive>(out)) return std::nullopt;
    std::vector<DiffPoly> xs;
    for (const auto& p : std::get<Factorization>(out).factors) {
        DiffPoly h(f.base(), RatFunc(p));
        if (!h.is_x_free()) xs.push_back(std::move(h));
    }
    return xs;
}

void require_irreducible(const DiffPoly& f, unsigned degree_bound) {
    auto fs = x_factors(f, degree_bound);
    if (!fs) throw FactorizationInconclusive("cannot decide irreducibility within degree bound " +
                                             std::to_string(degree_bound));
    if (fs->size() != 1) throw RequiresIrreducible("polynomial splits into " +
                                                   std::to_string(fs->size()) + " factors over K");
}

bool saturation_member(const DiffPoly& g, const DiffPoly& f, Irreducibility mode,
                       unsigned degree_bound) {
    leader_data(f);
    if (mode == Irreducibility::Auto) require_irreducible(f, degree_bound);
    return ritt_reduce(g, f).remainder.is_zero();
}

DiffPoly select_smooth_factor(const DiffPoly& f, const Jet& c,
                              const std::optional<std::vector<DiffPoly>>& factors,
                              unsigned degree_bound) {
    auto ld = leader_data(f);
    if (!diff_eval_jet(f, c).is_zero()) throw PreconditionFailed("f does not vanish at the witness");
    if (diff_eval_jet(ld.separant, c).is_zero())
        throw PreconditionFailed("separant vanishes at the witness");

    std::vector<DiffPoly> fs;
    if (factors) {
        DiffPoly prod = DiffPoly::constant(f.base(), 1);
        for (const auto& h : *factors) prod *= h;
        auto unit = prod.divide(f);
        if (!unit || !unit->is_x_free()) throw InvalidArgument("factors do not multiply to f");
        fs = *factors;
    } else {
        auto got = x_factors(f, degree_bound);
        if (!got) throw FactorizationInconclusive("factorization inconclusive within degree bound " +
                                                  std::to_string(degree_bound));
        fs = std::move(*got);
    }
    for (const auto& h : fs) {
        if (h.order() != ld.order) continue;
        if (!diff_eval_jet(h, c).is_zero()) continue;
        if (diff_eval_jet(leader_data(h).separant, c).is_zero()) continue;
        return h;
    }
    throw InternalError("no factor satisfies the smoothness conclusions");
}

ValidationReport problem_validate(const DLProblem& p) {
    ValidationReport rep;
    auto& v = rep.violations;
    if (!same_base(p.f.base(), p.g.base())) {
        v.push_back("base_mismatch");
        return rep;
    }
    auto n = p.f.order();
    if (p.f.is_zero() || !n) {
        v.push_back("order_f_undefined");
        return rep;
    }
    if (p.g.is_zero()) v.push_back("g_nonzero_required");
    auto og = p.g.order();
    if (p.kind == ProblemKind::Strict) {
        if (og && *og >= *n) v.push_back("order_g_not_below_order_f");
    } else {
        if (*n < 1) v.push_back("order_f_below_one");
        if (og && *og > *n) v.push_back("order_g_exceeds_order_f");
    }
    if (p.witness.size() != *n + 1) {
        v.push_back("witness_length");
        return rep;
    }
    for (const auto& c : p.witness) {
        if (!p.f.base()->is_field_elem(c)) {
            v.push_back("witness_outside_base");
            return rep;
        }
    }
    if (!diff_eval_jet(p.f, p.witness).is_zero()) v.push_back("f_nonzero_at_witness");
    auto ld = leader_data(p.f);
    FieldElem sc = diff_eval_jet(ld.separant, p.witness);
    if (sc.is_zero()) v.push_back("separant_vanishes");
    if (p.kind == ProblemKind::Wide && !sc.is_zero() && (!og || *og <= *n) &&
        diff_eval_jet(p.g, p.witness).is_zero())
        v.push_back("g_vanishes_at_witness");
    return rep;
}

} // namespace difflarge
