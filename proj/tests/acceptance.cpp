// Acceptance suite: one PASS/FAIL line per criterion.
#include "difflarge/workbench.hpp"
#include "support.hpp"

#include <chrono>
#include <iomanip>
#include <set>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace testsupport;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Record {
    std::string name;
    WorkbenchConfig cfg;
    DLProblem p;
    long prec;
    ExtensionPtr F;
};

std::string corpus_path;

// Valid problems with an irreducible f.
std::vector<Record> load_corpus() {
    std::ifstream in(corpus_path);
    if (!in) throw std::runtime_error("cannot open " + corpus_path);
    std::vector<Record> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Json rec = Json::parse(line);
        WorkbenchConfig cfg = rec.contains("base") ? parse_config(rec["base"]) : WorkbenchConfig{};
        Jet w;
        for (const auto& s : rec["witness"]) w.push_back(parse_field_elem(s.get<std::string>(), *cfg.base));
        DLProblem p{parse_diffpoly(rec["f"].get<std::string>(), cfg.base),
                    parse_diffpoly(rec["g"].get<std::string>(), cfg.base), w,
                    rec.value("kind", std::string("strict")) == "wide" ? ProblemKind::Wide : ProblemKind::Strict};
        if (!problem_validate(p).valid()) continue;
        ExtensionPtr F;
        try {
            F = build_extension(p.f);
        } catch (const RequiresIrreducible&) {
            continue;
        }
        out.push_back({rec.value("name", std::string()), cfg, p, rec.value("prec", 12L), F});
    }
    return out;
}

Rational factorial(unsigned k) {
    Rational r = 1;
    for (unsigned i = 2; i <= k; ++i) r *= i;
    return r;
}

bool zero_below(const TruncSeries& s, long n) {
    if (s.prec() < n) return false;
    for (long e = std::min(s.lowest(), n); e < n; ++e)
        if (!s.coeff(e).is_zero()) return false;
    return true;
}

bool series_vanishes(const TruncSeries& s) {
    for (long e = s.lowest(); e < s.prec() && e < s.lowest() + static_cast<long>(s.coeffs().size()); ++e)
        if (!s.coeff(e).is_zero()) return false;
    return true;
}

ExtensionElem random_elem(std::mt19937& rng, const ExtensionPtr& F) {
    auto base = F->base();
    DiffPoly num = random_diffpoly(rng, base, F->order(), 2, 3);
    DiffPoly den = F->order() == 0 ? DiffPoly::constant(base, 3) : random_diffpoly(rng, base, F->order() - 1, 1, 2);
    if (den.is_zero() || den.degree_in(F->order()) > 0) den = DiffPoly::constant(base, 3);
    return ExtensionElem(F, num.expr() / den.expr());
}

// ------------------------------------------------------------------ criteria

std::string c1() {
    DLProblem p{P("x' - x"), P("1"), J({"1", "1"}), ProblemKind::Strict};
    auto t0 = Clock::now();
    auto s = taylor_solve(p, 20);
    double dt = seconds_since(t0);
    for (unsigned k = 0; k < 20; ++k)
        if (s.y.coeff(k) != FieldElem(1 / factorial(k))) return "coefficient " + std::to_string(k);
    if (!zero_below(diff_eval_ring(p.f, s.y), 19)) return "residual";
    if (dt >= 0.5) return "took " + std::to_string(dt) + " s";
    return "";
}

std::string c2() {
    DLProblem p{P("x*x' - 1"), P("x"), J({"1", "1"}), ProblemKind::Strict};
    auto s = taylor_solve(p, 16);
    Rational c = 1;
    for (unsigned k = 0; k < 16; ++k) {
        if (s.y.coeff(k) != FieldElem(c)) return "coefficient " + std::to_string(k);
        c *= (Rational(1, 2) - k) / Rational(k + 1) * 2;
    }
    return "";
}

std::string c3() {
    auto b = u_base();
    auto y = jet_to_series(J({"u", "0"}, b), 2, b);
    TruncSeries expect(b, 0, {F("u", b), F("-1", b)});
    if (!(y == expect.truncate(2))) return "jet_to_series";
    if (!series_derive(expect).is_zero()) return "derivative";
    DLProblem p{P("x'", b), P("1", b), J({"u", "0"}, b), ProblemKind::Strict};
    auto s = taylor_solve(p, 8);
    if (!(s.y == expect.truncate(8))) return "taylor_solve";
    return "";
}

std::string c4() {
    auto b = u_base();
    DLProblem p{P("x'' - u*x", b), P("1", b), J({"1", "0", "u"}, b), ProblemKind::Strict};
    auto s = taylor_solve(p, 18);
    if (!zero_below(diff_eval_ring(p.f, s.y), 16)) return "residual";
    return "";
}

std::string c5(const std::vector<Record>& corpus) {
    if (corpus.size() < 25) return "corpus has " + std::to_string(corpus.size()) + " valid problems";
    std::set<unsigned> orders;
    auto t0 = Clock::now();
    for (const auto& r : corpus) {
        orders.insert(*r.p.f.order());
        auto a = taylor_solve(r.p, 12);
        auto b = undet_coeffs_solve(r.p, 12);
        if (!(a.y == b.y)) return r.name;
    }
    if (orders != std::set<unsigned>{1, 2, 3}) return "orders 1..3 not all present";
    double dt = seconds_since(t0);
    if (dt >= 30) return "took " + std::to_string(dt) + " s";
    return "";
}

std::string c6() {
    auto q = q_base();
    auto f = hensel_root({TruncSeries::t_power(q, 1)}, 16, q);
    std::vector<Rational> cat{1};
    for (unsigned k = 0; k + 1 < 16; ++k) {
        Rational c = 0;
        for (unsigned i = 0; i <= k; ++i) c += cat[i] * cat[k - i];
        cat.push_back(c);
    }
    for (unsigned k = 0; k < 16; ++k)
        if (f.coeff(k) != FieldElem(-cat[k])) return "coefficient " + std::to_string(k);
    auto eq = TruncSeries::constant(q, 1) + f + TruncSeries::t_power(q, 1) * f * f;
    if (!zero_below(eq, 16)) return "defining equation";
    return "";
}

std::string c7(const std::vector<Record>& corpus) {
    for (const auto& r : corpus) {
        auto cert = ritt_reduce(r.p.g, r.p.f);
        if (!cert.unified() || !verify_certificate(cert, r.p.g, r.p.f)) return r.name + ": identity";
        if (!is_reduced(cert.remainder, r.p.f)) return r.name + ": remainder";
    }
    return "";
}

std::string c8(const std::vector<Record>& corpus) {
    for (const auto& r : corpus) {
        auto s = section_numerator(r.p.f);
        if (!section_derive(r.p.f.expr(), s).is_zero()) return r.name;
    }
    return "";
}

std::string c9(const std::vector<Record>& corpus) {
    std::mt19937 rng(2024);
    for (const auto& r : corpus) {
        if (!verify_diff_solution(r.p, r.F).success()) return r.name + ": solution";
        int inverses = 0;
        for (int t = 0; t < 1000 && inverses < 100; ++t) {
            auto a = random_elem(rng, r.F);
            if (a.is_zero()) continue;
            ++inverses;
            if (!(a * a.inverse() == a.lift(1))) return r.name + ": inverse";
        }
        if (inverses < 100) return r.name + ": too few nonzero samples";
        for (int t = 0; t < 100; ++t) {
            auto a = random_elem(rng, r.F), b = random_elem(rng, r.F);
            if (!((a * b).derive() == a * b.derive() + b * a.derive())) return r.name + ": Leibniz";
        }
    }
    return "";
}

std::string c10() {
    struct Case {
        const char *h, *other;
        std::initializer_list<const char*> c;
        BaseFieldPtr base;
    };
    std::vector<Case> cases{
        {"x' - x", "x' + x", {"1", "1"}, q_base()},
        {"x'^2 - x", "x' + 1", {"1", "1"}, q_base()},
        {"x'' + x", "x - 2", {"0", "1", "0"}, q_base()},
        {"x' - x^2", "x'^2 + 1", {"1", "1"}, q_base()},
        {"x*x' - 1", "x' + x + 1", {"1", "1"}, q_base()},
        {"x''' - x", "x' + 3", {"1", "1", "1", "1"}, q_base()},
        {"x'' - x'^2 - x", "x'' + x", {"1", "0", "1"}, q_base()},
        {"x' - u", "x' + u", {"u", "u"}, u_base()},
        {"x'' - u*x", "x - u", {"1", "0", "u"}, u_base()},
        {"x' - v", "x' - u", {"u", "v"}, uv_base()},
    };
    for (const auto& k : cases) {
        DiffPoly f = P(k.h, k.base) * P(k.other, k.base);
        Jet c;
        for (const char* s : k.c) c.push_back(F(s, k.base));
        DiffPoly h = select_smooth_factor(f, c, std::nullopt);
        if (!diff_eval_jet(h, c).is_zero()) return std::string(k.h) + ": h(c)";
        if (diff_eval_jet(leader_data(h).separant, c).is_zero()) return std::string(k.h) + ": s_h(c)";
        if (h.order() != f.order()) return std::string(k.h) + ": order";
        if (!f.divide(h)) return std::string(k.h) + ": divisibility";
    }
    return "";
}

std::string c11(const std::vector<Record>& corpus) {
    std::mt19937 rng(11);
    for (const auto& r : corpus) {
        const DiffPoly& f = r.p.f;
        unsigned n = *f.order();
        auto base = f.base();
        std::vector<DiffPoly> probes{
            total_derivative(f),
            DiffPoly::x(base, n + 1) * f + total_derivative(total_derivative(f)),
            r.p.g,
            DiffPoly::x(base, 0) - DiffPoly::constant(base, r.p.witness[0]) - DiffPoly::constant(base, 1),
            random_diffpoly(rng, base, n, 2, 3),
        };
        auto y = taylor_solve(r.p, r.prec).y;
        auto gen = ExtensionElem::generator(r.F, 0);
        for (std::size_t i = 0; i < probes.size(); ++i) {
            const auto& g = probes[i];
            bool member = saturation_member(g, f, Irreducibility::Auto, kDefaultFactorDegreeBound);
            bool ext_zero = diff_eval_ring(g, gen).is_zero();
            bool series_zero = series_vanishes(diff_eval_ring(g, y));
            if (member != (ext_zero && series_zero))
                return r.name + ": probe " + std::to_string(i);
        }
    }
    return "";
}

std::string c12() {
    DLProblem p{P("x'^2 - x"), P("x"), J({"1", "1"}), ProblemKind::Strict};
    auto sols = distinct_solutions(p, 5, 8, 8);
    if (sols.size() != 5) return "count";
    for (unsigned q = 1; q <= 5; ++q)
        if (sols[q - 1].jet[0] != FieldElem(q * q) || sols[q - 1].jet[1] != FieldElem(q))
            return "witness " + std::to_string(q);
    for (std::size_t i = 0; i < sols.size(); ++i)
        for (std::size_t j = i + 1; j < sols.size(); ++j)
            if (sols[i].y == sols[j].y) return "duplicate series";
    return "";
}

std::string c13() {
    std::ostringstream a, b, c;
    run_command({"corpus", corpus_path}, a);
    run_command({"corpus", corpus_path}, b);
    run_command({"corpus", corpus_path, "--jobs", "4"}, c);
    if (a.str().empty() || a.str() != b.str() || a.str() != c.str()) return "corpus output differs";
    std::ifstream in(corpus_path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Json rec = Json::parse(line);
        WorkbenchConfig cfg = rec.contains("base") ? parse_config(rec["base"]) : WorkbenchConfig{};
        for (const char* key : {"f", "g"}) {
            DiffPoly d = parse_diffpoly(rec[key].get<std::string>(), cfg.base);
            if (!(parse_diffpoly(print_diffpoly(d), cfg.base) == d)) return rec[key].get<std::string>();
        }
    }
    return "";
}

} // namespace

int main(int argc, char** argv) {
    corpus_path = argc > 1 ? argv[1] : "tests/data/corpus.jsonl";
    std::vector<Record> corpus;
    try {
        corpus = load_corpus();
    } catch (const std::exception& e) {
        std::cout << "cannot load corpus: " << e.what() << "\n";
        return 1;
    }

    std::vector<std::pair<std::string, std::function<std::string()>>> criteria{
        {"exponential series at precision 20", c1},
        {"square-root germ at precision 16", c2},
        {"twisted constant u - t", c3},
        {"twisted second-order residual", c4},
        {"Taylor and undetermined coefficients agree on the corpus", [&] { return c5(corpus); }},
        {"Catalan root of the Hensel equation", c6},
        {"reduction certificates on the corpus", [&] { return c7(corpus); }},
        {"section identity on the corpus", [&] { return c8(corpus); }},
        {"extension solutions, field axioms and Leibniz rule", [&] { return c9(corpus); }},
        {"smooth factor selection on reducible products", c10},
        {"saturation membership matches evaluation", [&] { return c11(corpus); }},
        {"distinct solutions of x'^2 - x", c12},
        {"CLI determinism and round-trip", c13},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = Clock::now();
        std::string why;
        try {
            why = criteria[i].second();
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        std::ostringstream line;
        line << (why.empty() ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first;
        if (!why.empty()) line << " (" << why << ")";
        line << " [" << std::fixed << std::setprecision(2) << seconds_since(t0) << " s]";
        std::cout << line.str() << std::endl;
        failed += !why.empty();
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed ? 1 : 0;
}
