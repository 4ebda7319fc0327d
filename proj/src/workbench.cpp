#include "difflarge/workbench.hpp"

#include "difflarge/parser.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

namespace difflarge {

WorkbenchConfig parse_config(const Json& j, const WorkbenchConfig& defaults) {
    if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
    WorkbenchConfig cfg = defaults;
    if (j.contains("generators") || j.contains("derivations")) {
        std::vector<std::string> gens = j.value("generators", std::vector<std::string>{});
        for (const auto& g : gens) {
            if (g == "x" || g == "t") throw InvalidArgument("generator name '" + g + "' is reserved");
            if (g.empty() || !std::isalpha(static_cast<unsigned char>(g[0])) ||
                !std::all_of(g.begin(), g.end(),
                             [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }))
                throw InvalidArgument("bad generator name '" + g + "'");
            if (std::count(gens.begin(), gens.end(), g) > 1)
                throw InvalidArgument("duplicate generator '" + g + "'");
        }
        Json ders = j.value("derivations", Json::object());
        BaseFieldSpec plain(gens, std::vector<FieldElem>(gens.size()));
        std::vector<FieldElem> images;
        for (const auto& g : gens) {
            if (!ders.contains(g)) throw InvalidArgument("missing derivation for '" + g + "'");
            images.push_back(parse_field_elem(ders.at(g).get<std::string>(), plain));
        }
        for (const auto& [k, v] : ders.items())
            if (std::find(gens.begin(), gens.end(), k) == gens.end())
                throw InvalidArgument("derivation for undeclared generator '" + k + "'");
        cfg.base = std::make_shared<const BaseFieldSpec>(gens, images);
    }
    cfg.prec = j.value("prec", cfg.prec);
    cfg.search_bound = j.value("search_bound", cfg.search_bound);
    cfg.factor_degree_bound = j.value("factor_degree_bound", cfg.factor_degree_bound);
    cfg.derivative_cap = j.value("derivative_cap", cfg.derivative_cap);
    if (cfg.prec < 1) throw InvalidArgument("prec must be positive");
    return cfg;
}

WorkbenchConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open config '" + path + "'");
    return parse_config(Json::parse(in));
}

Json series_json(const TruncSeries& s) {
    Json cs = Json::array();
    for (const auto& c : s.coeffs()) cs.push_back(print_field_elem(c, *s.base()));
    Json j;
    j["lowest"] = s.lowest();
    j["coeffs"] = cs;
    j["prec"] = s.is_exact() ? Json(nullptr) : Json(s.prec());
    return j;
}

Json jet_json(const Jet& jet, const BaseFieldSpec& base) {
    Json j = Json::array();
    for (const auto& c : jet) j.push_back(print_field_elem(c, base));
    return j;
}

namespace {

std::string P(const DiffPoly& f) { return print_diffpoly(f); }

Jet parse_jet(const std::vector<std::string>& items, const BaseFieldSpec& base) {
    Jet j;
    for (const auto& s : items) j.push_back(parse_field_elem(s, base));
    return j;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

ProblemKind parse_kind(const std::string& k) {
    if (k == "strict") return ProblemKind::Strict;
    if (k == "wide") return ProblemKind::Wide;
    throw InvalidArgument("kind must be 'strict' or 'wide'");
}

Json solution_json(const SeriesSolution& s, const BaseFieldSpec& base) {
    Json j;
    j["series"] = series_json(s.y);
    j["jet"] = jet_json(s.jet, base);
    j["residual_prec"] = s.residual_prec;
    return j;
}

Json error_json(const std::string& code, const std::string& msg) {
    Json j;
    j["error"] = code;
    j["message"] = msg;
    return j;
}

// The exact series coefficients of a polynomial in t over K.
TruncSeries parse_t_series(const std::string& text, const BaseFieldPtr& base) {
    auto gens = base->generators();
    gens.push_back("t");
    auto plain = std::make_shared<const BaseFieldSpec>(gens, std::vector<FieldElem>(gens.size()));
    DiffPoly p = parse_diffpoly(text, plain);
    if (!p.is_x_free()) throw SyntaxError("series coefficient mentions x", 0);
    Var t = static_cast<Var>(base->size());
    if (p.expr().den().uses(t)) throw SyntaxError("series must be polynomial in t", 0);
    auto cs = p.expr().num().coefficients_in(t);
    std::vector<FieldElem> coeffs(cs.empty() ? 1 : cs.rbegin()->first + 1);
    for (const auto& [e, c] : cs) coeffs[e] = RatFunc(c, p.expr().den());
    return TruncSeries(base, 0, coeffs);
}

// ------------------------------------------------------------------ corpus

struct RecordOutcome {
    Json row;
    std::string status;
};

Json record_checks(const Json& rec, const WorkbenchConfig& outer, std::string& status) {
    WorkbenchConfig cfg = rec.contains("base") ? parse_config(rec.at("base"), outer) : outer;
    const auto& base = cfg.base;
    std::string ftext = rec.at("f").get<std::string>();
    std::string gtext = rec.at("g").get<std::string>();
    DiffPoly f = parse_diffpoly(ftext, base, cfg.derivative_cap);
    DiffPoly g = parse_diffpoly(gtext, base, cfg.derivative_cap);
    DLProblem p{f, g, parse_jet(rec.at("witness").get<std::vector<std::string>>(), *base),
                parse_kind(rec.value("kind", std::string("strict")))};
    long prec = rec.value("prec", cfg.prec);
    std::string irr = rec.value("irreducible", std::string("auto"));
    if (irr != "auto" && irr != "assume") throw InvalidArgument("irreducible must be 'auto' or 'assume'");
    Irreducibility mode = irr == "assume" ? Irreducibility::Assume : Irreducibility::Auto;
    bool expect_invalid = rec.value("expect", std::string("valid")) == "invalid";

    Json checks;
    checks["f"] = P(f);
    checks["g"] = P(g);
    bool ok = true;
    auto check = [&](const char* name, bool v) {
        checks[name] = v;
        ok = ok && v;
    };
    check("roundtrip", parse_diffpoly(P(f), base) == f && parse_diffpoly(P(g), base) == g);

    auto rep = problem_validate(p);
    checks["violations"] = rep.violations;
    if (!rep.valid()) {
        status = expect_invalid ? "pass" : "invalid";
        return checks;
    }
    if (expect_invalid) {
        status = "fail";
        checks["expected_invalid"] = true;
        return checks;
    }

    try {
        auto F = build_extension(f, mode, cfg.factor_degree_bound);
        auto sol = verify_diff_solution(p, F);
        check("extension_f_vanishes", sol.f_vanishes);
        check("extension_g_nonzero", sol.g_nonzero);
    } catch (const RequiresIrreducible&) {
        status = "skipped: hypothesis";
        return checks;
    } catch (const FactorizationInconclusive&) {
        status = "skipped: hypothesis";
        return checks;
    }

    auto taylor = taylor_solve(p, prec);
    auto oracle = undet_coeffs_solve(p, prec);
    check("oracle_agrees", taylor.y == oracle.y && taylor.jet == oracle.jet);
    check("jet_modes_agree",
          jet_extend(f, p.witness, static_cast<unsigned>(prec - 1), JetMode::Prolongation) == taylor.jet);

    auto cert = ritt_reduce(g, f, cfg.derivative_cap);
    check("certificate", verify_certificate(cert, g, f));
    check("certificate_unified", cert.unified());
    auto again = ritt_reduce(cert.remainder, f, cfg.derivative_cap);
    check("idempotent", again.remainder == cert.remainder && again.r == 0);
    auto sec = section_numerator(f);
    check("section_identity", section_derive(f.expr(), sec).is_zero());
    checks["series"] = series_json(taylor.y);
    status = ok ? "pass" : "fail";
    return checks;
}

Json run_record(const std::string& line, std::size_t lineno, const WorkbenchConfig& cfg) {
    Json row;
    row["line"] = lineno;
    std::string status;
    try {
        Json rec = Json::parse(line);
        if (!rec.is_object()) throw InvalidArgument("record must be a JSON object");
        row["name"] = rec.value("name", std::string());
        Json checks = record_checks(rec, cfg, status);
        row["status"] = status;
        row["checks"] = checks;
    } catch (const Json::exception& e) {
        row["status"] = "malformed";
        row["error"] = error_json("MalformedRecord", e.what());
    } catch (const InconclusiveNonvanishing& e) {
        row["status"] = "inconclusive";
        row["error"] = error_json(e.code(), e.what());
    } catch (const Error& e) {
        row["status"] = "malformed";
        row["error"] = error_json(e.code(), e.what());
    }
    return row;
}

} // namespace

Json corpus_run(const std::string& path, const WorkbenchConfig& cfg, unsigned jobs) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open corpus '" + path + "'");
    std::vector<std::pair<std::size_t, std::string>> lines;
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        lines.emplace_back(n, line);
    }

    std::vector<Json> rows(lines.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < lines.size();)
            rows[i] = run_record(lines[i].second, lines[i].first, cfg);
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, lines.size()))));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    Json summary;
    for (const char* k : {"pass", "fail", "invalid", "skipped: hypothesis", "inconclusive", "malformed"})
        summary[k] = 0;
    for (const auto& r : rows) summary[r.at("status").get<std::string>()] = summary[r.at("status").get<std::string>()].get<int>() + 1;
    Json report;
    report["records"] = rows;
    report["summary"] = summary;
    return report;
}

namespace {

std::string table(const Json& report) {
    std::ostringstream os;
    os << std::left << std::setw(6) << "line" << std::setw(28) << "name" << "status\n";
    for (const auto& r : report.at("records"))
        os << std::setw(6) << r.at("line").get<std::size_t>() << std::setw(28)
           << r.value("name", std::string()) << r.at("status").get<std::string>() << "\n";
    for (const auto& [k, v] : report.at("summary").items()) os << k << ": " << v.get<int>() << "\n";
    return os.str();
}

struct Options {
    std::string base_path;
    std::string f, g, witness, kind = "strict", mode = "symbolic";
    long prec = 0;
    bool assume = false, oracle = false, table = false;
    std::vector<std::string> factors, mus;
    std::size_t count = 5;
    unsigned search_bound = 0;
    unsigned jobs = 1;
    std::string path;
};

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out) {
    CLI::App app{"Exact workbench for ordinary differential algebra", "dlwb"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--base", o.base_path, "base field config (JSON)");

    auto add_f = [&](CLI::App* s) { s->add_option("--f", o.f, "differential polynomial f")->required(); };
    auto add_g = [&](CLI::App* s, bool req = true) {
        auto opt = s->add_option("--g", o.g, "differential polynomial g");
        if (req) opt->required();
    };
    auto add_w = [&](CLI::App* s, bool req = true) {
        auto opt = s->add_option("--witness", o.witness, "comma-separated jet c_0,...,c_n");
        if (req) opt->required();
    };
    auto add_kind = [&](CLI::App* s) {
        s->add_option("--kind", o.kind, "strict or wide")->check(CLI::IsMember({"strict", "wide"}));
    };
    auto add_prec = [&](CLI::App* s) { s->add_option("--prec", o.prec, "series precision"); };
    auto add_assume = [&](CLI::App* s) {
        s->add_flag("--assume-irreducible", o.assume, "skip the irreducibility check");
    };

    auto* parse = app.add_subcommand("parse", "parse and print a differential polynomial");
    add_f(parse);
    auto* leader = app.add_subcommand("leader", "order, leader degree, separant, initial");
    add_f(leader);
    auto* reduce = app.add_subcommand("reduce", "reduce g with respect to f with a certificate");
    add_f(reduce);
    add_g(reduce);
    auto* saturate = app.add_subcommand("saturate", "membership of g in [f] : s_f^oo");
    add_f(saturate);
    add_g(saturate);
    add_assume(saturate);
    auto* select = app.add_subcommand("factor-select", "smooth irreducible factor through a witness");
    add_f(select);
    add_w(select);
    select->add_option("--factor", o.factors, "explicit factor (repeatable)");
    auto* section = app.add_subcommand("section", "section numerator h and identity check");
    add_f(section);
    auto* check = app.add_subcommand("check", "validate a problem and its witness");
    add_f(check);
    add_g(check);
    add_w(check);
    add_kind(check);
    auto* series = app.add_subcommand("solve-series", "power series solution of a problem");
    add_f(series);
    add_g(series);
    add_w(series);
    add_kind(series);
    add_prec(series);
    series->add_flag("--oracle", o.oracle, "cross-check with undetermined coefficients");
    series->add_option("--mode", o.mode, "jet extension mode")
        ->check(CLI::IsMember({"symbolic", "prolongation"}));
    auto* ext = app.add_subcommand("solve-extension", "solution in the extension field");
    add_f(ext);
    add_g(ext);
    add_w(ext);
    add_kind(ext);
    add_assume(ext);
    auto* distinct = app.add_subcommand("distinct", "several distinct series solutions");
    add_f(distinct);
    add_g(distinct);
    add_kind(distinct);
    add_prec(distinct);
    distinct->add_option("--count", o.count, "number of solutions");
    distinct->add_option("--search-bound", o.search_bound, "witness grid bound");
    auto* hensel = app.add_subcommand("hensel", "root of 1 + f + mu_2 f^2 + ... + mu_n f^n");
    hensel->add_option("--mu", o.mus, "mu_2, mu_3, ... as polynomials in t")->required();
    add_prec(hensel);
    auto* corpus = app.add_subcommand("corpus", "run a problem file");
    corpus->add_option("path", o.path, "JSON-lines problem file")->required();
    corpus->add_option("--jobs", o.jobs, "worker threads");
    corpus->add_flag("--table", o.table, "print a text table instead of JSON");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        out << error_json("UsageError", e.what()).dump() << "\n";
        return 2;
    }

    try {
        WorkbenchConfig cfg = o.base_path.empty() ? WorkbenchConfig{} : load_config(o.base_path);
        const auto& base = cfg.base;
        long prec = o.prec > 0 ? o.prec : cfg.prec;
        unsigned bound = o.search_bound > 0 ? o.search_bound : cfg.search_bound;
        auto pf = [&] { return parse_diffpoly(o.f, base, cfg.derivative_cap); };
        auto pg = [&] { return parse_diffpoly(o.g, base, cfg.derivative_cap); };
        auto pw = [&] { return parse_jet(split_commas(o.witness), *base); };
        auto mode = o.assume ? Irreducibility::Assume : Irreducibility::Auto;
        Json j;
        int code = 0;

        if (*parse) {
            DiffPoly f = pf();
            j["input"] = o.f;
            j["printed"] = P(f);
            auto n = f.order();
            j["order"] = n ? Json(*n) : Json(nullptr);
        } else if (*leader) {
            auto ld = leader_data(pf());
            j["order"] = ld.order;
            j["degree"] = ld.degree;
            j["separant"] = P(ld.separant);
            j["initial"] = P(ld.initial);
        } else if (*reduce) {
            DiffPoly f = pf(), g = pg();
            auto c = ritt_reduce(g, f, cfg.derivative_cap);
            j["remainder"] = P(c.remainder);
            j["r"] = c.unified() ? Json(c.r) : Json(nullptr);
            j["initial_power"] = c.initial_power;
            j["separant_power"] = c.separant_power;
            Json cof = Json::object();
            for (const auto& [k, v] : c.cofactors) cof[std::to_string(k)] = P(v);
            j["cofactors"] = cof;
            j["verified"] = verify_certificate(c, g, f);
        } else if (*saturate) {
            DiffPoly f = pf(), g = pg();
            j["member"] = saturation_member(g, f, mode, cfg.factor_degree_bound);
            j["remainder"] = P(ritt_reduce(g, f, cfg.derivative_cap).remainder);
        } else if (*select) {
            DiffPoly f = pf();
            Jet c = pw();
            std::optional<std::vector<DiffPoly>> fs;
            if (!o.factors.empty()) {
                fs.emplace();
                for (const auto& s : o.factors) fs->push_back(parse_diffpoly(s, base, cfg.derivative_cap));
            }
            DiffPoly h = select_smooth_factor(f, c, fs, cfg.factor_degree_bound);
            j["h"] = P(h);
            j["order"] = *h.order();
            j["separant_at_witness"] = print_field_elem(diff_eval_jet(leader_data(h).separant, c), *base);
        } else if (*section) {
            auto s = section_numerator(pf());
            j["f"] = P(s.f);
            j["h"] = P(s.numerator_h);
            j["separant"] = P(s.separant);
            j["section_identity"] = section_derive(s.f.expr(), s).is_zero();
        } else if (*check) {
            DLProblem p{pf(), pg(), pw(), parse_kind(o.kind)};
            auto rep = problem_validate(p);
            j["valid"] = rep.valid();
            j["violations"] = rep.violations;
            if (p.f.order() && p.witness.size() == *p.f.order() + 1 &&
                (!p.g.order() || *p.g.order() <= *p.f.order())) {
                auto d = dpoint_check(p, p.witness);
                j["dpoint"] = {{"on_locus", d.on_locus}, {"smooth", d.smooth}, {"avoids", d.avoids}};
            }
        } else if (*series) {
            DLProblem p{pf(), pg(), pw(), parse_kind(o.kind)};
            auto jm = o.mode == "prolongation" ? JetMode::Prolongation : JetMode::Symbolic;
            auto s = taylor_solve(p, prec, jm);
            j = solution_json(s, *base);
            if (o.oracle) {
                auto u = undet_coeffs_solve(p, prec);
                j["oracle_agrees"] = u.y == s.y && u.jet == s.jet;
            }
        } else if (*ext) {
            DLProblem p{pf(), pg(), pw(), parse_kind(o.kind)};
            auto rep = problem_validate(p);
            if (!rep.valid()) {
                std::string what = "invalid problem:";
                for (const auto& v : rep.violations) what += " " + v;
                throw PreconditionFailed(what);
            }
            auto F = build_extension(p.f, mode, cfg.factor_degree_bound);
            auto r = verify_diff_solution(p, F);
            DiffPoly gv(base, r.g_value);
            j["degree"] = F->degree();
            j["f_vanishes"] = r.f_vanishes;
            j["g_nonzero"] = r.g_nonzero;
            j["g_value"] = gv.expr().den().uses(F->leader()) ? "" : P(gv);
            j["transcendence_by_construction"] = r.transcendence_by_construction;
            j["success"] = r.success();
        } else if (*distinct) {
            DiffPoly f = pf();
            DLProblem p{f, pg(), Jet(), parse_kind(o.kind)};
            auto sols = find_distinct_solutions(p, o.count, prec, bound);
            Json arr = Json::array();
            for (const auto& s : sols) {
                Json e;
                e["witness"] = jet_json(Jet(s.jet.begin(), s.jet.begin() + *f.order() + 1), *base);
                e["series"] = series_json(s.y);
                arr.push_back(e);
            }
            if (sols.size() < o.count) {
                FewerFound err(sols.size());
                j = error_json(err.code(), err.what());
                j["found"] = sols.size();
                code = 1;
            } else {
                j["requested"] = o.count;
            }
            j["solutions"] = arr;
        } else if (*hensel) {
            std::vector<TruncSeries> mus;
            for (const auto& m : o.mus) mus.push_back(parse_t_series(m, base));
            j["root"] = series_json(hensel_root(mus, prec, base));
        } else if (*corpus) {
            Json rep = corpus_run(o.path, cfg, o.jobs);
            const auto& sm = rep.at("summary");
            code = sm.at("fail").get<int>() + sm.at("malformed").get<int>() + sm.at("inconclusive").get<int>() > 0;
            if (o.table) {
                out << table(rep);
                return code;
            }
            j = rep;
        }
        out << j.dump() << "\n";
        return code;
    } catch (const Error& e) {
        out << error_json(e.code(), e.what()).dump() << "\n";
        return 1;
    } catch (const Json::exception& e) {
        out << error_json("InvalidArgument", e.what()).dump() << "\n";
        return 1;
    }
}

} // namespace difflarge
