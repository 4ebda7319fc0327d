#include "difflarge/series.hpp"

#include <algorithm>

namespace difflarge {

namespace {

Rational factorial(unsigned k) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), k);
    return Rational(f);
}

Rational binomial(unsigned n, unsigned k) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rational(b);
}

long add_prec(long p, long shift) {
    return p == TruncSeries::kExact ? TruncSeries::kExact : p + shift;
}

} // namespace

TruncSeries::TruncSeries(BaseFieldPtr base) : base_(std::move(base)) {}

TruncSeries::TruncSeries(BaseFieldPtr base, long lowest, std::vector<FieldElem> coeffs, long prec)
    : base_(std::move(base)), lowest_(lowest), coeffs_(std::move(coeffs)), prec_(prec) {
    if (prec_ <= lowest_) throw InvalidArgument("series precision must exceed its lowest exponent");
    for (const auto& c : coeffs_)
        if (!base_->is_field_elem(c)) throw InvalidArgument("series coefficient outside the base field");
    normalize();
}

void TruncSeries::normalize() {
    if (!is_exact()) {
        coeffs_.resize(static_cast<std::size_t>(prec_ - lowest_));
        std::size_t lead = 0;
        while (lowest_ + static_cast<long>(lead) < prec_ - 1 && coeffs_[lead].is_zero()) ++lead;
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
        lowest_ += static_cast<long>(lead);
        return;
    }
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
    lowest_ = coeffs_.empty() ? 0 : lowest_ + static_cast<long>(lead);
}

TruncSeries TruncSeries::constant(BaseFieldPtr base, const FieldElem& c) {
    return TruncSeries(std::move(base), 0, {c});
}

TruncSeries TruncSeries::t_power(BaseFieldPtr base, long e) {
    return TruncSeries(std::move(base), e, {FieldElem(1)});
}

FieldElem TruncSeries::coeff(long e) const {
    if (e >= prec_) throw InvalidArgument("coefficient beyond precision");
    if (e < lowest_ || e >= lowest_ + static_cast<long>(coeffs_.size())) return FieldElem();
    return coeffs_[static_cast<std::size_t>(e - lowest_)];
}

bool TruncSeries::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const FieldElem& c) { return c.is_zero(); });
}

TruncSeries TruncSeries::truncate(long prec) const {
    if (prec >= prec_) return *this;
    long lo = std::min(lowest_, prec - 1);
    std::vector<FieldElem> cs;
    for (long e = lo; e < prec; ++e) cs.push_back(coeff(e));
    return TruncSeries(base_, lo, std::move(cs), prec);
}

TruncSeries TruncSeries::derive() const {
    long lo = lowest_ - 1;
    long end = lowest_ + static_cast<long>(coeffs_.size()); // exclusive
    long prec = is_exact() ? kExact : prec_ - 1;
    if (!is_exact()) end = std::min(end, prec);
    bool twist = !base_->is_trivial();
    std::vector<FieldElem> cs;
    for (long e = lo; e < end; ++e) {
        FieldElem c;
        if (twist && e >= lowest_) c = base_derive(coeff(e), *base_);
        long up = e + 1;
        if (up != 0 && up < lowest_ + static_cast<long>(coeffs_.size())) c += coeff(up) * FieldElem(up);
        cs.push_back(std::move(c));
    }
    if (cs.empty()) cs.emplace_back();
    return TruncSeries(base_, lo, std::move(cs), prec);
}

TruncSeries TruncSeries::operator-() const {
    TruncSeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    if (!same_base(a.base_, b.base_)) throw BaseFieldMismatch("series over different base fields");
    long lo = std::min(a.lowest_, b.lowest_);
    long prec = std::min(a.prec_, b.prec_);
    long end = std::max(a.lowest_ + static_cast<long>(a.coeffs_.size()),
                        b.lowest_ + static_cast<long>(b.coeffs_.size()));
    if (prec != TruncSeries::kExact) end = prec;
    std::vector<FieldElem> cs;
    for (long e = lo; e < end; ++e) cs.push_back(a.coeff(e) + b.coeff(e));
    if (cs.empty()) cs.emplace_back();
    return TruncSeries(a.base_, lo, std::move(cs), prec);
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    if (!same_base(a.base_, b.base_)) throw BaseFieldMismatch("series over different base fields");
    long lo = a.lowest_ + b.lowest_;
    long prec = std::min(add_prec(a.prec_, b.lowest_), add_prec(b.prec_, a.lowest_));
    long sa = static_cast<long>(a.coeffs_.size()), sb = static_cast<long>(b.coeffs_.size());
    long len = prec == TruncSeries::kExact ? std::max(0L, sa + sb - 1) : prec - lo;
    std::vector<FieldElem> cs(static_cast<std::size_t>(std::max(len, 1L)));
    for (long i = 0; i < sa && i < len; ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (long j = 0; j < sb && i + j < len; ++j)
            if (!b.coeffs_[j].is_zero()) cs[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return TruncSeries(a.base_, lo, std::move(cs), prec);
}

bool TruncSeries::operator==(const TruncSeries& o) const {
    if (prec_ != o.prec_) return false;
    long lo = std::min(lowest_, o.lowest_);
    long end = std::max(lowest_ + static_cast<long>(coeffs_.size()),
                        o.lowest_ + static_cast<long>(o.coeffs_.size()));
    for (long e = lo; e < end; ++e)
        if (coeff(e) != o.coeff(e)) return false;
    return true;
}

TruncSeries jet_to_series(const Jet& jet, long prec, const BaseFieldPtr& base) {
    if (prec < 1 || prec > static_cast<long>(jet.size()))
        throw InvalidArgument("precision must lie between 1 and the jet length");
    bool twist = !base->is_trivial();
    std::vector<std::vector<FieldElem>> tower; // tower[j][m] = delta^m a_j
    std::vector<FieldElem> a;
    for (unsigned k = 0; k < static_cast<unsigned>(prec); ++k) {
        FieldElem acc = jet[k];
        if (twist) {
            for (unsigned j = 0; j < k; ++j) {
                auto& t = tower[j];
                while (t.size() <= k - j) t.push_back(base_derive(t.back(), *base));
                if (!t[k - j].is_zero()) acc -= t[k - j] * FieldElem(binomial(k, j) * factorial(j));
            }
        }
        a.push_back(acc / FieldElem(factorial(k)));
        tower.push_back({a.back()});
    }
    return TruncSeries(base, 0, std::move(a), prec);
}

namespace {

unsigned validated_order(const DLProblem& p) {
    auto rep = problem_validate(p);
    if (!rep.valid()) {
        std::string what = "invalid problem:";
        for (const auto& v : rep.violations) what += " " + v;
        throw PreconditionFailed(what);
    }
    unsigned n = *p.f.order();
    if (n < 1) throw PreconditionFailed("series solving needs ord f >= 1");
    return n;
}

SeriesSolution finish(const DLProblem& p, TruncSeries y, Jet jet, unsigned n, long prec) {
    TruncSeries res = diff_eval_ring(p.f, y);
    long rp = prec - static_cast<long>(n);
    if (res.prec() < rp) throw InternalError("residual precision below prec - n");
    for (long e = res.lowest(); e < rp; ++e)
        if (!res.coeff(e).is_zero()) throw InternalError("nonzero residual coefficient");
    if (diff_eval_ring(p.g, y).is_zero())
        throw InconclusiveNonvanishing("g(y) vanishes to precision " + std::to_string(prec) +
                                       "; retry with a higher precision");
    return SeriesSolution{std::move(y), std::move(jet), rp};
}

} // namespace

SeriesSolution taylor_solve(const DLProblem& p, long prec, JetMode mode) {
    unsigned n = validated_order(p);
    if (prec < static_cast<long>(n) + 1) throw InvalidArgument("precision must exceed ord f");
    Jet jet = jet_extend(p.f, p.witness, static_cast<unsigned>(prec - 1), mode);
    TruncSeries y = jet_to_series(jet, prec, p.f.base());
    return finish(p, std::move(y), std::move(jet), n, prec);
}

SeriesSolution undet_coeffs_solve(const DLProblem& p, long prec) {
    unsigned n = validated_order(p);
    if (prec < static_cast<long>(n) + 1) throw InvalidArgument("precision must exceed ord f");
    const auto& base = p.f.base();
    std::vector<FieldElem> a;
    auto with_next = [&](const FieldElem& next, long pr) {
        auto cs = a;
        cs.push_back(next);
        return TruncSeries(base, 0, std::move(cs), pr);
    };

    for (unsigned k = 0; k <= n; ++k) {
        TruncSeries d = with_next(FieldElem(), k + 1);
        for (unsigned i = 0; i < k; ++i) d = d.derive();
        a.push_back((p.witness[k] - d.coeff(0)) / FieldElem(factorial(k)));
    }
    for (long m = n + 1; m < prec; ++m) {
        long e = m - static_cast<long>(n);
        FieldElem r0 = diff_eval_ring(p.f, with_next(FieldElem(0), m + 1)).coeff(e);
        FieldElem r1 = diff_eval_ring(p.f, with_next(FieldElem(1), m + 1)).coeff(e);
        if (r1 == r0) throw InternalError("pivot vanishes at coefficient " + std::to_string(m));
        a.push_back(-r0 / (r1 - r0));
    }

    TruncSeries y(base, 0, a, prec);
    Jet jet;
    TruncSeries d = y;
    for (long k = 0; k < prec; ++k) {
        jet.push_back(d.coeff(0));
        if (k + 1 < prec) d = d.derive();
    }
    return finish(p, std::move(y), std::move(jet), n, prec);
}

TruncSeries hensel_root(const std::vector<TruncSeries>& mus, long prec, const BaseFieldPtr& base) {
    if (prec < 1) throw InvalidArgument("precision must be positive");
    long target = prec;
    for (const auto& mu : mus) {
        if (!same_base(mu.base(), base)) throw BaseFieldMismatch("coefficient over another base field");
        for (long e = mu.lowest(); e <= 0 && e < mu.prec(); ++e)
            if (!mu.coeff(e).is_zero()) throw InvalidArgument("mu must lie in t K[[t]]");
        target = std::min(target, mu.prec());
    }
    TruncSeries minus_one = TruncSeries::constant(base, FieldElem(-1));
    TruncSeries f = minus_one.truncate(target);
    for (long it = 0; it < target; ++it) {
        TruncSeries next = minus_one;
        TruncSeries fi = f;
        for (const auto& mu : mus) {
            fi = (fi * f).truncate(target);
            next = next - mu * fi;
        }
        f = next.truncate(target);
    }
    return f;
}

std::vector<Rational> witness_grid(unsigned B) {
    std::vector<Rational> g;
    for (unsigned k = 1; k <= B; ++k) g.emplace_back(k);
    if (B >= 1) g.emplace_back(0);
    for (unsigned k = 1; k <= B; ++k) g.emplace_back(-static_cast<long>(k));
    for (unsigned k = 1; k <= B; k += 2) {
        g.push_back(make_rational(k, 2));
        g.push_back(make_rational(-static_cast<long>(k), 2));
    }
    return g;
}

namespace {

bool is_square(const Integer& z) { return z >= 0 && mpz_perfect_square_p(z.get_mpz_t()) != 0; }

Integer isqrt(const Integer& z) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), z.get_mpz_t());
    return r;
}

std::optional<RatFunc> field_sqrt(const RatFunc& r) {
    if (r.is_zero()) return RatFunc();
    if (r.is_constant()) {
        Rational q = r.constant_value();
        if (!is_square(q.get_num()) || !is_square(q.get_den())) return std::nullopt;
        return RatFunc(make_rational(isqrt(q.get_num()), isqrt(q.get_den())));
    }
    auto sq = squarefree_decompose(r.num() * r.den());
    const Rational& c = sq.content;
    if (!is_square(c.get_num()) || !is_square(c.get_den())) return std::nullopt;
    MultiPoly root(make_rational(isqrt(c.get_num()), isqrt(c.get_den())));
    for (const auto& [p, m] : sq.factors) {
        if (m % 2) return std::nullopt;
        root = root * p.pow(m / 2);
    }
    return RatFunc(root, r.den());
}

// Roots in K of f as a polynomial in x_j once every other coordinate is fixed.
std::vector<FieldElem> solve_coordinate(const DiffPoly& f, unsigned j,
                                        const std::vector<std::optional<RatFunc>>& values) {
    const auto& base = *f.base();
    RatFunc e = substitute(f.expr(), values);
    auto cs = e.num().coefficients_in(base.x_var(j));
    auto c = [&](std::uint32_t d) {
        auto it = cs.find(d);
        return it == cs.end() ? RatFunc() : RatFunc(it->second, e.den());
    };
    std::uint32_t deg = e.num().degree_in(base.x_var(j));
    if (deg == 1) return {-c(0) / c(1)};
    if (deg != 2) return {};
    RatFunc disc = c(1) * c(1) - RatFunc(4) * c(2) * c(0);
    auto s = field_sqrt(disc);
    if (!s) return {};
    RatFunc two_a = RatFunc(2) * c(2);
    if (s->is_zero()) return {-c(1) / two_a};
    return {(-c(1) + *s) / two_a, (-c(1) - *s) / two_a};
}

} // namespace

std::vector<SeriesSolution> find_distinct_solutions(const DLProblem& p, std::size_t count, long prec,
                                                    unsigned search_bound) {
    std::vector<SeriesSolution> found;
    if (count == 0) return found;
    auto ld = leader_data(p.f);
    unsigned n = ld.order;
    const auto& base = *p.f.base();

    // Solve for the coordinate of lowest degree <= 2, else test grid points.
    std::optional<unsigned> solve;
    for (unsigned j = 0; j <= n; ++j) {
        unsigned d = p.f.degree_in(j);
        if (d >= 1 && d <= 2 && (!solve || d < p.f.degree_in(*solve))) solve = j;
    }
    std::vector<unsigned> free;
    for (unsigned j = 0; j <= n; ++j)
        if (!solve || j != *solve) free.push_back(j);

    auto grid = witness_grid(search_bound);
    if (grid.empty()) return found;

    std::vector<Jet> seen;
    auto consider = [&](const Jet& w) {
        if (std::find(seen.begin(), seen.end(), w) != seen.end()) return;
        seen.push_back(w);
        DLProblem q = p;
        q.witness = w;
        if (!problem_validate(q).valid()) return;
        try {
            SeriesSolution s = taylor_solve(q, prec);
            for (const auto& o : found)
                if (o.y == s.y) return;
            found.push_back(std::move(s));
        } catch (const InconclusiveNonvanishing&) {
        }
    };

    std::size_t r = free.size();
    std::size_t shells = r == 0 ? 1 : grid.size();
    std::vector<std::size_t> idx(r);
    for (std::size_t shell = 0; shell < shells && found.size() < count; ++shell) {
        std::fill(idx.begin(), idx.end(), 0);
        for (;;) {
            bool on_shell = r == 0 || *std::max_element(idx.begin(), idx.end()) == shell;
            if (on_shell) {
                Jet w(n + 1);
                std::vector<std::optional<RatFunc>> values(base.size());
                values.resize(base.size() + n + 1);
                for (std::size_t i = 0; i < r; ++i) {
                    w[free[i]] = FieldElem(grid[idx[i]]);
                    values[base.size() + free[i]] = w[free[i]];
                }
                if (solve) {
                    for (auto& root : solve_coordinate(p.f, *solve, values)) {
                        w[*solve] = root;
                        consider(w);
                        if (found.size() == count) return found;
                    }
                } else {
                    consider(w);
                    if (found.size() == count) return found;
                }
            }
            // Odometer over [0, shell]^r.
            std::size_t k = r;
            while (k > 0 && idx[k - 1] == shell) idx[--k] = 0;
            if (k == 0) break;
            ++idx[k - 1];
        }
    }
    return found;
}

std::vector<SeriesSolution> distinct_solutions(const DLProblem& p, std::size_t count, long prec,
                                               unsigned search_bound) {
    auto found = find_distinct_solutions(p, count, prec, search_bound);
    if (found.size() < count) throw FewerFound(found.size());
    return found;
}

} // namespace difflarge
