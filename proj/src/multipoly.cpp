#include "difflarge/multipoly.hpp"

#include "difflarge/errors.hpp"

#include <algorithm>
#include <sstream>

namespace difflarge {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) { trim(); }

Monomial Monomial::variable(Var v, std::uint32_t power) {
    std::vector<std::uint32_t> e(v + 1, 0);
    e[v] = power;
    return Monomial(std::move(e));
}

void Monomial::trim() {
    while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
    degree_ = 0;
    for (auto e : exps_) degree_ += e;
}

bool Monomial::divides(const Monomial& other) const {
    if (exps_.size() > other.exps_.size() || degree_ > other.degree_) return false;
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > other.exps_[i]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
    const auto& a = exps_.size() >= other.exps_.size() ? exps_ : other.exps_;
    const auto& b = exps_.size() >= other.exps_.size() ? other.exps_ : exps_;
    Monomial m;
    m.exps_ = a;
    for (std::size_t i = 0; i < b.size(); ++i) m.exps_[i] += b[i];
    m.degree_ = degree_ + other.degree_;
    return m;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
    std::vector<std::uint32_t> e = other.exps_;
    for (std::size_t i = 0; i < exps_.size(); ++i) e[i] -= exps_[i];
    return Monomial(std::move(e));
}

Monomial Monomial::with_exponent(Var v, std::uint32_t e) const {
    std::vector<std::uint32_t> x = exps_;
    if (x.size() <= v) x.resize(v + 1, 0);
    x[v] = e;
    return Monomial(std::move(x));
}

Monomial Monomial::gcd(const Monomial& other) const {
    std::size_t n = std::min(exps_.size(), other.exps_.size());
    std::vector<std::uint32_t> e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = std::min(exps_[i], other.exps_[i]);
    return Monomial(std::move(e));
}

std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    std::size_t n = std::max(a.width(), b.width());
    for (Var i = 0; i < n; ++i) {
        if (auto c = a.exponent(i) <=> b.exponent(i); c != 0) return c;
    }
    return std::strong_ordering::equal;
}

// --------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(const Rational& c) {
    if (c != 0) terms_.emplace(Monomial(), c);
}

MultiPoly MultiPoly::variable(Var v) { return monomial(Monomial::variable(v)); }

MultiPoly MultiPoly::monomial(const Monomial& m, const Rational& c) {
    MultiPoly p;
    if (c != 0) p.terms_.emplace(m, c);
    return p;
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational MultiPoly::constant_value() const {
    if (terms_.empty()) return 0;
    return terms_.begin()->second;
}

std::uint32_t MultiPoly::total_degree() const {
    return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

std::uint32_t MultiPoly::degree_in(Var v) const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(v));
    return d;
}

Var MultiPoly::width() const {
    std::size_t w = 0;
    for (const auto& [m, c] : terms_) w = std::max(w, m.width());
    return static_cast<Var>(w);
}

std::set<Var> MultiPoly::variables() const {
    std::set<Var> vs;
    for (const auto& [m, c] : terms_)
        for (Var i = 0; i < m.width(); ++i)
            if (m.exponent(i) > 0) vs.insert(i);
    return vs;
}

Rational MultiPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, x] : terms_) x *= c;
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (b.is_constant()) return MultiPoly(a) *= b.constant_value();
    if (a.is_constant()) return MultiPoly(b) *= a.constant_value();
    if (a.size() < b.size()) return b * a;
    MultiPoly r;
    for (const auto& [mb, cb] : b.terms_)
        for (const auto& [ma, ca] : a.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

MultiPoly MultiPoly::mul_monomial(const Monomial& m, const Rational& c) const {
    MultiPoly r;
    if (c == 0) return r;
    // Multiplying by a monomial preserves the order, so hinted insertion is linear.
    for (const auto& [mm, cc] : terms_) r.terms_.emplace_hint(r.terms_.end(), mm * m, cc * c);
    return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly result(1);
    MultiPoly base = *this;
    while (e > 0) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e > 0) base = base * base;
    }
    return result;
}

MultiPoly MultiPoly::derivative(Var v) const {
    MultiPoly r;
    for (const auto& [m, c] : terms_) {
        auto e = m.exponent(v);
        if (e == 0) continue;
        r.add_term(m.with_exponent(v, e - 1), c * e);
    }
    return r;
}

std::map<std::uint32_t, MultiPoly> MultiPoly::coefficients_in(Var v) const {
    std::map<std::uint32_t, MultiPoly> out;
    for (const auto& [m, c] : terms_) out[m.exponent(v)].add_term(m.with_exponent(v, 0), c);
    return out;
}

MultiPoly MultiPoly::from_coefficients(Var v, const std::map<std::uint32_t, MultiPoly>& coeffs) {
    MultiPoly r;
    for (const auto& [d, p] : coeffs) r += p.mul_monomial(Monomial::variable(v, d), 1);
    return r;
}

MultiPoly MultiPoly::leading_coefficient_in(Var v) const {
    auto d = degree_in(v);
    MultiPoly r;
    for (const auto& [m, c] : terms_)
        if (m.exponent(v) == d) r.add_term(m.with_exponent(v, 0), c);
    return r;
}

MultiPoly MultiPoly::substitute(Var v, const MultiPoly& value) const {
    auto coeffs = coefficients_in(v);
    if (coeffs.empty()) return {};
    // Horner from the top degree down.
    MultiPoly r;
    std::uint32_t prev = coeffs.rbegin()->first;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        r = r * value.pow(prev - it->first) + it->second;
        prev = it->first;
    }
    return r * value.pow(prev);
}

MultiPoly MultiPoly::rename(const std::vector<Var>& map) const {
    MultiPoly r;
    for (const auto& [m, c] : terms_) {
        std::vector<std::uint32_t> e;
        for (Var i = 0; i < m.width(); ++i) {
            auto x = m.exponent(i);
            if (x == 0) continue;
            Var j = map.at(i);
            if (e.size() <= j) e.resize(j + 1, 0);
            e[j] += x;
        }
        r.add_term(Monomial(std::move(e)), c);
    }
    return r;
}

Rational MultiPoly::content() const {
    if (terms_.empty()) return 0;
    Integer g = 0, l = 1;
    for (const auto& [m, c] : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
    return make_rational(g, l);
}

MultiPoly MultiPoly::primitive() const {
    if (terms_.empty()) return {};
    Rational c = content();
    if (leading_coefficient() < 0) c = -c;
    return *this * Rational(1 / c);
}

MultiPoly MultiPoly::monic() const {
    if (terms_.empty()) return {};
    return *this * Rational(1 / leading_coefficient());
}

std::string MultiPoly::debug_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        Rational a = abs(c);
        bool wrote = false;
        if (a != 1 || m.is_one()) {
            os << a.get_str();
            wrote = true;
        }
        for (Var i = 0; i < m.width(); ++i) {
            if (m.exponent(i) == 0) continue;
            if (wrote) os << "*";
            os << "v" << i;
            if (m.exponent(i) > 1) os << "^" << m.exponent(i);
            wrote = true;
        }
    }
    return os.str();
}

// ------------------------------------------------------------- algorithms

std::optional<MultiPoly> exact_divide(const MultiPoly& a, const MultiPoly& b) {
    if (b.is_zero()) throw InvalidArgument("division by zero polynomial");
    if (a.is_zero()) return MultiPoly();
    if (b.is_constant()) return a * Rational(1 / b.constant_value());
    if (b.total_degree() > a.total_degree()) return std::nullopt;
    for (Var v : b.variables())
        if (b.degree_in(v) > a.degree_in(v)) return std::nullopt;

    const Monomial& lb = b.leading_monomial();
    const Rational& cb = b.leading_coefficient();
    MultiPoly q, r = a;
    while (!r.is_zero()) {
        const Monomial& lr = r.leading_monomial();
        if (!lb.divides(lr)) return std::nullopt;
        Monomial t = lb.quotient_of(lr);
        Rational c = r.leading_coefficient() / cb;
        q.add_term(t, c);
        r -= b.mul_monomial(t, c);
    }
    return q;
}

MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, Var v) {
    if (b.is_zero()) throw InvalidArgument("pseudo-division by zero");
    auto db = b.degree_in(v);
    MultiPoly lb = b.leading_coefficient_in(v);
    MultiPoly r = a;
    while (!r.is_zero() && r.degree_in(v) >= db) {
        auto dr = r.degree_in(v);
        MultiPoly lr = r.leading_coefficient_in(v);
        MultiPoly g = poly_gcd(lb, lr);
        MultiPoly mb = *exact_divide(lb, g);
        MultiPoly mr = *exact_divide(lr, g);
        r = mb * r - (mr * b).mul_monomial(Monomial::variable(v, dr - db), 1);
    }
    return r;
}

MultiPoly content_in(const MultiPoly& p, Var v) {
    MultiPoly g;
    for (const auto& [d, c] : p.coefficients_in(v)) {
        g = poly_gcd(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

namespace {

MultiPoly monomial_gcd(const MultiPoly& mono, const MultiPoly& p) {
    Monomial g = mono.leading_monomial();
    for (const auto& [m, c] : p.terms()) {
        g = g.gcd(m);
        if (g.is_one()) break;
    }
    return MultiPoly::monomial(g);
}

Monomial monomial_content(const MultiPoly& p) {
    Monomial g = p.terms().begin()->first;
    for (const auto& [m, c] : p.terms()) {
        g = g.gcd(m);
        if (g.is_one()) break;
    }
    return g;
}

bool disjoint(const std::set<Var>& a, const std::set<Var>& b) {
    for (Var v : a)
        if (b.count(v)) return false;
    return true;
}

using UPolyQ = std::vector<Rational>;

void trim(UPolyQ& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// p with every variable except v replaced by point[x].
UPolyQ evaluate_except(const MultiPoly& p, Var v, const std::vector<Rational>& point) {
    UPolyQ out(p.degree_in(v) + 1);
    for (const auto& [m, c] : p.terms()) {
        Rational t = c;
        for (Var x = 0; x < m.width(); ++x) {
            if (x == v) continue;
            for (std::uint32_t k = 0; k < m.exponent(x); ++k) t *= point[x];
        }
        out[m.exponent(v)] += t;
    }
    trim(out);
    return out;
}

std::size_t univariate_gcd_degree(UPolyQ a, UPolyQ b) {
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        Rational inv = 1 / b.back();
        for (auto& c : b) c *= inv;
        while (a.size() >= b.size()) {
            Rational q = a.back();
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a.size() - 1;
}

// True when a and b, both of positive degree in v, certainly have a gcd
// free of v: some specialization of the other variables keeps both
// leading degrees and has a constant univariate gcd.
bool coprime_in(const MultiPoly& a, const MultiPoly& b, Var v, const std::set<Var>& vars) {
    Var width = vars.empty() ? 0 : *vars.rbegin() + 1;
    for (int attempt = 0; attempt < 3; ++attempt) {
        std::vector<Rational> point(width);
        for (Var x = 0; x < width; ++x) point[x] = Rational(static_cast<long>(3 + 7 * x + 11 * attempt), 2 + x % 3);
        UPolyQ ua = evaluate_except(a, v, point), ub = evaluate_except(b, v, point);
        if (ua.size() != a.degree_in(v) + 1 || ub.size() != b.degree_in(v) + 1) continue;
        return univariate_gcd_degree(ua, ub) == 0;
    }
    return false;
}

} // namespace

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero()) return b.primitive();
    if (b.is_zero()) return a.primitive();
    if (a.is_constant() || b.is_constant()) return MultiPoly(1);
    if (a.is_monomial()) return monomial_gcd(a, b);
    if (b.is_monomial()) return monomial_gcd(b, a);
    if (a == b) return a.primitive();

    Monomial ma = monomial_content(a), mb = monomial_content(b);
    if (!ma.is_one() || !mb.is_one()) {
        MultiPoly g = poly_gcd(*exact_divide(a, MultiPoly::monomial(ma)), *exact_divide(b, MultiPoly::monomial(mb)));
        return g * MultiPoly::monomial(ma.gcd(mb));
    }

    auto va = a.variables();
    auto vb = b.variables();
    if (disjoint(va, vb)) return MultiPoly(1);

    // Variables private to one side: the gcd divides every coefficient
    // with respect to them, and usually these are few and small.
    bool a_extra = !std::includes(vb.begin(), vb.end(), va.begin(), va.end());
    bool b_extra = !std::includes(va.begin(), va.end(), vb.begin(), vb.end());
    if (a_extra || b_extra) {
        const MultiPoly& wide = a_extra ? a : b;
        const auto& keep = a_extra ? vb : va;
        std::map<std::vector<std::uint32_t>, MultiPoly> groups;
        for (const auto& [m, c] : wide.terms()) {
            std::vector<std::uint32_t> outer(m.width(), 0), inner(m.width(), 0);
            for (Var x = 0; x < m.width(); ++x) (keep.count(x) ? inner : outer)[x] = m.exponent(x);
            while (!outer.empty() && outer.back() == 0) outer.pop_back();
            groups[outer].add_term(Monomial(inner), c);
        }
        MultiPoly g = a_extra ? b : a;
        if (a_extra && b_extra) {
            std::map<std::vector<std::uint32_t>, MultiPoly> other;
            for (const auto& [m, c] : g.terms()) {
                std::vector<std::uint32_t> outer(m.width(), 0), inner(m.width(), 0);
                for (Var x = 0; x < m.width(); ++x) (va.count(x) ? inner : outer)[x] = m.exponent(x);
                while (!outer.empty() && outer.back() == 0) outer.pop_back();
                other[outer].add_term(Monomial(inner), c);
            }
            auto it = other.begin();
            g = it->second;
            for (++it; it != other.end() && !g.is_constant(); ++it) g = poly_gcd(g, it->second);
        }
        for (auto it = groups.begin(); it != groups.end() && !g.is_constant(); ++it)
            g = poly_gcd(g, it->second);
        return g.is_constant() ? MultiPoly(1) : g.primitive();
    }

    // Main variable: the highest index occurring in both.
    Var v = 0;
    for (Var x : va)
        if (vb.count(x)) v = x;

    std::set<Var> all = va;
    all.insert(vb.begin(), vb.end());
    // A common factor involves some shared variable.
    if (std::all_of(va.begin(), va.end(), [&](Var x) { return coprime_in(a, b, x, all); }))
        return MultiPoly(1);
    MultiPoly ca = content_in(a, v);
    MultiPoly cb = content_in(b, v);
    MultiPoly c = poly_gcd(ca, cb);
    if (coprime_in(a, b, v, all)) return c.primitive();
    MultiPoly pa = *exact_divide(a, ca);
    MultiPoly pb = *exact_divide(b, cb);
    if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);

    MultiPoly g;
    if (pb.degree_in(v) == 0) {
        g = MultiPoly(1);
    } else {
        for (;;) {
            MultiPoly r = pseudo_remainder(pa, pb, v);
            if (r.is_zero()) {
                g = pb;
                break;
            }
            if (r.degree_in(v) == 0) {
                g = MultiPoly(1);
                break;
            }
            pa = std::move(pb);
            pb = *exact_divide(r, content_in(r, v));
            pb = pb.primitive();
        }
        g = *exact_divide(g, content_in(g, v));
    }
    return (c * g).primitive();
}

namespace {

// Yun's algorithm with respect to v; q must be primitive in v with deg_v q > 0.
void yun(const MultiPoly& q, Var v, std::vector<std::pair<MultiPoly, unsigned>>& out) {
    MultiPoly d = q.derivative(v);
    MultiPoly a0 = poly_gcd(q, d);
    MultiPoly b = *exact_divide(q, a0);
    MultiPoly c = *exact_divide(d, a0);
    MultiPoly dd = c - b.derivative(v);
    unsigned i = 1;
    while (!b.is_constant()) {
        MultiPoly a = poly_gcd(b, dd);
        b = *exact_divide(b, a);
        c = *exact_divide(dd, a);
        dd = c - b.derivative(v);
        if (!a.is_constant()) out.emplace_back(a.primitive(), i);
        ++i;
    }
}

void squarefree_rec(const MultiPoly& p, std::vector<std::pair<MultiPoly, unsigned>>& out) {
    if (p.is_constant()) return;
    Var v = *p.variables().rbegin();
    MultiPoly c = content_in(p, v);
    MultiPoly q = *exact_divide(p, c);
    yun(q, v, out);
    squarefree_rec(c, out);
}

} // namespace

SquarefreeDecomposition squarefree_decompose(const MultiPoly& p) {
    if (p.is_zero()) throw InvalidArgument("square-free decomposition of zero");
    std::vector<std::pair<MultiPoly, unsigned>> raw;
    squarefree_rec(p, raw);

    // Merge factors of equal multiplicity so each multiplicity appears once.
    std::map<unsigned, MultiPoly> by_mult;
    for (auto& [f, m] : raw) {
        auto [it, inserted] = by_mult.try_emplace(m, f);
        if (!inserted) it->second = (it->second * f).primitive();
    }
    SquarefreeDecomposition out;
    MultiPoly prod(1);
    for (auto& [m, f] : by_mult) {
        out.factors.emplace_back(f, m);
        prod = prod * f.pow(m);
    }
    out.content = p.leading_coefficient() / prod.leading_coefficient();
    return out;
}

bool canonical_less(const MultiPoly& a, const MultiPoly& b) {
    if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
        auto c = grlex_compare(ia->first, ib->first);
        if (c != 0) return c > 0;
        if (ia->second != ib->second) return ia->second < ib->second;
    }
    return a.size() < b.size();
}

} // namespace difflarge
