#include "difflarge/factor.hpp"

#include "difflarge/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>

namespace difflarge {

namespace {

// ------------------------------------------------ dense polynomials mod p
//
// Coefficient vectors, lowest degree first, no trailing zeros. p < 2^31 so
// products fit in 64 bits.

using u64 = std::uint64_t;
using Fp = std::vector<u64>;

struct ModP {
    u64 p;

    u64 add(u64 a, u64 b) const { return (a + b) % p; }
    u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
    u64 mul(u64 a, u64 b) const { return (a * b) % p; }
    u64 pow(u64 a, u64 e) const {
        u64 r = 1;
        a %= p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 inv(u64 a) const { return pow(a, p - 2); }

    static void trim(Fp& a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    static int deg(const Fp& a) { return static_cast<int>(a.size()) - 1; }

    Fp add(const Fp& a, const Fp& b) const {
        Fp r(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i] = add(r[i], b[i]);
        trim(r);
        return r;
    }
    Fp sub(const Fp& a, const Fp& b) const {
        Fp r(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i] = sub(r[i], b[i]);
        trim(r);
        return r;
    }
    Fp mul(const Fp& a, const Fp& b) const {
        if (a.empty() || b.empty()) return {};
        Fp r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
        }
        trim(r);
        return r;
    }
    Fp scale(const Fp& a, u64 c) const {
        Fp r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = mul(a[i], c);
        trim(r);
        return r;
    }
    Fp monic(const Fp& a) const { return a.empty() ? a : scale(a, inv(a.back())); }

    // a = q*b + r
    void divmod(const Fp& a, const Fp& b, Fp& q, Fp& r) const {
        r = a;
        q.clear();
        if (deg(a) < deg(b)) return;
        q.assign(a.size() - b.size() + 1, 0);
        u64 ib = inv(b.back());
        for (int i = deg(r); i >= deg(b); --i) {
            u64 c = mul(r[i], ib);
            q[i - deg(b)] = c;
            if (c == 0) continue;
            for (int j = 0; j <= deg(b); ++j)
                r[i - deg(b) + j] = sub(r[i - deg(b) + j], mul(c, b[j]));
        }
        trim(r);
        trim(q);
    }
    Fp rem(const Fp& a, const Fp& b) const {
        Fp q, r;
        divmod(a, b, q, r);
        return r;
    }
    Fp quo(const Fp& a, const Fp& b) const {
        Fp q, r;
        divmod(a, b, q, r);
        return q;
    }
    Fp gcd(Fp a, Fp b) const {
        while (!b.empty()) {
            Fp r = rem(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }
    // s*a + t*b = gcd(a, b) (monic)
    Fp ext_gcd(const Fp& a, const Fp& b, Fp& s, Fp& t) const {
        Fp r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
        while (!r1.empty()) {
            Fp q, r;
            divmod(r0, r1, q, r);
            Fp s2 = sub(s0, mul(q, s1));
            Fp t2 = sub(t0, mul(q, t1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        u64 c = inv(r0.back());
        s = scale(s0, c);
        t = scale(t0, c);
        return scale(r0, c);
    }
    Fp derivative(const Fp& a) const {
        if (a.size() <= 1) return {};
        Fp r(a.size() - 1);
        for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = mul(a[i], i % p);
        trim(r);
        return r;
    }
    Fp powmod(Fp base, const Integer& e, const Fp& m) const {
        Fp r{1};
        base = rem(base, m);
        std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t i = bits; i-- > 0;) {
            r = rem(mul(r, r), m);
            if (mpz_tstbit(e.get_mpz_t(), i)) r = rem(mul(r, base), m);
        }
        return r;
    }
};

// Distinct-degree then equal-degree (Cantor-Zassenhaus) factorization of a
// monic square-free polynomial over F_p, p odd.
std::vector<Fp> factor_mod_p(const Fp& f, const ModP& F, std::mt19937_64& rng) {
    std::vector<std::pair<Fp, int>> ddf;
    Fp g = f;
    Fp x{0, 1};
    Fp h = x;
    Integer pz = static_cast<unsigned long>(F.p);
    for (int d = 1; 2 * d <= ModP::deg(g); ++d) {
        h = F.powmod(h, pz, g);
        Fp G = F.gcd(g, F.sub(h, x));
        if (ModP::deg(G) > 0) {
            ddf.emplace_back(G, d);
            g = F.quo(g, G);
            h = F.rem(h, g);
        }
    }
    if (ModP::deg(g) > 0) ddf.emplace_back(g, ModP::deg(g));

    std::vector<Fp> out;
    std::function<void(const Fp&, int)> split = [&](const Fp& G, int d) {
        if (ModP::deg(G) == d) {
            out.push_back(F.monic(G));
            return;
        }
        Integer pd;
        mpz_ui_pow_ui(pd.get_mpz_t(), F.p, static_cast<unsigned long>(d));
        Integer e = (pd - 1) / 2;
        std::uniform_int_distribution<u64> dist(0, F.p - 1);
        for (;;) {
            Fp a(ModP::deg(G));
            for (auto& c : a) c = dist(rng);
            ModP::trim(a);
            if (ModP::deg(a) < 1) continue;
            Fp b = F.sub(F.powmod(a, e, G), Fp{1});
            Fp D = F.gcd(G, b);
            if (ModP::deg(D) > 0 && ModP::deg(D) < ModP::deg(G)) {
                split(D, d);
                split(F.quo(G, D), d);
                return;
            }
        }
    };
    for (auto& [G, d] : ddf) split(G, d);
    return out;
}

// --------------------------------------------- dense polynomials over Z

using ZPoly = std::vector<Integer>;

void ztrim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}
int zdeg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

ZPoly zmod(ZPoly a, const Integer& m) {
    for (auto& c : a) {
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    }
    ztrim(a);
    return a;
}

// Symmetric representatives in (-m/2, m/2].
ZPoly zsym(ZPoly a, const Integer& m) {
    Integer half = m / 2;
    for (auto& c : a) {
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        if (c > half) c -= m;
    }
    ztrim(a);
    return a;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    ztrim(r);
    return r;
}

ZPoly zadd(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    ztrim(r);
    return r;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    ztrim(r);
    return r;
}

// Division by a monic (mod m) polynomial b, everything reduced mod m.
void zdivmod_monic(const ZPoly& a, const ZPoly& b, const Integer& m, ZPoly& q, ZPoly& r) {
    r = zmod(a, m);
    q.clear();
    if (zdeg(r) < zdeg(b)) return;
    q.assign(r.size() - b.size() + 1, 0);
    for (int i = zdeg(r); i >= zdeg(b); --i) {
        Integer c = r[i];
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        q[i - zdeg(b)] = c;
        if (c == 0) continue;
        for (int j = 0; j <= zdeg(b); ++j) r[i - zdeg(b) + j] -= c * b[j];
        for (int j = 0; j <= zdeg(b); ++j)
            mpz_fdiv_r(r[i - zdeg(b) + j].get_mpz_t(), r[i - zdeg(b) + j].get_mpz_t(),
                       m.get_mpz_t());
    }
    ztrim(r);
    ztrim(q);
}

// Exact division over Z; nullopt when b does not divide a.
std::optional<ZPoly> zdiv_exact(const ZPoly& a, const ZPoly& b) {
    if (a.empty()) return ZPoly{};
    if (zdeg(a) < zdeg(b)) return std::nullopt;
    ZPoly r = a;
    ZPoly q(a.size() - b.size() + 1, 0);
    for (int i = zdeg(r); i >= zdeg(b); --i) {
        if (r[i] == 0) continue;
        if (!mpz_divisible_p(r[i].get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
        Integer c = r[i] / b.back();
        q[i - zdeg(b)] = c;
        for (int j = 0; j <= zdeg(b); ++j) r[i - zdeg(b) + j] -= c * b[j];
    }
    ztrim(r);
    if (!r.empty()) return std::nullopt;
    ztrim(q);
    return q;
}

Integer zcontent(const ZPoly& a) {
    Integer g = 0;
    for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

ZPoly zprimitive(ZPoly a) {
    Integer g = zcontent(a);
    if (g == 0) return a;
    if (a.back() < 0) g = -g;
    for (auto& c : a) c /= g;
    return a;
}

Fp to_fp(const ZPoly& a, const ModP& F) {
    Fp r(a.size());
    Integer pz = static_cast<unsigned long>(F.p);
    for (std::size_t i = 0; i < a.size(); ++i) {
        Integer c;
        mpz_fdiv_r(c.get_mpz_t(), a[i].get_mpz_t(), pz.get_mpz_t());
        r[i] = c.get_ui();
    }
    ModP::trim(r);
    return r;
}

ZPoly to_z(const Fp& a) {
    ZPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<unsigned long>(a[i]);
    return r;
}

// One quadratic Hensel step: from f = g*h, s*g + t*h = 1 (mod m) to the same
// identities mod m^2. h is monic.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const Integer& m) {
    Integer m2 = m * m;
    ZPoly e = zmod(zsub(f, zmul(g, h)), m2);
    ZPoly q, r;
    zdivmod_monic(zmul(s, e), h, m2, q, r);
    ZPoly g2 = zmod(zadd(zadd(g, zmul(t, e)), zmul(q, g)), m2);
    ZPoly h2 = zmod(zadd(h, r), m2);

    ZPoly b = zmod(zsub(zadd(zmul(s, g2), zmul(t, h2)), ZPoly{1}), m2);
    ZPoly c, d;
    zdivmod_monic(zmul(s, b), h2, m2, c, d);
    s = zmod(zsub(s, d), m2);
    t = zmod(zsub(zsub(t, zmul(t, b)), zmul(c, g2)), m2);
    g = std::move(g2);
    h = std::move(h2);
}

// Lifts f = lc(f) * prod(factors) from mod p to mod P = p^k; returns monic
// factors mod P in the same order.
std::vector<ZPoly> lift_factors(const ZPoly& f, const std::vector<Fp>& factors, const ModP& F,
                                const Integer& P) {
    if (factors.size() == 1) {
        Integer lc = f.back(), inv;
        mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), P.get_mpz_t());
        ZPoly r = f;
        for (auto& c : r) c *= inv;
        return {zmod(r, P)};
    }
    std::size_t half = factors.size() / 2;
    std::vector<Fp> left(factors.begin(), factors.begin() + half);
    std::vector<Fp> right(factors.begin() + half, factors.end());
    Fp g0{to_fp(ZPoly{f.back()}, F)};
    for (const auto& x : left) g0 = F.mul(g0, x);
    Fp h0{1};
    for (const auto& x : right) h0 = F.mul(h0, x);
    Fp s0, t0;
    F.ext_gcd(g0, h0, s0, t0);

    ZPoly g = to_z(g0), h = to_z(h0), s = to_z(s0), t = to_z(t0);
    Integer m = static_cast<unsigned long>(F.p);
    while (m < P) {
        hensel_step(f, g, h, s, t, m);
        m = m * m;
    }
    g = zmod(g, P);
    h = zmod(h, P);
    // g keeps lc(f) mod P; h is monic.
    auto a = lift_factors(g, left, F, P);
    auto b = lift_factors(h, right, F, P);
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

bool is_prime_small(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Irreducible factors over Z of a primitive square-free f with deg >= 1, lc > 0.
std::vector<ZPoly> factor_squarefree_z(const ZPoly& f) {
    if (zdeg(f) == 1) return {f};

    // Pick among a handful of good primes the one giving the fewest factors.
    std::mt19937_64 rng(0x5eedULL);
    ModP best{0};
    std::vector<Fp> best_factors;
    int good = 0;
    for (u64 p = 3; good < 5 && p < 2000; p += 2) {
        if (!is_prime_small(p)) continue;
        ModP F{p};
        Fp fp = to_fp(f, F);
        if (ModP::deg(fp) != zdeg(f)) continue;
        if (ModP::deg(F.gcd(fp, F.derivative(fp))) > 0) continue;
        ++good;
        auto facs = factor_mod_p(F.monic(fp), F, rng);
        if (best.p == 0 || facs.size() < best_factors.size()) {
            best = F;
            best_factors = std::move(facs);
        }
        if (best_factors.size() == 1) break;
    }
    if (best.p == 0) throw InternalError("no suitable prime for univariate factorization");
    if (best_factors.size() == 1) return {f};

    // Coefficient bound for any factor (Mignotte-style): 2^n * (n+1) * max|f_i|.
    Integer maxc = 0;
    for (const auto& c : f) maxc = std::max<Integer>(maxc, abs(c));
    Integer bound = maxc * (zdeg(f) + 1);
    bound <<= static_cast<mp_bitcnt_t>(zdeg(f));
    Integer target = 2 * abs(f.back()) * bound + 1;
    Integer P = static_cast<unsigned long>(best.p);
    while (P <= target) P *= static_cast<unsigned long>(best.p);

    std::sort(best_factors.begin(), best_factors.end());
    std::vector<ZPoly> lifted = lift_factors(f, best_factors, best, P);

    // Zassenhaus recombination over subsets of increasing size.
    std::vector<ZPoly> result;
    ZPoly cur = f;
    std::vector<std::size_t> alive(lifted.size());
    for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;
    std::size_t s = 1;
    while (2 * s <= alive.size()) {
        bool found = false;
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        for (;;) {
            ZPoly G{cur.back()};
            for (auto i : idx) G = zmod(zmul(G, lifted[alive[i]]), P);
            G = zprimitive(zsym(G, P));
            if (zdeg(G) >= 1) {
                if (auto q = zdiv_exact(cur, G)) {
                    result.push_back(G);
                    cur = *q;
                    std::vector<std::size_t> rest;
                    for (std::size_t i = 0, j = 0; i < alive.size(); ++i) {
                        if (j < s && idx[j] == i) {
                            ++j;
                            continue;
                        }
                        rest.push_back(alive[i]);
                    }
                    alive = std::move(rest);
                    found = true;
                    break;
                }
            }
            // Next combination.
            std::size_t k = s;
            while (k > 0 && idx[k - 1] == alive.size() - s + (k - 1)) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++s;
    }
    if (zdeg(cur) >= 1) result.push_back(zprimitive(cur));
    return result;
}

// ---------------------------------------------------------- conversions

ZPoly to_zpoly(const MultiPoly& p, Var v, Rational& scale) {
    // p = scale * result, result primitive over Z.
    Rational c = p.content();
    if (p.leading_coefficient() < 0) c = -c;
    ZPoly r(p.degree_in(v) + 1, 0);
    for (const auto& [m, q] : p.terms()) {
        Rational x = q / c;
        r[m.exponent(v)] = x.get_num();
    }
    ztrim(r);
    scale = c;
    return r;
}

MultiPoly from_zpoly(const ZPoly& a, Var v) {
    MultiPoly r;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) r.add_term(Monomial::variable(v, static_cast<std::uint32_t>(i)), Rational(a[i]));
    return r;
}

void sort_factors(std::vector<MultiPoly>& fs) {
    std::sort(fs.begin(), fs.end(), canonical_less);
}

} // namespace

MultiPoly expand(const Factorization& f) {
    MultiPoly r(f.content);
    for (const auto& x : f.factors) r = r * x;
    return r;
}

Factorization univar_factor_q(const MultiPoly& p) {
    if (p.is_zero()) throw InvalidArgument("factorization of zero");
    auto vars = p.variables();
    if (vars.size() != 1)
        throw InvalidArgument("univariate factorization needs exactly one variable, got " +
                              std::to_string(vars.size()));
    Var v = *vars.begin();

    Factorization out;
    auto sqf = squarefree_decompose(p);
    for (const auto& [q, mult] : sqf.factors) {
        Rational scale;
        ZPoly z = to_zpoly(q, v, scale);
        for (const auto& g : factor_squarefree_z(z)) {
            MultiPoly fg = from_zpoly(g, v);
            for (unsigned i = 0; i < mult; ++i) out.factors.push_back(fg);
        }
    }
    sort_factors(out.factors);
    out.content = p.leading_coefficient() / expand(Factorization{1, out.factors}).leading_coefficient();
    return out;
}

namespace {

// Irreducible factors of a square-free primitive multivariate q.
std::variant<std::vector<MultiPoly>, Inconclusive> factor_squarefree_multi(const MultiPoly& q) {
    auto vars = q.variables();
    if (vars.size() == 1) return univar_factor_q(q).factors;

    constexpr unsigned long kMaxImageDegree = 600;
    constexpr std::size_t kMaxUnivariateFactors = 18;

    std::vector<Var> order(vars.begin(), vars.end());
    std::vector<Integer> weight(order.size());
    Integer w = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
        weight[i] = w;
        w *= q.degree_in(order[i]) + 1;
    }
    if (w - 1 > kMaxImageDegree)
        return Inconclusive{"Kronecker image degree " + Integer(w - 1).get_str() +
                            " exceeds limit " + std::to_string(kMaxImageDegree)};

    const Var y = 0;
    MultiPoly image;
    for (const auto& [m, c] : q.terms()) {
        unsigned long d = 0;
        for (std::size_t i = 0; i < order.size(); ++i) d += m.exponent(order[i]) * weight[i].get_ui();
        image.add_term(Monomial::variable(y, static_cast<std::uint32_t>(d)), c);
    }
    auto uni = univar_factor_q(image).factors;
    if (uni.size() > kMaxUnivariateFactors)
        return Inconclusive{"Kronecker image splits into " + std::to_string(uni.size()) +
                            " univariate factors; recombination limit is " +
                            std::to_string(kMaxUnivariateFactors)};

    auto inverse_image = [&](const MultiPoly& u) {
        MultiPoly r;
        for (const auto& [m, c] : u.terms()) {
            unsigned long d = m.exponent(y);
            std::vector<std::uint32_t> e;
            for (std::size_t i = order.size(); i-- > 0;) {
                unsigned long wi = weight[i].get_ui();
                unsigned long digit = d / wi;
                d %= wi;
                if (digit == 0) continue;
                if (e.size() <= order[i]) e.resize(order[i] + 1, 0);
                e[order[i]] = static_cast<std::uint32_t>(digit);
            }
            r.add_term(Monomial(std::move(e)), c);
        }
        return r;
    };

    std::vector<MultiPoly> result;
    MultiPoly cur = q;
    std::vector<std::size_t> alive(uni.size());
    for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;
    std::size_t s = 1;
    while (2 * s <= alive.size()) {
        bool found = false;
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        for (;;) {
            MultiPoly prod(1);
            for (auto i : idx) prod = prod * uni[alive[i]];
            MultiPoly cand = inverse_image(prod).primitive();
            if (!cand.is_constant()) {
                if (auto quo = exact_divide(cur, cand)) {
                    result.push_back(cand);
                    cur = *quo;
                    std::vector<std::size_t> rest;
                    for (std::size_t i = 0, j = 0; i < alive.size(); ++i) {
                        if (j < s && idx[j] == i) {
                            ++j;
                            continue;
                        }
                        rest.push_back(alive[i]);
                    }
                    alive = std::move(rest);
                    found = true;
                    break;
                }
            }
            std::size_t k = s;
            while (k > 0 && idx[k - 1] == alive.size() - s + (k - 1)) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++s;
    }
    if (!cur.is_constant()) result.push_back(cur.primitive());
    return result;
}

} // namespace

FactorOutcome kronecker_factor(const MultiPoly& p, unsigned degree_bound) {
    if (p.is_zero()) throw InvalidArgument("factorization of zero");
    if (p.total_degree() > degree_bound)
        return Inconclusive{"total degree " + std::to_string(p.total_degree()) +
                            " exceeds bound " + std::to_string(degree_bound)};
    Factorization out;
    auto sqf = squarefree_decompose(p);
    for (const auto& [q, mult] : sqf.factors) {
        auto r = factor_squarefree_multi(q);
        if (auto* inc = std::get_if<Inconclusive>(&r)) return *inc;
        for (const auto& g : std::get<std::vector<MultiPoly>>(r))
            for (unsigned i = 0; i < mult; ++i) out.factors.push_back(g);
    }
    sort_factors(out.factors);
    MultiPoly prod = expand(Factorization{1, out.factors});
    out.content = p.leading_coefficient() / prod.leading_coefficient();
    if (!(prod * out.content == p))
        throw InternalError("factorization failed to re-multiply to its input");
    return out;
}

} // namespace difflarge
