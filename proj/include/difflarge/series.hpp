#pragma once

#include "difflarge/dvariety.hpp"

#include <limits>

namespace difflarge {

// sum_{e >= lowest} a_e t^e + O(t^prec) over K, with delta(t) = 1 and the
// base derivation acting on coefficients. Exact series (finite sums) carry
// prec = kExact.
class TruncSeries {
public:
    static constexpr long kExact = std::numeric_limits<long>::max();

    explicit TruncSeries(BaseFieldPtr base = BaseFieldSpec::rationals());
    // Coefficients for exponents lowest, lowest + 1, ...; entries at or
    // beyond prec are dropped, missing ones below prec are zero.
    TruncSeries(BaseFieldPtr base, long lowest, std::vector<FieldElem> coeffs, long prec = kExact);

    static TruncSeries constant(BaseFieldPtr base, const FieldElem& c);
    static TruncSeries t_power(BaseFieldPtr base, long e);

    const BaseFieldPtr& base() const { return base_; }
    long lowest() const { return lowest_; }
    long prec() const { return prec_; }
    bool is_exact() const { return prec_ == kExact; }
    const std::vector<FieldElem>& coeffs() const { return coeffs_; }
    // Throws InvalidArgument for e >= prec.
    FieldElem coeff(long e) const;
    // No nonzero coefficient below prec.
    bool is_zero() const;

    TruncSeries truncate(long prec) const;

    TruncSeries derive() const;
    TruncSeries lift(const FieldElem& c) const { return constant(base_, c); }

    TruncSeries operator-() const;
    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + (-b); }
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);

    // Same precision and the same coefficients below it.
    bool operator==(const TruncSeries& o) const;

private:
    void normalize();

    BaseFieldPtr base_;
    long lowest_ = 0;
    std::vector<FieldElem> coeffs_;
    long prec_ = kExact;
};

inline TruncSeries series_derive(const TruncSeries& s) { return s.derive(); }

// y with D^k y(0) = jet_k for k < prec, solving
// a_k = (jet_k - sum_{j<k} C(k,j) j! delta^{k-j}(a_j)) / k!.
// Throws InvalidArgument if prec exceeds the jet length or is < 1.
TruncSeries jet_to_series(const Jet& jet, long prec, const BaseFieldPtr& base);

struct SeriesSolution {
    TruncSeries y;
    Jet jet;
    long residual_prec = 0;
};

// jet_extend then jet_to_series. Throws PreconditionFailed for invalid
// problems or ord f < 1, InconclusiveNonvanishing if g(y) is zero within
// precision, InternalError if the residual check fails.
SeriesSolution taylor_solve(const DLProblem& p, long prec, JetMode mode = JetMode::Symbolic);

// Independent oracle: coefficients a_0..a_n pinned from the witness, then
// each a_m fixed by the coefficient of t^{m-n} in f(y), which is affine in a_m.
SeriesSolution undet_coeffs_solve(const DLProblem& p, long prec);

// f with 1 + f + sum_i mus[i-2] f^i = 0 mod t^prec (mus[0] is mu_2). Each mu
// must lie in t K[[t]]; otherwise InvalidArgument.
TruncSeries hensel_root(const std::vector<TruncSeries>& mus, long prec, const BaseFieldPtr& base);

// The grid used by distinct_solutions: 1..B, 0, -1..-B, then +-k/2 for odd
// k <= B.
std::vector<Rational> witness_grid(unsigned search_bound);

// Up to `count` solutions with pairwise different series, from witnesses
// found on the grid.
std::vector<SeriesSolution> find_distinct_solutions(const DLProblem& p, std::size_t count, long prec,
                                                    unsigned search_bound);

// As above; throws FewerFound when fewer than `count` were located.
std::vector<SeriesSolution> distinct_solutions(const DLProblem& p, std::size_t count, long prec,
                                               unsigned search_bound);

} // namespace difflarge
