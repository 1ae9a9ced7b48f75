#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sofi/numeric/bessel.hpp"
#include "sofi/numeric/haar.hpp"
#include "sofi/numeric/quadrature.hpp"
#include "sofi/weyl.hpp"

namespace sofi {

/// Exponent pattern of a y-monomial, row-major over the matrix entries.
struct MomentPattern {
    unsigned n = 0;
    std::vector<unsigned> e;

    explicit MomentPattern(unsigned size) : n(size), e(std::size_t{size} * size, 0u) {}
    unsigned& operator()(unsigned i, unsigned j) { return e[std::size_t{i} * n + j]; }
    unsigned operator()(unsigned i, unsigned j) const { return e[std::size_t{i} * n + j]; }
    bool trivial() const {
        for (unsigned k : e)
            if (k) return false;
        return true;
    }
};

inline double pairing_value(const SquareMatrix& x, const SquareMatrix& y) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.a.size(); ++k) s += x.a[k] * y.a[k];
    return s;
}

inline double monomial_value(const MomentPattern& p, const SquareMatrix& y) {
    double v = 1.0;
    for (std::size_t k = 0; k < p.e.size(); ++k)
        for (unsigned t = 0; t < p.e[k]; ++t) v *= y.a[k];
    return v;
}

struct ValueEstimate {
    double value = 0.0;
    /// Standard error for Monte Carlo, resolution-doubling delta for
    /// quadrature.
    double error = 0.0;
};

/// Pointwise value of a polynomial in the matrix-entry variables at a
/// sampled matrix (one- and two-index families both read the matrix).
inline double evaluate_on_matrix(const Polynomial& p, const SquareMatrix& y) {
    const VarTable& t = *p.table();
    double sum = 0.0;
    for (const auto& [m, c] : p.terms()) {
        double v = c.get_d();
        for (std::size_t id = 0; id < m.e.size(); ++id) {
            if (!m.e[id]) continue;
            const Variable& var = t.var(id);
            unsigned i = var.i - 1;
            unsigned j = has_two_indices(var.family) ? var.j - 1 : var.i - 1;
            for (unsigned k = 0; k < m.e[id]; ++k) v *= y(i, j);
        }
        sum += v;
    }
    return sum;
}

/// Moments int y^pattern exp(sum_ij x_ij y_ij) mu(dy) for a batch of
/// patterns in one pass over the quadrature grid.
inline std::vector<double> fisher_moments_quad(const SquareMatrix& x,
                                               std::span<const MomentPattern> patterns,
                                               unsigned resolution) {
    std::vector<double> sums(patterns.size(), 0.0);
    for_each_rotation_node(x.n, resolution, [&](const SquareMatrix& y, double w) {
        double e = w * std::exp(pairing_value(x, y));
        for (std::size_t t = 0; t < patterns.size(); ++t)
            sums[t] += e * monomial_value(patterns[t], y);
    });
    return sums;
}

struct McMoments {
    std::vector<double> value;
    std::vector<double> stderr_;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

inline McMoments fisher_moments_mc(const SquareMatrix& x,
                                   std::span<const MomentPattern> patterns,
                                   std::uint64_t samples, std::uint64_t seed) {
    if (samples == 0) throw std::invalid_argument("fisher_moments_mc: need samples > 0");
    Rng rng(seed);
    std::vector<double> sum(patterns.size(), 0.0), sum2(patterns.size(), 0.0);
    SquareMatrix y(x.n);
    for (std::uint64_t s = 0; s < samples; ++s) {
        sample_rotation(x.n, rng, y);
        double e = std::exp(pairing_value(x, y));
        for (std::size_t t = 0; t < patterns.size(); ++t) {
            double v = e * monomial_value(patterns[t], y);
            sum[t] += v;
            sum2[t] += v * v;
        }
    }
    McMoments out;
    out.samples = samples;
    out.seed = seed;
    double ns = static_cast<double>(samples);
    for (std::size_t t = 0; t < patterns.size(); ++t) {
        double mean = sum[t] / ns;
        double var = std::max(0.0, sum2[t] / ns - mean * mean);
        out.value.push_back(mean);
        out.stderr_.push_back(std::sqrt(var / ns));
    }
    return out;
}

inline ValueEstimate fisher_value_quad(const SquareMatrix& x, unsigned resolution) {
    std::vector<MomentPattern> p{MomentPattern(x.n)};
    double fine = fisher_moments_quad(x, p, resolution)[0];
    double coarse = fisher_moments_quad(x, p, std::max(2u, resolution / 2))[0];
    return {fine, std::abs(fine - coarse)};
}

inline ValueEstimate fisher_value_mc(const SquareMatrix& x, std::uint64_t samples,
                                     std::uint64_t seed) {
    std::vector<MomentPattern> p{MomentPattern(x.n)};
    McMoments m = fisher_moments_mc(x, p, samples, seed);
    return {m.value[0], m.stderr_[0]};
}

inline ValueEstimate fisher_moment_quad(const SquareMatrix& x, const MomentPattern& pattern,
                                        unsigned resolution) {
    std::vector<MomentPattern> p{pattern};
    double fine = fisher_moments_quad(x, p, resolution)[0];
    double coarse = fisher_moments_quad(x, p, std::max(2u, resolution / 2))[0];
    return {fine, std::abs(fine - coarse)};
}

namespace detail {

/// One operator term evaluated at x0: scalar weight c * x0^alpha plus the
/// y-moment pattern read off the derivation exponents.
struct NumericTerm {
    double weight = 0.0;
    MomentPattern pattern{0};
};

inline std::vector<NumericTerm> numeric_terms(const WeylOperator& op, const SquareMatrix& x0) {
    const VarTable& t = *op.table();
    std::vector<NumericTerm> out;
    for (const auto& [m, c] : op.terms()) {
        NumericTerm nt;
        nt.pattern = MomentPattern(x0.n);
        nt.weight = c.get_d();
        for (std::size_t id = 0; id < m.e.size(); ++id) {
            if (!m.e[id]) continue;
            const Variable& v = t.var(id);
            unsigned i = v.i - 1;
            unsigned j = has_two_indices(v.family) ? v.j - 1 : v.i - 1;
            if (i >= x0.n || j >= x0.n)
                throw std::invalid_argument("numeric_terms: operator index exceeds matrix size");
            if (is_derivation(v.family)) {
                nt.pattern(i, j) += m.e[id];
            } else {
                for (unsigned k = 0; k < m.e[id]; ++k) nt.weight *= x0(i, j);
            }
        }
        out.push_back(std::move(nt));
    }
    return out;
}

}  // namespace detail

struct ResidualReport {
    double residual = 0.0;    // (P . f)(x0) estimate, signed and unscaled
    double scale = 1.0;       // 1 + sum of absolute term contributions
    double normalized = 0.0;  // |residual| / scale
    double stderr_ = 0.0;     // Monte Carlo standard error, in normalized units
    std::string method;
};

/// Evaluates (P . f)(x0) = sum_terms c x0^alpha * moment(beta) on the
/// deterministic grid. The scale-free residual divides by one plus the sum
/// of absolute term contributions.
inline ResidualReport annihilation_residual_quad(const WeylOperator& op, const SquareMatrix& x0,
                                                 unsigned resolution) {
    auto terms = detail::numeric_terms(op, x0);
    std::vector<MomentPattern> patterns;
    for (auto& t : terms) patterns.push_back(t.pattern);
    std::vector<double> moments = fisher_moments_quad(x0, patterns, resolution);
    ResidualReport rep;
    rep.method = "quad";
    for (std::size_t k = 0; k < terms.size(); ++k) {
        double contrib = terms[k].weight * moments[k];
        rep.residual += contrib;
        rep.scale += std::abs(contrib);
    }
    rep.normalized = std::abs(rep.residual) / rep.scale;
    return rep;
}

/// Monte Carlo version: the per-sample statistic is the full term sum, so
/// the standard error refers to the residual itself.
inline std::vector<ResidualReport> annihilation_residuals_mc(std::span<const WeylOperator> ops,
                                                             const SquareMatrix& x0,
                                                             std::uint64_t samples,
                                                             std::uint64_t seed) {
    if (samples == 0) throw std::invalid_argument("annihilation_residuals_mc: need samples > 0");
    std::vector<std::vector<detail::NumericTerm>> terms;
    for (const WeylOperator& op : ops) terms.push_back(detail::numeric_terms(op, x0));
    std::vector<double> sum(ops.size(), 0.0), sum2(ops.size(), 0.0);
    std::vector<std::vector<double>> term_sum(ops.size());
    for (std::size_t o = 0; o < ops.size(); ++o) term_sum[o].assign(terms[o].size(), 0.0);
    Rng rng(seed);
    SquareMatrix y(x0.n);
    for (std::uint64_t s = 0; s < samples; ++s) {
        sample_rotation(x0.n, rng, y);
        double e = std::exp(pairing_value(x0, y));
        for (std::size_t o = 0; o < ops.size(); ++o) {
            double g = 0.0;
            for (std::size_t k = 0; k < terms[o].size(); ++k) {
                double v = terms[o][k].weight * monomial_value(terms[o][k].pattern, y) * e;
                g += v;
                term_sum[o][k] += v;
            }
            sum[o] += g;
            sum2[o] += g * g;
        }
    }
    std::vector<ResidualReport> out(ops.size());
    double ns = static_cast<double>(samples);
    for (std::size_t o = 0; o < ops.size(); ++o) {
        ResidualReport& rep = out[o];
        rep.method = "mc";
        rep.residual = sum[o] / ns;
        double var = std::max(0.0, sum2[o] / ns - rep.residual * rep.residual);
        for (double ts : term_sum[o]) rep.scale += std::abs(ts / ns);
        rep.normalized = std::abs(rep.residual) / rep.scale;
        rep.stderr_ = std::sqrt(var / ns) / rep.scale;
    }
    return out;
}

/// SO(2) diagonal oracle: every moment of (y_11, y_22) is a derivative of
/// I_0 at s = x_1 + x_2, because the integrand depends on the angle sum
/// alone.
inline ResidualReport annihilation_residual_bessel(const WeylOperator& op, double x1, double x2) {
    SquareMatrix x0 = SquareMatrix::diagonal({x1, x2});
    auto terms = detail::numeric_terms(op, x0);
    double s = x1 + x2;
    ResidualReport rep;
    rep.method = "bessel";
    for (const auto& t : terms) {
        unsigned total = 0;
        for (unsigned i = 0; i < 2; ++i)
            for (unsigned j = 0; j < 2; ++j) {
                if (i != j && t.pattern(i, j))
                    throw std::invalid_argument(
                        "bessel oracle: off-diagonal moment requested; use quad or mc");
                if (i == j) total += t.pattern(i, j);
            }
        double contrib = t.weight * bessel_i0_derivative(total, s);
        rep.residual += contrib;
        rep.scale += std::abs(contrib);
    }
    rep.normalized = std::abs(rep.residual) / rep.scale;
    return rep;
}

}  // namespace sofi
