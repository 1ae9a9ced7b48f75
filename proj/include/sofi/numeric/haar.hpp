#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sofi/numeric/rng.hpp"

namespace sofi {

/// Dense row-major square matrix of doubles for the numeric layer.
struct SquareMatrix {
    unsigned n = 0;
    std::vector<double> a;

    SquareMatrix() = default;
    explicit SquareMatrix(unsigned size) : n(size), a(std::size_t{size} * size, 0.0) {}

    double& operator()(unsigned i, unsigned j) { return a[std::size_t{i} * n + j]; }
    double operator()(unsigned i, unsigned j) const { return a[std::size_t{i} * n + j]; }

    static SquareMatrix diagonal(const std::vector<double>& d) {
        SquareMatrix m(static_cast<unsigned>(d.size()));
        for (unsigned i = 0; i < m.n; ++i) m(i, i) = d[i];
        return m;
    }
};

inline double determinant(const SquareMatrix& m) {
    SquareMatrix lu = m;
    double det = 1.0;
    for (unsigned c = 0; c < m.n; ++c) {
        unsigned pivot = c;
        for (unsigned r = c + 1; r < m.n; ++r)
            if (std::abs(lu(r, c)) > std::abs(lu(pivot, c))) pivot = r;
        if (pivot != c) {
            for (unsigned k = 0; k < m.n; ++k) std::swap(lu(pivot, k), lu(c, k));
            det = -det;
        }
        if (lu(c, c) == 0.0) return 0.0;
        det *= lu(c, c);
        for (unsigned r = c + 1; r < m.n; ++r) {
            double f = lu(r, c) / lu(c, c);
            for (unsigned k = c; k < m.n; ++k) lu(r, k) -= f * lu(c, k);
        }
    }
    return det;
}

inline double orthogonality_defect(const SquareMatrix& q) {
    double worst = 0.0;
    for (unsigned i = 0; i < q.n; ++i)
        for (unsigned j = 0; j < q.n; ++j) {
            double s = (i == j) ? -1.0 : 0.0;
            for (unsigned k = 0; k < q.n; ++k) s += q(k, i) * q(k, j);
            worst = std::max(worst, std::abs(s));
        }
    return worst;
}

/// Draws a Haar-distributed rotation: orthonormalize a standard Gaussian
/// matrix column by column (positive diagonal in the triangular factor is
/// automatic for Gram-Schmidt), then flip the first column if the
/// determinant is -1. The projection pass is run twice to keep the
/// orthogonality defect at machine precision.
inline void sample_rotation(unsigned n, Rng& rng, SquareMatrix& out) {
    out = SquareMatrix(n);
    for (auto& v : out.a) v = rng.gaussian();
    for (unsigned j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass)
            for (unsigned i = 0; i < j; ++i) {
                double dot = 0.0;
                for (unsigned k = 0; k < n; ++k) dot += out(k, i) * out(k, j);
                for (unsigned k = 0; k < n; ++k) out(k, j) -= dot * out(k, i);
            }
        double norm = 0.0;
        for (unsigned k = 0; k < n; ++k) norm += out(k, j) * out(k, j);
        norm = std::sqrt(norm);
        for (unsigned k = 0; k < n; ++k) out(k, j) /= norm;
    }
    if (determinant(out) < 0.0)
        for (unsigned k = 0; k < n; ++k) out(k, 0) = -out(k, 0);
}

struct RotationSample {
    SquareMatrix matrix;
    std::uint64_t seed = 0;
};

inline RotationSample haar_sample(unsigned n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("haar_sample: need n >= 2");
    Rng rng(seed);
    RotationSample s;
    s.seed = seed;
    sample_rotation(n, rng, s.matrix);
    return s;
}

}  // namespace sofi
