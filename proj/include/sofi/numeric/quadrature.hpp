#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sofi/numeric/haar.hpp"

namespace sofi {

/// Gauss-Legendre nodes and weights on [-1, 1], Newton iteration on the
/// Legendre recurrence.
struct GaussLegendre {
    std::vector<double> nodes, weights;

    explicit GaussLegendre(unsigned n) {
        if (n == 0) throw std::invalid_argument("GaussLegendre: need n >= 1");
        nodes.resize(n);
        weights.resize(n);
        const double pi = 3.14159265358979323846;
        for (unsigned i = 0; i < (n + 1) / 2; ++i) {
            double x = std::cos(pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 64; ++iter) {
                double p0 = 1.0, p1 = x;
                for (unsigned k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            double w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            weights[i] = w;
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = w;
        }
    }
};

/// SO(3) nodes from Z-Y-Z Euler angles with the Haar density
/// sin(beta) d(alpha) d(beta) d(gamma) / (8 pi^2): trapezoid in the two
/// periodic angles, Gauss-Legendre in cos(beta). Weights are positive and
/// sum to one up to the rule's own exactness.
template <class F>
void for_each_so3_node(unsigned resolution, F&& visit) {
    if (resolution < 2) throw std::invalid_argument("so3 quadrature: resolution too small");
    GaussLegendre gl(resolution);
    const double pi = 3.14159265358979323846;
    const double step = 2.0 * pi / resolution;
    const double base_w = 1.0 / (2.0 * resolution * resolution);
    std::vector<double> cs(resolution), sn(resolution);
    for (unsigned k = 0; k < resolution; ++k) {
        cs[k] = std::cos(step * k);
        sn[k] = std::sin(step * k);
    }
    SquareMatrix y(3);
    for (unsigned ib = 0; ib < resolution; ++ib) {
        double cb = gl.nodes[ib];
        double sb = std::sqrt(std::max(0.0, 1.0 - cb * cb));
        double wb = gl.weights[ib] * base_w;
        for (unsigned ia = 0; ia < resolution; ++ia) {
            double ca = cs[ia], sa = sn[ia];
            for (unsigned ig = 0; ig < resolution; ++ig) {
                double cg = cs[ig], sg = sn[ig];
                // Rz(alpha) * Ry(beta) * Rz(gamma)
                y(0, 0) = ca * cb * cg - sa * sg;
                y(0, 1) = -ca * cb * sg - sa * cg;
                y(0, 2) = ca * sb;
                y(1, 0) = sa * cb * cg + ca * sg;
                y(1, 1) = -sa * cb * sg + ca * cg;
                y(1, 2) = sa * sb;
                y(2, 0) = -sb * cg;
                y(2, 1) = sb * sg;
                y(2, 2) = cb;
                visit(static_cast<const SquareMatrix&>(y), wb);
            }
        }
    }
}

/// SO(2) circle rule: y(theta) for theta on a uniform grid, weight 1/res.
template <class F>
void for_each_so2_node(unsigned resolution, F&& visit) {
    if (resolution < 2) throw std::invalid_argument("so2 quadrature: resolution too small");
    const double pi = 3.14159265358979323846;
    const double step = 2.0 * pi / resolution;
    const double w = 1.0 / resolution;
    SquareMatrix y(2);
    for (unsigned k = 0; k < resolution; ++k) {
        double c = std::cos(step * k), s = std::sin(step * k);
        y(0, 0) = c;
        y(0, 1) = -s;
        y(1, 0) = s;
        y(1, 1) = c;
        visit(static_cast<const SquareMatrix&>(y), w);
    }
}

template <class F>
void for_each_rotation_node(unsigned n, unsigned resolution, F&& visit) {
    if (n == 2)
        for_each_so2_node(resolution, visit);
    else if (n == 3)
        for_each_so3_node(resolution, visit);
    else
        throw std::invalid_argument("deterministic quadrature supports n = 2 and n = 3 only");
}

inline double quadrature_weight_sum(unsigned n, unsigned resolution) {
    double s = 0.0;
    for_each_rotation_node(n, resolution, [&](const SquareMatrix&, double w) { s += w; });
    return s;
}

}  // namespace sofi
