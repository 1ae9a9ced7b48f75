#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <ostream>
#include <vector>

#include "sofi/numeric/fisher.hpp"
#include "sofi/pfaffian.hpp"

namespace sofi {

struct HgmTrajectory {
    std::array<double, 3> start{}, target{};
    unsigned steps = 0;
    std::vector<double> ts;                        // path parameter per record
    std::vector<std::array<double, 4>> states;     // F = (f, f1, f2, f3)

    const std::array<double, 4>& value() const { return states.back(); }
};

/// Along the straight path each x_i(t)^2 - x_j(t)^2 is a quadratic in t
/// whose roots are the roots of the linear factors x_i -+ x_j, so its
/// minimum modulus over [0,1] sits at an endpoint, at the vertex, or at a
/// root. Returns the parameter where some pair dips to eps or below;
/// nullopt when the whole path is regular.
inline std::optional<double> path_singularity(const std::array<double, 3>& start,
                                              const std::array<double, 3>& target,
                                              double eps = 1e-8) {
    std::optional<double> first;
    auto offer = [&](double t) {
        if (!first || t < *first) first = t;
    };
    for (unsigned i = 0; i < 3; ++i)
        for (unsigned j = i + 1; j < 3; ++j) {
            auto diff2 = [&](double t) {
                double xi = start[i] + t * (target[i] - start[i]);
                double xj = start[j] + t * (target[j] - start[j]);
                return xi * xi - xj * xj;
            };
            std::vector<double> probe{0.0, 1.0};
            for (double sign : {1.0, -1.0}) {
                double a = start[i] + sign * start[j];
                double b = target[i] + sign * target[j];
                if (a != b) {
                    double t = a / (a - b);  // root of the linear factor
                    if (t > 0.0 && t < 1.0) probe.push_back(t);
                }
            }
            // vertex of the quadratic
            double c2 = diff2(0.0) - 2.0 * diff2(0.5) + diff2(1.0);  // = A/2
            if (c2 != 0.0) {
                double c1 = -1.5 * diff2(0.0) + 2.0 * diff2(0.5) - 0.5 * diff2(1.0);  // = B/2
                double tv = -c1 / (2.0 * c2);  // -B/(2A)
                if (tv > 0.0 && tv < 1.0) probe.push_back(tv);
            }
            for (double t : probe)
                if (std::abs(diff2(t)) <= eps) offer(t);
        }
    return first;
}

/// Classical fixed-step RK4 on F'(t) = (sum_i (target_i - start_i)
/// A_i(x(t))) F(t) along the straight line from start to target. The path
/// must stay clear of the singular locus.
inline HgmTrajectory hgm_evaluate(const std::array<double, 3>& start,
                                  const std::array<double, 3>& target,
                                  const std::array<double, 4>& initial, unsigned steps,
                                  double eps = 1e-8) {
    if (steps == 0) throw std::invalid_argument("hgm_evaluate: need steps > 0");
    if (auto t = path_singularity(start, target, eps)) {
        // name the offending pair at the crossing point
        std::array<double, 3> xc;
        for (unsigned k = 0; k < 3; ++k) xc[k] = start[k] + *t * (target[k] - start[k]);
        unsigned bi = 0, bj = 1;
        double best = std::abs(xc[0] * xc[0] - xc[1] * xc[1]);
        for (unsigned i = 0; i < 3; ++i)
            for (unsigned j = i + 1; j < 3; ++j) {
                double d = std::abs(xc[i] * xc[i] - xc[j] * xc[j]);
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        throw singular_locus_error(bi + 1, bj + 1, *t);
    }

    std::array<double, 3> delta;
    for (unsigned k = 0; k < 3; ++k) delta[k] = target[k] - start[k];
    auto derivative = [&](double t, const std::array<double, 4>& f) {
        std::array<double, 3> x;
        for (unsigned k = 0; k < 3; ++k) x[k] = start[k] + t * delta[k];
        PfaffianSystem<double> sys = so3_pfaffian(x, eps);
        std::array<double, 4> d{};
        for (unsigned i = 0; i < 3; ++i)
            for (unsigned r = 0; r < 4; ++r) {
                double s = 0.0;
                for (unsigned c = 0; c < 4; ++c) s += sys.A[i][r][c] * f[c];
                d[r] += delta[i] * s;
            }
        return d;
    };

    HgmTrajectory traj;
    traj.start = start;
    traj.target = target;
    traj.steps = steps;
    traj.ts.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    std::array<double, 4> f = initial;
    traj.ts.push_back(0.0);
    traj.states.push_back(f);
    double h = 1.0 / steps;
    for (unsigned s = 0; s < steps; ++s) {
        double t = s * h;
        auto k1 = derivative(t, f);
        std::array<double, 4> tmp;
        for (unsigned r = 0; r < 4; ++r) tmp[r] = f[r] + 0.5 * h * k1[r];
        auto k2 = derivative(t + 0.5 * h, tmp);
        for (unsigned r = 0; r < 4; ++r) tmp[r] = f[r] + 0.5 * h * k2[r];
        auto k3 = derivative(t + 0.5 * h, tmp);
        for (unsigned r = 0; r < 4; ++r) tmp[r] = f[r] + h * k3[r];
        auto k4 = derivative(t + h, tmp);
        for (unsigned r = 0; r < 4; ++r)
            f[r] += h / 6.0 * (k1[r] + 2.0 * k2[r] + 2.0 * k3[r] + k4[r]);
        traj.ts.push_back((s + 1) * h);
        traj.states.push_back(f);
    }
    return traj;
}

/// Initial vector (f, f_1, f_2, f_3) at a diagonal point from the
/// deterministic SO(3) quadrature.
inline std::array<double, 4> hgm_initial_from_quadrature(const std::array<double, 3>& x,
                                                         unsigned resolution) {
    SquareMatrix xm = SquareMatrix::diagonal({x[0], x[1], x[2]});
    std::vector<MomentPattern> patterns(4, MomentPattern(3));
    for (unsigned i = 0; i < 3; ++i) patterns[1 + i](i, i) = 1;
    std::vector<double> m = fisher_moments_quad(xm, patterns, resolution);
    return {m[0], m[1], m[2], m[3]};
}

inline void write_trajectory_csv(const HgmTrajectory& traj, std::ostream& os) {
    os << "t,f,f1,f2,f3\n";
    for (std::size_t k = 0; k < traj.ts.size(); ++k) {
        os << traj.ts[k];
        for (double v : traj.states[k]) os << ',' << v;
        os << '\n';
    }
}

}  // namespace sofi
