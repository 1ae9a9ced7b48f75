#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "sofi/rational.hpp"

namespace sofi {

class singular_locus_error : public std::domain_error {
  public:
    singular_locus_error(unsigned i, unsigned j, std::optional<double> path_t = std::nullopt)
        : std::domain_error("singular locus |x_" + std::to_string(i) + "| = |x_" +
                            std::to_string(j) + "|" +
                            (path_t ? " crossed at t = " + std::to_string(*path_t) : "")),
          i_(i),
          j_(j),
          path_t_(path_t) {}
    unsigned i() const { return i_; }
    unsigned j() const { return j_; }
    std::optional<double> path_parameter() const { return path_t_; }

  private:
    unsigned i_, j_;
    std::optional<double> path_t_;
};

/// First-order system d_i F = A_i F for F = (f, f_1, f_2, f_3) on the
/// diagonal SO(3) Fisher integral, away from |x_i| = |x_j|. Exact when the
/// scalar type is Rational.
template <class S>
struct PfaffianSystem {
    std::array<S, 3> x;
    std::array<std::array<std::array<S, 4>, 4>, 3> A;
};

namespace detail {

inline bool pf_regular(const Rational& diff2, double) { return sgn(diff2) != 0; }
inline bool pf_regular(double diff2, double eps) { return std::abs(diff2) > eps; }

}  // namespace detail

/// Rows, with k the index outside {i,j}:
///   d_i f        = f_i
///   d_i f_i      = f - sum_{k != i} (x_i f_i - x_k f_k) / (x_i^2 - x_k^2)
///   d_i f_j      = (x_j f_i - x_i f_j) / (x_i^2 - x_j^2) + f_k    (j != i)
template <class S>
PfaffianSystem<S> so3_pfaffian(const std::array<S, 3>& x, double eps = 1e-8) {
    PfaffianSystem<S> sys;
    sys.x = x;
    std::array<std::array<S, 3>, 3> inv_diff{};
    for (unsigned i = 0; i < 3; ++i)
        for (unsigned j = 0; j < 3; ++j) {
            if (i == j) continue;
            S d = x[i] * x[i] - x[j] * x[j];
            if (!detail::pf_regular(d, eps)) throw singular_locus_error(i + 1, j + 1);
            inv_diff[i][j] = S(1) / d;
        }
    for (auto& mat : sys.A)
        for (auto& row : mat) row.fill(S(0));
    for (unsigned i = 0; i < 3; ++i) {
        auto& A = sys.A[i];
        A[0][1 + i] = S(1);
        A[1 + i][0] = S(1);
        for (unsigned k = 0; k < 3; ++k) {
            if (k == i) continue;
            A[1 + i][1 + i] -= x[i] * inv_diff[i][k];
            A[1 + i][1 + k] += x[k] * inv_diff[i][k];
        }
        for (unsigned j = 0; j < 3; ++j) {
            if (j == i) continue;
            unsigned k = 3 - i - j;
            A[1 + j][1 + i] += x[j] * inv_diff[i][j];
            A[1 + j][1 + j] -= x[i] * inv_diff[i][j];
            A[1 + j][1 + k] += S(1);
        }
    }
    return sys;
}

}  // namespace sofi
