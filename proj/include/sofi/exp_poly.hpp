#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "sofi/polynomial.hpp"
#include "sofi/weyl.hpp"

namespace sofi {

/// Symbolic function p(v) * exp(L(v)) over the position variables of a Weyl
/// table. L must be linear in the declared active variables (by default the
/// positions that carry a derivation); the remaining positions act as
/// parameters inside the coefficients.
class ExpPolyFunction {
  public:
    ExpPolyFunction(Polynomial prefactor, Polynomial exponent,
                    std::vector<std::size_t> active_vars)
        : prefactor_(std::move(prefactor)),
          exponent_(std::move(exponent)),
          active_(std::move(active_vars)) {
        require_same_table(prefactor_.table(), exponent_.table(), "ExpPolyFunction");
        const VarTable& t = *prefactor_.table();
        for (std::size_t id : t.derivation_ids())
            if (prefactor_.degree_in(id) > 0 || exponent_.degree_in(id) > 0)
                throw std::invalid_argument("ExpPolyFunction: derivation slot used");
        for (const auto& [m, c] : exponent_.terms()) {
            unsigned active_degree = 0;
            for (std::size_t id : active_) active_degree += m.e[id];
            if (active_degree > 1)
                throw std::invalid_argument(
                    "ExpPolyFunction: exponent must be linear in the active variables");
        }
    }

    ExpPolyFunction(Polynomial prefactor, Polynomial exponent)
        : ExpPolyFunction(std::move(prefactor), exponent,
                          exponent.table()->active_position_ids()) {}

    const Polynomial& prefactor() const { return prefactor_; }
    const Polynomial& exponent() const { return exponent_; }
    const TablePtr& table() const { return prefactor_.table(); }
    bool is_zero() const { return prefactor_.is_zero(); }

    /// Same exponential, scaled prefactor.
    ExpPolyFunction with_prefactor(Polynomial p) const {
        return ExpPolyFunction(std::move(p), exponent_, active_);
    }

    /// Multiplies by exp(f): shifts the exponent.
    ExpPolyFunction times_exp(const Polynomial& f) const {
        return ExpPolyFunction(prefactor_, exponent_ + f, active_);
    }

    friend bool operator==(const ExpPolyFunction& a, const ExpPolyFunction& b) {
        return a.prefactor_ == b.prefactor_ && a.exponent_ == b.exponent_;
    }

  private:
    Polynomial prefactor_;
    Polynomial exponent_;
    std::vector<std::size_t> active_;

    friend ExpPolyFunction apply(const WeylOperator& op, const ExpPolyFunction& g);
};

/// Applies a normally ordered operator: d_i(p e^L) = (dp/dv_i + p dL/dv_i) e^L,
/// recursively, then multiplies by the position monomial. Exact.
inline ExpPolyFunction apply(const WeylOperator& op, const ExpPolyFunction& g) {
    require_same_table(op.table(), g.table(), "apply");
    const VarTable& t = *op.table();
    Polynomial acc(g.table());
    for (const auto& [m, c] : op.terms()) {
        Polynomial h = g.prefactor();
        for (std::size_t d : t.derivation_ids()) {
            std::size_t pos = t.partner(d);
            Polynomial dl = g.exponent().derivative(pos);
            for (unsigned k = 0; k < m.e[d]; ++k) h = h.derivative(pos) + h * dl;
        }
        Monomial pos_part(t.size());
        for (std::size_t id : t.position_ids()) pos_part.e[id] = m.e[id];
        acc += h * Polynomial::term(g.table(), std::move(pos_part), c);
    }
    return g.with_prefactor(std::move(acc));
}

}  // namespace sofi
