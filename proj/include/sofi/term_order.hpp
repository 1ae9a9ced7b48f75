#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "sofi/monomial.hpp"
#include "sofi/variables.hpp"

namespace sofi {

/// Total multiplicative well-ordering on monomials. The weighted kind
/// compares a nonnegative weight vector first and breaks ties with one of
/// the classical orders; this is what makes the (0,1)-adapted Weyl order
/// representable.
class TermOrder {
  public:
    enum class Kind : unsigned char { lex, grlex, grevlex, weighted };

    static TermOrder lex() { return TermOrder(Kind::lex); }
    static TermOrder grlex() { return TermOrder(Kind::grlex); }
    static TermOrder grevlex() { return TermOrder(Kind::grevlex); }

    static TermOrder weighted(std::vector<std::uint32_t> weights, Kind tiebreak = Kind::grevlex) {
        if (tiebreak == Kind::weighted)
            throw std::invalid_argument("TermOrder: tiebreak must be a classical order");
        TermOrder o(Kind::weighted);
        o.weights_ = std::move(weights);
        o.tiebreak_ = tiebreak;
        return o;
    }

    /// Weight 0 on positions, 1 on derivations, refined by grevlex.
    static TermOrder weyl_01(const VarTable& table) {
        std::vector<std::uint32_t> w(table.size(), 0u);
        for (std::size_t id : table.derivation_ids()) w[id] = 1u;
        return weighted(std::move(w), Kind::grevlex);
    }

    Kind kind() const { return kind_; }
    const std::vector<std::uint32_t>& weights() const { return weights_; }

    /// +1 if a > b, -1 if a < b, 0 if equal.
    int compare(const Monomial& a, const Monomial& b) const {
        if (kind_ == Kind::weighted) {
            std::uint64_t wa = dot(a), wb = dot(b);
            if (wa != wb) return wa > wb ? 1 : -1;
            return compare_classical(tiebreak_, a, b);
        }
        return compare_classical(kind_, a, b);
    }

    bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

    std::string description() const {
        switch (kind_) {
            case Kind::lex: return "lex";
            case Kind::grlex: return "grlex";
            case Kind::grevlex: return "grevlex";
            case Kind::weighted: {
                std::string s = "weighted[";
                for (std::size_t k = 0; k < weights_.size(); ++k) {
                    if (k) s += ',';
                    s += std::to_string(weights_[k]);
                }
                s += "]+";
                s += TermOrder(tiebreak_).description();
                return s;
            }
        }
        return "?";
    }

    friend bool operator==(const TermOrder& a, const TermOrder& b) {
        return a.kind_ == b.kind_ && a.tiebreak_ == b.tiebreak_ && a.weights_ == b.weights_;
    }

  private:
    explicit TermOrder(Kind k) : kind_(k) {}

    std::uint64_t dot(const Monomial& m) const {
        if (m.e.size() != weights_.size())
            throw std::invalid_argument("TermOrder: weight vector length mismatch");
        std::uint64_t s = 0;
        for (std::size_t k = 0; k < m.e.size(); ++k)
            s += std::uint64_t{weights_[k]} * m.e[k];
        return s;
    }

    static int compare_classical(Kind k, const Monomial& a, const Monomial& b) {
        switch (k) {
            case Kind::lex: {
                for (std::size_t i = 0; i < a.e.size(); ++i)
                    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
                return 0;
            }
            case Kind::grlex: {
                unsigned da = a.total_degree(), db = b.total_degree();
                if (da != db) return da > db ? 1 : -1;
                return compare_classical(Kind::lex, a, b);
            }
            case Kind::grevlex: {
                unsigned da = a.total_degree(), db = b.total_degree();
                if (da != db) return da > db ? 1 : -1;
                for (std::size_t i = a.e.size(); i-- > 0;)
                    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
                return 0;
            }
            default: return 0;
        }
    }

    Kind kind_;
    Kind tiebreak_ = Kind::grevlex;
    std::vector<std::uint32_t> weights_;
};

}  // namespace sofi
