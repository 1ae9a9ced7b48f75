#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sofi/monomial.hpp"
#include "sofi/polynomial.hpp"
#include "sofi/rational.hpp"
#include "sofi/variables.hpp"

namespace sofi {

/// Element of a Weyl algebra in normal order: every term is a monomial in
/// the position variables times a monomial in the derivations, encoded as a
/// single exponent vector over the table. The commutation relation
/// [d_i, v_j] = delta_ij lives in the product, never in the storage.
class WeylOperator {
  public:
    using Term = std::pair<Monomial, Rational>;

    WeylOperator() = default;
    explicit WeylOperator(TablePtr table) : table_(std::move(table)) {}

    static WeylOperator constant(TablePtr table, Rational c) {
        WeylOperator p(std::move(table));
        if (!sofi::is_zero(c)) p.terms_.emplace_back(Monomial(p.table_->size()), std::move(c));
        return p;
    }

    static WeylOperator term(TablePtr table, Monomial m, Rational c) {
        WeylOperator p(std::move(table));
        if (m.e.size() != p.table_->size())
            throw std::invalid_argument("WeylOperator::term: monomial length mismatch");
        if (!sofi::is_zero(c)) p.terms_.emplace_back(std::move(m), std::move(c));
        return p;
    }

    static WeylOperator variable(TablePtr table, const Variable& v, unsigned power = 1) {
        auto id = table->find(v);
        if (!id)
            throw std::invalid_argument("WeylOperator::variable: " + v.name() + " not in table");
        Monomial m(table->size());
        m.e[*id] = power;
        return term(std::move(table), std::move(m), Rational(1));
    }

    /// Reinterprets a commutative polynomial over the same table as an
    /// order-zero operator (and back).
    static WeylOperator from_polynomial(const Polynomial& p) {
        WeylOperator r(p.table());
        for (std::size_t id : p.table()->derivation_ids())
            if (p.degree_in(id) > 0)
                throw std::invalid_argument(
                    "WeylOperator::from_polynomial: polynomial touches a derivation slot");
        r.terms_.assign(p.terms().begin(), p.terms().end());
        return r;
    }

    Polynomial to_polynomial() const {
        if (order() > 0)
            throw std::logic_error("WeylOperator::to_polynomial: operator has derivations");
        return Polynomial::from_terms(table_, {terms_.begin(), terms_.end()});
    }

    const TablePtr& table() const { return table_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    /// Maximal total derivation degree.
    unsigned order() const {
        unsigned m = 0;
        for (const auto& [mono, c] : terms_) {
            unsigned d = 0;
            for (std::size_t id : table_->derivation_ids()) d += mono.e[id];
            m = std::max(m, d);
        }
        return m;
    }

    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
        return d;
    }

    friend bool operator==(const WeylOperator& a, const WeylOperator& b) {
        if (a.table_ != b.table_ && !(a.table_ && b.table_ && *a.table_ == *b.table_))
            return false;
        return a.terms_ == b.terms_;
    }

    WeylOperator operator-() const {
        WeylOperator r(*this);
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }

    WeylOperator& operator+=(const WeylOperator& o) {
        require_same_table(table_, o.table_, "WeylOperator::add");
        std::vector<Term> all = terms_;
        all.insert(all.end(), o.terms_.begin(), o.terms_.end());
        normalize(all);
        terms_ = std::move(all);
        return *this;
    }
    WeylOperator& operator-=(const WeylOperator& o) { return *this += -o; }
    friend WeylOperator operator+(WeylOperator a, const WeylOperator& b) { return a += b; }
    friend WeylOperator operator-(WeylOperator a, const WeylOperator& b) { return a -= b; }

    WeylOperator& operator*=(const Rational& c) {
        if (sofi::is_zero(c)) {
            terms_.clear();
        } else {
            for (auto& [m, cc] : terms_) cc = cc * c;
        }
        return *this;
    }
    friend WeylOperator operator*(WeylOperator p, const Rational& c) { return p *= c; }
    friend WeylOperator operator*(const Rational& c, WeylOperator p) { return p *= c; }

    friend WeylOperator operator*(const WeylOperator& a, const WeylOperator& b);

    WeylOperator pow(unsigned k) const {
        WeylOperator r = constant(table_, Rational(1));
        for (unsigned t = 0; t < k; ++t) r = r * *this;
        return r;
    }

    std::pair<Monomial, Rational> leading_term(const TermOrder& order) const {
        if (terms_.empty()) throw std::logic_error("leading_term of zero operator");
        std::size_t best = 0;
        for (std::size_t k = 1; k < terms_.size(); ++k)
            if (order.greater(terms_[k].first, terms_[best].first)) best = k;
        return terms_[best];
    }

    WeylOperator monic(const TermOrder& order) const {
        if (terms_.empty()) return *this;
        Rational lc = leading_term(order).second;
        WeylOperator r(*this);
        Rational inv = 1 / lc;
        r *= inv;
        return r;
    }

    std::string str() const { return terms_str(terms_, *table_); }

    static void normalize(std::vector<Term>& terms) {
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return storage_greater(a.first, b.first); });
        std::vector<Term> out;
        out.reserve(terms.size());
        for (auto& t : terms) {
            if (!out.empty() && out.back().first == t.first) {
                out.back().second += t.second;
                if (sofi::is_zero(out.back().second)) out.pop_back();
            } else if (!sofi::is_zero(t.second)) {
                out.push_back(std::move(t));
            }
        }
        terms.swap(out);
    }

    static WeylOperator from_terms(TablePtr table, std::vector<Term> terms) {
        WeylOperator p(std::move(table));
        normalize(terms);
        p.terms_ = std::move(terms);
        return p;
    }

    WeylOperator primitive_part() const {
        if (terms_.empty()) return *this;
        Integer num_gcd(0), den_lcm(1);
        for (const auto& [m, c] : terms_) {
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        }
        Rational scale(den_lcm, num_gcd);
        scale.canonicalize();
        if (sgn(terms_.front().second) < 0) scale = -scale;
        WeylOperator r(*this);
        r *= scale;
        return r;
    }

  private:
    TablePtr table_;
    std::vector<Term> terms_;
};

namespace detail {

/// d^b v^c = sum_k C(b,k) C(c,k) k! v^(c-k) d^(b-k), per paired variable.
/// Accumulates the normally ordered product of two normally ordered terms.
inline void weyl_term_product(const VarTable& table, const Monomial& ma, const Rational& ca,
                              const Monomial& mb, const Rational& cb,
                              std::vector<WeylOperator::Term>& out) {
    // Pairs where a derivation of the left term meets its position in the
    // right term.
    std::vector<std::pair<std::size_t, std::size_t>> active;  // (deriv id, pos id)
    for (std::size_t d : table.derivation_ids()) {
        std::size_t p = table.partner(d);
        if (ma.e[d] > 0 && mb.e[p] > 0) active.emplace_back(d, p);
    }
    Monomial base = ma * mb;
    Rational c0 = ca * cb;
    if (active.empty()) {
        out.emplace_back(std::move(base), std::move(c0));
        return;
    }
    std::vector<unsigned> k(active.size(), 0u);
    for (;;) {
        Rational c = c0;
        Monomial m = base;
        for (std::size_t t = 0; t < active.size(); ++t) {
            auto [d, p] = active[t];
            unsigned kk = k[t];
            if (kk) {
                Integer f = binomial(ma.e[d], kk) * binomial(mb.e[p], kk) * factorial(kk);
                c *= Rational(f);
                m.e[d] -= kk;
                m.e[p] -= kk;
            }
        }
        out.emplace_back(std::move(m), std::move(c));
        // odometer over k[t] in [0, min(b_d, c_p)]
        std::size_t t = 0;
        for (; t < active.size(); ++t) {
            auto [d, p] = active[t];
            if (k[t] < std::min(ma.e[d], mb.e[p])) {
                ++k[t];
                break;
            }
            k[t] = 0;
        }
        if (t == active.size()) break;
    }
}

}  // namespace detail

inline WeylOperator operator*(const WeylOperator& a, const WeylOperator& b) {
    require_same_table(a.table(), b.table(), "WeylOperator::operator*");
    std::vector<WeylOperator::Term> out;
    out.reserve(a.terms().size() * b.terms().size());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms())
            detail::weyl_term_product(*a.table(), ma, ca, mb, cb, out);
    return WeylOperator::from_terms(a.table(), std::move(out));
}

inline WeylOperator weyl_mul(const WeylOperator& a, const WeylOperator& b) { return a * b; }

class undefined_symbol_error : public std::logic_error {
  public:
    undefined_symbol_error() : std::logic_error("principal symbol of the zero operator") {}
};

/// Sum of the terms of maximal total derivation degree, with each
/// derivation replaced by the commuting symbol variable xi carrying the
/// same indices. Lives in tables::symbol_table(P.table()).
inline Polynomial principal_symbol(const WeylOperator& p) {
    if (p.is_zero()) throw undefined_symbol_error();
    const VarTable& t = *p.table();
    TablePtr st = tables::symbol_table(p.table());
    // id mapping: positions keep their variable, derivation id -> xi var
    std::vector<std::size_t> image(t.size());
    for (std::size_t id = 0; id < t.size(); ++id) {
        const Variable& v = t.var(id);
        Variable w = v;
        if (is_derivation(v.family)) {
            unsigned j = has_two_indices(v.family) ? v.j : v.i;
            w = Variable{Family::xi, v.i, j};
        }
        image[id] = *st->find(w);
    }
    unsigned m = p.order();
    std::vector<Polynomial::Term> terms;
    for (const auto& [mono, c] : p.terms()) {
        unsigned d = 0;
        for (std::size_t id : t.derivation_ids()) d += mono.e[id];
        if (d != m) continue;
        Monomial out(st->size());
        for (std::size_t id = 0; id < t.size(); ++id) out.e[image[id]] += mono.e[id];
        terms.emplace_back(std::move(out), c);
    }
    return Polynomial::from_terms(st, std::move(terms));
}

namespace detail {

/// Applies a generator-wise algebra morphism to a normally ordered term by
/// transforming each factor and remultiplying: position factors in table
/// order, then derivation factors in table order.
template <class PosImage, class DerImage>
WeylOperator map_term_factors(const TablePtr& table, const Monomial& m, const Rational& c,
                              PosImage&& pos_image, DerImage&& der_image) {
    WeylOperator acc = WeylOperator::constant(table, c);
    for (std::size_t id : table->position_ids())
        for (unsigned k = 0; k < m.e[id]; ++k) acc = acc * pos_image(id);
    for (std::size_t id : table->derivation_ids())
        for (unsigned k = 0; k < m.e[id]; ++k) acc = acc * der_image(id);
    return acc;
}

}  // namespace detail

/// Algebra morphism v_i -> -d_i, d_i -> v_i (positions without a paired
/// derivation are left fixed).
inline WeylOperator fourier(const WeylOperator& p) {
    const TablePtr& t = p.table();
    WeylOperator out(t);
    for (const auto& [m, c] : p.terms()) {
        out += detail::map_term_factors(
            t, m, c,
            [&](std::size_t pos) {
                std::size_t d = t->partner(pos);
                if (d == VarTable::npos) return WeylOperator::variable(t, t->var(pos));
                Monomial mm(t->size());
                mm.e[d] = 1;
                return WeylOperator::term(t, std::move(mm), Rational(-1));
            },
            [&](std::size_t der) {
                return WeylOperator::variable(t, t->var(t->partner(der)));
            });
    }
    return out;
}

/// Algebra morphism v_i -> d_i, d_i -> -v_i; inverse of fourier.
inline WeylOperator fourier_inverse(const WeylOperator& p) {
    const TablePtr& t = p.table();
    WeylOperator out(t);
    for (const auto& [m, c] : p.terms()) {
        out += detail::map_term_factors(
            t, m, c,
            [&](std::size_t pos) {
                std::size_t d = t->partner(pos);
                if (d == VarTable::npos) return WeylOperator::variable(t, t->var(pos));
                Monomial mm(t->size());
                mm.e[d] = 1;
                return WeylOperator::term(t, std::move(mm), Rational(1));
            },
            [&](std::size_t der) {
                WeylOperator v = WeylOperator::variable(t, t->var(t->partner(der)));
                return v * Rational(-1);
            });
    }
    return out;
}

/// Exponential twist: substitutes d_i -> d_i - (df/dv_i) for every paired
/// derivation; realizes conjugation by exp(f). An algebra automorphism.
inline WeylOperator exponential_twist(const WeylOperator& p, const Polynomial& f) {
    require_same_table(p.table(), f.table(), "exponential_twist");
    const TablePtr& t = p.table();
    for (std::size_t id : t->derivation_ids())
        if (f.degree_in(id) > 0)
            throw std::invalid_argument("exponential_twist: f must be a position polynomial");
    // cache the substituted generators
    std::vector<WeylOperator> der_image(t->size(), WeylOperator(t));
    for (std::size_t d : t->derivation_ids()) {
        WeylOperator img = WeylOperator::variable(t, t->var(d));
        Polynomial fd = f.derivative(t->partner(d));
        img -= WeylOperator::from_polynomial(fd);
        der_image[d] = std::move(img);
    }
    WeylOperator out(t);
    for (const auto& [m, c] : p.terms()) {
        out += detail::map_term_factors(
            t, m, c, [&](std::size_t pos) { return WeylOperator::variable(t, t->var(pos)); },
            [&](std::size_t der) { return der_image[der]; });
    }
    return out;
}

/// Rebuilds an operator over another table through a variable renaming.
template <class VarMap>
WeylOperator transport(const WeylOperator& p, const TablePtr& target, VarMap&& rename) {
    std::vector<std::size_t> image(p.table()->size());
    for (std::size_t id = 0; id < p.table()->size(); ++id) {
        Variable w = rename(p.table()->var(id));
        auto tid = target->find(w);
        if (!tid)
            throw std::invalid_argument("transport: image variable " + w.name() +
                                        " not in target table");
        image[id] = *tid;
    }
    std::vector<WeylOperator::Term> terms;
    for (const auto& [m, c] : p.terms()) {
        Monomial out(target->size());
        for (std::size_t id = 0; id < m.e.size(); ++id) out.e[image[id]] += m.e[id];
        terms.emplace_back(std::move(out), c);
    }
    return WeylOperator::from_terms(target, std::move(terms));
}

}  // namespace sofi
