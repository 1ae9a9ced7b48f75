#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sofi/monomial.hpp"
#include "sofi/rational.hpp"
#include "sofi/term_order.hpp"
#include "sofi/variables.hpp"

namespace sofi {

/// Exact multivariate polynomial over a shared variable table. Terms are
/// kept canonical: sorted descending under the storage order, no zero
/// coefficients, no duplicate monomials.
class Polynomial {
  public:
    using Term = std::pair<Monomial, Rational>;

    Polynomial() = default;
    explicit Polynomial(TablePtr table) : table_(std::move(table)) {}

    static Polynomial constant(TablePtr table, Rational c) {
        Polynomial p(std::move(table));
        if (!sofi::is_zero(c)) p.terms_.emplace_back(Monomial(p.table_->size()), std::move(c));
        return p;
    }

    static Polynomial term(TablePtr table, Monomial m, Rational c) {
        Polynomial p(std::move(table));
        if (m.e.size() != p.table_->size())
            throw std::invalid_argument("Polynomial::term: monomial length mismatch");
        if (!sofi::is_zero(c)) p.terms_.emplace_back(std::move(m), std::move(c));
        return p;
    }

    static Polynomial variable(TablePtr table, const Variable& v, unsigned power = 1) {
        auto id = table->find(v);
        if (!id) throw std::invalid_argument("Polynomial::variable: " + v.name() + " not in table");
        Monomial m(table->size());
        m.e[*id] = power;
        return term(std::move(table), std::move(m), Rational(1));
    }

    const TablePtr& table() const { return table_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
    }

    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
        return d;
    }

    unsigned degree_in(std::size_t var_id) const {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.e[var_id]);
        return d;
    }

    const Rational& coefficient(const Monomial& m) const {
        static const Rational kZero(0);
        for (const auto& [mm, c] : terms_)
            if (mm == m) return c;
        return kZero;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.table_ != b.table_ && !(a.table_ && b.table_ && *a.table_ == *b.table_))
            return false;
        return a.terms_ == b.terms_;
    }

    Polynomial operator-() const {
        Polynomial r(*this);
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) { return add_scaled(o, Rational(1)); }
    Polynomial& operator-=(const Polynomial& o) { return add_scaled(o, Rational(-1)); }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    Polynomial& operator*=(const Rational& c) {
        if (sofi::is_zero(c)) {
            terms_.clear();
        } else {
            for (auto& [m, cc] : terms_) cc = cc * c;
        }
        return *this;
    }
    friend Polynomial operator*(Polynomial p, const Rational& c) { return p *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial p) { return p *= c; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        require_same_table(a.table_, b.table_, "Polynomial::operator*");
        std::map<Monomial, Rational, bool (*)(const Monomial&, const Monomial&)> acc(
            storage_greater);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m = ma * mb;
                auto [it, fresh] = acc.emplace(std::move(m), Rational(0));
                it->second += ca * cb;
            }
        Polynomial r(a.table_);
        for (auto& [m, c] : acc)
            if (!sofi::is_zero(c)) r.terms_.emplace_back(m, std::move(c));
        return r;
    }

    Polynomial pow(unsigned k) const {
        Polynomial r = constant(table_, Rational(1));
        for (unsigned t = 0; t < k; ++t) r = r * *this;
        return r;
    }

    /// d/d(var_id), exact.
    Polynomial derivative(std::size_t var_id) const {
        Polynomial r(table_);
        for (const auto& [m, c] : terms_) {
            if (m.e[var_id] == 0) continue;
            Monomial d = m;
            Rational nc = c * Rational(static_cast<long>(d.e[var_id]));
            d.e[var_id] -= 1;
            r.terms_.emplace_back(std::move(d), std::move(nc));
        }
        normalize(r.terms_);
        return r;
    }

    /// Ring homomorphism fixing all variables without an image.
    Polynomial substitute(const std::vector<std::optional<Polynomial>>& images) const {
        if (images.size() != table_->size())
            throw std::invalid_argument("Polynomial::substitute: image vector length mismatch");
        Polynomial out(table_);
        for (const auto& [m, c] : terms_) {
            Polynomial prod = constant(table_, c);
            Monomial untouched(table_->size());
            for (std::size_t id = 0; id < m.e.size(); ++id) {
                if (!m.e[id]) continue;
                if (images[id]) {
                    prod = prod * images[id]->pow(m.e[id]);
                } else {
                    untouched.e[id] = m.e[id];
                }
            }
            if (!untouched.is_one()) prod = prod * term(table_, untouched, Rational(1));
            out += prod;
        }
        return out;
    }

    std::pair<Monomial, Rational> leading_term(const TermOrder& order) const {
        if (terms_.empty()) throw std::logic_error("leading_term of zero polynomial");
        std::size_t best = 0;
        for (std::size_t k = 1; k < terms_.size(); ++k)
            if (order.greater(terms_[k].first, terms_[best].first)) best = k;
        return terms_[best];
    }

    /// Divides by the rational content and makes the storage-leading
    /// coefficient positive: integer coefficients, content one.
    Polynomial primitive_part() const {
        if (terms_.empty()) return *this;
        Integer num_gcd(0), den_lcm(1);
        for (const auto& [m, c] : terms_) {
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        }
        Rational scale(den_lcm, num_gcd);
        scale.canonicalize();
        if (sgn(terms_.front().second) < 0) scale = -scale;
        Polynomial r(*this);
        r *= scale;
        return r;
    }

    Polynomial monic(const TermOrder& order) const {
        if (terms_.empty()) return *this;
        Rational lc = leading_term(order).second;
        Polynomial r(*this);
        Rational inv = 1 / lc;
        r *= inv;
        return r;
    }

    std::string str() const;

    /// Raw canonicalization used by the builders.
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

    static Polynomial from_terms(TablePtr table, std::vector<Term> terms) {
        Polynomial p(std::move(table));
        normalize(terms);
        p.terms_ = std::move(terms);
        return p;
    }

  private:
    Polynomial& add_scaled(const Polynomial& o, const Rational& s) {
        require_same_table(table_, o.table_, "Polynomial::add");
        std::vector<Term> merged;
        merged.reserve(terms_.size() + o.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() && j < o.terms_.size()) {
            if (terms_[i].first == o.terms_[j].first) {
                Rational c = terms_[i].second + s * o.terms_[j].second;
                if (!sofi::is_zero(c)) merged.emplace_back(terms_[i].first, std::move(c));
                ++i, ++j;
            } else if (storage_greater(terms_[i].first, o.terms_[j].first)) {
                merged.push_back(terms_[i++]);
            } else {
                merged.emplace_back(o.terms_[j].first, s * o.terms_[j].second);
                ++j;
            }
        }
        for (; i < terms_.size(); ++i) merged.push_back(terms_[i]);
        for (; j < o.terms_.size(); ++j) merged.emplace_back(o.terms_[j].first, s * o.terms_[j].second);
        terms_ = std::move(merged);
        return *this;
    }

    TablePtr table_;
    std::vector<Term> terms_;
};

inline std::string monomial_str(const Monomial& m, const VarTable& table) {
    std::string s;
    auto emit = [&](std::size_t id) {
        if (!m.e[id]) return;
        if (!s.empty()) s += '*';
        s += table.var(id).name();
        if (m.e[id] > 1) {
            s += '^';
            s += std::to_string(m.e[id]);
        }
    };
    for (std::size_t id : table.position_ids()) emit(id);
    for (std::size_t id : table.derivation_ids()) emit(id);
    return s;
}

inline std::string terms_str(const std::vector<Polynomial::Term>& terms, const VarTable& table) {
    if (terms.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms) {
        Rational a = abs(c);
        if (first) {
            if (sgn(c) < 0) s += '-';
            first = false;
        } else {
            s += (sgn(c) < 0) ? " - " : " + ";
        }
        std::string mono = monomial_str(m, table);
        if (mono.empty()) {
            s += to_string(a);
        } else {
            if (a != 1) {
                s += to_string(a);
                s += '*';
            }
            s += mono;
        }
    }
    return s;
}

inline std::string Polynomial::str() const { return terms_str(terms_, *table_); }

}  // namespace sofi
