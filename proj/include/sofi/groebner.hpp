#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "sofi/polynomial.hpp"
#include "sofi/term_order.hpp"
#include "sofi/weyl.hpp"

namespace sofi {

struct GroebnerOptions {
    /// Maximum number of S-pairs reduced before giving up. 0 = unlimited.
    std::uint64_t pair_budget = 0;
    /// Abort once a basis element exceeds this total degree. 0 = unlimited.
    unsigned degree_cap = 0;
};

template <class Elem>
struct GroebnerResult {
    std::vector<Elem> basis;
    TermOrder order = TermOrder::grevlex();
    bool reduced = false;
    bool budget_exhausted = false;
    std::uint64_t pairs_processed = 0;
    unsigned max_degree = 0;
};

namespace detail {

struct CommutativeRing {
    using Elem = Polynomial;
    /// The product criterion (coprime leading monomials) is valid here.
    static constexpr bool product_criterion = true;
    static Elem term_mul(const Rational& c, const Monomial& m, const Elem& f) {
        return Polynomial::term(f.table(), m, c) * f;
    }
};

struct WeylRing {
    using Elem = WeylOperator;
    /// Left multiplication generates lower-order commutator tails, so the
    /// product criterion does not carry over; only the chain criterion is
    /// used.
    static constexpr bool product_criterion = false;
    static Elem term_mul(const Rational& c, const Monomial& m, const Elem& f) {
        return WeylOperator::term(f.table(), m, c) * f;
    }
};

template <class Elem>
struct OrderedTerms {
    struct Cmp {
        const TermOrder* order;
        bool operator()(const Monomial& a, const Monomial& b) const { return order->greater(a, b); }
    };
    explicit OrderedTerms(const TermOrder& order) : map_(Cmp{&order}) {}
    void add(const Monomial& m, const Rational& c) {
        auto [it, fresh] = map_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (is_zero(it->second)) map_.erase(it);
        }
    }
    void seed(const Elem& f) {
        for (const auto& [m, c] : f.terms()) map_.emplace(m, c);
    }
    bool empty() const { return map_.empty(); }
    std::pair<Monomial, Rational> pop_leading() {
        auto it = map_.begin();
        auto kv = *it;
        map_.erase(it);
        return kv;
    }
    std::map<Monomial, Rational, Cmp> map_;
};

/// Full normal form: every term of the result is irreducible modulo the
/// leading monomials of the divisors. Divisors are tried in sequence order,
/// which keeps the division deterministic.
template <class Ring>
typename Ring::Elem normal_form_impl(const typename Ring::Elem& p,
                                     std::span<const typename Ring::Elem> divisors,
                                     const TermOrder& order) {
    using Elem = typename Ring::Elem;
    if (p.is_zero()) return p;
    struct Lead {
        Monomial m;
        Rational c;
    };
    std::vector<Lead> leads;
    leads.reserve(divisors.size());
    for (const Elem& g : divisors) {
        if (g.is_zero()) throw std::invalid_argument("normal_form: zero divisor in basis");
        auto [m, c] = g.leading_term(order);
        leads.push_back({std::move(m), std::move(c)});
    }
    OrderedTerms<Elem> work(order);
    work.seed(p);
    std::vector<typename Elem::Term> remainder;
    while (!work.empty()) {
        auto [m, c] = work.pop_leading();
        bool reduced = false;
        for (std::size_t k = 0; k < divisors.size(); ++k) {
            if (!leads[k].m.divides(m)) continue;
            Rational factor = c / leads[k].c;
            Elem h = Ring::term_mul(factor, m.quotient(leads[k].m), divisors[k]);
            bool cancelled = false;
            for (const auto& [mm, cc] : h.terms()) {
                if (!cancelled && mm == m) {
                    cancelled = true;  // cancels the popped term by construction
                    continue;
                }
                work.add(mm, -cc);
            }
            reduced = true;
            break;
        }
        if (!reduced) remainder.emplace_back(std::move(m), std::move(c));
    }
    return Elem::from_terms(p.table(), std::move(remainder));
}

template <class Ring>
GroebnerResult<typename Ring::Elem> buchberger(std::vector<typename Ring::Elem> gens,
                                               const TermOrder& order,
                                               const GroebnerOptions& opts) {
    using Elem = typename Ring::Elem;
    GroebnerResult<Elem> res;
    res.order = order;

    struct Entry {
        Elem f;
        Monomial lm;
        Rational lc;
        unsigned sugar;
    };
    std::vector<Entry> basis;
    auto push = [&](Elem f, unsigned sugar) {
        f = f.primitive_part();
        auto [m, c] = f.leading_term(order);
        res.max_degree = std::max(res.max_degree, f.total_degree());
        basis.push_back({std::move(f), std::move(m), std::move(c), sugar});
    };

    for (Elem& g : gens)
        if (!g.is_zero()) push(std::move(g), 0);
    if (basis.empty()) return res;
    for (auto& e : basis) e.sugar = e.f.total_degree();

    struct Pair {
        unsigned sugar;
        Monomial lcm;
        std::size_t i, j;
    };
    auto pair_less = [&order](const Pair& a, const Pair& b) {
        if (a.sugar != b.sugar) return a.sugar < b.sugar;
        int c = order.compare(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    };
    std::vector<Pair> queue;
    std::set<std::pair<std::size_t, std::size_t>> treated;
    auto make_pair = [&](std::size_t i, std::size_t j) {
        Monomial l = Monomial::lcm(basis[i].lm, basis[j].lm);
        unsigned sug = std::max(basis[i].sugar + l.total_degree() - basis[i].lm.total_degree(),
                                basis[j].sugar + l.total_degree() - basis[j].lm.total_degree());
        queue.push_back({sug, std::move(l), i, j});
    };
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) make_pair(i, j);

    auto chain_redundant = [&](const Pair& p) {
        for (std::size_t k = 0; k < basis.size(); ++k) {
            if (k == p.i || k == p.j) continue;
            if (!basis[k].lm.divides(p.lcm)) continue;
            auto key_ik = std::minmax(p.i, k);
            auto key_jk = std::minmax(p.j, k);
            if (treated.count({key_ik.first, key_ik.second}) &&
                treated.count({key_jk.first, key_jk.second}))
                return true;
        }
        return false;
    };

    while (!queue.empty()) {
        auto it = std::min_element(queue.begin(), queue.end(), pair_less);
        Pair p = std::move(*it);
        queue.erase(it);
        treated.insert({p.i, p.j});
        if (Ring::product_criterion && basis[p.i].lm.coprime(basis[p.j].lm)) continue;
        if (chain_redundant(p)) continue;

        if (opts.pair_budget && res.pairs_processed >= opts.pair_budget) {
            res.budget_exhausted = true;
            break;
        }
        ++res.pairs_processed;

        // S-pair: cancel the leading terms of the two scaled left multiples.
        Elem left = Ring::term_mul(basis[p.j].lc, p.lcm.quotient(basis[p.i].lm), basis[p.i].f);
        Elem right = Ring::term_mul(basis[p.i].lc, p.lcm.quotient(basis[p.j].lm), basis[p.j].f);
        Elem s = left - right;
        if (s.is_zero()) continue;
        std::vector<Elem> divisors;
        divisors.reserve(basis.size());
        for (const auto& e : basis) divisors.push_back(e.f);
        Elem nf = normal_form_impl<Ring>(s, std::span<const Elem>(divisors), order);
        if (nf.is_zero()) continue;
        if (opts.degree_cap && nf.total_degree() > opts.degree_cap) {
            res.budget_exhausted = true;
            break;
        }
        push(std::move(nf), p.sugar);
        std::size_t idx = basis.size() - 1;
        for (std::size_t i = 0; i < idx; ++i) make_pair(i, idx);
    }

    for (auto& e : basis) res.basis.push_back(std::move(e.f));
    if (res.budget_exhausted) return res;

    // Minimalize: drop elements whose leading monomial is a multiple of
    // another's, then tail-reduce and normalize to leading coefficient one.
    std::vector<Elem> minimal;
    {
        std::vector<std::pair<Monomial, std::size_t>> lms;
        for (std::size_t k = 0; k < res.basis.size(); ++k)
            lms.emplace_back(res.basis[k].leading_term(order).first, k);
        std::sort(lms.begin(), lms.end(), [&](const auto& a, const auto& b) {
            int c = order.compare(a.first, b.first);
            if (c != 0) return c < 0;
            return a.second < b.second;
        });
        std::vector<Monomial> kept;
        for (const auto& [m, k] : lms) {
            bool redundant = false;
            for (const Monomial& km : kept)
                if (km.divides(m)) {
                    redundant = true;
                    break;
                }
            if (!redundant) {
                kept.push_back(m);
                minimal.push_back(res.basis[k]);
            }
        }
    }
    std::vector<Elem> reduced;
    for (std::size_t k = 0; k < minimal.size(); ++k) {
        std::vector<Elem> others;
        for (std::size_t l = 0; l < minimal.size(); ++l)
            if (l != k) others.push_back(minimal[l]);
        Elem nf = others.empty()
                      ? minimal[k]
                      : normal_form_impl<Ring>(minimal[k], std::span<const Elem>(others), order);
        reduced.push_back(nf.monic(order));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Elem& a, const Elem& b) {
        return order.greater(a.leading_term(order).first, b.leading_term(order).first);
    });
    res.basis = std::move(reduced);
    res.reduced = true;
    return res;
}

}  // namespace detail

inline Polynomial normal_form(const Polynomial& p, std::span<const Polynomial> basis,
                              const TermOrder& order) {
    return detail::normal_form_impl<detail::CommutativeRing>(p, basis, order);
}

inline Polynomial normal_form(const Polynomial& p, const GroebnerResult<Polynomial>& gb) {
    return normal_form(p, std::span<const Polynomial>(gb.basis), gb.order);
}

/// Left normal form in the Weyl algebra.
inline WeylOperator normal_form(const WeylOperator& p, std::span<const WeylOperator> basis,
                                const TermOrder& order) {
    return detail::normal_form_impl<detail::WeylRing>(p, basis, order);
}

inline WeylOperator normal_form(const WeylOperator& p, const GroebnerResult<WeylOperator>& gb) {
    return normal_form(p, std::span<const WeylOperator>(gb.basis), gb.order);
}

/// Reduced Groebner basis via Buchberger with sugar-ordered normal pair
/// selection. Deterministic for a fixed generator sequence and order.
inline GroebnerResult<Polynomial> groebner(std::vector<Polynomial> gens, const TermOrder& order,
                                           const GroebnerOptions& opts = {}) {
    return detail::buchberger<detail::CommutativeRing>(std::move(gens), order, opts);
}

template <class Elem>
bool contains_nonzero_constant(const std::vector<Elem>& elems) {
    for (const Elem& p : elems)
        if (!p.is_zero() && p.terms().size() == 1 && p.terms()[0].first.is_one()) return true;
    return false;
}

}  // namespace sofi
