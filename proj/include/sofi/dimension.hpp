#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "sofi/groebner.hpp"

namespace sofi {

namespace detail {

/// Smallest number of variables meeting every support set; branch and bound
/// on the least-branching uncovered set.
inline unsigned min_hitting_set(const std::vector<std::uint64_t>& sets, unsigned upper) {
    unsigned best = upper;
    auto recurse = [&](auto&& self, std::uint64_t chosen, unsigned count) -> void {
        if (count >= best) return;
        const std::uint64_t* pick = nullptr;
        int pick_pop = 65;
        for (const std::uint64_t& s : sets) {
            if (s & chosen) continue;
            int pop = std::popcount(s);
            if (pop < pick_pop) {
                pick = &s;
                pick_pop = pop;
            }
        }
        if (!pick) {
            best = count;
            return;
        }
        std::uint64_t rest = *pick;
        while (rest) {
            std::uint64_t bit = rest & (~rest + 1);
            rest ^= bit;
            self(self, chosen | bit, count + 1);
        }
    };
    recurse(recurse, 0, 0);
    return best;
}

}  // namespace detail

/// Dimension of the coordinate-subspace variety of a monomial ideal given by
/// the supports of its generators: the largest variable subset S such that
/// no generator involves only variables of S.
inline std::optional<unsigned> dimension_from_leading_supports(
    std::vector<std::uint64_t> supports, unsigned nvars) {
    for (std::uint64_t s : supports)
        if (s == 0) return std::nullopt;  // 1 is a leading monomial: empty variety
    if (supports.empty()) return nvars;
    // keep only the minimal supports
    std::sort(supports.begin(), supports.end(),
              [](std::uint64_t a, std::uint64_t b) { return std::popcount(a) < std::popcount(b); });
    std::vector<std::uint64_t> minimal;
    for (std::uint64_t s : supports) {
        bool dominated = false;
        for (std::uint64_t m : minimal)
            if ((m & s) == m) {
                dominated = true;
                break;
            }
        if (!dominated) minimal.push_back(s);
    }
    unsigned hit = detail::min_hitting_set(minimal, nvars);
    return nvars - hit;
}

/// Krull dimension of the affine variety cut out by the generators,
/// computed from the leading-term ideal of a grevlex Groebner basis.
/// Returns nullopt for the unit ideal (empty variety).
inline std::optional<unsigned> krull_dimension(const GroebnerResult<Polynomial>& gb,
                                               unsigned nvars) {
    std::vector<std::uint64_t> supports;
    for (const Polynomial& p : gb.basis)
        supports.push_back(p.leading_term(gb.order).first.support_mask());
    return dimension_from_leading_supports(std::move(supports), nvars);
}

inline std::optional<unsigned> krull_dimension(const std::vector<Polynomial>& gens,
                                               const TablePtr& table,
                                               const GroebnerOptions& opts = {}) {
    std::vector<Polynomial> nonzero;
    for (const Polynomial& p : gens)
        if (!p.is_zero()) nonzero.push_back(p);
    unsigned nvars = static_cast<unsigned>(table->size());
    if (nonzero.empty()) return nvars;
    auto gb = groebner(std::move(nonzero), TermOrder::grevlex(), opts);
    if (gb.budget_exhausted)
        throw std::runtime_error("krull_dimension: Groebner budget exhausted");
    return krull_dimension(gb, nvars);
}

}  // namespace sofi
