#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "sofi/dimension.hpp"
#include "sofi/groebner.hpp"
#include "sofi/weyl.hpp"

namespace sofi {

class unit_ideal_error : public std::domain_error {
  public:
    unit_ideal_error() : std::domain_error("unit ideal: the characteristic variety is empty") {}
};

class budget_exhausted_error : public std::runtime_error {
  public:
    budget_exhausted_error(std::uint64_t pairs, std::size_t basis_size)
        : std::runtime_error("Groebner budget exhausted after " + std::to_string(pairs) +
                             " pairs (partial basis size " + std::to_string(basis_size) + ")"),
          pairs_processed(pairs),
          partial_basis_size(basis_size) {}
    std::uint64_t pairs_processed;
    std::size_t partial_basis_size;
};

/// Left Groebner basis with respect to the weight order (0 on positions,
/// 1 on derivations) refined by grevlex.
inline GroebnerResult<WeylOperator> weyl_groebner(std::vector<WeylOperator> gens,
                                                  const GroebnerOptions& opts = {}) {
    if (gens.empty()) throw std::invalid_argument("weyl_groebner: no generators");
    TablePtr table = gens.front().table();
    for (const WeylOperator& g : gens) require_same_table(table, g.table(), "weyl_groebner");
    TermOrder order = TermOrder::weyl_01(*table);
    return detail::buchberger<detail::WeylRing>(std::move(gens), order, opts);
}

struct CharacteristicIdeal {
    std::vector<Polynomial> generators;
    TablePtr symbol_ring;
    std::size_t weyl_basis_size = 0;
    bool budget_exhausted = false;
    std::uint64_t pairs_processed = 0;
};

/// Principal symbols of a left Groebner basis. That these generate the full
/// symbol ideal of the left ideal is the standard property of (0,1)-adapted
/// bases; it is relied on here, not re-derived.
inline CharacteristicIdeal characteristic_ideal(const GroebnerResult<WeylOperator>& gb) {
    CharacteristicIdeal out;
    out.weyl_basis_size = gb.basis.size();
    out.budget_exhausted = gb.budget_exhausted;
    out.pairs_processed = gb.pairs_processed;
    for (const WeylOperator& p : gb.basis) {
        Polynomial s = principal_symbol(p);
        if (out.generators.empty()) out.symbol_ring = s.table();
        out.generators.push_back(std::move(s));
    }
    return out;
}

inline CharacteristicIdeal characteristic_ideal(std::vector<WeylOperator> gens,
                                                const GroebnerOptions& opts = {}) {
    return characteristic_ideal(weyl_groebner(std::move(gens), opts));
}

struct HolonomicityReport {
    bool holonomic = false;
    std::optional<unsigned> dimension;  // of the characteristic variety
    unsigned position_count = 0;
    std::size_t basis_size = 0;
    bool budget_exhausted = false;
    std::uint64_t pairs_processed = 0;
};

/// Whether the characteristic variety has the minimal (Bernstein) dimension,
/// i.e. exactly the number of position variables. The unit ideal has an
/// empty characteristic variety and is rejected.
inline HolonomicityReport is_holonomic(std::vector<WeylOperator> gens,
                                       const GroebnerOptions& opts = {}) {
    TablePtr table = gens.empty() ? nullptr : gens.front().table();
    auto gb = weyl_groebner(std::move(gens), opts);
    HolonomicityReport rep;
    rep.basis_size = gb.basis.size();
    rep.budget_exhausted = gb.budget_exhausted;
    rep.pairs_processed = gb.pairs_processed;
    rep.position_count = static_cast<unsigned>(table->position_ids().size());
    if (rep.budget_exhausted) throw budget_exhausted_error(gb.pairs_processed, gb.basis.size());
    if (contains_nonzero_constant(gb.basis)) throw unit_ideal_error();
    CharacteristicIdeal ch = characteristic_ideal(gb);
    auto cgb = groebner(ch.generators, TermOrder::grevlex(), opts);
    if (cgb.budget_exhausted) throw budget_exhausted_error(cgb.pairs_processed, cgb.basis.size());
    rep.dimension = krull_dimension(cgb, static_cast<unsigned>(ch.symbol_ring->size()));
    rep.holonomic = rep.dimension && *rep.dimension == rep.position_count;
    return rep;
}

}  // namespace sofi
