#pragma once

#include <json.hpp>

#include "sofi/generators.hpp"
#include "sofi/numeric/fisher.hpp"
#include "sofi/numeric/hgm.hpp"
#include "sofi/pfaffian.hpp"
#include "sofi/polynomial.hpp"
#include "sofi/weyl.hpp"
#include "sofi/weyl_groebner.hpp"

namespace sofi {

using nlohmann::json;

/// Term list mirror of the text grammar: [{coeff: "p/q", exps: {var: power}}].
inline json terms_to_json(const std::vector<std::pair<Monomial, Rational>>& terms,
                          const VarTable& table) {
    json arr = json::array();
    for (const auto& [m, c] : terms) {
        json exps = json::object();
        for (std::size_t id = 0; id < m.e.size(); ++id)
            if (m.e[id]) exps[table.var(id).name()] = m.e[id];
        arr.push_back({{"coeff", to_string(c)}, {"exps", std::move(exps)}});
    }
    return arr;
}

inline json to_json(const Polynomial& p) {
    return terms_to_json({p.terms().begin(), p.terms().end()}, *p.table());
}

inline json to_json(const WeylOperator& p) {
    return terms_to_json({p.terms().begin(), p.terms().end()}, *p.table());
}

inline std::string term_text_from_json(const json& item) {
    std::string text = item.at("coeff").get<std::string>();
    for (auto it = item.at("exps").begin(); it != item.at("exps").end(); ++it) {
        text += "*" + it.key();
        unsigned p = it.value().get<unsigned>();
        if (p > 1) text += "^" + std::to_string(p);
    }
    return text;
}

inline Polynomial polynomial_from_json(const json& arr, const TablePtr& table) {
    Polynomial out(table);
    for (const auto& item : arr) out += parse_polynomial(term_text_from_json(item), table);
    return out;
}

inline WeylOperator weyl_from_json(const json& arr, const TablePtr& table) {
    WeylOperator out(table);
    for (const auto& item : arr) out += parse_weyl(term_text_from_json(item), table);
    return out;
}

inline json to_json(const GeneratorSet& set) {
    json ops = json::array();
    for (const auto& p : set.operators)
        ops.push_back({{"text", p.str()}, {"terms", to_json(p)}});
    for (const auto& p : set.polynomials)
        ops.push_back({{"text", p.str()}, {"terms", to_json(p)}});
    json out{{"family", family_label(set.family)},
             {"n", set.n},
             {"count", set.size()},
             {"operators", std::move(ops)}};
    if (!set.prefactors.empty()) {
        json pf = json::array();
        for (const auto& p : set.prefactors) pf.push_back(p.str());
        out["prefactors"] = std::move(pf);
    }
    return out;
}

inline json to_json(const HolonomicityReport& rep) {
    json out{{"holonomic", rep.holonomic},
             {"basis_size", rep.basis_size},
             {"budget_exhausted", rep.budget_exhausted},
             {"pairs_processed", rep.pairs_processed},
             {"position_count", rep.position_count}};
    if (rep.dimension) out["dimension"] = *rep.dimension;
    return out;
}

inline json to_json(const ResidualReport& rep) {
    return {{"residual", rep.residual},
            {"normalized", rep.normalized},
            {"scale", rep.scale},
            {"stderr", rep.stderr_},
            {"method", rep.method}};
}

template <class S>
json to_json(const PfaffianSystem<S>& sys) {
    auto scalar = [](const S& v) -> std::string {
        if constexpr (std::is_same_v<S, Rational>) {
            return to_string(v);
        } else {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.17g", static_cast<double>(v));
            return buf;
        }
    };
    json mats = json::array();
    for (unsigned i = 0; i < 3; ++i) {
        json rows = json::array();
        for (unsigned r = 0; r < 4; ++r) {
            json row = json::array();
            for (unsigned c = 0; c < 4; ++c) row.push_back(scalar(sys.A[i][r][c]));
            rows.push_back(std::move(row));
        }
        mats.push_back(std::move(rows));
    }
    json xs = json::array();
    for (const S& v : sys.x) xs.push_back(scalar(v));
    return {{"x", std::move(xs)}, {"matrices", std::move(mats)}};
}

}  // namespace sofi
