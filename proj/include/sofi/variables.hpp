#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sofi {

class table_mismatch_error : public std::invalid_argument {
  public:
    explicit table_mismatch_error(const std::string& what)
        : std::invalid_argument(what) {}
};

/// Variable families. `y`, `x`, `xi` are commuting (position/symbol)
/// variables indexed by a matrix entry (i,j); `xdiag` is the diagonal
/// parameter x_i written `x[i]`. The `d*` families are the derivations
/// paired with the matching position family.
enum class Family : unsigned char { y, x, xi, xdiag, dy, dx, dxdiag };

inline bool is_derivation(Family f) {
    return f == Family::dy || f == Family::dx || f == Family::dxdiag;
}

inline bool has_two_indices(Family f) {
    return f != Family::xdiag && f != Family::dxdiag;
}

inline Family position_family_of(Family f) {
    switch (f) {
        case Family::dy: return Family::y;
        case Family::dx: return Family::x;
        case Family::dxdiag: return Family::xdiag;
        default: return f;
    }
}

inline const char* family_name(Family f) {
    switch (f) {
        case Family::y: return "y";
        case Family::x: return "x";
        case Family::xi: return "xi";
        case Family::xdiag: return "x";
        case Family::dy: return "dy";
        case Family::dx: return "dx";
        case Family::dxdiag: return "dx";
    }
    return "?";
}

struct Variable {
    Family family{Family::y};
    unsigned i = 1;  // 1-based
    unsigned j = 1;  // ignored for one-index families

    friend bool operator==(const Variable& a, const Variable& b) {
        if (a.family != b.family || a.i != b.i) return false;
        return !has_two_indices(a.family) || a.j == b.j;
    }
    friend bool operator<(const Variable& a, const Variable& b) {
        if (a.family != b.family) return a.family < b.family;
        if (a.i != b.i) return a.i < b.i;
        if (!has_two_indices(a.family)) return false;
        return a.j < b.j;
    }

    std::string name() const {
        std::string s = family_name(family);
        s += '[';
        s += std::to_string(i);
        if (has_two_indices(family)) {
            s += ',';
            s += std::to_string(j);
        }
        s += ']';
        return s;
    }
};

class VarTable;
using TablePtr = std::shared_ptr<const VarTable>;

/// Declares the ambient matrix size and the ordered variable list of a
/// (commutative or Weyl) ring. Derivations are paired with the position
/// variable of the matching family and indices. Positions without a paired
/// derivation act as commuting parameters.
class VarTable {
  public:
    static TablePtr make(unsigned ambient, std::vector<Variable> vars) {
        return TablePtr(new VarTable(ambient, std::move(vars)));
    }

    unsigned ambient() const { return n_; }
    std::size_t size() const { return vars_.size(); }
    const Variable& var(std::size_t id) const { return vars_[id]; }
    const std::vector<Variable>& variables() const { return vars_; }

    std::optional<std::size_t> find(const Variable& v) const {
        auto it = index_.find(v);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool is_derivation_id(std::size_t id) const { return is_derivation(vars_[id].family); }

    /// Paired variable id (derivation <-> position), or npos.
    std::size_t partner(std::size_t id) const { return partner_[id]; }
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    const std::vector<std::size_t>& position_ids() const { return position_ids_; }
    const std::vector<std::size_t>& derivation_ids() const { return derivation_ids_; }

    /// Positions that have a paired derivation in this table.
    const std::vector<std::size_t>& active_position_ids() const { return active_position_ids_; }

    friend bool operator==(const VarTable& a, const VarTable& b) {
        return a.n_ == b.n_ && a.vars_ == b.vars_;
    }

  private:
    VarTable(unsigned ambient, std::vector<Variable> vars)
        : n_(ambient), vars_(std::move(vars)) {
        if (n_ == 0) throw std::invalid_argument("VarTable: ambient size must be positive");
        partner_.assign(vars_.size(), npos);
        for (std::size_t id = 0; id < vars_.size(); ++id) {
            const Variable& v = vars_[id];
            if (v.i < 1 || v.i > n_ || (has_two_indices(v.family) && (v.j < 1 || v.j > n_)))
                throw std::invalid_argument("VarTable: index of " + v.name() + " out of range");
            if (!index_.emplace(v, id).second)
                throw std::invalid_argument("VarTable: duplicate variable " + v.name());
        }
        for (std::size_t id = 0; id < vars_.size(); ++id) {
            const Variable& v = vars_[id];
            if (is_derivation(v.family)) {
                derivation_ids_.push_back(id);
                Variable pos{position_family_of(v.family), v.i, v.j};
                auto it = index_.find(pos);
                if (it == index_.end())
                    throw std::invalid_argument("VarTable: derivation " + v.name() +
                                                " has no position partner");
                partner_[id] = it->second;
                partner_[it->second] = id;
            } else {
                position_ids_.push_back(id);
            }
        }
        for (std::size_t id : position_ids_)
            if (partner_[id] != npos) active_position_ids_.push_back(id);
    }

    unsigned n_;
    std::vector<Variable> vars_;
    std::map<Variable, std::size_t> index_;
    std::vector<std::size_t> partner_;
    std::vector<std::size_t> position_ids_;
    std::vector<std::size_t> derivation_ids_;
    std::vector<std::size_t> active_position_ids_;
};

inline void require_same_table(const TablePtr& a, const TablePtr& b, const char* where) {
    if (a == b) return;
    if (a && b && *a == *b) return;
    throw table_mismatch_error(std::string(where) + ": operands use different variable tables");
}

namespace tables {

inline void append_matrix_family(std::vector<Variable>& out, Family f, unsigned n) {
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = 1; j <= n; ++j) out.push_back({f, i, j});
}

inline void append_diagonal_family(std::vector<Variable>& out, Family f, unsigned n) {
    for (unsigned i = 1; i <= n; ++i) out.push_back({f, i, 1});
}

/// C[y_ij]
inline TablePtr y_poly(unsigned n) {
    std::vector<Variable> v;
    append_matrix_family(v, Family::y, n);
    return VarTable::make(n, v);
}

/// C[xi_ij]
inline TablePtr xi_poly(unsigned n) {
    std::vector<Variable> v;
    append_matrix_family(v, Family::xi, n);
    return VarTable::make(n, v);
}

/// C[y_ij, xi_ij] — the ring of characteristic ideals over Y.
inline TablePtr y_xi_poly(unsigned n) {
    std::vector<Variable> v;
    append_matrix_family(v, Family::y, n);
    append_matrix_family(v, Family::xi, n);
    return VarTable::make(n, v);
}

/// Weyl algebra D_Y = C<y_ij, dy_ij>.
inline TablePtr haar_weyl(unsigned n) {
    std::vector<Variable> v;
    append_matrix_family(v, Family::y, n);
    append_matrix_family(v, Family::dy, n);
    return VarTable::make(n, v);
}

/// Weyl algebra D_X = C<x_ij, dx_ij>.
inline TablePtr fisher_weyl(unsigned n) {
    std::vector<Variable> v;
    append_matrix_family(v, Family::x, n);
    append_matrix_family(v, Family::dx, n);
    return VarTable::make(n, v);
}

/// Weyl algebra over the diagonal parameters x_1..x_n.
inline TablePtr diagonal_weyl(unsigned n) {
    std::vector<Variable> v;
    append_diagonal_family(v, Family::xdiag, n);
    append_diagonal_family(v, Family::dxdiag, n);
    return VarTable::make(n, v);
}

/// Weyl algebra over y and the diagonal x jointly (used when twisting the
/// rotation-group operators by exp(sum_i x_i y_ii)).
inline TablePtr haar_diag_weyl(unsigned n) {
    std::vector<Variable> v;
    append_matrix_family(v, Family::y, n);
    append_diagonal_family(v, Family::xdiag, n);
    append_matrix_family(v, Family::dy, n);
    append_diagonal_family(v, Family::dxdiag, n);
    return VarTable::make(n, v);
}

/// Commutative ring of principal symbols: positions kept, each derivation
/// replaced by the symbol variable xi with the same indices.
inline TablePtr symbol_table(const TablePtr& weyl) {
    std::vector<Variable> v;
    for (std::size_t id : weyl->position_ids()) v.push_back(weyl->var(id));
    for (std::size_t id : weyl->derivation_ids()) {
        const Variable& d = weyl->var(id);
        unsigned j = has_two_indices(d.family) ? d.j : d.i;
        v.push_back({Family::xi, d.i, j});
    }
    return VarTable::make(weyl->ambient(), v);
}

}  // namespace tables

}  // namespace sofi
