#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

namespace sofi {

/// Dense exponent vector over a variable table. Index = variable id.
struct Monomial {
    std::vector<unsigned> e;

    explicit Monomial(std::size_t nvars = 0) : e(nvars, 0u) {}

    unsigned total_degree() const {
        return std::accumulate(e.begin(), e.end(), 0u);
    }

    bool is_one() const {
        for (unsigned k : e)
            if (k) return false;
        return true;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }

    Monomial operator*(const Monomial& o) const {
        Monomial r(*this);
        for (std::size_t k = 0; k < e.size(); ++k) r.e[k] += o.e[k];
        return r;
    }

    bool divides(const Monomial& m) const {
        for (std::size_t k = 0; k < e.size(); ++k)
            if (e[k] > m.e[k]) return false;
        return true;
    }

    /// this / d, assuming d.divides(*this).
    Monomial quotient(const Monomial& d) const {
        Monomial r(*this);
        for (std::size_t k = 0; k < e.size(); ++k) r.e[k] -= d.e[k];
        return r;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r(a);
        for (std::size_t k = 0; k < r.e.size(); ++k)
            if (b.e[k] > r.e[k]) r.e[k] = b.e[k];
        return r;
    }

    bool coprime(const Monomial& o) const {
        for (std::size_t k = 0; k < e.size(); ++k)
            if (e[k] && o.e[k]) return false;
        return true;
    }

    /// Bitmask of variables with positive exponent (tables here stay < 64 vars).
    std::uint64_t support_mask() const {
        std::uint64_t m = 0;
        for (std::size_t k = 0; k < e.size(); ++k)
            if (e[k]) m |= (std::uint64_t{1} << k);
        return m;
    }
};

/// Canonical storage comparison: graded, ties broken lexicographically by
/// variable id. Independent of any user-selected term order.
inline bool storage_less(const Monomial& a, const Monomial& b) {
    unsigned da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    for (std::size_t k = 0; k < a.e.size(); ++k)
        if (a.e[k] != b.e[k]) return a.e[k] < b.e[k];
    return false;
}

inline bool storage_greater(const Monomial& a, const Monomial& b) { return storage_less(b, a); }

}  // namespace sofi
