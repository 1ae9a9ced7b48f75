#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "sofi/parse.hpp"
#include "sofi/polynomial.hpp"
#include "sofi/weyl.hpp"

namespace sofi {

enum class GeneratorFamily {
    haar,
    haar_row_form,
    fisher,
    char_J,
    char_Jprime,
    diagonal,
    so3_mixed,
};

inline const char* family_label(GeneratorFamily f) {
    switch (f) {
        case GeneratorFamily::haar: return "haar";
        case GeneratorFamily::haar_row_form: return "haar-row";
        case GeneratorFamily::fisher: return "fisher";
        case GeneratorFamily::char_J: return "char-J";
        case GeneratorFamily::char_Jprime: return "char-Jprime";
        case GeneratorFamily::diagonal: return "diagonal";
        case GeneratorFamily::so3_mixed: return "so3-mixed";
    }
    return "?";
}

struct GeneratorSet {
    unsigned n = 0;
    GeneratorFamily family = GeneratorFamily::haar;
    TablePtr table;
    std::vector<WeylOperator> operators;
    std::vector<Polynomial> polynomials;
    /// Cleared denominators of the diagonal family, index-matched with
    /// `operators`; empty elsewhere.
    std::vector<Polynomial> prefactors;

    std::size_t size() const {
        return operators.empty() ? polynomials.size() : operators.size();
    }
};

/// Rotation-group annihilator count: n(n-1)/2 vector fields, n(n+1)
/// orthogonality relations, one determinant relation.
inline std::size_t rotation_generator_count(unsigned n) {
    return std::size_t{n} * (n - 1) / 2 + std::size_t{n} * (n + 1) + 1;
}

namespace detail {

inline void check_matrix_size(unsigned n, unsigned lo, unsigned hi, const char* where) {
    if (n < lo || n > hi)
        throw std::invalid_argument(std::string(where) + ": matrix size " + std::to_string(n) +
                                    " out of supported range [" + std::to_string(lo) + "," +
                                    std::to_string(hi) + "]");
}

/// Leibniz expansion of det over a family of matrix variables (n <= 4).
template <class Ring>
Ring determinant(const TablePtr& t, Family fam, unsigned n) {
    std::array<unsigned, 4> perm{};
    for (unsigned i = 0; i < n; ++i) perm[i] = i;
    Ring det(t);
    do {
        int sign = 1;
        for (unsigned a = 0; a < n; ++a)
            for (unsigned b = a + 1; b < n; ++b)
                if (perm[a] > perm[b]) sign = -sign;
        Monomial m(t->size());
        for (unsigned i = 0; i < n; ++i) {
            auto id = t->find({fam, i + 1, perm[i] + 1});
            m.e[*id] += 1;
        }
        det += Ring::term(t, std::move(m), Rational(sign));
    } while (std::next_permutation(perm.begin(), perm.begin() + n));
    return det;
}

}  // namespace detail

/// The two orthogonality families delta_ij - sum_k v_ki v_kj and
/// delta_ij - sum_k v_ik v_jk for 1 <= i <= j <= n, then 1 - det v.
template <class Ring>
std::vector<Ring> orthogonality_relations(const TablePtr& t, Family fam, unsigned n) {
    auto v = [&](unsigned i, unsigned j) { return Ring::variable(t, {fam, i, j}); };
    std::vector<Ring> out;
    for (int transposed = 0; transposed < 2; ++transposed) {
        for (unsigned i = 1; i <= n; ++i)
            for (unsigned j = i; j <= n; ++j) {
                Ring p = Ring::constant(t, Rational(i == j ? 1 : 0));
                for (unsigned k = 1; k <= n; ++k)
                    p -= transposed ? v(i, k) * v(j, k) : v(k, i) * v(k, j);
                out.push_back(std::move(p));
            }
    }
    out.push_back(Ring::constant(t, Rational(1)) - detail::determinant<Ring>(t, fam, n));
    return out;
}

/// Column-action vector fields sum_k (y_ki d_kj - y_kj d_ki), i < j.
inline WeylOperator rotation_field(const TablePtr& t, unsigned n, unsigned i, unsigned j,
                                   bool row_action) {
    Family pos = Family::y, der = Family::dy;
    if (!t->find({Family::y, 1, 1})) pos = Family::x, der = Family::dx;
    WeylOperator p(t);
    for (unsigned k = 1; k <= n; ++k) {
        if (row_action)
            p += WeylOperator::variable(t, {pos, i, k}) * WeylOperator::variable(t, {der, j, k}) -
                 WeylOperator::variable(t, {pos, j, k}) * WeylOperator::variable(t, {der, i, k});
        else
            p += WeylOperator::variable(t, {pos, k, i}) * WeylOperator::variable(t, {der, k, j}) -
                 WeylOperator::variable(t, {pos, k, j}) * WeylOperator::variable(t, {der, k, i});
    }
    return p;
}

/// Annihilator generators of the Haar distribution on SO(n): the rotation
/// vector fields, the orthogonality relations, and the determinant relation.
inline GeneratorSet haar_generators(unsigned n, bool row_action = false) {
    detail::check_matrix_size(n, 2, 4, "haar_generators");
    GeneratorSet set;
    set.n = n;
    set.family = row_action ? GeneratorFamily::haar_row_form : GeneratorFamily::haar;
    set.table = tables::haar_weyl(n);
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = i + 1; j <= n; ++j)
            set.operators.push_back(rotation_field(set.table, n, i, j, row_action));
    for (auto& p : orthogonality_relations<WeylOperator>(set.table, Family::y, n))
        set.operators.push_back(std::move(p));
    return set;
}

/// Fisher-integral annihilators built directly: rotation fields in x,
/// second-order orthogonality operators, and 1 - det dx.
inline GeneratorSet fisher_generators_direct(unsigned n) {
    detail::check_matrix_size(n, 2, 4, "fisher_generators");
    GeneratorSet set;
    set.n = n;
    set.family = GeneratorFamily::fisher;
    set.table = tables::fisher_weyl(n);
    const TablePtr& t = set.table;
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = i + 1; j <= n; ++j)
            set.operators.push_back(rotation_field(t, n, i, j, false));
    auto d = [&](unsigned i, unsigned j) { return WeylOperator::variable(t, {Family::dx, i, j}); };
    for (int transposed = 0; transposed < 2; ++transposed)
        for (unsigned i = 1; i <= n; ++i)
            for (unsigned j = i; j <= n; ++j) {
                WeylOperator p = WeylOperator::constant(t, Rational(i == j ? 1 : 0));
                for (unsigned k = 1; k <= n; ++k)
                    p -= transposed ? d(i, k) * d(j, k) : d(k, i) * d(k, j);
                set.operators.push_back(std::move(p));
            }
    set.operators.push_back(WeylOperator::constant(t, Rational(1)) -
                            detail::determinant<WeylOperator>(t, Family::dx, n));
    return set;
}

/// Same ideal through the inverse Fourier transform of the Haar
/// annihilators, transported from the y table to the x table.
inline GeneratorSet fisher_generators_via_fourier(unsigned n) {
    GeneratorSet haar = haar_generators(n);
    GeneratorSet set;
    set.n = n;
    set.family = GeneratorFamily::fisher;
    set.table = tables::fisher_weyl(n);
    auto rename = [](const Variable& v) {
        return Variable{v.family == Family::y ? Family::x : Family::dx, v.i, v.j};
    };
    for (const WeylOperator& p : haar.operators)
        set.operators.push_back(transport(fourier_inverse(p), set.table, rename));
    return set;
}

/// Both construction paths, checked against each other term by term.
inline GeneratorSet fisher_generators(unsigned n) {
    GeneratorSet direct = fisher_generators_direct(n);
    GeneratorSet via = fisher_generators_via_fourier(n);
    if (direct.operators.size() != via.operators.size())
        throw std::logic_error("fisher_generators: construction paths disagree on count");
    for (std::size_t k = 0; k < direct.operators.size(); ++k)
        if (!(direct.operators[k] == via.operators[k]))
            throw std::logic_error("fisher_generators: construction paths disagree at index " +
                                   std::to_string(k));
    return direct;
}

/// Orthogonality + determinant relations in C[y]: the defining ideal of the
/// rotation-group variety.
inline std::vector<Polynomial> so_variety_ideal(unsigned n, TablePtr table = nullptr) {
    detail::check_matrix_size(n, 2, 4, "so_variety_ideal");
    if (!table) table = tables::y_poly(n);
    return orthogonality_relations<Polynomial>(table, Family::y, n);
}

/// xi_ij - xi_ji for i < j.
inline std::vector<Polynomial> xi_symmetry_ideal(unsigned n, TablePtr table = nullptr) {
    detail::check_matrix_size(n, 2, 4, "xi_symmetry_ideal");
    if (!table) table = tables::xi_poly(n);
    std::vector<Polynomial> out;
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = i + 1; j <= n; ++j)
            out.push_back(Polynomial::variable(table, {Family::xi, i, j}) -
                          Polynomial::variable(table, {Family::xi, j, i}));
    return out;
}

/// sum_k (y_ki xi_kj - y_kj xi_ki).
inline Polynomial symbol_quadratic(const TablePtr& t, unsigned n, unsigned i, unsigned j) {
    Polynomial p(t);
    for (unsigned k = 1; k <= n; ++k)
        p += Polynomial::variable(t, {Family::y, k, i}) *
                 Polynomial::variable(t, {Family::xi, k, j}) -
             Polynomial::variable(t, {Family::y, k, j}) *
                 Polynomial::variable(t, {Family::xi, k, i});
    return p;
}

enum class CharIdealKind { J, Jprime };

/// Generators of the candidate characteristic ideal J (orthogonality +
/// determinant + symbol quadratics) or of the equivalent ideal J' with the
/// xi-symmetry relations instead of the quadratics.
inline GeneratorSet char_ideal_generators(unsigned n, CharIdealKind which) {
    detail::check_matrix_size(n, 2, 4, "char_ideal_generators");
    GeneratorSet set;
    set.n = n;
    set.family = which == CharIdealKind::J ? GeneratorFamily::char_J : GeneratorFamily::char_Jprime;
    set.table = tables::y_xi_poly(n);
    set.polynomials = so_variety_ideal(n, set.table);
    if (which == CharIdealKind::J) {
        for (unsigned i = 1; i <= n; ++i)
            for (unsigned j = i + 1; j <= n; ++j)
                set.polynomials.push_back(symbol_quadratic(set.table, n, i, j));
    } else {
        for (auto& p : xi_symmetry_ideal(n, set.table)) set.polynomials.push_back(std::move(p));
    }
    return set;
}

struct IdentityResidual {
    std::string label;
    Polynomial residual;
};

/// The four homomorphism identities connecting J and J', fully expanded;
/// every residual is expected to be the zero polynomial.
inline std::vector<IdentityResidual> phi_psi_residuals(unsigned n) {
    detail::check_matrix_size(n, 2, 3, "phi_psi_residuals");
    TablePtr t = tables::y_xi_poly(n);
    auto y = [&](unsigned i, unsigned j) { return Polynomial::variable(t, {Family::y, i, j}); };
    auto xi = [&](unsigned i, unsigned j) { return Polynomial::variable(t, {Family::xi, i, j}); };
    auto delta = [&](unsigned i, unsigned j) {
        return Polynomial::constant(t, Rational(i == j ? 1 : 0));
    };

    std::vector<std::optional<Polynomial>> phi_images(t->size()), psi_images(t->size());
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = 1; j <= n; ++j) {
            Polynomial phi_img(t), psi_img(t);
            for (unsigned k = 1; k <= n; ++k) {
                phi_img += y(i, k) * xi(k, j);
                psi_img += y(k, i) * xi(k, j);
            }
            std::size_t id = *t->find({Family::xi, i, j});
            phi_images[id] = std::move(phi_img);
            psi_images[id] = std::move(psi_img);
        }
    auto phi = [&](const Polynomial& p) { return p.substitute(phi_images); };
    auto psi = [&](const Polynomial& p) { return p.substitute(psi_images); };

    // delta_il - sum_k y_ki y_kl  and  delta_il - sum_k y_ik y_lk
    auto gram_col = [&](unsigned i, unsigned l) {
        Polynomial p = delta(i, l);
        for (unsigned k = 1; k <= n; ++k) p -= y(k, i) * y(k, l);
        return p;
    };
    auto gram_row = [&](unsigned i, unsigned l) {
        Polynomial p = delta(i, l);
        for (unsigned k = 1; k <= n; ++k) p -= y(i, k) * y(l, k);
        return p;
    };

    std::vector<IdentityResidual> out;
    auto tag = [](const char* eq, unsigned i, unsigned j) {
        return std::string(eq) + "(" + std::to_string(i) + "," + std::to_string(j) + ")";
    };
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = 1; j <= n; ++j) {
            if (i < j) {
                Polynomial rhs12 = xi(i, j) - xi(j, i);
                for (unsigned l = 1; l <= n; ++l) {
                    rhs12 -= gram_col(i, l) * xi(l, j);
                    rhs12 += gram_col(j, l) * xi(l, i);
                }
                out.push_back({tag("phi-quadratic", i, j),
                               phi(symbol_quadratic(t, n, i, j)) - rhs12});
                out.push_back({tag("psi-antisymmetry", i, j),
                               psi(xi(i, j) - xi(j, i)) - symbol_quadratic(t, n, i, j)});
            }
            Polynomial rhs14 = xi(i, j);
            Polynomial rhs15 = xi(i, j);
            for (unsigned l = 1; l <= n; ++l) {
                rhs14 -= xi(l, j) * gram_col(i, l);
                rhs15 -= xi(l, j) * gram_row(i, l);
            }
            out.push_back({tag("phi-psi", i, j), phi(psi(xi(i, j))) - rhs14});
            out.push_back({tag("psi-phi", i, j), psi(phi(xi(i, j))) - rhs15});
        }
    return out;
}

/// Diagonal Fisher operators with cleared denominators:
///   D_i d_i^2 + sum_{k != i} P_ik (x_i d_i - x_k d_k) - D_i,
/// where D_i = prod_{k != i}(x_i^2 - x_k^2) and P_ik drops the k factor.
/// The rational-coefficient operator is recovered by dividing by the
/// recorded prefactor D_i.
inline GeneratorSet diagonal_operators(unsigned n) {
    if (n < 2) throw std::invalid_argument("diagonal_operators: need n >= 2");
    GeneratorSet set;
    set.n = n;
    set.family = GeneratorFamily::diagonal;
    set.table = tables::diagonal_weyl(n);
    const TablePtr& t = set.table;
    auto x = [&](unsigned i) { return Polynomial::variable(t, {Family::xdiag, i, 1}); };
    auto dop = [&](unsigned i) { return WeylOperator::variable(t, {Family::dxdiag, i, 1}); };
    auto xop = [&](unsigned i) { return WeylOperator::variable(t, {Family::xdiag, i, 1}); };
    for (unsigned i = 1; i <= n; ++i) {
        Polynomial big = Polynomial::constant(t, Rational(1));
        for (unsigned k = 1; k <= n; ++k)
            if (k != i) big = big * (x(i) * x(i) - x(k) * x(k));
        WeylOperator op = WeylOperator::from_polynomial(big) * dop(i).pow(2);
        for (unsigned k = 1; k <= n; ++k) {
            if (k == i) continue;
            Polynomial part = Polynomial::constant(t, Rational(1));
            for (unsigned l = 1; l <= n; ++l)
                if (l != i && l != k) part = part * (x(i) * x(i) - x(l) * x(l));
            op += WeylOperator::from_polynomial(part) * (xop(i) * dop(i) - xop(k) * dop(k));
        }
        op -= WeylOperator::from_polynomial(big);
        set.operators.push_back(std::move(op));
        set.prefactors.push_back(std::move(big));
    }
    return set;
}

/// (x_i^2-x_j^2) d_i d_j - (x_j d_i - x_i d_j) - (x_i^2-x_j^2) d_k for the
/// cyclic triples, valid only on SO(3).
inline GeneratorSet so3_mixed_operators() {
    GeneratorSet set;
    set.n = 3;
    set.family = GeneratorFamily::so3_mixed;
    set.table = tables::diagonal_weyl(3);
    const TablePtr& t = set.table;
    auto dop = [&](unsigned i) { return WeylOperator::variable(t, {Family::dxdiag, i, 1}); };
    auto xop = [&](unsigned i) { return WeylOperator::variable(t, {Family::xdiag, i, 1}); };
    constexpr std::array<std::array<unsigned, 3>, 3> triples{{{1, 2, 3}, {2, 3, 1}, {3, 1, 2}}};
    for (auto [i, j, k] : triples) {
        WeylOperator diff = xop(i) * xop(i) - xop(j) * xop(j);
        set.operators.push_back(diff * dop(i) * dop(j) - (xop(j) * dop(i) - xop(i) * dop(j)) -
                                diff * dop(k));
    }
    return set;
}

/// The 2x2-minor identity specialized to SO(3): y11 y22 - y12 y21 - y33
/// vanishes on the group.
inline Polynomial minor_identity_so3(TablePtr table = nullptr) {
    if (!table) table = tables::y_poly(3);
    auto y = [&](unsigned i, unsigned j) { return Polynomial::variable(table, {Family::y, i, j}); };
    return y(1, 1) * y(2, 2) - y(1, 2) * y(2, 1) - y(3, 3);
}

/// sum_i x_i y_ii over the joint (y, diagonal x) Weyl table.
inline Polynomial trace_pairing(const TablePtr& t, unsigned n) {
    Polynomial f(t);
    for (unsigned i = 1; i <= n; ++i)
        f += Polynomial::variable(t, {Family::xdiag, i, 1}) *
             Polynomial::variable(t, {Family::y, i, i});
    return f;
}

struct TwistedGenerators {
    TablePtr table;
    Polynomial trace;                    // sum_i x_i y_ii
    std::vector<WeylOperator> column;    // twisted column vector fields, i < j
    std::vector<WeylOperator> row;       // twisted row vector fields, i < j
    std::vector<WeylOperator> parameter; // dx_i - y_ii
};

/// Annihilators of the twisted integrand exp(sum_i x_i y_ii) * (Haar
/// distribution), obtained by the exponential twist of the rotation fields
/// and of the bare x-derivations.
inline TwistedGenerators twisted_integrand_generators(unsigned n) {
    detail::check_matrix_size(n, 2, 4, "twisted_integrand_generators");
    TwistedGenerators out;
    out.table = tables::haar_diag_weyl(n);
    out.trace = trace_pairing(out.table, n);
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = i + 1; j <= n; ++j) {
            out.column.push_back(
                exponential_twist(rotation_field(out.table, n, i, j, false), out.trace));
            out.row.push_back(
                exponential_twist(rotation_field(out.table, n, i, j, true), out.trace));
        }
    for (unsigned i = 1; i <= n; ++i)
        out.parameter.push_back(exponential_twist(
            WeylOperator::variable(out.table, {Family::dxdiag, i, 1}), out.trace));
    return out;
}

inline GeneratorSet generators_by_family(GeneratorFamily family, unsigned n) {
    switch (family) {
        case GeneratorFamily::haar: return haar_generators(n);
        case GeneratorFamily::haar_row_form: return haar_generators(n, true);
        case GeneratorFamily::fisher: return fisher_generators(n);
        case GeneratorFamily::char_J: return char_ideal_generators(n, CharIdealKind::J);
        case GeneratorFamily::char_Jprime: return char_ideal_generators(n, CharIdealKind::Jprime);
        case GeneratorFamily::diagonal: return diagonal_operators(n);
        case GeneratorFamily::so3_mixed:
            if (n != 3)
                throw std::invalid_argument("so3-mixed operators exist only for n = 3");
            return so3_mixed_operators();
    }
    throw std::invalid_argument("unknown generator family");
}

}  // namespace sofi
