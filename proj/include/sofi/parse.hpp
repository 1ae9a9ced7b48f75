#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "sofi/polynomial.hpp"
#include "sofi/weyl.hpp"

namespace sofi {

class parse_error : public std::invalid_argument {
  public:
    parse_error(const std::string& msg, std::size_t pos)
        : std::invalid_argument(msg + " (at offset " + std::to_string(pos) + ")") {}
};

namespace detail {

// expr   := ('+'|'-')? term (('+'|'-') term)*
// term   := coeff ('*' factor)* | factor ('*' factor)*
// factor := var ('^' nat)?
// var    := family '[' nat (',' nat)? ']'
// coeff  := int ('/' nat)?
class TermParser {
  public:
    TermParser(const std::string& text, const TablePtr& table) : s_(text), table_(table) {}

    std::vector<std::pair<Monomial, Rational>> parse() {
        std::vector<std::pair<Monomial, Rational>> terms;
        skip_ws();
        bool negative = false;
        if (peek() == '+' || peek() == '-') negative = (get() == '-');
        for (;;) {
            terms.push_back(parse_term(negative));
            skip_ws();
            if (at_end()) break;
            char c = get();
            if (c == '+')
                negative = false;
            else if (c == '-')
                negative = true;
            else
                throw parse_error("expected '+' or '-'", pos_ - 1);
        }
        return terms;
    }

  private:
    std::pair<Monomial, Rational> parse_term(bool negative) {
        skip_ws();
        Rational coeff(1);
        Monomial mono(table_->size());
        bool have_any = false;
        bool coeff_negative = false;
        if (peek() == '-') {
            get();
            skip_ws();
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw parse_error("expected digits after '-'", pos_);
            coeff_negative = true;
        }
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = parse_coeff();
            if (coeff_negative) coeff = -coeff;
            have_any = true;
        }
        for (;;) {
            skip_ws();
            if (have_any) {
                if (peek() != '*') break;
                get();
                skip_ws();
            }
            if (std::isalpha(static_cast<unsigned char>(peek()))) {
                auto [id, power] = parse_factor();
                mono.e[id] += power;
                have_any = true;
            } else if (!have_any) {
                throw parse_error("expected coefficient or variable", pos_);
            } else {
                throw parse_error("expected variable after '*'", pos_);
            }
        }
        if (!have_any) throw parse_error("empty term", pos_);
        if (negative) coeff = -coeff;
        return {std::move(mono), std::move(coeff)};
    }

    Rational parse_coeff() {
        std::string num = parse_digits();
        if (peek() == '/') {
            get();
            std::string den = parse_digits();
            return parse_rational(num + "/" + den);
        }
        return parse_rational(num);
    }

    std::pair<std::size_t, unsigned> parse_factor() {
        std::size_t start = pos_;
        std::string fam;
        while (std::isalpha(static_cast<unsigned char>(peek()))) fam += get();
        skip_ws();
        if (peek() != '[') throw parse_error("expected '[' after family name", pos_);
        get();
        skip_ws();
        unsigned i = parse_nat();
        skip_ws();
        bool two = false;
        unsigned j = 1;
        if (peek() == ',') {
            get();
            skip_ws();
            j = parse_nat();
            skip_ws();
            two = true;
        }
        if (peek() != ']') throw parse_error("expected ']'", pos_);
        get();
        Variable v = resolve(fam, two, i, j, start);
        auto id = table_->find(v);
        if (!id) throw parse_error("variable " + v.name() + " not in table", start);
        unsigned power = 1;
        skip_ws();
        if (peek() == '^') {
            get();
            skip_ws();
            power = parse_nat();
        }
        return {*id, power};
    }

    Variable resolve(const std::string& fam, bool two, unsigned i, unsigned j, std::size_t at) {
        if (fam == "y") return {Family::y, i, j};
        if (fam == "xi") return {Family::xi, i, j};
        if (fam == "x") return two ? Variable{Family::x, i, j} : Variable{Family::xdiag, i, 1};
        if (fam == "dy") return {Family::dy, i, j};
        if (fam == "dx") return two ? Variable{Family::dx, i, j} : Variable{Family::dxdiag, i, 1};
        throw parse_error("unknown family '" + fam + "'", at);
    }

    unsigned parse_nat() {
        std::string d = parse_digits();
        return static_cast<unsigned>(std::stoul(d));
    }

    std::string parse_digits() {
        std::string d;
        while (std::isdigit(static_cast<unsigned char>(peek()))) d += get();
        if (d.empty()) throw parse_error("expected digits", pos_);
        return d;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return s_[pos_++]; }

    const std::string& s_;
    TablePtr table_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_polynomial(const std::string& text, const TablePtr& table) {
    auto terms = detail::TermParser(text, table).parse();
    return Polynomial::from_terms(table, std::move(terms));
}

/// Serialized operators are always normally ordered, so the factors of a
/// term commute at the syntax level and parsing reduces to exponent
/// collection.
inline WeylOperator parse_weyl(const std::string& text, const TablePtr& table) {
    auto terms = detail::TermParser(text, table).parse();
    return WeylOperator::from_terms(table, std::move(terms));
}

}  // namespace sofi
