#pragma once

#include "k3cov/exactmath/ratfunc.hpp"

#include <cctype>
#include <map>
#include <string>
#include <vector>

namespace k3cov {

template <class K>
struct ReservedConstant {
    static std::optional<K> lookup(const std::string&) { return std::nullopt; }
};

template <>
struct ReservedConstant<Cyc12> {
    static std::optional<Cyc12> lookup(const std::string& name) {
        if (name == "zeta3") return Cyc12::zeta3();
        if (name == "zeta4") return Cyc12::i();
        if (name == "sqrt3") return Cyc12::sqrt3();
        if (name == "zeta12") return Cyc12::zeta();
        return std::nullopt;
    }
};

inline bool is_reserved_constant(const std::string& name) {
    return name == "zeta3" || name == "zeta4" || name == "sqrt3" || name == "zeta12";
}

// Symbols visible to the expression parser: polynomial variables plus named
// definitions that expand to previously parsed expressions.
template <class K>
struct SymbolTable {
    std::vector<std::string> variables;
    std::map<std::string, RatFunc<K>> definitions;

    std::size_t nvars() const { return variables.size(); }
    std::optional<std::size_t> index_of(const std::string& s) const {
        for (std::size_t k = 0; k < variables.size(); ++k)
            if (variables[k] == s) return k;
        return std::nullopt;
    }
};

// Recursive descent over  expr := term (('+'|'-') term)*,
// term := unary (('*'|'/') unary)*, unary := ('+'|'-') unary | power,
// power := atom ('^' integer)?, atom := integer | symbol | '(' expr ')'.
template <class K>
class ExprParser {
public:
    ExprParser(const std::string& text, const SymbolTable<K>& symbols) : s_(text), sym_(symbols) {}

    RatFunc<K> parse() {
        RatFunc<K> v = expr();
        skip();
        if (p_ != s_.size()) fail("unexpected '" + std::string(1, s_[p_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, p_); }

    void skip() {
        while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
    }
    bool accept(char c) {
        skip();
        if (p_ < s_.size() && s_[p_] == c) {
            ++p_;
            return true;
        }
        return false;
    }

    RatFunc<K> expr() {
        RatFunc<K> v = term();
        for (;;) {
            if (accept('+')) v = v + term();
            else if (accept('-')) v = v - term();
            else return v;
        }
    }
    RatFunc<K> term() {
        RatFunc<K> v = unary();
        for (;;) {
            if (accept('*')) v = v * unary();
            else if (accept('/')) {
                std::size_t at = p_;
                RatFunc<K> d = unary();
                if (d.is_zero()) throw ParseError("division by zero", at);
                v = v / d;
            } else return v;
        }
    }
    RatFunc<K> unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }
    RatFunc<K> power() {
        RatFunc<K> base = atom();
        if (accept('^')) {
            skip();
            bool neg = accept('-');
            skip();
            std::size_t start = p_;
            while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
            if (start == p_) fail("expected integer exponent");
            int e = std::stoi(s_.substr(start, p_ - start));
            if (neg && base.is_zero()) fail("negative power of zero");
            return base.pow(neg ? -e : e);
        }
        return base;
    }
    RatFunc<K> atom() {
        skip();
        if (p_ >= s_.size()) fail("unexpected end of expression");
        char c = s_[p_];
        std::size_t n = sym_.nvars();
        if (c == '(') {
            ++p_;
            RatFunc<K> v = expr();
            if (!accept(')')) fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = p_;
            while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
            Integer z(s_.substr(start, p_ - start));
            return RatFunc<K>::constant(n, K(Rational(z)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = p_;
            while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_')) ++p_;
            std::string name = s_.substr(start, p_ - start);
            if (auto k = sym_.index_of(name)) return RatFunc<K>(MPoly<K>::variable(n, *k));
            auto d = sym_.definitions.find(name);
            if (d != sym_.definitions.end()) return d->second;
            if (auto constant = ReservedConstant<K>::lookup(name)) return RatFunc<K>::constant(n, *constant);
            if (is_reserved_constant(name)) throw ParseError("constant '" + name + "' requires cyclotomic coefficients", start);
            throw ParseError("undeclared symbol '" + name + "'", start);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string s_;
    const SymbolTable<K>& sym_;
    std::size_t p_ = 0;
};

template <class K>
RatFunc<K> parse_expression(const std::string& text, const SymbolTable<K>& symbols) {
    return ExprParser<K>(text, symbols).parse();
}

}  // namespace k3cov
