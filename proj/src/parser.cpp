#include "opergr/parser.hpp"

#include <cctype>
#include <climits>
#include <sstream>

#include "opergr/errors.hpp"

namespace opergr {

namespace {

class Parser {
public:
    Parser(std::string_view text, const ParseOptions &opt) : text_(text), opt_(opt) {}

    PsiDO parse()
    {
        skip_space();
        if (at_end()) {
            fail("empty expression");
        }
        PsiDO out = sum();
        skip_space();
        if (!at_end()) {
            fail(std::string("unexpected '") + peek() + "'");
        }
        return out;
    }

private:
    std::string_view text_;
    ParseOptions opt_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void advance()
    {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
            advance();
        }
    }

    [[noreturn]] void fail(const std::string &msg) const { throw ParseError(line_, col_, msg); }

    PsiDO constant(const Rational &c) const
    {
        return PsiDO::multiplication(Series::constant(c, opt_.order, opt_.pole_floor), opt_.floor);
    }

    PsiDO sum()
    {
        PsiDO acc = neg();
        for (;;) {
            skip_space();
            char c = peek();
            if (c != '+' && c != '-') {
                return acc;
            }
            advance();
            PsiDO rhs = neg();
            acc = c == '+' ? acc + rhs : acc - rhs;
        }
    }

    PsiDO neg()
    {
        skip_space();
        if (peek() == '-') {
            advance();
            return -neg();
        }
        return comp();
    }

    bool starts_atom()
    {
        skip_space();
        char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == 't' || c == 'd' || c == '(';
    }

    PsiDO comp()
    {
        bool last_numeric = false;
        PsiDO acc = power(last_numeric);
        for (;;) {
            skip_space();
            bool explicit_star = false;
            if (peek() == '*') {
                advance();
                explicit_star = true;
            }
            if (!starts_atom()) {
                if (explicit_star) {
                    fail("expected an operand after '*'");
                }
                return acc;
            }
            if (!explicit_star && last_numeric && std::isdigit(static_cast<unsigned char>(peek()))) {
                fail("two numeric literals in a row");
            }
            PsiDO rhs = power(last_numeric);
            acc = PsiDO::compose(acc, rhs);
        }
    }

    int exponent()
    {
        skip_space();
        bool negative = false;
        if (peek() == '-' || peek() == '+') {
            negative = peek() == '-';
            advance();
            skip_space();
        }
        if (!std::isdigit(static_cast<unsigned char>(peek()))) {
            fail("expected an integer exponent");
        }
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (peek() - '0');
            if (v > 100000) {
                fail("exponent too large");
            }
            advance();
        }
        return static_cast<int>(negative ? -v : v);
    }

    std::string digits()
    {
        std::string out;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            out += peek();
            advance();
        }
        return out;
    }

    enum class Kind { Number, T, D, Group };

    PsiDO power(bool &numeric)
    {
        skip_space();
        int line = line_;
        int col = col_;
        Kind kind;
        Rational number;
        PsiDO group;
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            kind = Kind::Number;
            std::string num = digits();
            std::string den = "1";
            skip_space();
            if (peek() == '/') {
                advance();
                skip_space();
                if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                    fail("expected a denominator");
                }
                den = digits();
                if (den.find_first_not_of('0') == std::string::npos) {
                    throw ParseError(line, col, "zero denominator");
                }
            }
            number = Rational::parse(num + "/" + den);
        } else if (c == 't' || c == 'd') {
            kind = c == 't' ? Kind::T : Kind::D;
            advance();
            if (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
                fail("unknown identifier");
            }
        } else if (c == '(') {
            kind = Kind::Group;
            advance();
            group = sum();
            skip_space();
            if (peek() != ')') {
                fail("expected ')'");
            }
            advance();
        } else if (at_end()) {
            fail("unexpected end of input");
        } else {
            fail(std::string("unexpected '") + c + "'");
        }
        numeric = kind == Kind::Number;

        int k = 1;
        skip_space();
        if (peek() == '^') {
            advance();
            k = exponent();
        }

        switch (kind) {
        case Kind::Number: {
            if (k < 0 && number.is_zero()) {
                throw ParseError(line, col, "negative power of zero");
            }
            Rational r(1);
            Rational base = k < 0 ? Rational(1) / number : number;
            for (int i = 0; i < (k < 0 ? -k : k); ++i) {
                r *= base;
            }
            return constant(r);
        }
        case Kind::T:
            return PsiDO::multiplication(Series::monomial(Rational(1), k, opt_.order, opt_.pole_floor), opt_.floor);
        case Kind::D:
            return PsiDO::d_power(k, Series::constant(Rational(1), opt_.order, opt_.pole_floor), opt_.floor);
        case Kind::Group:
            if (k < 0) {
                throw ParseError(line, col, "negative powers are only allowed on t, d and numbers");
            }
            if (k == 0) {
                return constant(Rational(1));
            }
            return pdo_power(group, k);
        }
        return group;
    }
};

} // namespace

PsiDO parse_operator(std::string_view text, const ParseOptions &opt)
{
    PsiDO out = Parser(text, opt).parse();
    for (auto it = out.terms().begin(); it != out.terms().end();) {
        int i = it->first;
        ++it;
        if (out.find(i)->is_zero()) {
            out.erase(i);
        }
    }
    return out;
}

std::string print_polynomial(const Series &s)
{
    std::ostringstream os;
    bool first = true;
    auto cs = s.coeffs();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (cs[i].is_zero()) {
            continue;
        }
        int k = s.pole() + static_cast<int>(i);
        Rational c = cs[i];
        if (!first) {
            os << (c.sign() < 0 ? " - " : " + ");
            c = c.sign() < 0 ? -c : c;
        } else if (c.sign() < 0) {
            os << "-";
            c = -c;
        }
        first = false;
        if (k == 0) {
            os << c;
            continue;
        }
        if (!c.is_one()) {
            os << c << "*";
        }
        os << "t";
        if (k != 1) {
            os << "^" << k;
        }
    }
    if (first) {
        os << "0";
    }
    return os.str();
}

std::string print_operator(const PsiDO &a)
{
    std::ostringstream os;
    bool first = true;
    for (const auto &[i, c] : a.terms()) {
        if (c.is_zero()) {
            continue;
        }
        os << (first ? "" : " + ") << "(" << print_polynomial(c) << ")";
        if (i != 0) {
            os << "*d";
            if (i != 1) {
                os << "^" << i;
            }
        }
        first = false;
    }
    if (first) {
        os << "0";
    }
    return os.str();
}

} // namespace opergr
