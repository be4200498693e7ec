#include "ddsurf/parser.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace ddsurf {

namespace {

std::optional<Var> lookup_var(char c, NameStyle style) {
    if (style == NameStyle::Witness) {
        switch (c) {
            case 'x':
            case 'X':
                return Var::X;
            case 'G':
                return Var::Y;
            case 'F':
                return Var::Z;
            case 'H':
                return Var::T;
            case 'V':
                return Var::W;
            default:
                return std::nullopt;
        }
    }
    switch (c) {
        case 'X':
        case 'x':
            return Var::X;
        case 'Y':
        case 'y':
            return Var::Y;
        case 'Z':
        case 'z':
            return Var::Z;
        case 'T':
        case 't':
            return Var::T;
        case 'W':
        case 'w':
            return Var::W;
        case 'U':
            return Var::U;
        case 'V':
            return Var::V;
        default:
            return std::nullopt;
    }
}

char var_name(Var v, NameStyle style) {
    if (style == NameStyle::Upper) return kVarNames[var_index(v)];
    if (style == NameStyle::Element) {
        switch (v) {
            case Var::X:
                return 'x';
            case Var::Y:
                return 'y';
            case Var::Z:
                return 'z';
            case Var::T:
                return 't';
            case Var::W:
                return 'w';
            default:
                return kVarNames[var_index(v)];
        }
    }
    switch (v) {  // Witness
        case Var::X:
            return 'x';
        case Var::Y:
            return 'G';
        case Var::Z:
            return 'F';
        case Var::T:
            return 'H';
        case Var::W:
            return 'V';
        default:
            return kVarNames[var_index(v)];
    }
}

// Recursive-descent parser producing a LaurentPoly; callers needing a plain
// polynomial convert (and get an exponent check) afterwards.
class Parser {
public:
    Parser(const std::string& text, const Field& field, const VarSet& allowed, NameStyle style, bool laurent)
        : text_(text), field_(field), allowed_(allowed), style_(style), laurent_(laurent) {}

    LaurentPoly run() {
        LaurentPoly p = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
        return p;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    LaurentPoly parse_expr() {
        bool neg = false;
        char c = peek();
        if (c == '+' || c == '-') {
            neg = c == '-';
            ++pos_;
        }
        LaurentPoly acc = parse_term();
        if (neg) acc = -acc;
        while (true) {
            c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                LaurentPoly t = parse_term();
                acc = c == '+' ? acc + t : acc - t;
            } else {
                break;
            }
        }
        return acc;
    }

    LaurentPoly parse_term() {
        LaurentPoly acc = parse_factor();
        while (peek() == '*') {
            ++pos_;
            acc = acc * parse_factor();
        }
        return acc;
    }

    LaurentPoly parse_factor() {
        std::size_t at = pos_;
        LaurentPoly base = parse_base(at);
        if (peek() != '^') return base;
        ++pos_;
        skip_ws();
        bool neg_exp = false;
        if (pos_ < text_.size() && text_[pos_] == '-') {
            neg_exp = true;
            ++pos_;
        }
        std::size_t exp_at = pos_;
        long e = parse_integer("exponent");
        if (neg_exp) {
            if (!laurent_) throw ParseError("negative exponents are not allowed here", exp_at);
            e = -e;
        }
        if (e > LaurentPoly::kMaxXExponent || e < -LaurentPoly::kMaxXExponent)
            throw ParseError("exponent out of range", exp_at);
        if (e >= 0) return base.pow(e);
        // Negative exponents are Laurent-only and restricted to the bare X.
        if (base.terms().size() == 1 && base.terms().begin()->first == unit_exp(Var::X) &&
            base.terms().begin()->second.is_one()) {
            return LaurentPoly::constant(FieldScalar::one(field_)).mul_xpow(e);
        }
        throw ParseError("negative exponent is only allowed on X", at);
    }

    LaurentPoly parse_base(std::size_t at) {
        char c = peek();
        at = pos_;
        if (c == '(') {
            ++pos_;
            LaurentPoly inner = parse_expr();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            auto v = lookup_var(c, style_);
            if (!v) throw ParseError(std::string("unknown symbol '") + c + "'", at);
            if (!allowed_.contains(*v))
                throw ParseError(std::string("variable '") + c + "' is not allowed here", at);
            ++pos_;
            return LaurentPoly::variable(field_, *v);
        }
        if (c == '\0') throw ParseError("unexpected end of input", pos_);
        throw ParseError(std::string("unexpected character '") + c + "'", at);
    }

    LaurentPoly parse_number() {
        std::size_t at = pos_;
        std::string digits = read_digits();
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            skip_ws();
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw ParseError("expected denominator digits", pos_);
            std::string den = read_digits();
            return make_scalar(digits + "/" + den, at);
        }
        return make_scalar(digits, at);
    }

    LaurentPoly make_scalar(const std::string& text, std::size_t at) {
        try {
            return LaurentPoly::constant(FieldScalar::parse(field_, text));
        } catch (const Error& e) {
            throw ParseError(e.what(), at);
        }
    }

    std::string read_digits() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return text_.substr(start, pos_ - start);
    }

    long parse_integer(const char* what) {
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw ParseError(std::string("expected ") + what, pos_);
        std::string digits = read_digits();
        if (digits.size() > 9) throw ParseError(std::string(what) + " too large", pos_);
        return std::stol(digits);
    }

    const std::string& text_;
    Field field_;
    VarSet allowed_;
    NameStyle style_;
    bool laurent_;
    std::size_t pos_ = 0;
};

std::string render(const Field& field, const TermMap& terms, NameStyle style) {
    if (terms.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // Descending lex order.
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        const ExpVec& m = it->first;
        FieldScalar c = it->second;
        bool neg = c.is_negative();
        if (first) {
            if (neg) out << "-";
        } else {
            out << (neg ? " - " : " + ");
        }
        first = false;
        FieldScalar mag = neg ? -c : c;
        std::string vars;
        for (int i = 0; i < kNumVars; ++i) {
            if (m[i] == 0) continue;
            if (!vars.empty()) vars += "*";
            vars += var_name(static_cast<Var>(i), style);
            if (m[i] != 1) vars += "^" + std::to_string(m[i]);
        }
        if (vars.empty()) {
            out << mag.to_string();
        } else if (mag.is_one()) {
            out << vars;
        } else {
            out << mag.to_string() << "*" << vars;
        }
    }
    (void)field;
    return out.str();
}

}  // namespace

MultiPoly parse_poly(const std::string& text, const Field& field, const VarSet& allowed, NameStyle style) {
    LaurentPoly p = Parser(text, field, allowed, style, /*laurent=*/false).run();
    return p.to_multi();
}

LaurentPoly parse_laurent(const std::string& text, const Field& field, const VarSet& allowed, NameStyle style) {
    return Parser(text, field, allowed, style, /*laurent=*/true).run();
}

std::string to_string(const MultiPoly& p, NameStyle style) { return render(p.field(), p.terms(), style); }

std::string to_string(const LaurentPoly& p, NameStyle style) { return render(p.field(), p.terms(), style); }

}  // namespace ddsurf
