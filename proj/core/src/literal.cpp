#include "hahn/literal.hpp"

#include <cctype>

#include "hahn/errors.hpp"

namespace hahn {

namespace {

class Cursor {
public:
    explicit Cursor(const std::string& text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            advance();
    }
    bool done() {
        skip_ws();
        return pos_ >= text_.size();
    }
    char peek() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        return text_[pos_];
    }
    bool try_consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            advance();
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!try_consume(c)) fail(std::string("expected '") + c + "'");
    }
    /// Next bare token: run of alnum, '_', '-', '+', '/' characters.
    std::string word() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
                c == '+' || c == '/')
                advance();
            else
                break;
        }
        if (start == pos_) fail("expected a token");
        return text_.substr(start, pos_ - start);
    }
    long integer() {
        std::string w = word();
        try {
            std::size_t used = 0;
            long v = std::stol(w, &used);
            if (used != w.size()) fail("trailing characters in integer '" + w + "'");
            return v;
        } catch (const std::exception&) {
            fail("invalid integer '" + w + "'");
        }
        return 0;
    }
    Rat rational() {
        std::string w = word();
        return rational_from_word(w);
    }
    Rat rational_from_word(const std::string& w) {
        auto slash = w.find('/');
        try {
            Int num(slash == std::string::npos ? w : w.substr(0, slash));
            Int den(1);
            if (slash != std::string::npos) den = Int(w.substr(slash + 1));
            if (den == 0) fail("rational with zero denominator '" + w + "'");
            Rat q(num, den);
            q.canonicalize();
            return q;
        } catch (const std::invalid_argument&) {
            fail("invalid rational '" + w + "'");
        }
        return Rat(0);
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg, line_, col_);
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

Scalar scalar_from_word(Cursor& c, const std::string& w) {
    if (w == "int") return Scalar::Int;
    if (w == "rat") return Scalar::Rat;
    if (w == "dyadic") return Scalar::Dyadic;
    c.fail("unknown scalar component '" + w + "'");
}

IndexRange parse_range(Cursor& c) {
    if (c.try_consume('(')) {
        std::string kw = c.word();
        if (kw != "range") c.fail("expected 'range'");
        IndexRange r;
        try {
            std::string lo = c.word();
            if (lo != "-inf") r.lo = static_cast<Idx>(std::stol(lo));
            std::string hi = c.word();
            if (hi != "inf") r.hi = static_cast<Idx>(std::stol(hi));
        } catch (const std::exception&) {
            c.fail("invalid range bound");
        }
        c.expect(')');
        return r;
    }
    std::string w = c.word();
    if (w == "omega") return IndexRange{0, std::nullopt};
    if (w == "-omega") return IndexRange{std::nullopt, 0};
    c.fail("unknown index range '" + w + "'");
}

ShapePtr parse_shape_expr(Cursor& c) {
    if (!c.try_consume('(')) {
        std::string w = c.word();
        if (w == "int") return GroupShape::integers();
        if (w == "rat") return GroupShape::rationals();
        if (w == "dyadic") return GroupShape::dyadics();
        c.fail("unknown shape '" + w + "'");
    }
    std::string head = c.word();
    if (head == "hahnsum") {
        IndexRange r = parse_range(c);
        Scalar s = scalar_from_word(c, c.word());
        c.expect(')');
        return GroupShape::hahn_sum(r, s);
    }
    if (head == "extsum") {
        IndexRange r = parse_range(c);
        if (!r.lo || r.hi) c.fail("extsum needs a range unbounded above only");
        Scalar s = scalar_from_word(c, c.word());
        long d = c.integer();
        c.expect(')');
        return GroupShape::ext_hahn_sum(*r.lo, s, d);
    }
    if (head == "lex") {
        Scalar l = scalar_from_word(c, c.word());
        Scalar r = scalar_from_word(c, c.word());
        c.expect(')');
        return GroupShape::lex_pair(l, r);
    }
    if (head == "quot") {
        ShapePtr base = parse_shape_expr(c);
        long cut = c.integer();
        c.expect(')');
        return GroupShape::quotient(base, static_cast<Idx>(cut));
    }
    c.fail("unknown shape constructor '" + head + "'");
}

GroupElement parse_group_expr(Cursor& c, const ShapePtr& shape) {
    c.expect('{');
    std::map<Idx, Rat> entries;
    if (!c.try_consume('}')) {
        while (true) {
            long idx = c.integer();
            c.expect(':');
            Rat coeff = c.rational();
            auto [it, inserted] = entries.emplace(static_cast<Idx>(idx), coeff);
            if (!inserted) c.fail("duplicate index " + std::to_string(idx));
            if (c.try_consume('}')) break;
            c.expect(',');
        }
    }
    Rat dist(0);
    if (c.try_consume('+')) {
        // k*a suffix; the word may itself start with a sign.
        std::string w = c.word();
        Rat k = c.rational_from_word(w);
        c.expect('*');
        std::string unit = c.word();
        if (unit != "a") c.fail("expected the distinguished element 'a'");
        dist = k;
    } else if (c.try_consume('-')) {
        std::string w = c.word();
        Rat k = c.rational_from_word(w);
        c.expect('*');
        std::string unit = c.word();
        if (unit != "a") c.fail("expected the distinguished element 'a'");
        dist = -k;
    }
    try {
        return GroupElement::make(shape, std::move(entries), std::move(dist));
    } catch (const Error& e) {
        c.fail(e.what());
    }
}

SeriesElement parse_series_expr(Cursor& c, const ShapePtr& shape) {
    TermMap terms;
    bool first = true;
    std::optional<GroupElement> cutoff;
    while (!c.done()) {
        int series_sign = 1;
        if (c.try_consume('(')) {
            std::string kw = c.word();
            if (kw != "cut") c.fail("expected 'cut'");
            cutoff = parse_group_expr(c, shape);
            c.expect(')');
            break;
        }
        if (!first) {
            if (c.try_consume('+')) {
                series_sign = 1;
            } else if (c.try_consume('-')) {
                series_sign = -1;
            } else {
                c.fail("expected '+', '-' or '(cut ...)'");
            }
        } else if (c.try_consume('-')) {
            series_sign = -1;
        }
        first = false;

        Rat coeff(1);
        GroupElement g = GroupElement::zero(shape);
        if (c.peek() == 't') {
            c.word(); // 't'
            c.expect('^');
            c.expect('{');
            g = parse_group_expr(c, shape);
            c.expect('}');
        } else {
            coeff = c.rational();
            if (c.try_consume('*')) {
                std::string w = c.word();
                if (w != "t") c.fail("expected 't' after '*'");
                c.expect('^');
                c.expect('{');
                g = parse_group_expr(c, shape);
                c.expect('}');
            }
        }
        if (series_sign < 0) coeff = -coeff;
        auto [it, inserted] = terms.emplace(std::move(g), coeff);
        if (!inserted) it->second += coeff;
    }
    if (cutoff && !c.done()) c.fail("trailing characters after the cutoff");
    try {
        return SeriesElement::make(shape, std::move(terms), std::move(cutoff));
    } catch (const Error& e) {
        c.fail(e.what());
    }
}

} // namespace

Rat parse_rational(const std::string& text) {
    Cursor c(text);
    Rat q = c.rational();
    if (!c.done()) c.fail("trailing characters after rational");
    return q;
}

ShapePtr parse_shape(const std::string& text) {
    Cursor c(text);
    ShapePtr s = parse_shape_expr(c);
    if (!c.done()) c.fail("trailing characters after shape");
    return s;
}

GroupElement parse_group_element(const std::string& text, const ShapePtr& shape) {
    Cursor c(text);
    GroupElement g = parse_group_expr(c, shape);
    if (!c.done()) c.fail("trailing characters after group element");
    return g;
}

SeriesElement parse_series(const std::string& text, const ShapePtr& shape) {
    Cursor c(text);
    return parse_series_expr(c, shape);
}

SeriesPolynomial parse_polynomial(const std::string& text, const ShapePtr& shape) {
    Cursor c(text);
    c.expect('[');
    SeriesPolynomial f;
    // Coefficients are comma-separated series literals; scan nesting-aware
    // substrings and reuse the series parser.
    if (!c.try_consume(']')) {
        std::string buf;
        int depth = 0;
        while (true) {
            if (c.done()) c.fail("unterminated polynomial literal");
            char ch = c.peek();
            if (ch == '{' || ch == '(' || ch == '[') ++depth;
            if (ch == '}' || ch == ')') --depth;
            if (ch == ']' && depth == 0) {
                c.expect(']');
                f.coeffs.push_back(parse_series(buf, shape));
                break;
            }
            if (ch == ',' && depth == 0) {
                c.expect(',');
                f.coeffs.push_back(parse_series(buf, shape));
                buf.clear();
                continue;
            }
            c.expect(ch);
            buf += ch;
        }
    }
    if (!c.done()) c.fail("trailing characters after polynomial");
    if (f.coeffs.empty()) c.fail("empty polynomial literal");
    return f;
}

} // namespace hahn
