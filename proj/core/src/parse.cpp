#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <string>

#include "diagform/errors.hpp"
#include "diagform/form.hpp"

namespace diagform {

namespace {

// Sparse monomial: variable index (0-based) -> exponent.
using Mono = std::map<int, int>;
using Poly = std::map<Mono, Scalar>;

void accumulate(Poly& p, const Mono& m, const Scalar& c)
{
    auto it = p.find(m);
    if (it == p.end()) {
        if (!c.is_zero()) {
            p.emplace(m, c);
        }
        return;
    }
    it->second += c;
    if (it->second.is_zero()) {
        p.erase(it);
    }
}

Poly add(Poly a, const Poly& b, bool negate)
{
    for (const auto& [m, c] : b) {
        accumulate(a, m, negate ? -c : c);
    }
    return a;
}

Poly mul(const Poly& a, const Poly& b)
{
    Poly out;
    for (const auto& [ma, ca] : a) {
        for (const auto& [mb, cb] : b) {
            Mono m = ma;
            for (const auto& [v, e] : mb) {
                m[v] += e;
            }
            accumulate(out, m, ca * cb);
        }
    }
    return out;
}

Poly constant(const Scalar& c)
{
    Poly p;
    accumulate(p, {}, c);
    return p;
}

bool is_constant(const Poly& p)
{
    return p.empty() || (p.size() == 1 && p.begin()->first.empty());
}

Scalar constant_value(const Poly& p)
{
    return p.empty() ? Scalar() : p.begin()->second;
}

// Raised when sqrt(c) leaves the field; carries the radicand to adjoin.
struct MissingRadical {
    std::optional<long> radicand;
    std::string literal;
};

class Parser {
public:
    Parser(std::string_view text, FieldPtr field) : text_(text), field_(std::move(field)) {}

    Poly parse_all()
    {
        Poly p = expr();
        skip_ws();
        if (pos_ != text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw SyntaxError(what + " at offset " + std::to_string(pos_));
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    // ASCII '-' or U+2212.
    bool take_minus()
    {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '-') {
            ++pos_;
            return true;
        }
        if (text_.substr(pos_, 3) == "\xE2\x88\x92") {
            pos_ += 3;
            return true;
        }
        return false;
    }

    bool take(char c)
    {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly expr()
    {
        Poly acc;
        bool negate = take_minus();
        if (!negate) {
            take('+');
        }
        acc = add(acc, term(), negate);
        while (true) {
            if (take('+')) {
                acc = add(acc, term(), false);
            } else if (take_minus()) {
                acc = add(acc, term(), true);
            } else {
                return acc;
            }
        }
    }

    Poly term()
    {
        Poly acc = factor();
        while (true) {
            if (take('*')) {
                acc = mul(acc, factor());
            } else if (take('/')) {
                const Poly d = factor();
                if (!is_constant(d)) {
                    fail("division by a non-constant");
                }
                const Scalar c = constant_value(d);
                if (c.is_zero()) {
                    throw DivisionByZero();
                }
                acc = mul(acc, constant(c.inv()));
            } else {
                return acc;
            }
        }
    }

    Poly factor()
    {
        if (take_minus()) {
            return mul(constant(Scalar(-1)), factor());
        }
        Poly base = atom();
        if (take('^')) {
            skip_ws();
            const long e = integer();
            Poly out = constant(Scalar(1));
            for (long k = 0; k < e; ++k) {
                out = mul(out, base);
            }
            return out;
        }
        return base;
    }

    long integer()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected an integer");
        }
        long v = 0;
        const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (res.ec != std::errc()) {
            fail("integer out of range");
        }
        return v;
    }

    Poly number()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        std::string digits(text_.substr(start, pos_ - start));
        std::string frac;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            const std::size_t fstart = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            frac = std::string(text_.substr(fstart, pos_ - fstart));
        }
        std::string exponent;
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t q = pos_ + 1;
            if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) {
                ++q;
            }
            if (q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]))) {
                const std::size_t estart = pos_ + 1;
                pos_ = q;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                    ++pos_;
                }
                exponent = std::string(text_.substr(estart, pos_ - estart));
            }
        }
        if (digits.empty() && frac.empty()) {
            fail("malformed number");
        }
        if (!field_->exact()) {
            const std::string lit(text_.substr(start, pos_ - start));
            return constant(Scalar::from_complex(field_, std::stod(lit)));
        }
        mpz_class num(digits.empty() ? "0" : digits + frac);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        mpq_class q(num, den);
        if (!exponent.empty()) {
            const long e = std::stol(exponent);
            mpz_class scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(e)));
            if (e >= 0) {
                q *= scale;
            } else {
                q /= scale;
            }
        }
        q.canonicalize();
        return constant(Scalar(q));
    }

    Poly atom()
    {
        skip_ws();
        if (pos_ >= text_.size()) {
            fail("unexpected end of input");
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            if (!take(')')) {
                fail("expected ')'");
            }
            return p;
        }
        if (c == 'x') {
            ++pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                fail("expected a variable index after 'x'");
            }
            const long idx = integer();
            if (idx < 1) {
                fail("variables are numbered from x1");
            }
            Poly p;
            p.emplace(Mono{{static_cast<int>(idx - 1), 1}}, Scalar(1));
            return p;
        }
        if (text_.substr(pos_, 4) == "sqrt") {
            const std::size_t start = pos_;
            pos_ += 4;
            if (!take('(')) {
                fail("expected '(' after sqrt");
            }
            const Poly arg = expr();
            if (!take(')')) {
                fail("expected ')'");
            }
            if (!is_constant(arg)) {
                fail("sqrt of a non-constant");
            }
            const SqrtResult r = try_sqrt(constant_value(arg), field_);
            if (const auto* s = std::get_if<Scalar>(&r)) {
                return constant(*s);
            }
            const auto& need = std::get<NeedsExtension>(r);
            throw MissingRadical{need.radicand, std::string(text_.substr(start, pos_ - start))};
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    FieldPtr field_;
    std::size_t pos_ = 0;
};

Form to_form(const Poly& p, const FieldPtr& field, std::optional<std::size_t> nvars)
{
    std::size_t n = 0;
    int degree = -1;
    for (const auto& [m, c] : p) {
        int deg = 0;
        for (const auto& [v, e] : m) {
            n = std::max(n, static_cast<std::size_t>(v) + 1);
            deg += e;
        }
        if (degree >= 0 && deg != degree) {
            throw NotHomogeneous("terms of degree " + std::to_string(degree) + " and " + std::to_string(deg));
        }
        degree = deg;
    }
    if (degree < 0) {
        throw DegreeTooLow("the zero polynomial has no degree");
    }
    if (degree < 3) {
        throw DegreeTooLow("degree " + std::to_string(degree) + " is below 3");
    }
    if (nvars) {
        if (*nvars < n) {
            throw IndexOutOfRange("x" + std::to_string(n) + " exceeds the declared " + std::to_string(*nvars) +
                                  " variables");
        }
        n = *nvars;
    }
    Form f(n, static_cast<unsigned>(degree));
    for (const auto& [m, c] : p) {
        Exponent e(n, 0);
        for (const auto& [v, k] : m) {
            e[static_cast<std::size_t>(v)] = k;
        }
        f.add_term(e, c.lift(field));
    }
    return f;
}

} // namespace

Form parse_form(std::string_view text, const FieldPtr& field, std::optional<std::size_t> nvars)
{
    try {
        return to_form(Parser(text, field).parse_all(), field, nvars);
    } catch (const MissingRadical& m) {
        throw FieldError(m.literal + " is not in " + field->describe());
    }
}

Form parse_form(std::string_view text, const FieldConfig& cfg, std::optional<std::size_t> nvars)
{
    // Radicals written in the input join the field; this does not count
    // against max_adjoin.
    FieldPtr field = Field::make(cfg);
    while (true) {
        try {
            return to_form(Parser(text, field).parse_all(), field, nvars);
        } catch (const MissingRadical& m) {
            if (!m.radicand) {
                throw FieldError(m.literal + " is not in " + field->describe());
            }
            field = field->adjoin(*m.radicand);
        }
    }
}

Scalar parse_scalar(std::string_view text, const FieldPtr& field)
{
    Poly p;
    try {
        p = Parser(text, field).parse_all();
    } catch (const MissingRadical& m) {
        throw FieldError(m.literal + " is not in " + field->describe());
    }
    if (!is_constant(p)) {
        throw SyntaxError("expected a constant");
    }
    return constant_value(p).lift(field);
}

} // namespace diagform
