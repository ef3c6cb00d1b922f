#pragma once

/*
 * Exact arithmetic in the real quadratic field Q(sqrt 2).
 *
 * An element is p + q*sqrt2 with arbitrary-precision rational p, q kept in
 * lowest terms. Sign, ordering and floor are decided with integer
 * comparisons and integer square roots only; floating point never enters a
 * decision. to_decimal is the single exit to inexact output.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <concepts>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>

#include "numdim/errors.hpp"

namespace numdim {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// floor(sqrt(n)) by Newton iteration from an overestimate.
inline Integer isqrt(const Integer& n) {
    if (n < 0)
        throw Error(ErrorKind::domain_error, "isqrt of a negative integer");
    if (n < 2)
        return n;
    Integer x = Integer(1) << (boost::multiprecision::msb(n) / 2 + 1);
    for (;;) {
        Integer y = (x + n / x) >> 1;
        if (y >= x)
            return x;
        x = std::move(y);
    }
}

// Division rounding toward negative infinity; den > 0.
inline Integer floor_div(const Integer& num, const Integer& den) {
    Integer q = num / den;
    if (num % den != 0 && num < 0)
        --q;
    return q;
}

inline Integer floor(const Rational& r) {
    return floor_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

inline bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

inline int sign(const Rational& r) { return r.sign(); }

class QuadRat {
public:
    QuadRat() = default;
    QuadRat(Rational p, Rational q = Rational(0)) : p_(std::move(p)), q_(std::move(q)) {}
    QuadRat(const Integer& n) : p_(n) {}
    template <std::integral T>
    QuadRat(T n) : p_(n) {}

    static QuadRat sqrt2() { return QuadRat(Rational(0), Rational(1)); }

    const Rational& p() const noexcept { return p_; }
    const Rational& q() const noexcept { return q_; }

    bool is_zero() const { return p_ == 0 && q_ == 0; }
    bool is_rational() const { return q_ == 0; }
    bool is_integer() const { return q_ == 0 && numdim::is_integer(p_); }

    // Integer value; only meaningful when is_integer().
    Integer to_integer() const {
        if (!is_integer())
            throw Error(ErrorKind::domain_error, "value is not an integer");
        return boost::multiprecision::numerator(p_);
    }

    QuadRat conjugate() const { return QuadRat(p_, -q_); }

    // x * conjugate(x) = p^2 - 2q^2.
    Rational norm() const { return p_ * p_ - 2 * q_ * q_; }

    int sign() const {
        int sp = p_.sign();
        int sq = q_.sign();
        if (sq == 0)
            return sp;
        if (sp == 0 || sp == sq)
            return sq;
        // Opposite signs: the term with larger square dominates; p^2 = 2q^2
        // is impossible for nonzero q.
        Rational pp = p_ * p_;
        Rational qq = 2 * q_ * q_;
        return pp > qq ? sp : sq;
    }

    QuadRat operator-() const { return QuadRat(-p_, -q_); }

    QuadRat& operator+=(const QuadRat& y) {
        p_ += y.p_;
        q_ += y.q_;
        return *this;
    }
    QuadRat& operator-=(const QuadRat& y) {
        p_ -= y.p_;
        q_ -= y.q_;
        return *this;
    }
    QuadRat& operator*=(const QuadRat& y) {
        Rational p = p_ * y.p_ + 2 * q_ * y.q_;
        Rational q = p_ * y.q_ + y.p_ * q_;
        p_ = std::move(p);
        q_ = std::move(q);
        return *this;
    }
    QuadRat& operator/=(const QuadRat& y) {
        if (y.is_zero())
            throw Error(ErrorKind::division_by_zero, "division by zero in Q(sqrt2)");
        Rational n = y.norm();
        *this *= y.conjugate();
        p_ /= n;
        q_ /= n;
        return *this;
    }

    friend QuadRat operator+(QuadRat x, const QuadRat& y) { return x += y; }
    friend QuadRat operator-(QuadRat x, const QuadRat& y) { return x -= y; }
    friend QuadRat operator*(QuadRat x, const QuadRat& y) { return x *= y; }
    friend QuadRat operator/(QuadRat x, const QuadRat& y) { return x /= y; }

    friend bool operator==(const QuadRat& x, const QuadRat& y) {
        return x.p_ == y.p_ && x.q_ == y.q_;
    }
    friend std::strong_ordering operator<=>(const QuadRat& x, const QuadRat& y) {
        return (x - y).sign() <=> 0;
    }

private:
    Rational p_{0};
    Rational q_{0};
};

inline int sign(const QuadRat& x) { return x.sign(); }
inline QuadRat conjugate(const QuadRat& x) { return x.conjugate(); }

inline QuadRat pow(QuadRat base, unsigned exponent) {
    QuadRat result(1);
    while (exponent != 0) {
        if (exponent & 1u)
            result *= base;
        exponent >>= 1;
        if (exponent != 0)
            base *= base;
    }
    return result;
}

namespace detail {

// floor(c * sqrt2) for integer c. For c < 0 the value is a negative
// irrational, handled as -floor(-x) - 1.
inline Integer floor_sqrt2_multiple(const Integer& c) {
    if (c >= 0)
        return isqrt(2 * c * c);
    return -isqrt(2 * c * c) - 1;
}

} // namespace detail

// The unique integer n with n <= x < n + 1.
inline Integer floor(const QuadRat& x) {
    if (x.is_rational())
        return floor(x.p());
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    // x = (A + C sqrt2) / L over a common denominator L > 0. A + C sqrt2 is
    // irrational, so it lies strictly inside (A + s, A + s + 1) with
    // s = floor(C sqrt2), and dividing by L cannot cross an integer.
    const Integer& b = denominator(x.p());
    const Integer& d = denominator(x.q());
    Integer l = boost::multiprecision::lcm(b, d);
    Integer a = numerator(x.p()) * (l / b);
    Integer c = numerator(x.q()) * (l / d);
    return floor_div(a + detail::floor_sqrt2_multiple(c), l);
}

// Correctly rounded decimal with `digits` fractional digits.
inline std::string to_decimal(const QuadRat& x, unsigned digits) {
    if (digits == 0)
        throw Error(ErrorKind::domain_error, "to_decimal needs at least one digit");
    Integer scale = boost::multiprecision::pow(Integer(10), digits);
    bool negative = x.sign() < 0;
    QuadRat magnitude = negative ? -x : x;
    Integer scaled = floor(magnitude * QuadRat(Rational(scale)) + QuadRat(Rational(1, 2)));
    std::string body = scaled.str();
    if (body.size() <= digits)
        body.insert(0, digits + 1 - body.size(), '0');
    body.insert(body.size() - digits, ".");
    if (negative && scaled != 0)
        body.insert(0, "-");
    return body;
}

inline std::string to_string(const Rational& r) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (denominator(r) == 1)
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

// Emits the textual form accepted by parse_quadrat, e.g. "1/2-3*sqrt2".
inline std::string to_string(const QuadRat& x) {
    if (x.is_rational())
        return to_string(x.p());
    auto surd = [](const Rational& q) -> std::string {
        if (q == 1)
            return "sqrt2";
        return to_string(q) + "*sqrt2";
    };
    if (x.p() == 0)
        return x.q() == -1 ? std::string("-sqrt2") : surd(x.q());
    if (x.q() > 0)
        return to_string(x.p()) + "+" + surd(x.q());
    return to_string(x.p()) + "-" + surd(-x.q());
}

namespace detail {

class QuadRatParser {
public:
    QuadRatParser(std::string_view text, std::size_t offset) : text_(text), offset_(offset) {}

    QuadRat parse() {
        skip_ws();
        if (at_end())
            fail("empty literal");
        QuadRat value;
        bool first = true;
        while (!at_end()) {
            int s = 1;
            if (peek() == '+' || peek() == '-') {
                s = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            QuadRat term = parse_term();
            value += s > 0 ? term : -term;
            first = false;
            skip_ws();
        }
        return value;
    }

private:
    QuadRat parse_term() {
        if (consume_keyword())
            return QuadRat::sqrt2();
        Rational r = parse_rational();
        skip_ws();
        std::size_t mark = pos_;
        if (!at_end() && peek() == '*') {
            ++pos_;
            skip_ws();
            if (!consume_keyword())
                fail("expected 'sqrt2' after '*'");
            return QuadRat(Rational(0), r);
        }
        if (consume_keyword())
            return QuadRat(Rational(0), r);
        pos_ = mark;
        return QuadRat(r);
    }

    Rational parse_rational() {
        Integer num = parse_integer();
        skip_ws();
        if (!at_end() && peek() == '/') {
            ++pos_;
            skip_ws();
            std::size_t where = pos_;
            Integer den = parse_integer();
            if (den == 0) {
                pos_ = where;
                fail("zero denominator");
            }
            return Rational(num, den);
        }
        return Rational(num);
    }

    Integer parse_integer() {
        std::size_t start = pos_;
        while (!at_end() && peek() >= '0' && peek() <= '9')
            ++pos_;
        if (start == pos_)
            fail("expected a number or 'sqrt2'");
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    bool consume_keyword() {
        constexpr std::string_view kw = "sqrt2";
        if (text_.substr(pos_, kw.size()) == kw) {
            pos_ += kw.size();
            return true;
        }
        return false;
    }

    void skip_ws() {
        while (!at_end() && (peek() == ' ' || peek() == '\t'))
            ++pos_;
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(offset_ + pos_, what + " in '" + std::string(text_) + "'");
    }

    std::string_view text_;
    std::size_t offset_;
    std::size_t pos_ = 0;
};

} // namespace detail

// Parses "p/q+r/s*sqrt2"; either part may be omitted and signs are allowed
// ("3", "-sqrt2", "1/2-7/3*sqrt2"). `offset` shifts reported positions when
// the literal is embedded in a larger string.
inline QuadRat parse_quadrat(std::string_view text, std::size_t offset = 0) {
    return detail::QuadRatParser(text, offset).parse();
}

} // namespace numdim
