#pragma once

#include <cstdint>
#include <compare>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace envlab {

// Exact fraction over 64-bit integers, kept in lowest terms with a positive
// denominator. Every operation is exact: intermediates are widened to 128
// bits and a reduced result that does not fit back into 64 bits throws
// std::overflow_error rather than silently wrapping. Analytic code in this
// project never rounds; doubles appear only in the Monte Carlo estimators.
class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    constexpr Rational(std::int64_t value) : num_(value), den_(1) {}
    Rational(std::int64_t numerator, std::int64_t denominator)
    {
        normalize_from(numerator, denominator);
    }

    std::int64_t numerator() const { return num_; }
    std::int64_t denominator() const { return den_; }

    int sign() const { return num_ > 0 ? 1 : num_ < 0 ? -1 : 0; }
    bool is_zero() const { return num_ == 0; }

    Rational operator-() const
    {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b)
    {
        return from_wide(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                         i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b)
    {
        return from_wide(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                         i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b)
    {
        return from_wide(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b)
    {
        if (b.num_ == 0)
            throw std::domain_error("rational division by zero");
        return from_wide(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        i128 lhs = i128(a.num_) * b.den_;
        i128 rhs = i128(b.num_) * a.den_;
        return lhs < rhs   ? std::strong_ordering::less
               : lhs > rhs ? std::strong_ordering::greater
                           : std::strong_ordering::equal;
    }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    double to_double() const
    {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    // Canonical "p/q" form, e.g. "25/1", "-1/4". Used verbatim in the CSV
    // and JSON surfaces so exact values survive serialization.
    std::string to_string() const
    {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Accepts "p", "p/q" and plain decimals ("12.5" -> 25/2).
    static Rational parse(std::string_view text)
    {
        if (text.empty())
            throw std::invalid_argument("empty rational literal");
        auto slash = text.find('/');
        if (slash != std::string_view::npos) {
            return Rational(parse_int(text.substr(0, slash)),
                            parse_int(text.substr(slash + 1)));
        }
        auto dot = text.find('.');
        if (dot == std::string_view::npos)
            return Rational(parse_int(text));
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        if (frac.empty() || frac.size() > 18)
            throw std::invalid_argument("bad decimal literal: " + std::string(text));
        bool negative = !whole.empty() && whole.front() == '-';
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i)
            scale *= 10;
        std::int64_t whole_part = whole.empty() || whole == "-" || whole == "+"
                                      ? 0
                                      : parse_int(whole);
        std::int64_t frac_part = parse_int(frac);
        if (frac_part < 0)
            throw std::invalid_argument("bad decimal literal: " + std::string(text));
        i128 num = i128(whole_part) * scale;
        num += negative ? -i128(frac_part) : i128(frac_part);
        return from_wide(num, scale);
    }

private:
    using i128 = __int128;

    std::int64_t num_;
    std::int64_t den_;

    static i128 gcd128(i128 a, i128 b)
    {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rational from_wide(i128 num, i128 den)
    {
        if (den == 0)
            throw std::domain_error("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        if (num != 0) {
            i128 g = gcd128(num, den);
            num /= g;
            den /= g;
        } else {
            den = 1;
        }
        constexpr i128 lo = std::numeric_limits<std::int64_t>::min();
        constexpr i128 hi = std::numeric_limits<std::int64_t>::max();
        if (num < lo || num > hi || den > hi)
            throw std::overflow_error("rational overflows 64-bit storage");
        Rational r;
        r.num_ = static_cast<std::int64_t>(num);
        r.den_ = static_cast<std::int64_t>(den);
        return r;
    }

    void normalize_from(std::int64_t num, std::int64_t den)
    {
        *this = from_wide(i128(num), i128(den));
    }

    static std::int64_t parse_int(std::string_view text)
    {
        if (text.empty())
            throw std::invalid_argument("empty integer literal");
        std::size_t i = 0;
        bool negative = false;
        if (text[0] == '+' || text[0] == '-') {
            negative = text[0] == '-';
            i = 1;
        }
        if (i == text.size())
            throw std::invalid_argument("bad integer literal: " + std::string(text));
        i128 value = 0;
        for (; i < text.size(); ++i) {
            char c = text[i];
            if (c < '0' || c > '9')
                throw std::invalid_argument("bad integer literal: " + std::string(text));
            value = value * 10 + (c - '0');
            if (value > i128(std::numeric_limits<std::int64_t>::max()))
                throw std::overflow_error("integer literal overflows 64 bits");
        }
        return static_cast<std::int64_t>(negative ? -value : value);
    }
};

inline std::string to_string(const Rational& r) { return r.to_string(); }

// Human-facing shorthand: integers drop the "/1". Machine surfaces (CSV,
// JSON values) always use the full p/q form.
inline std::string display(const Rational& r)
{
    if (r.denominator() == 1)
        return std::to_string(r.numerator());
    return r.to_string();
}

}  // namespace envlab
