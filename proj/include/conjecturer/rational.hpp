#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace conjecturer {

/// Exact rational number with 64-bit numerator and denominator.
///
/// Always stored reduced with a positive denominator; zero is 0/1. Arithmetic
/// is carried out in 128 bits and throws std::overflow_error if the reduced
/// result does not fit back into 64 bits.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t value) : num_(value) {} // NOLINT(google-explicit-constructor)
    Rational(std::int64_t num, std::int64_t den) { assign(num, den); }

    [[nodiscard]] constexpr std::int64_t num() const { return num_; }
    [[nodiscard]] constexpr std::int64_t den() const { return den_; }

    [[nodiscard]] constexpr bool is_zero() const { return num_ == 0; }
    [[nodiscard]] constexpr bool is_integer() const { return den_ == 1; }
    [[nodiscard]] constexpr int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    [[nodiscard]] Rational abs() const { return num_ < 0 ? -*this : *this; }

    [[nodiscard]] double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// "p/q", or "p" when the denominator is 1.
    [[nodiscard]] std::string str() const
    {
        if (den_ == 1)
            return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Accepts "p", "p/q" and a leading sign. Whitespace is not allowed.
    static Rational parse(std::string_view text)
    {
        auto slash = text.find('/');
        if (slash == std::string_view::npos)
            return Rational(parse_int(text));
        auto den = parse_int(text.substr(slash + 1));
        if (den == 0)
            throw std::invalid_argument("zero denominator in rational '" + std::string(text) + "'");
        return Rational(parse_int(text.substr(0, slash)), den);
    }

    friend Rational operator-(const Rational & a)
    {
        if (a.num_ == INT64_MIN)
            throw std::overflow_error("rational overflow");
        Rational r;
        r.num_ = -a.num_;
        r.den_ = a.den_;
        return r;
    }

    friend Rational operator+(const Rational & a, const Rational & b)
    {
        return from_wide(wide(a.num_) * b.den_ + wide(b.num_) * a.den_, wide(a.den_) * b.den_);
    }

    friend Rational operator-(const Rational & a, const Rational & b)
    {
        return from_wide(wide(a.num_) * b.den_ - wide(b.num_) * a.den_, wide(a.den_) * b.den_);
    }

    friend Rational operator*(const Rational & a, const Rational & b)
    {
        return from_wide(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
    }

    friend Rational operator/(const Rational & a, const Rational & b)
    {
        if (b.num_ == 0)
            throw std::domain_error("division by zero");
        return from_wide(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
    }

    Rational & operator+=(const Rational & o) { return *this = *this + o; }
    Rational & operator-=(const Rational & o) { return *this = *this - o; }
    Rational & operator*=(const Rational & o) { return *this = *this * o; }
    Rational & operator/=(const Rational & o) { return *this = *this / o; }

    friend constexpr bool operator==(const Rational & a, const Rational & b) = default;

    friend std::strong_ordering operator<=>(const Rational & a, const Rational & b)
    {
        return wide(a.num_) * b.den_ <=> wide(b.num_) * a.den_;
    }

    friend std::ostream & operator<<(std::ostream & os, const Rational & r) { return os << r.str(); }

private:
    using Wide = __int128;

    static constexpr Wide wide(std::int64_t v) { return static_cast<Wide>(v); }

    static Wide gcd(Wide a, Wide b)
    {
        if (a < 0)
            a = -a;
        if (b < 0)
            b = -b;
        while (b != 0) {
            Wide t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rational from_wide(Wide num, Wide den)
    {
        if (den == 0)
            throw std::domain_error("division by zero");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        Wide g = gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0)
            den = 1;
        if (num > INT64_MAX || num < -static_cast<Wide>(INT64_MAX) || den > INT64_MAX)
            throw std::overflow_error("rational overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(num);
        r.den_ = static_cast<std::int64_t>(den);
        return r;
    }

    void assign(std::int64_t num, std::int64_t den) { *this = from_wide(num, den); }

    static std::int64_t parse_int(std::string_view text)
    {
        if (text.empty())
            throw std::invalid_argument("empty number in rational");
        std::size_t i = 0;
        bool negative = false;
        if (text[0] == '-' || text[0] == '+') {
            negative = text[0] == '-';
            i = 1;
        }
        if (i == text.size())
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        Wide value = 0;
        for (; i < text.size(); ++i) {
            char c = text[i];
            if (c < '0' || c > '9')
                throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
            value = value * 10 + (c - '0');
            if (value > INT64_MAX)
                throw std::overflow_error("rational overflow");
        }
        return static_cast<std::int64_t>(negative ? -value : value);
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace conjecturer

template <>
struct std::hash<conjecturer::Rational> {
    std::size_t operator()(const conjecturer::Rational & r) const noexcept
    {
        return std::hash<std::int64_t>{}(r.num()) * 31u + std::hash<std::int64_t>{}(r.den());
    }
};
