#pragma once

#include <conjecturer/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace conjecturer {

/// Largest integer accepted by the integer domain.
inline constexpr std::int64_t max_integer_value = 10'000'000;

struct IntegerRecord {
    std::int64_t value = 0;

    std::int64_t sum_of_digits = 0;
    std::int64_t num_divisors = 0;
    Rational sod_over_divisors;
    std::int64_t sod_squared = 0;

    bool prime = false;
    bool even = false;
    bool palindrome = false;
    bool digit_power_sum = false;
    bool goldbach = false;
    bool fibonacci = false;
    bool sod_is_fibonacci = false;
    bool factorial_digit_sum_prime = false;
    bool sum_of_digits_prime = false;
    bool harshad = false;
    bool circular_prime = false;
    bool all_prime_digits = false;

    friend bool operator==(const IntegerRecord &, const IntegerRecord &) = default;
};

inline const std::vector<std::string> & integer_numeric_columns()
{
    static const std::vector<std::string> columns{
        "n", "sum_of_digits", "num_divisors", "sod_over_divisors", "sod_squared"};
    return columns;
}

inline const std::vector<std::string> & integer_boolean_columns()
{
    static const std::vector<std::string> columns{"prime", "even", "palindrome", "digit_power_sum", "goldbach",
        "fibonacci", "sod_is_fibonacci", "factorial_digit_sum_prime", "sum_of_digits_prime", "harshad",
        "circular_prime", "all_prime_digits"};
    return columns;
}

namespace number_theory {

    inline bool is_prime(std::int64_t v)
    {
        if (v < 2)
            return false;
        if (v % 2 == 0)
            return v == 2;
        for (std::int64_t d = 3; d * d <= v; d += 2)
            if (v % d == 0)
                return false;
        return true;
    }

    inline std::int64_t count_divisors(std::int64_t v)
    {
        std::int64_t count = 0;
        for (std::int64_t d = 1; d * d <= v; ++d)
            if (v % d == 0)
                count += (d * d == v) ? 1 : 2;
        return count;
    }

    inline std::vector<int> decimal_digits(std::int64_t v)
    {
        std::string s = std::to_string(v);
        std::vector<int> digits;
        for (char c : s)
            digits.push_back(c - '0');
        return digits;
    }

    inline bool is_fibonacci(std::int64_t v)
    {
        std::int64_t a = 1, b = 2;
        while (a < v) {
            std::int64_t next = a + b;
            a = b;
            b = next;
        }
        return a == v;
    }

    /// Sum of two primes, with no parity restriction (5 = 2 + 3 counts).
    inline bool is_goldbach(std::int64_t v)
    {
        // An odd sum of two primes must use 2.
        if (v % 2 == 1)
            return is_prime(v - 2);
        for (std::int64_t p = 2; p <= v / 2; ++p)
            if (is_prime(p) && is_prime(v - p))
                return true;
        return false;
    }

    /// Every decimal rotation is prime; a rotation with leading zeros takes
    /// the numeric value of the rotated digit string.
    inline bool is_circular_prime(std::int64_t v)
    {
        std::string s = std::to_string(v);
        for (std::size_t shift = 0; shift < s.size(); ++shift) {
            std::string rotated = s.substr(shift) + s.substr(0, shift);
            if (! is_prime(std::stoll(rotated)))
                return false;
        }
        return true;
    }

} // namespace number_theory

inline IntegerRecord compute_integer_record(std::int64_t v)
{
    using namespace number_theory;
    if (v < 1)
        throw std::invalid_argument("positive integers only");
    if (v > max_integer_value)
        throw std::invalid_argument("integer " + std::to_string(v) + " exceeds the supported range");

    auto digits = decimal_digits(v);
    IntegerRecord r;
    r.value = v;
    for (int d : digits)
        r.sum_of_digits += d;
    r.num_divisors = count_divisors(v);
    r.sod_over_divisors = Rational(r.sum_of_digits, r.num_divisors);
    r.sod_squared = r.sum_of_digits * r.sum_of_digits;

    r.prime = r.num_divisors == 2;
    r.even = v % 2 == 0;
    std::string s = std::to_string(v);
    r.palindrome = std::equal(s.begin(), s.end(), s.rbegin());

    std::int64_t power_sum = 0;
    for (int d : digits) {
        std::int64_t term = 1;
        for (std::size_t i = 0; i < digits.size(); ++i)
            term *= d;
        power_sum += term;
    }
    r.digit_power_sum = power_sum == v;

    r.goldbach = is_goldbach(v);
    r.fibonacci = is_fibonacci(v);
    r.sod_is_fibonacci = is_fibonacci(r.sum_of_digits);

    static constexpr std::int64_t factorial[10] = {1, 1, 2, 6, 24, 120, 720, 5040, 40320, 362880};
    std::int64_t factorial_sum = 0;
    for (int d : digits)
        factorial_sum += factorial[d];
    r.factorial_digit_sum_prime = is_prime(factorial_sum);

    r.sum_of_digits_prime = is_prime(r.sum_of_digits);
    r.harshad = v % r.sum_of_digits == 0;
    r.circular_prime = is_circular_prime(v);
    r.all_prime_digits
        = std::all_of(digits.begin(), digits.end(), [](int d) { return d == 2 || d == 3 || d == 5 || d == 7; });
    return r;
}

inline std::vector<IntegerRecord> build_integer_dataset(std::int64_t lo, std::int64_t hi)
{
    if (lo < 1)
        throw std::invalid_argument("positive integers only");
    if (lo > hi)
        throw std::invalid_argument("empty integer range " + std::to_string(lo) + ".." + std::to_string(hi));
    std::vector<IntegerRecord> records;
    records.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t v = lo; v <= hi; ++v)
        records.push_back(compute_integer_record(v));
    return records;
}

} // namespace conjecturer
