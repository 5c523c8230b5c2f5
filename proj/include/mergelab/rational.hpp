#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "mergelab/errors.hpp"

namespace mergelab {

/// Exact nonnegative rational p/q, kept reduced with q >= 1.
///
/// Merge policies compare run lengths against alpha-scaled lengths; those
/// comparisons cross-multiply in 128-bit arithmetic so they are exact for
/// any 64-bit operands. Floating point never participates in a decision.
class Rational {
public:
    constexpr Rational() = default;  // 0/1
    Rational(std::uint64_t num, std::uint64_t den);

    /// Accepts "2", "1.62" (decimal, any number of digits) and "17/10".
    static Rational parse(std::string_view text);

    std::uint64_t num() const { return num_; }
    std::uint64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// Reduced "p/q", or just "p" when the denominator is 1.
    std::string str() const;

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend bool operator<(const Rational& a, const Rational& b);
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

private:
    std::uint64_t num_ = 0;
    std::uint64_t den_ = 1;
};

/// y <= a*z, exactly.
bool le_scaled(std::uint64_t y, const Rational& a, std::uint64_t z);
/// y < a*z, exactly.
bool lt_scaled(std::uint64_t y, const Rational& a, std::uint64_t z);

/// floor(n / a) for a > 0, exactly.
std::uint64_t floor_div(std::uint64_t n, const Rational& a);

/// Smallest integer >= a.
std::uint64_t ceil_value(const Rational& a);

/// a + k as an exact rational.
Rational add_int(const Rational& a, std::uint64_t k);

inline Rational rat(std::uint64_t num, std::uint64_t den = 1) { return Rational(num, den); }

}  // namespace mergelab
