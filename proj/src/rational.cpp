#include "mergelab/rational.hpp"

#include <cctype>
#include <numeric>

namespace mergelab {

namespace {

using u128 = unsigned __int128;

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw OverflowError("rational component exceeds 64 bits");
    }
    return r;
}

std::uint64_t parse_digits(std::string_view s, std::size_t* pos) {
    if (*pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[*pos]))) {
        throw std::invalid_argument("malformed rational: \"" + std::string(s) + "\"");
    }
    std::uint64_t v = 0;
    while (*pos < s.size() && std::isdigit(static_cast<unsigned char>(s[*pos]))) {
        std::uint64_t digit = static_cast<std::uint64_t>(s[*pos] - '0');
        if (v > (UINT64_MAX - digit) / 10) {
            throw OverflowError("rational component exceeds 64 bits");
        }
        v = v * 10 + digit;
        ++(*pos);
    }
    return v;
}

}  // namespace

Rational::Rational(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    std::uint64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

Rational Rational::parse(std::string_view text) {
    std::size_t pos = 0;
    std::uint64_t whole = parse_digits(text, &pos);
    if (pos == text.size()) return Rational(whole, 1);
    if (text[pos] == '/') {
        ++pos;
        std::uint64_t den = parse_digits(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("malformed rational: \"" + std::string(text) + "\"");
        return Rational(whole, den);
    }
    if (text[pos] == '.') {
        ++pos;
        std::size_t frac_start = pos;
        std::uint64_t frac = parse_digits(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("malformed rational: \"" + std::string(text) + "\"");
        std::uint64_t den = 1;
        for (std::size_t i = frac_start; i < pos; ++i) den = checked_mul(den, 10);
        return Rational(checked_mul(whole, den) + frac, den);
    }
    throw std::invalid_argument("malformed rational: \"" + std::string(text) + "\"");
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

bool operator<(const Rational& a, const Rational& b) {
    return u128(a.num_) * b.den_ < u128(b.num_) * a.den_;
}

bool le_scaled(std::uint64_t y, const Rational& a, std::uint64_t z) {
    return u128(y) * a.den() <= u128(a.num()) * z;
}

bool lt_scaled(std::uint64_t y, const Rational& a, std::uint64_t z) {
    return u128(y) * a.den() < u128(a.num()) * z;
}

std::uint64_t floor_div(std::uint64_t n, const Rational& a) {
    if (a.num() == 0) throw std::invalid_argument("division by zero rational");
    return static_cast<std::uint64_t>(u128(n) * a.den() / a.num());
}

std::uint64_t ceil_value(const Rational& a) {
    return static_cast<std::uint64_t>((u128(a.num()) + a.den() - 1) / a.den());
}

Rational add_int(const Rational& a, std::uint64_t k) {
    return Rational(a.num() + checked_mul(k, a.den()), a.den());
}

}  // namespace mergelab
