#pragma once

// Exact arithmetic over dyadic rationals m * 2^e. Every coefficient the
// block-shift operators produce lives in this ring (the weights, leak factors
// and wrap factors are all signed powers of two), so vector iteration and
// norm comparisons can be carried out with zero rounding.

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace udense {

class Dyadic {
  public:
    using Mantissa = boost::multiprecision::cpp_int;

    Dyadic() = default;
    Dyadic(long long value); // NOLINT: implicit by design, mirrors integer literals
    Dyadic(Mantissa mantissa, std::int64_t exponent);

    // 2^e
    static Dyadic pow2(std::int64_t e);
    // Exact conversion; every finite double is a dyadic rational.
    static Dyadic from_double(double x);

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }
    // Odd for nonzero values; see normalize().
    const Mantissa& mantissa() const { return mantissa_; }
    std::int64_t exponent() const { return exponent_; }
    // Bits in the mantissa (0 for zero); grows under cancellation-free adds
    // of values with spread exponents.
    std::uint64_t mantissa_bits() const;

    Dyadic operator-() const;
    Dyadic abs() const;
    Dyadic operator+(const Dyadic& rhs) const;
    Dyadic operator-(const Dyadic& rhs) const;
    Dyadic operator*(const Dyadic& rhs) const;
    Dyadic& operator+=(const Dyadic& rhs) { return *this = *this + rhs; }
    Dyadic& operator-=(const Dyadic& rhs) { return *this = *this - rhs; }
    Dyadic& operator*=(const Dyadic& rhs) { return *this = *this * rhs; }
    // Multiply by 2^e (exponent shift, exact and cheap).
    Dyadic mul_pow2(std::int64_t e) const;
    // Halve (exact).
    Dyadic half() const { return mul_pow2(-1); }

    bool operator==(const Dyadic& rhs) const;
    bool operator!=(const Dyadic& rhs) const { return !(*this == rhs); }
    bool operator<(const Dyadic& rhs) const;
    bool operator>(const Dyadic& rhs) const { return rhs < *this; }
    bool operator<=(const Dyadic& rhs) const { return !(rhs < *this); }
    bool operator>=(const Dyadic& rhs) const { return !(*this < rhs); }

    // Nearest double (may overflow to +-inf for huge exponents).
    double to_double() const;
    // log2 of |value| as a double; safe for astronomically spread exponents.
    // Returns -inf for zero.
    double log2_magnitude() const;
    // "m*2^e" with sign, e.g. "-3*2^-2"; "0" for zero.
    std::string to_string() const;

  private:
    void normalize();

    int sign_ = 0;          // -1, 0, +1
    Mantissa mantissa_ = 0; // positive and odd when sign_ != 0
    std::int64_t exponent_ = 0;
};

} // namespace udense
