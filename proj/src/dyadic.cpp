#include "udense/dyadic.hpp"

#include "udense/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace udense {

namespace mp = boost::multiprecision;

Dyadic::Dyadic(long long value) {
    if (value == 0) return;
    sign_ = value < 0 ? -1 : 1;
    mantissa_ = value < 0 ? Mantissa(-(value + 1)) + 1 : Mantissa(value);
    exponent_ = 0;
    normalize();
}

Dyadic::Dyadic(Mantissa mantissa, std::int64_t exponent) {
    if (mantissa == 0) return;
    if (mantissa < 0) {
        sign_ = -1;
        mantissa_ = -mantissa;
    } else {
        sign_ = 1;
        mantissa_ = mantissa;
    }
    exponent_ = exponent;
    normalize();
}

void Dyadic::normalize() {
    if (sign_ == 0) {
        mantissa_ = 0;
        exponent_ = 0;
        return;
    }
    std::uint64_t shift = mp::lsb(mantissa_);
    if (shift > 0) {
        mantissa_ >>= shift;
        exponent_ += static_cast<std::int64_t>(shift);
    }
}

Dyadic Dyadic::pow2(std::int64_t e) {
    Dyadic d;
    d.sign_ = 1;
    d.mantissa_ = 1;
    d.exponent_ = e;
    return d;
}

Dyadic Dyadic::from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("Dyadic::from_double: non-finite input");
    if (x == 0.0) return Dyadic();
    int exp2 = 0;
    double frac = std::frexp(x, &exp2); // x = frac * 2^exp2, |frac| in [0.5, 1)
    // 53 bits recover the full significand of an IEEE double exactly.
    double scaled = std::ldexp(frac, 53);
    auto as_ll = static_cast<long long>(scaled);
    Dyadic d(as_ll);
    return d.mul_pow2(exp2 - 53);
}

std::uint64_t Dyadic::mantissa_bits() const {
    if (sign_ == 0) return 0;
    return mp::msb(mantissa_) + 1;
}

Dyadic Dyadic::operator-() const {
    Dyadic d = *this;
    d.sign_ = -d.sign_;
    return d;
}

Dyadic Dyadic::abs() const {
    Dyadic d = *this;
    if (d.sign_ < 0) d.sign_ = 1;
    return d;
}

namespace {
// Aligning two dyadics whose exponents differ by d bits costs a d-bit
// mantissa. Cap the spread so a pathological pair cannot allocate gigabytes.
constexpr std::int64_t kMaxAlignBits = std::int64_t(1) << 26;
} // namespace

Dyadic Dyadic::operator+(const Dyadic& rhs) const {
    if (sign_ == 0) return rhs;
    if (rhs.sign_ == 0) return *this;
    // Align to the smaller exponent, then add signed mantissas.
    std::int64_t e = std::min(exponent_, rhs.exponent_);
    if (exponent_ - e > kMaxAlignBits || rhs.exponent_ - e > kMaxAlignBits)
        throw resource_error("Dyadic::operator+: exponent spread exceeds alignment cap");
    Mantissa a = mantissa_ << static_cast<std::uint64_t>(exponent_ - e);
    Mantissa b = rhs.mantissa_ << static_cast<std::uint64_t>(rhs.exponent_ - e);
    if (sign_ < 0) a = -a;
    if (rhs.sign_ < 0) b = -b;
    return Dyadic(a + b, e);
}

Dyadic Dyadic::operator-(const Dyadic& rhs) const { return *this + (-rhs); }

Dyadic Dyadic::operator*(const Dyadic& rhs) const {
    if (sign_ == 0 || rhs.sign_ == 0) return Dyadic();
    Dyadic d;
    d.sign_ = sign_ * rhs.sign_;
    d.mantissa_ = mantissa_ * rhs.mantissa_;
    d.exponent_ = exponent_ + rhs.exponent_;
    // Product of odd mantissas is odd; no renormalization needed.
    return d;
}

Dyadic Dyadic::mul_pow2(std::int64_t e) const {
    if (sign_ == 0) return *this;
    Dyadic d = *this;
    d.exponent_ += e;
    return d;
}

bool Dyadic::operator==(const Dyadic& rhs) const {
    return sign_ == rhs.sign_ && exponent_ == rhs.exponent_ && mantissa_ == rhs.mantissa_;
}

bool Dyadic::operator<(const Dyadic& rhs) const {
    if (sign_ != rhs.sign_) return sign_ < rhs.sign_;
    if (sign_ == 0) return false;
    // Same nonzero sign: compare magnitudes via (bit length, then aligned mantissas).
    bool mag_less;
    auto lbits = static_cast<std::int64_t>(mantissa_bits()) + exponent_;
    auto rbits = static_cast<std::int64_t>(rhs.mantissa_bits()) + rhs.exponent_;
    if (lbits != rbits) {
        mag_less = lbits < rbits;
    } else {
        // Equal bit positions: the exponent gap is at most the larger
        // mantissa's width, so this alignment stays small.
        std::int64_t e = std::min(exponent_, rhs.exponent_);
        Mantissa a = mantissa_ << static_cast<std::uint64_t>(exponent_ - e);
        Mantissa b = rhs.mantissa_ << static_cast<std::uint64_t>(rhs.exponent_ - e);
        mag_less = a < b;
    }
    return sign_ > 0 ? mag_less : !mag_less && !(*this == rhs);
}

double Dyadic::to_double() const {
    if (sign_ == 0) return 0.0;
    double m = static_cast<double>(mantissa_);
    // ldexp with a clamped exponent: out-of-range values saturate to 0 / inf,
    // which is the right reading for magnitude queries on extreme inputs.
    std::int64_t e = exponent_;
    if (e > std::numeric_limits<int>::max()) e = std::numeric_limits<int>::max();
    if (e < std::numeric_limits<int>::min()) e = std::numeric_limits<int>::min();
    return sign_ * std::ldexp(m, static_cast<int>(e));
}

double Dyadic::log2_magnitude() const {
    if (sign_ == 0) return -std::numeric_limits<double>::infinity();
    // msb + fractional correction from the top bits keeps this accurate even
    // when the mantissa itself cannot be converted to double.
    std::uint64_t bits = mantissa_bits();
    Mantissa top = mantissa_;
    if (bits > 64) top >>= (bits - 64);
    double frac = std::log2(static_cast<double>(top));
    double dropped = bits > 64 ? static_cast<double>(bits - 64) : 0.0;
    return frac + dropped + static_cast<double>(exponent_);
}

std::string Dyadic::to_string() const {
    if (sign_ == 0) return "0";
    std::string s = sign_ < 0 ? "-" : "";
    s += mantissa_.str();
    s += "*2^";
    s += std::to_string(exponent_);
    return s;
}

} // namespace udense
