#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace josc {

/// Sign/magnitude representation for recurrence iterates whose size leaves the
/// double range long before the iteration ends. Stored as a signed mantissa in
/// [1,2) plus a wide binary exponent, so scaling by powers of two is exact and
/// conversion back to double is exact whenever the exponent fits.
class ScaledReal {
public:
    ScaledReal() = default;  // zero

    static ScaledReal from_double(double v) {
        ScaledReal r;
        if (v == 0.0)
            return r;
        if (!std::isfinite(v))
            throw std::domain_error("ScaledReal: non-finite value");
        int e = 0;
        const double m = std::frexp(v, &e);  // |m| in [0.5, 1)
        r.frac_ = m * 2.0;
        r.exp_ = e - 1;
        return r;
    }

    static ScaledReal from_parts(double mantissa, std::int64_t exp2) {
        ScaledReal r = from_double(mantissa);
        if (!r.is_zero())
            r.exp_ += exp2;
        return r;
    }

    [[nodiscard]] bool is_zero() const { return frac_ == 0.0; }
    [[nodiscard]] int sign() const { return (frac_ > 0.0) - (frac_ < 0.0); }

    /// log2 of |value|; -inf for zero.
    [[nodiscard]] double log2_magnitude() const {
        if (is_zero())
            return -std::numeric_limits<double>::infinity();
        return static_cast<double>(exp_) + std::log2(std::abs(frac_));
    }

    /// Exact while |log2_magnitude| stays inside the double exponent range;
    /// saturates to 0 / +-inf beyond it.
    [[nodiscard]] double to_double() const {
        if (is_zero())
            return 0.0;
        if (exp_ > 1100)
            return frac_ > 0 ? std::numeric_limits<double>::infinity()
                             : -std::numeric_limits<double>::infinity();
        if (exp_ < -1200)
            return frac_ > 0 ? 0.0 : -0.0;
        return std::ldexp(frac_, static_cast<int>(exp_));
    }

    [[nodiscard]] ScaledReal times_pow2(std::int64_t k) const {
        ScaledReal r = *this;
        if (!r.is_zero())
            r.exp_ += k;
        return r;
    }

    friend ScaledReal operator*(const ScaledReal& x, const ScaledReal& y) {
        if (x.is_zero() || y.is_zero())
            return {};
        ScaledReal r = from_double(x.frac_ * y.frac_);  // product in [1,4)
        r.exp_ += x.exp_ + y.exp_;
        return r;
    }

    friend ScaledReal operator/(const ScaledReal& x, const ScaledReal& y) {
        if (y.is_zero())
            throw std::domain_error("ScaledReal: division by zero");
        if (x.is_zero())
            return {};
        ScaledReal r = from_double(x.frac_ / y.frac_);  // quotient in (0.5, 2)
        r.exp_ += x.exp_ - y.exp_;
        return r;
    }

    /// -1/0/+1 comparison of |x| vs |y|; zero is smaller than any nonzero.
    static int compare_magnitude(const ScaledReal& x, const ScaledReal& y) {
        if (x.is_zero() || y.is_zero())
            return (!x.is_zero()) - (!y.is_zero());
        const double ax = std::abs(x.frac_), ay = std::abs(y.frac_);
        if (x.exp_ != y.exp_) {
            // mantissas are in [1,2), so the exponent decides unless equal
            return x.exp_ > y.exp_ ? 1 : -1;
        }
        return (ax > ay) - (ax < ay);
    }

    [[nodiscard]] double mantissa() const { return frac_; }
    [[nodiscard]] std::int64_t exponent() const { return exp_; }

private:
    double frac_ = 0.0;      // 0 or signed, |frac_| in [1,2)
    std::int64_t exp_ = 0;
};

}  // namespace josc
