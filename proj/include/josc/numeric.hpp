#pragma once

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace josc {

using Index = std::int64_t;

/// Neumaier-compensated accumulator. The running error term makes long sums
/// of same-scale terms accurate to ~1 ulp of the result.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    [[nodiscard]] double value() const { return sum + comp; }
};

/// Complex variant: real and imaginary parts compensated independently.
struct ComplexCompensatedSum {
    CompensatedSum re, im;

    void add(std::complex<double> z) {
        re.add(z.real());
        im.add(z.imag());
    }
    [[nodiscard]] std::complex<double> value() const { return {re.value(), im.value()}; }
};

/// Extended-precision variant, for intermediates that must cancel exactly
/// after the final rounding to double.
struct LongCompensatedSum {
    long double sum = 0.0L;
    long double comp = 0.0L;

    void add(long double x) {
        const long double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    [[nodiscard]] long double value() const { return sum + comp; }
};

template <class Scalar>
struct CompensatedSumFor;
template <>
struct CompensatedSumFor<double> {
    using type = CompensatedSum;
};
template <>
struct CompensatedSumFor<std::complex<double>> {
    using type = ComplexCompensatedSum;
};
template <>
struct CompensatedSumFor<long double> {
    using type = LongCompensatedSum;
};

/// A dense series v(start), v(start+1), ..., v(start+size-1) with explicit
/// integer offset, so callers can keep the operator's own index labels.
template <class Scalar>
struct BasicIndexedSeries {
    Index start = 0;
    Eigen::Array<Scalar, Eigen::Dynamic, 1> v;

    [[nodiscard]] Index last() const { return start + static_cast<Index>(v.size()) - 1; }
    [[nodiscard]] Index size() const { return static_cast<Index>(v.size()); }
    [[nodiscard]] bool contains(Index n) const { return n >= start && n <= last(); }

    [[nodiscard]] Scalar at(Index n) const {
        if (!contains(n))
            throw std::out_of_range("series index " + std::to_string(n) + " outside [" +
                                    std::to_string(start) + ", " + std::to_string(last()) + "]");
        return v[static_cast<Eigen::Index>(n - start)];
    }
};

using IndexedSeries = BasicIndexedSeries<double>;
using ComplexIndexedSeries = BasicIndexedSeries<std::complex<double>>;

/// Shortest decimal string that round-trips to the same double
/// ("17", "0.1", "-2.5e-12", "inf", "nan").
std::string format_shortest(double x);

/// Distance to the next representable double at the magnitude of x.
double ulp_of(double x);

}  // namespace josc
