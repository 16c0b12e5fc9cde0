#include "josc/iterated_log.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace josc {

double e_threshold(int k) {
    if (k < 1)
        throw std::invalid_argument("e_threshold: k must be >= 1, got " + std::to_string(k));
    double t = 0.0;  // e_1
    for (int i = 2; i <= k; ++i) {
        t = std::exp(t);
        if (std::isinf(t))
            break;  // stays +inf for all larger k
    }
    return t;
}

double iterated_log(int k, double x) {
    if (k < 0)
        throw std::invalid_argument("iterated_log: k must be >= 0, got " + std::to_string(k));
    if (!std::isfinite(x))
        throw std::domain_error("iterated_log: non-finite argument");
    if (k >= 1 && x <= e_threshold(k))
        throw std::domain_error("iterated_log: x = " + std::to_string(x) +
                                " is outside the domain of ln_" + std::to_string(k));
    double t = x;
    for (int i = 0; i < k; ++i)
        t = std::log(t);
    return t;
}

double iterated_log_derivative(int k, double x) {
    if (k < 1)
        throw std::invalid_argument("iterated_log_derivative: k must be >= 1");
    if (x <= e_threshold(k))
        throw std::domain_error("iterated_log_derivative: x outside the domain of ln_" +
                                std::to_string(k));
    double t = x;
    double prod = 1.0;
    for (int j = 0; j < k; ++j) {
        prod /= t;  // t holds ln_j(x)
        t = std::log(t);
    }
    return prod;
}

double iterated_log_second_derivative(int k, double x) {
    if (k < 1)
        throw std::invalid_argument("iterated_log_second_derivative: k must be >= 1");
    if (x <= e_threshold(k))
        throw std::domain_error("iterated_log_second_derivative: x outside the domain of ln_" +
                                std::to_string(k));
    double sum = 0.0;
    for (int j = 1; j <= k; ++j)
        sum += iterated_log_derivative(j, x);
    return -iterated_log_derivative(k, x) * sum;
}

}  // namespace josc
