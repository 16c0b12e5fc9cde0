#pragma once

#include "josc/numeric.hpp"

namespace josc {

/// e_k: domain threshold of the k-fold iterated logarithm.
/// e_1 = 0, e_{k+1} = e^{e_k}; overflows to +inf for k >= 6.
double e_threshold(int k);

/// ln_k(x): ln_0(x) = x, ln_k(x) = ln(ln_{k-1}(x)). Requires x > e_k.
double iterated_log(int k, double x);

/// d/dx ln_k(x) = prod_{j=0}^{k-1} 1/ln_j(x).
double iterated_log_derivative(int k, double x);

/// d^2/dx^2 ln_k(x) = -ln_k'(x) * sum_{j=1}^{k} ln_j'(x).
double iterated_log_second_derivative(int k, double x);

}  // namespace josc
