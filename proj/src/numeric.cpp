#include "josc/numeric.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace josc {

std::string format_shortest(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc{})
        throw std::runtime_error("format_shortest: conversion failed");
    return std::string(buf, ptr);
}

double ulp_of(double x) {
    if (std::isnan(x))
        return std::numeric_limits<double>::quiet_NaN();
    if (std::isinf(x))
        return std::numeric_limits<double>::infinity();
    const double ax = std::abs(x);
    const double up = std::nextafter(ax, std::numeric_limits<double>::infinity());
    return up - ax;
}

}  // namespace josc
