#include "josc/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace josc {

namespace {

constexpr double kRescaleHigh = 0x1p512;
constexpr double kRescaleLow = 0x1p-512;

inline int sgn(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

const ScaledReal& SolutionTrace::at(Index n) const {
    if (values.empty())
        throw std::logic_error("trace values were not kept");
    if (n < first() || n > last())
        throw std::out_of_range("trace index " + std::to_string(n) + " outside [" +
                                std::to_string(first()) + ", " + std::to_string(last()) + "]");
    return values[static_cast<std::size_t>(n - first())];
}

SolutionTrace solve_recurrence(const CoefficientModel& model, double lambda,
                               std::pair<double, double> init, Index N,
                               SolveOptions options) {
    const Index n0 = model.n0;
    if (N < n0)
        throw std::invalid_argument("solve_recurrence: N must be >= n0");
    if (init.first == 0.0 && init.second == 0.0)
        throw std::invalid_argument("solve_recurrence: initial data must not both vanish");
    if (!std::isfinite(init.first) || !std::isfinite(init.second))
        throw std::invalid_argument("solve_recurrence: non-finite initial data");

    SolutionTrace trace;
    trace.n0 = n0;
    trace.n_last = N;
    trace.lambda = lambda;
    if (options.keep_values)
        trace.values.reserve(static_cast<std::size_t>(N - n0 + 2));

    double up = init.first;  // u(n-1), scaled
    double uc = init.second; // u(n), scaled
    std::int64_t e = 0;      // shared exponent: true value = stored * 2^e

    CompensatedSum qsum;
    bool q_valid = true;
    if (options.accumulate_q) {
        trace.Q.start = n0 - 1;
        trace.Q.v.resize(static_cast<Eigen::Index>(N - n0 + 2));
        trace.Q.v[0] = 0.0;
    }

    if (options.keep_values)
        trace.values.push_back(ScaledReal::from_parts(up, e));

    double a_prev = model.eval_a(n0 - 1);
    for (Index n = n0; n <= N; ++n) {
        // node test at n-1 against u(n); both already known
        {
            const int sp = sgn(up), sc = sgn(uc);
            if (sp == 0 && sc == 0)
                throw std::logic_error("solution vanishes at two consecutive indices near n = " +
                                       std::to_string(n - 1));
            if (sp == 0 || (sgn(a_prev) * sp * sc > 0))
                trace.nodes.push_back(n - 1);
        }
        if (options.accumulate_q) {
            if (up == 0.0 || uc == 0.0)
                q_valid = false;
            if (q_valid) {
                // true term: -1/(a u(n-1) u(n) 2^{2e}); stage through frexp so
                // the stored-value product cannot overflow
                int eu = 0, ec = 0;
                const double fu = std::frexp(up, &eu);
                const double fc = std::frexp(uc, &ec);
                const double mant = -1.0 / (a_prev * fu * fc);
                const std::int64_t shift = -(static_cast<std::int64_t>(eu) + ec + 2 * e);
                const double lg = std::log2(std::abs(mant)) + static_cast<double>(shift);
                if (std::abs(lg) < 970.0) {
                    qsum.add(std::ldexp(mant, static_cast<int>(shift)));
                } else if (lg > 0.0) {
                    q_valid = false;  // term overflows: u collapsed toward zero
                }  // else: term underflows to zero, nothing to add
            }
            trace.Q.v[static_cast<Eigen::Index>(n - (n0 - 1))] =
                q_valid ? qsum.value() : std::numeric_limits<double>::quiet_NaN();
        }

        if (options.keep_values)
            trace.values.push_back(ScaledReal::from_parts(uc, e));
        if (n == N)
            break;

        const double an = model.eval_a(n);
        const double bn = model.b(n);
        if (!std::isfinite(bn))
            throw std::domain_error("b(n) non-finite at n = " + std::to_string(n));
        const double next = -((bn - lambda) * uc + a_prev * up) / an;
        if (!std::isfinite(next))
            throw std::domain_error("recurrence overflowed at n = " + std::to_string(n + 1) +
                                    " despite rescaling; coefficients are out of range");
        up = uc;
        uc = next;
        a_prev = an;

        const double mag = std::max(std::abs(up), std::abs(uc));
        if (mag > kRescaleHigh) {
            up = std::ldexp(up, -512);
            uc = std::ldexp(uc, -512);
            e += 512;
        } else if (mag < kRescaleLow && mag > 0.0) {
            up = std::ldexp(up, 512);
            uc = std::ldexp(uc, 512);
            e -= 512;
        }
    }

    // final node test at N uses u(N+1), which we do not have; the node list
    // therefore ends at N-1 by construction
    return trace;
}

Index count_nodes(const SolutionTrace& trace, Index m, Index M) {
    if (m > M)
        throw std::invalid_argument("count_nodes: empty range");
    if (m < trace.first() || M > trace.last() - 1)
        throw std::invalid_argument("count_nodes: range [" + std::to_string(m) + ", " +
                                    std::to_string(M) + "] leaves the node domain [" +
                                    std::to_string(trace.first()) + ", " +
                                    std::to_string(trace.last() - 1) + "]");
    const auto lo = std::lower_bound(trace.nodes.begin(), trace.nodes.end(), m);
    const auto hi = std::upper_bound(trace.nodes.begin(), trace.nodes.end(), M);
    return static_cast<Index>(hi - lo);
}

IndexedSeries accumulate_q(const CoefficientModel& model,
                           const std::function<double(Index)>& u, Index N) {
    if (N < model.n0)
        throw std::invalid_argument("accumulate_q: N must be >= n0");
    const auto& m = model;
    return accumulate_q_from<double>([&m](Index j) { return m.eval_a(j); }, u, m.n0 - 1, N);
}

std::function<double(Index)> second_solution(std::function<double(Index)> u0,
                                             IndexedSeries Q) {
    return [u0 = std::move(u0), Q = std::move(Q)](Index n) { return u0(n) * Q.at(n); };
}

MinimalityVerdict minimality_heuristic(const IndexedSeries& Q, MinimalityThresholds th) {
    if (Q.size() < 2)
        throw std::invalid_argument("minimality_heuristic: series too short");
    const Index range = Q.last() - Q.start;
    Index window = th.window > 0 ? th.window : std::max<Index>(range / 10, 1);
    window = std::min(window, range);
    const double inc = Q.at(Q.last()) - Q.at(Q.last() - window);
    if (inc < th.increment_floor)
        return MinimalityVerdict::GrowthStalled;
    if (inc > th.increment_floor && Q.at(Q.last()) > th.target)
        return MinimalityVerdict::DivergenceLikely;
    return MinimalityVerdict::Inconclusive;
}

const char* to_string(MinimalityVerdict v) {
    switch (v) {
        case MinimalityVerdict::DivergenceLikely: return "DivergenceLikely";
        case MinimalityVerdict::GrowthStalled: return "GrowthStalled";
        case MinimalityVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

}  // namespace josc
