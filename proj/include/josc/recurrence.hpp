#pragma once

#include "josc/model.hpp"
#include "josc/numeric.hpp"
#include "josc/scaled_real.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace josc {

/// Solution of (tau - lambda)u = 0 on [n0-1, N], kept in scaled form so the
/// iteration survives arbitrary growth. Node indices cover [n0-1, N-1] (the
/// predicate at n needs u(n+1)).
struct SolutionTrace {
    Index n0 = 1;
    Index n_last = 0;
    double lambda = 0.0;
    std::vector<ScaledReal> values;  // empty when not kept
    std::vector<Index> nodes;
    IndexedSeries Q;  // empty when not accumulated; NaN past a vanishing u

    [[nodiscard]] Index first() const { return n0 - 1; }
    [[nodiscard]] Index last() const { return n_last; }
    [[nodiscard]] bool has_values() const { return !values.empty(); }
    [[nodiscard]] const ScaledReal& at(Index n) const;
};

struct SolveOptions {
    bool keep_values = true;
    bool accumulate_q = false;
};

/// Forward iteration u(n+1) = -((b(n) - lambda) u(n) + a(n-1) u(n-1)) / a(n)
/// from (u(n0-1), u(n0)) = init up to n = N. The working pair is renormalized
/// by exact powers of two whenever it leaves [2^-512, 2^512], so signs, node
/// structure and relative values are unaffected by the scaling.
SolutionTrace solve_recurrence(const CoefficientModel& model, double lambda,
                               std::pair<double, double> init, Index N,
                               SolveOptions options = {});

/// Node at n: u(n) = 0, or a(n) u(n) u(n+1) > 0. A zero counts once; the sign
/// test is skipped at n-1 and n. Requires [m, M] inside [n0-1, last-1].
Index count_nodes(const SolutionTrace& trace, Index m, Index M);

/// Q(n) = sum_{j=n0-1}^{n-1} -1/(a(j) u(j) u(j+1)), Q(n0-1) = 0, compensated.
IndexedSeries accumulate_q(const CoefficientModel& model,
                           const std::function<double(Index)>& u, Index N);

/// Scalar-generic core of accumulate_q with an arbitrary start index.
template <class Scalar, class AEval, class UEval>
BasicIndexedSeries<Scalar> accumulate_q_from(AEval&& a, UEval&& u, Index first, Index last) {
    if (last < first)
        throw std::invalid_argument("accumulate_q: empty index range");
    BasicIndexedSeries<Scalar> q;
    q.start = first;
    q.v.resize(static_cast<Eigen::Index>(last - first + 1));
    typename CompensatedSumFor<Scalar>::type acc;
    q.v[0] = Scalar{0};
    Scalar uj = u(first);
    for (Index j = first; j < last; ++j) {
        const Scalar uj1 = u(j + 1);
        if (uj == Scalar{0})
            throw std::domain_error("accumulate_q: u vanishes at n = " + std::to_string(j));
        if (uj1 == Scalar{0})
            throw std::domain_error("accumulate_q: u vanishes at n = " + std::to_string(j + 1));
        acc.add(Scalar{-1} / (a(j) * uj * uj1));
        q.v[static_cast<Eigen::Index>(j - first + 1)] = acc.value();
        uj = uj1;
    }
    return q;
}

/// uhat0(n) = u0(n) Q(n); the companion solution with unit Wronskian scale.
std::function<double(Index)> second_solution(std::function<double(Index)> u0,
                                             IndexedSeries Q);

enum class MinimalityVerdict { DivergenceLikely, GrowthStalled, Inconclusive };

struct MinimalityThresholds {
    double target = 10.0;        // Q(N) must exceed this for DivergenceLikely
    Index window = 0;            // 0: one tenth of the range
    double increment_floor = 1e-6;
};

/// Trailing-window divergence probe on a Q series.
MinimalityVerdict minimality_heuristic(const IndexedSeries& Q,
                                       MinimalityThresholds thresholds = {});

const char* to_string(MinimalityVerdict v);

}  // namespace josc
