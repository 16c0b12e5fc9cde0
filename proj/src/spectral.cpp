#include "josc/spectral.hpp"

#include "josc/recurrence.hpp"

#include <cfloat>
#include <cmath>
#include <stdexcept>

namespace josc {

TruncatedOperator truncate(const CoefficientModel& model, Index N) {
    if (N < 1) throw std::invalid_argument("truncate: N must be >= 1");
    TruncatedOperator op;
    op.n0 = model.n0;
    op.diag.resize(N);
    op.offdiag.resize(N > 1 ? N - 1 : 0);
    for (Index i = 0; i < N; ++i) {
        op.diag[i] = model.b(model.n0 + i);
        if (i + 1 < N) op.offdiag[i] = model.eval_a(model.n0 + i);
    }
    return op;
}

CountDetail count_below_detail(const TruncatedOperator& op, double lambda) {
    CountDetail out;
    const Index N = op.size();
    double d = 0.0;
    for (Index i = 0; i < N; ++i) {
        double di = op.diag[i] - lambda;
        if (i > 0) {
            const double off = op.offdiag[i - 1];
            // If d overflowed to +-inf the correction is a clean zero; IEEE
            // division keeps the recursion meaningful, no special case needed.
            di -= off * off / d;
        }
        if (std::isnan(di)) throw std::runtime_error("count_below: pivot became NaN");
        if (std::fabs(di) < DBL_MIN) {
            // Exactly singular leading block: lambda is an eigenvalue of it.
            // Push the pivot to the negative side so the count is the number
            // of eigenvalues <= lambda of that block, and flag the tie.
            di = -DBL_MIN;
            out.pivot_perturbed = true;
        }
        if (di < 0.0) ++out.count;
        d = di;
    }
    return out;
}

Index count_below(const TruncatedOperator& op, double lambda) {
    return count_below_detail(op, lambda).count;
}

std::string SpectralCount::verdict_hint() const {
    if (counts.size() >= 2 && counts[counts.size() - 1] == counts[counts.size() - 2])
        return "saturating";
    return "growing";
}

SpectralCount growth_profile(const CoefficientModel& model, double lambda,
                             std::vector<Index> sizes) {
    if (sizes.empty()) throw std::invalid_argument("growth_profile: no sizes given");
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i)
        if (sizes[i + 1] <= sizes[i])
            throw std::invalid_argument("growth_profile: sizes must be strictly increasing");

    SpectralCount out;
    out.lambda = lambda;
    out.sizes = std::move(sizes);
    out.counts.reserve(out.sizes.size());
    for (Index N : out.sizes)
        out.counts.push_back(count_below(truncate(model, N), lambda));
    out.increments.reserve(out.counts.size() > 0 ? out.counts.size() - 1 : 0);
    for (std::size_t i = 0; i + 1 < out.counts.size(); ++i)
        out.increments.push_back(out.counts[i + 1] - out.counts[i]);
    return out;
}

NodeCountCheck nodes_equal_counts(const CoefficientModel& model, double lambda, Index N) {
    if (N < 1) throw std::invalid_argument("nodes_equal_counts: N must be >= 1");
    SolveOptions opts;
    opts.keep_values = true;
    opts.accumulate_q = false;
    const auto trace = solve_recurrence(model, lambda, {0.0, 1.0}, model.n0 + N, opts);

    NodeCountCheck out;
    out.nodes = count_nodes(trace, model.n0, model.n0 + N - 1);
    out.count = count_below(truncate(model, N), lambda);
    out.equal = (out.nodes == out.count);
    return out;
}

}  // namespace josc
