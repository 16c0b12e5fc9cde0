#include "josc/criterion.hpp"

#include "josc/log.hpp"
#include "josc/recurrence.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace josc {

Index CriterionSeries::window_points() const {
    return std::max<Index>(1, static_cast<Index>(std::floor(window_fraction *
                                                            static_cast<double>(M - m))));
}

double CriterionSeries::at(Index n) const {
    if (n < m || n > M)
        throw std::out_of_range("criterion index outside [m, M]");
    return K[static_cast<Eigen::Index>(n - m)];
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Nonoscillatory: return "Nonoscillatory";
        case Verdict::Oscillatory: return "Oscillatory";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

double harmonic_a(const CoefficientModel& model, Index n) {
    const double al = model.eval_a(n - 1);
    const double ar = model.eval_a(n + 1);
    const double denom = al + ar;
    if (denom == 0.0)
        throw std::domain_error("harmonic_a: a(n-1) + a(n+1) vanishes at n = " +
                                std::to_string(n));
    return 2.0 * al * ar / denom;
}

namespace {

/// u0 values over [n0-1, N], either declared or recovered from the
/// b0-recurrence; positivity and monotonicity are enforced either way.
std::vector<double> resolve_u0(const CoefficientModel& model, Index N) {
    const Index n0 = model.n0;
    std::vector<double> u(static_cast<std::size_t>(N - n0 + 2));
    if (model.has_u0()) {
        for (Index n = n0 - 1; n <= N; ++n)
            u[static_cast<std::size_t>(n - (n0 - 1))] = model.u0(n);
    } else {
        log::info("model declares no u0; recovering one from the b0-recurrence");
        CoefficientModel edge = model;
        edge.b = model.b0;
        edge.delta = Sequence();
        const SolutionTrace trace = solve_recurrence(edge, 0.0, {1.0, 1.0}, N);
        for (Index n = n0 - 1; n <= N; ++n) {
            const double v = trace.at(n).to_double();
            if (!std::isfinite(v))
                throw std::invalid_argument(
                    "recovered u0 leaves the plain floating range at n = " + std::to_string(n));
            u[static_cast<std::size_t>(n - (n0 - 1))] = v;
        }
    }
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!(u[i] > 0.0))
            throw std::invalid_argument("u0 is not positive at n = " +
                                        std::to_string(n0 - 1 + static_cast<Index>(i)) +
                                        "; not a usable reference solution");
        if (i > 0 && u[i] < u[i - 1])
            throw std::invalid_argument("u0 decreases at n = " +
                                        std::to_string(n0 - 1 + static_cast<Index>(i)) +
                                        "; not a usable reference solution");
    }
    return u;
}

}  // namespace

CriterionSeries criterion_series(const CoefficientModel& model, Index N,
                                 double window_fraction) {
    const Index n0 = model.n0;
    if (N < n0 + 2)
        throw std::invalid_argument("criterion_series: N must be >= n0 + 2");
    if (!(window_fraction > 0.0) || window_fraction > 1.0)
        throw std::invalid_argument("criterion_series: window_fraction must be in (0, 1]");

    const std::vector<double> u = resolve_u0(model, N);
    const auto u_at = [&u, n0](Index n) { return u[static_cast<std::size_t>(n - (n0 - 1))]; };

    // Q and K are evaluated in extended precision with a single rounding to
    // double per entry. The u0^4 Q^2 cancellation is then exact to the last
    // ulp under rescalings of u0; plain double arithmetic loses ~2 bits.
    const auto Ql = accumulate_q_from<long double>(
        [&model](Index j) -> long double { return model.eval_a(j); },
        [&u_at](Index n) -> long double { return u_at(n); }, n0 - 1, N);
    if (!model.u0_minimal_declared) {
        IndexedSeries Q;
        Q.start = Ql.start;
        Q.v = Ql.v.cast<double>();
        const MinimalityVerdict mv = minimality_heuristic(Q);
        if (mv != MinimalityVerdict::DivergenceLikely)
            throw std::invalid_argument(std::string("u0 minimality not established (heuristic: ") +
                                        to_string(mv) + "); refusing to classify");
    }

    CriterionSeries s;
    s.m = n0 + 1;
    s.M = N - 1;
    s.window_fraction = window_fraction;
    s.K.resize(static_cast<Eigen::Index>(s.M - s.m + 1));
    for (Index n = s.m; n <= s.M; ++n) {
        const long double al = model.eval_a(n - 1);
        const long double ar = model.eval_a(n + 1);
        if (al + ar == 0.0L)
            throw std::domain_error("harmonic_a: a(n-1) + a(n+1) vanishes at n = " +
                                    std::to_string(n));
        const long double A = 2.0L * al * ar / (al + ar);
        const long double un = u_at(n);
        const long double u2 = un * un;
        const long double u4 = u2 * u2;
        const long double q = Ql.at(n);
        const long double d = model.eval_delta(n);
        s.K[static_cast<Eigen::Index>(n - s.m)] = static_cast<double>(-(A * u4) * (q * q) * d);
    }
    const Index w = s.window_points();
    s.tail_inf = s.K.tail(static_cast<Eigen::Index>(w)).minCoeff();
    s.tail_sup = s.K.tail(static_cast<Eigen::Index>(w)).maxCoeff();
    return s;
}

Classification classify(const CriterionSeries& series, double margin) {
    if (!(margin >= 0.0))
        throw std::invalid_argument("classify: margin must be >= 0");
    if (series.window_points() < 100)
        throw std::invalid_argument("classify: trailing window holds fewer than 100 points; "
                                    "increase N");
    Classification c;
    c.margin = margin;
    c.tail_inf = series.tail_inf;
    c.tail_sup = series.tail_sup;
    c.N = series.M + 1;
    if (series.tail_inf > kOscillationThreshold + margin) {
        c.verdict = Verdict::Nonoscillatory;
    } else if (series.tail_sup < kOscillationThreshold - margin) {
        c.verdict = Verdict::Oscillatory;
    } else {
        c.verdict = Verdict::Inconclusive;
        c.note = "tail straddles -1/4 at this margin; a deeper iterated-log comparison "
                 "model may resolve it";
        log::info(c.note);
    }
    return c;
}

Classification classify_model(const CoefficientModel& model, Index N, double margin,
                              double window_fraction) {
    return classify(criterion_series(model, N, window_fraction), margin);
}

Classification custom_criterion(Sequence a, Sequence u0, Sequence b, Index N, Index n0,
                                double margin, double window_fraction) {
    CoefficientModel m = reference_model(std::move(a), std::move(u0), std::move(b), n0);
    return classify(criterion_series(m, N, window_fraction), margin);
}

}  // namespace josc
