#pragma once

#include "josc/model.hpp"
#include "josc/numeric.hpp"

#include <string>

namespace josc {

/// Threshold separating finitely from infinitely many eigenvalues below the
/// essential-spectrum edge.
inline constexpr double kOscillationThreshold = -0.25;

/// K(n) = -A(n) u0(n)^4 Q0(n)^2 (b(n) - b0(n)) for n in [n0+1, N-1], with
/// A the harmonic mean of the neighbouring couplings.
struct CriterionSeries {
    Index m = 0;
    Index M = 0;
    double window_fraction = 0.5;
    Eigen::ArrayXd K;
    double tail_inf = 0.0;
    double tail_sup = 0.0;

    [[nodiscard]] Index window_points() const;
    [[nodiscard]] double at(Index n) const;
};

enum class Verdict { Nonoscillatory, Oscillatory, Inconclusive };

const char* to_string(Verdict v);

struct Classification {
    Verdict verdict = Verdict::Inconclusive;
    double margin = 0.0;
    double tail_inf = 0.0;
    double tail_sup = 0.0;
    Index N = 0;
    std::string note;  // set when the verdict carries advice (borderline data)
};

/// A(n) = 2 a(n-1) a(n+1) / (a(n-1) + a(n+1)); degenerate denominators throw.
double harmonic_a(const CoefficientModel& model, Index n);

/// Builds the weighted tail series. Models without a declared u0 get one from
/// the b0-recurrence with init (1,1), accepted only if positive and
/// non-decreasing. Undeclared minimality must pass the divergence heuristic.
CriterionSeries criterion_series(const CoefficientModel& model, Index N,
                                 double window_fraction = 0.5);

/// Margin-strict comparison of the tail bounds against -1/4. Requires the
/// trailing window to hold at least 100 points.
Classification classify(const CriterionSeries& series, double margin = 1e-3);

/// criterion_series + classify in one call.
Classification classify_model(const CoefficientModel& model, Index N, double margin = 1e-3,
                              double window_fraction = 0.5);

/// Classify a user-supplied edge: b0 is derived from u0 via b_from_u, so the
/// reference data is exact by construction.
Classification custom_criterion(Sequence a, Sequence u0, Sequence b, Index N,
                                Index n0 = 1, double margin = 1e-3,
                                double window_fraction = 0.5);

}  // namespace josc
