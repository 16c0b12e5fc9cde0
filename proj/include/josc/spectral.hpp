#pragma once

#include "josc/model.hpp"
#include "josc/numeric.hpp"

#include <string>
#include <vector>

namespace josc {

/// Dirichlet truncation onto sites n0 .. n0+N-1: diag(i) = b(n0+i),
/// offdiag(i) = a(n0+i); the coupling a(n0-1) is dropped.
struct TruncatedOperator {
    Index n0 = 1;
    Eigen::VectorXd diag;
    Eigen::VectorXd offdiag;

    [[nodiscard]] Index size() const { return static_cast<Index>(diag.size()); }
};

TruncatedOperator truncate(const CoefficientModel& model, Index N);

struct CountDetail {
    Index count = 0;
    bool pivot_perturbed = false;  // a pivot hit the zero guard and was taken negative
};

/// Number of eigenvalues strictly below lambda, by the signs of the LDL^T
/// pivots d_i = diag(i) - lambda - offdiag(i-1)^2 / d_{i-1}. A vanishing pivot
/// is replaced by -tiny (counted), flagged, and can be disambiguated by
/// re-running at lambda +- 1e-12.
CountDetail count_below_detail(const TruncatedOperator& op, double lambda);
Index count_below(const TruncatedOperator& op, double lambda);

/// count_below across a strictly increasing ladder of truncation sizes.
struct SpectralCount {
    double lambda = 0.0;
    std::vector<Index> sizes;
    std::vector<Index> counts;
    std::vector<Index> increments;  // first differences, for growth-rate reading

    /// "saturating" when the last two counts agree, else "growing".
    [[nodiscard]] std::string verdict_hint() const;
};

SpectralCount growth_profile(const CoefficientModel& model, double lambda,
                             std::vector<Index> sizes);

/// Oscillation/eigenvalue bookkeeping identity on a finite box: nodes of the
/// Dirichlet solution (u(n0-1), u(n0)) = (0, 1) over [n0, n0+N-1] versus
/// count_below(truncate(model, N), lambda).
struct NodeCountCheck {
    Index nodes = 0;
    Index count = 0;
    bool equal = false;
};

NodeCountCheck nodes_equal_counts(const CoefficientModel& model, double lambda, Index N);

}  // namespace josc
