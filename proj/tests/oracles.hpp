#pragma once

#include <josc/numeric.hpp>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

// Dense small-N cross-checks for the pivot-sign eigenvalue counter, kept
// independent of the library internals: a characteristic-polynomial Sturm
// count, eigenvalues recovered by bisection on that count, and Eigen's
// dense symmetric solver.
namespace oracle {

/// Sign changes along the leading-principal-minor sequence p_0 = 1,
/// p_i = (diag(i) - lambda) p_{i-1} - off(i-1)^2 p_{i-2}. A vanishing minor
/// takes the sign opposite to its predecessor, so an exact tie counts as
/// crossed (same convention as the zero-pivot guard it is checking).
inline josc::Index charpoly_count_below(const Eigen::VectorXd& diag,
                                        const Eigen::VectorXd& off, double lambda) {
    josc::Index changes = 0;
    double prev2 = 0.0;
    double prev = 1.0;
    int prev_sign = 1;
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
        const double offsq = i > 0 ? off[i - 1] * off[i - 1] : 0.0;
        double p = (diag[i] - lambda) * prev - offsq * prev2;
        const int sign = p > 0.0 ? 1 : (p < 0.0 ? -1 : -prev_sign);
        if (sign != prev_sign) ++changes;
        const double mag = std::max(std::abs(p), std::abs(prev));
        if (mag > 1e150) {
            p /= mag;
            prev /= mag;
        }
        prev2 = prev;
        prev = p;
        prev_sign = sign;
    }
    return changes;
}

/// All eigenvalues by bisecting the Sturm count inside the Gershgorin hull.
inline std::vector<double> bisection_eigenvalues(const Eigen::VectorXd& diag,
                                                 const Eigen::VectorXd& off) {
    const Eigen::Index n = diag.size();
    double lo = diag[0];
    double hi = diag[0];
    for (Eigen::Index i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(off[i - 1]);
        if (i + 1 < n) r += std::abs(off[i]);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    std::vector<double> eigs(static_cast<std::size_t>(n));
    for (Eigen::Index k = 1; k <= n; ++k) {
        double a = lo - 1.0;
        double b = hi + 1.0;
        for (int it = 0; it < 120; ++it) {
            const double mid = 0.5 * (a + b);
            if (charpoly_count_below(diag, off, mid) >= k)
                b = mid;
            else
                a = mid;
        }
        eigs[static_cast<std::size_t>(k - 1)] = 0.5 * (a + b);
    }
    return eigs;
}

inline josc::Index dense_count_below(const Eigen::VectorXd& diag,
                                     const Eigen::VectorXd& off, double lambda) {
    const Eigen::Index n = diag.size();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i, i) = diag[i];
        if (i + 1 < n) {
            m(i, i + 1) = off[i];
            m(i + 1, i) = off[i];
        }
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    josc::Index c = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        if (es.eigenvalues()[i] < lambda) ++c;
    return c;
}

/// Coefficient tables over [n0-1, n0+N-1] (N+1 entries each; b's first entry
/// is the usual placeholder).
struct RandomTable {
    std::vector<double> a;
    std::vector<double> b;
};

inline RandomTable random_table(std::mt19937_64& rng, josc::Index N, double a_lo = -2.0,
                                double a_hi = -0.5, double b_lo = -1.0, double b_hi = 3.0) {
    std::uniform_real_distribution<double> ua(a_lo, a_hi);
    std::uniform_real_distribution<double> ub(b_lo, b_hi);
    RandomTable t;
    t.a.resize(static_cast<std::size_t>(N + 1));
    t.b.resize(static_cast<std::size_t>(N + 1));
    for (auto& v : t.a) v = ua(rng);
    for (auto& v : t.b) v = ub(rng);
    return t;
}

}  // namespace oracle
