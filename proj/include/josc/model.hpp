#pragma once

#include "josc/numeric.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace josc {

/// One half-line coefficient sequence: an evaluator (index -> value), an
/// optional finite table, or both. Table entries take precedence where they
/// are defined; indices covered by neither raise std::domain_error.
class Sequence {
public:
    Sequence() = default;
    Sequence(std::function<double(Index)> fn) : fn_(std::move(fn)) {}  // NOLINT(google-explicit-constructor)

    static Sequence constant(double v) {
        return Sequence([v](Index) { return v; });
    }
    static Sequence table(Index start, std::vector<double> values) {
        Sequence s;
        s.table_start_ = start;
        s.table_ = std::make_shared<const std::vector<double>>(std::move(values));
        return s;
    }
    static Sequence table_over(Index start, std::vector<double> values, Sequence fallback) {
        Sequence s = table(start, std::move(values));
        s.fn_ = std::move(fallback.fn_);
        return s;
    }

    [[nodiscard]] bool defined() const { return static_cast<bool>(fn_) || table_; }
    [[nodiscard]] bool has_table() const { return static_cast<bool>(table_); }
    [[nodiscard]] Index table_start() const { return table_start_; }
    [[nodiscard]] Index table_size() const {
        return table_ ? static_cast<Index>(table_->size()) : 0;
    }

    double operator()(Index n) const;

private:
    std::function<double(Index)> fn_;
    Index table_start_ = 0;
    std::shared_ptr<const std::vector<double>> table_;
};

/// Declared bounds 0 < lower <= |a(n)| <= upper (non-strict at both ends).
struct ABounds {
    double lower = 0.0;
    double upper = 0.0;
};

/// A half-line Jacobi operator (tau f)(n) = a(n)f(n+1) + a(n-1)f(n-1) + b(n)f(n)
/// together with a comparison diagonal b0 and (optionally) a positive
/// non-decreasing reference solution u0 of the b0-operator.
///
/// Domains: a on n >= n0-1, b and b0 on n >= n0, u0 on n >= n0-1.
struct CoefficientModel {
    Sequence a;
    Sequence b;
    Sequence b0;
    Sequence u0;     // optional
    Sequence delta;  // optional: b - b0 evaluated without cancellation
    Index n0 = 1;
    bool u0_minimal_declared = false;
    bool u0_exact = false;  // u0 solves the b0-operator exactly (up to rounding)
    ABounds a_bounds{};
    std::string label;

    [[nodiscard]] bool has_u0() const { return u0.defined(); }

    /// a(n) with the nonzero check; zero or undefined entries abort with the index.
    [[nodiscard]] double eval_a(Index n) const;

    /// b(n) - b0(n), via the dedicated evaluator when the family provides one.
    [[nodiscard]] double eval_delta(Index n) const;
};

/// Euler/Kneser family: a = -1, b(n) = 2 - c/n^2, b0 = 2, u0 = 1, n0 = 1.
CoefficientModel kneser_family(double c);

/// Iterated-log family at depth k: a = -1,
///   b0(n)  = b_k(n) = 2 - (1/4) sum_{j=0}^{k-1} (prod_{l=0}^{j} ln_l(n))^-2,
///   b(n)   = b_k(n) + c * (prod_{j=0}^{k} ln_j(n))^-2,
///   u0(n)  = sqrt(prod_{j=0}^{k-1} ln_j(n)),
/// n0 = smallest integer with ln_k(n) >= 1/2. k = 0 reduces to kneser(-c).
CoefficientModel loglog_family(int k, double c);

/// Sign-definite a with arbitrary b; the reference edge is b0(n) = -a(n) - a(n-1)
/// with u0 = 1. Bounds are taken from `bounds` when given, otherwise scanned
/// (tables exactly, evaluators over [n0-1, n0+9999]). Sign-indefinite or
/// vanishing a is rejected.
CoefficientModel variable_a_family(Sequence a, Sequence b, Index n0 = 1,
                                   std::optional<ABounds> bounds = std::nullopt);

struct TableModelOptions {
    std::optional<std::vector<double>> b0;
    std::optional<std::vector<double>> u0;
    Index n0 = 1;
};

/// Finite-table model; all arrays are indexed from n0-1 (b's first entry is
/// never read). Without an explicit b0 the variable_a reference edge is used.
/// Unlike variable_a_family, sign-indefinite a is allowed here; consumers that
/// need definiteness fail at the offending index instead.
CoefficientModel table_model(std::vector<double> a, std::vector<double> b,
                             TableModelOptions options = {});

/// Model built from a positive reference solution: b0 = b_from_u(a, u0) and
/// b defaults to b0 (so b - b0 = 0). Minimality is left to the runtime heuristic.
CoefficientModel reference_model(Sequence a, Sequence u0, Sequence b = {}, Index n0 = 1);

/// The diagonal solved exactly by u: b(n) = -(a(n)u(n+1) + a(n-1)u(n-1))/u(n).
Sequence b_from_u(const Sequence& a, const Sequence& u);

/// Spot-check the model invariants on `samples` pseudo-random indices in
/// [n0, max_n-1]: a nonzero and inside declared bounds; u0 positive and
/// non-decreasing; and, for models flagged u0_exact, the three-term residual
/// of u0 against b0 within 4 ulp of the largest term. Throws on violation.
void validate_model(const CoefficientModel& model, Index max_n, int samples = 1000,
                    std::uint64_t seed = 0x6a6f7363u);

}  // namespace josc
