#include "josc/model.hpp"

#include "josc/iterated_log.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

namespace josc {

double Sequence::operator()(Index n) const {
    if (table_) {
        const Index off = n - table_start_;
        if (off >= 0 && off < static_cast<Index>(table_->size()))
            return (*table_)[static_cast<std::size_t>(off)];
    }
    if (fn_)
        return fn_(n);
    throw std::domain_error("sequence undefined at n = " + std::to_string(n));
}

double CoefficientModel::eval_a(Index n) const {
    const double v = a(n);
    if (v == 0.0 || !std::isfinite(v))
        throw std::domain_error("a(n) is " + std::string(v == 0.0 ? "zero" : "non-finite") +
                                " at n = " + std::to_string(n));
    return v;
}

double CoefficientModel::eval_delta(Index n) const {
    if (delta.defined())
        return delta(n);
    return b(n) - b0(n);
}

CoefficientModel kneser_family(double c) {
    CoefficientModel m;
    m.a = Sequence::constant(-1.0);
    m.b0 = Sequence::constant(2.0);
    m.delta = Sequence([c](Index n) {
        const double x = static_cast<double>(n);
        return -c / (x * x);
    });
    m.b = Sequence([c](Index n) {
        const double x = static_cast<double>(n);
        return 2.0 - c / (x * x);
    });
    m.u0 = Sequence::constant(1.0);
    m.n0 = 1;
    m.u0_minimal_declared = true;
    m.u0_exact = true;
    m.a_bounds = {1.0, 1.0};
    m.label = "kneser(c=" + format_shortest(c) + ")";
    return m;
}

namespace {

Index loglog_start_index(int k) {
    // solve ln_k(x) = 1/2 by iterating exp, then fix up at the integer boundary
    double t = 0.5;
    for (int i = 0; i < k; ++i) {
        t = std::exp(t);
        if (t > 4.0e15)
            throw std::invalid_argument("loglog_family: k = " + std::to_string(k) +
                                        " puts the start index beyond the usable range");
    }
    Index n = static_cast<Index>(std::ceil(t));
    if (n < 1)
        n = 1;
    while (n > 1 && iterated_log(k, static_cast<double>(n - 1)) >= 0.5)
        --n;
    while (iterated_log(k, static_cast<double>(n)) < 0.5)
        ++n;
    return n;
}

}  // namespace

CoefficientModel loglog_family(int k, double c) {
    if (k < 0)
        throw std::invalid_argument("loglog_family: k must be >= 0, got " + std::to_string(k));
    CoefficientModel m;
    m.n0 = loglog_start_index(k);
    m.a = Sequence::constant(-1.0);

    auto bk = [k](Index n) {
        const double x = static_cast<double>(n);
        double prod = 1.0;
        CompensatedSum s;
        for (int j = 0; j < k; ++j) {
            prod *= iterated_log(j, x);
            s.add(1.0 / (prod * prod));
        }
        return 2.0 - 0.25 * s.value();
    };
    auto weight = [k](Index n) {
        // (prod_{j=0}^{k} ln_j(n))^2
        const double x = static_cast<double>(n);
        double prod = 1.0;
        for (int j = 0; j <= k; ++j)
            prod *= iterated_log(j, x);
        return prod * prod;
    };

    m.b0 = Sequence(bk);
    m.delta = Sequence([c, weight](Index n) { return c / weight(n); });
    m.b = Sequence([c, bk, weight](Index n) { return bk(n) + c / weight(n); });

    if (k == 0) {
        m.u0 = Sequence::constant(1.0);
    } else {
        m.u0 = Sequence([k](Index n) {
            const double x = static_cast<double>(n);
            double prod = 1.0;
            for (int j = 0; j < k; ++j)
                prod *= iterated_log(j, x);
            return std::sqrt(prod);
        });
    }
    m.u0_minimal_declared = true;
    m.u0_exact = (k == 0);  // for k >= 1, u0 solves the companion diagonal b_from_u, not b_k
    m.a_bounds = {1.0, 1.0};
    m.label = "loglog(k=" + std::to_string(k) + ",c=" + format_shortest(c) + ")";
    return m;
}

namespace {

ABounds scan_a(const Sequence& a, Index from, Index to, bool reject_indefinite) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    int sign = 0;
    for (Index n = from; n <= to; ++n) {
        const double v = a(n);
        if (!std::isfinite(v))
            throw std::invalid_argument("a(n) non-finite at n = " + std::to_string(n));
        if (reject_indefinite) {
            if (v == 0.0)
                throw std::invalid_argument("a(n) vanishes at n = " + std::to_string(n));
            const int s = v > 0 ? 1 : -1;
            if (sign == 0)
                sign = s;
            else if (s != sign)
                throw std::invalid_argument("a changes sign at n = " + std::to_string(n));
        }
        const double av = std::abs(v);
        lo = std::min(lo, av);
        hi = std::max(hi, av);
    }
    return {lo, hi};
}

}  // namespace

CoefficientModel variable_a_family(Sequence a, Sequence b, Index n0,
                                   std::optional<ABounds> bounds) {
    if (n0 < 1)
        throw std::invalid_argument("variable_a_family: n0 must be >= 1");
    if (!a.defined() || !b.defined())
        throw std::invalid_argument("variable_a_family: a and b must both be given");

    const Index scan_to = a.has_table() ? a.table_start() + a.table_size() - 1
                                        : n0 - 1 + 9999;
    const ABounds scanned = scan_a(a, n0 - 1, scan_to, /*reject_indefinite=*/true);

    CoefficientModel m;
    m.a = a;
    m.b = std::move(b);
    m.b0 = Sequence([a](Index n) { return -a(n) - a(n - 1); });
    m.u0 = Sequence::constant(1.0);
    m.n0 = n0;
    m.u0_exact = true;
    m.a_bounds = bounds.value_or(scanned);
    // every Q-term is >= 1/A0 > 0, so the minimality sum diverges
    m.u0_minimal_declared = true;
    m.label = "variable_a";
    return m;
}

CoefficientModel table_model(std::vector<double> a, std::vector<double> b,
                             TableModelOptions options) {
    const Index n0 = options.n0;
    if (n0 < 1)
        throw std::invalid_argument("table_model: n0 must be >= 1");
    if (a.size() < 2 || b.size() < 2)
        throw std::invalid_argument("table_model: a and b need at least two entries");

    CoefficientModel m;
    m.n0 = n0;
    // bounds over the actual entries; a zero entry keeps lower = 0 and is
    // reported lazily by eval_a at the failing index
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double v : a) {
        lo = std::min(lo, std::abs(v));
        hi = std::max(hi, std::abs(v));
    }
    m.a_bounds = {lo, hi};
    m.a = Sequence::table(n0 - 1, std::move(a));
    m.b = Sequence::table(n0 - 1, std::move(b));

    if (options.b0) {
        m.b0 = Sequence::table(n0 - 1, std::move(*options.b0));
        if (options.u0) {
            m.u0 = Sequence::table(n0 - 1, std::move(*options.u0));
            m.u0_exact = false;  // caller's claim is checked downstream, not assumed
        }
    } else {
        if (options.u0)
            throw std::invalid_argument("table_model: u0 without b0 is not meaningful");
        const Sequence aseq = m.a;
        m.b0 = Sequence([aseq](Index n) { return -aseq(n) - aseq(n - 1); });
        m.u0 = Sequence::constant(1.0);
        m.u0_exact = true;
        m.u0_minimal_declared = m.a_bounds.lower > 0.0;
    }
    m.label = "table";
    return m;
}

Sequence b_from_u(const Sequence& a, const Sequence& u) {
    if (!a.defined() || !u.defined())
        throw std::invalid_argument("b_from_u: a and u must both be given");
    return Sequence([a, u](Index n) {
        const double un = u(n);
        if (un == 0.0)
            throw std::domain_error("b_from_u: u vanishes at n = " + std::to_string(n));
        return -(a(n) * u(n + 1) + a(n - 1) * u(n - 1)) / un;
    });
}

CoefficientModel reference_model(Sequence a, Sequence u0, Sequence b, Index n0) {
    if (n0 < 1)
        throw std::invalid_argument("reference_model: n0 must be >= 1");
    CoefficientModel m;
    m.a = a;
    m.u0 = u0;
    m.b0 = b_from_u(a, u0);
    m.b = b.defined() ? std::move(b) : m.b0;
    m.n0 = n0;
    m.u0_exact = true;
    m.u0_minimal_declared = false;

    const Index scan_to = a.has_table() ? a.table_start() + a.table_size() - 1
                                        : n0 - 1 + 9999;
    m.a_bounds = scan_a(m.a, n0 - 1, scan_to, /*reject_indefinite=*/false);
    m.label = "reference";
    return m;
}

void validate_model(const CoefficientModel& model, Index max_n, int samples,
                    std::uint64_t seed) {
    if (model.n0 < 1)
        throw std::invalid_argument("model: n0 must be >= 1");
    if (max_n <= model.n0)
        throw std::invalid_argument("validate_model: max_n must exceed n0");
    if (!(model.a_bounds.lower > 0.0) || model.a_bounds.upper < model.a_bounds.lower)
        throw std::invalid_argument("model: a-bounds must satisfy 0 < lower <= upper");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Index> pick(model.n0, max_n - 1);
    for (int s = 0; s < samples; ++s) {
        const Index n = pick(rng);
        const double an = model.eval_a(n);
        const double av = std::abs(an);
        if (av < model.a_bounds.lower || av > model.a_bounds.upper)
            throw std::invalid_argument("|a(n)| = " + format_shortest(av) +
                                        " escapes the declared bounds at n = " +
                                        std::to_string(n));
        if (!model.has_u0())
            continue;
        const double un = model.u0(n);
        const double up = model.u0(n + 1);
        if (!(un > 0.0))
            throw std::invalid_argument("u0(n) is not positive at n = " + std::to_string(n));
        if (up < un)
            throw std::invalid_argument("u0 decreases between n = " + std::to_string(n) +
                                        " and n+1");
        if (model.u0_exact) {
            // evaluate the three-term residual in extended precision so the
            // check measures the model, not the checker
            const long double t1 = static_cast<long double>(an) * up;
            const long double t2 =
                static_cast<long double>(model.a(n - 1)) * model.u0(n - 1);
            const long double t3 = static_cast<long double>(model.b0(n)) * un;
            const long double r = t1 + t2 + t3;
            const long double largest =
                std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
            if (std::abs(r) > 4.0L * static_cast<long double>(ulp_of(static_cast<double>(largest))))
                throw std::invalid_argument("u0 fails the three-term residual at n = " +
                                            std::to_string(n) + " (residual " +
                                            format_shortest(static_cast<double>(r)) + ")");
        }
    }
}

}  // namespace josc
