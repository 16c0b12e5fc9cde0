#include <josc/model.hpp>
#include <josc/spectral.hpp>

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

using josc::Index;
using josc::Sequence;

TEST_CASE("truncation picks up the boxed coefficients") {
    SUBCASE("free model") {
        const auto op = josc::truncate(josc::kneser_family(0.0), 2);
        REQUIRE(op.size() == 2);
        CHECK(op.diag[0] == 2.0);
        CHECK(op.diag[1] == 2.0);
        REQUIRE(op.offdiag.size() == 1);
        CHECK(op.offdiag[0] == -1.0);
    }
    SUBCASE("supercritical euler family") {
        const auto op = josc::truncate(josc::kneser_family(2.25), 3);
        CHECK(op.diag[0] == -0.25);   // 2 - 2.25, exact in binary
        CHECK(op.diag[1] == 1.4375);  // 2 - 2.25/4
        CHECK(op.diag[2] == 1.75);    // 2 - 2.25/9
        CHECK(op.offdiag[0] == -1.0);
        CHECK(op.offdiag[1] == -1.0);
    }
    SUBCASE("doubled coupling") {
        const auto op = josc::truncate(
            josc::variable_a_family(Sequence::constant(-2.0), Sequence::constant(4.0)), 2);
        CHECK(op.diag[0] == 4.0);
        CHECK(op.offdiag[0] == -2.0);
    }
    CHECK_THROWS_AS(josc::truncate(josc::kneser_family(0.0), 0), std::invalid_argument);
}

TEST_CASE("pivot counting on a two-site box") {
    josc::TruncatedOperator op;
    op.diag = Eigen::Vector2d(2.0, 2.0);
    op.offdiag = Eigen::VectorXd::Constant(1, -1.0);
    // eigenvalues 1 and 3
    CHECK(josc::count_below(op, 0.0) == 0);
    CHECK(josc::count_below(op, 2.0) == 1);
    CHECK(josc::count_below(op, 4.0) == 2);

    SUBCASE("a shift at an eigenvalue trips the zero-pivot guard") {
        const auto hit = josc::count_below_detail(op, 1.0);
        CHECK(hit.pivot_perturbed);
        // nudging the shift disambiguates the strict count
        CHECK(josc::count_below(op, 1.0 - 1e-12) == 0);
        CHECK(josc::count_below(op, 1.0 + 1e-12) == 1);
        CHECK_FALSE(josc::count_below_detail(op, 1.0 - 1e-12).pivot_perturbed);
    }
}

TEST_CASE("free spectrum stays above zero") {
    const auto m = josc::kneser_family(0.0);
    for (Index n : {1, 10, 100, 1000}) CHECK(josc::count_below(josc::truncate(m, n), 0.0) == 0);
    const auto profile = josc::growth_profile(m, -0.1, {10, 100, 1000});
    for (Index c : profile.counts) CHECK(c == 0);
}

TEST_CASE("random small boxes agree with three dense oracles") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> size_dist(1, 8);
    std::uniform_real_distribution<double> lambda_dist(-1.0, 4.0);
    for (int rep = 0; rep < 1000; ++rep) {
        const Index N = size_dist(rng);
        const auto tab = oracle::random_table(rng, N);
        const auto m = josc::table_model(tab.a, tab.b);
        const auto op = josc::truncate(m, N);
        const double lambda = lambda_dist(rng);

        const Index counted = josc::count_below(op, lambda);
        CHECK(counted == oracle::charpoly_count_below(op.diag, op.offdiag, lambda));
        CHECK(counted == oracle::dense_count_below(op.diag, op.offdiag, lambda));

        const auto eigs = oracle::bisection_eigenvalues(op.diag, op.offdiag);
        Index below = 0;
        for (double e : eigs)
            if (e < lambda) ++below;
        CHECK(counted == below);

        const auto link = josc::nodes_equal_counts(m, lambda, N);
        CHECK(link.equal);
        CHECK(link.nodes == counted);
    }
}

TEST_CASE("interlacing and shift monotonicity") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> size_dist(2, 12);
    std::uniform_real_distribution<double> lambda_dist(-1.0, 4.0);
    for (int rep = 0; rep < 1000; ++rep) {
        const Index N = size_dist(rng);
        const auto tab = oracle::random_table(rng, N);
        const auto m = josc::table_model(tab.a, tab.b);
        const double l1 = lambda_dist(rng);
        const double l2 = lambda_dist(rng);

        const auto big = josc::truncate(m, N);
        const auto small = josc::truncate(m, N - 1);
        const Index cb = josc::count_below(big, l1);
        const Index cs = josc::count_below(small, l1);
        CHECK(cb >= cs);
        CHECK(cb <= cs + 1);

        const Index lo = josc::count_below(big, std::min(l1, l2));
        const Index hi = josc::count_below(big, std::max(l1, l2));
        CHECK(lo <= hi);
    }
}

TEST_CASE("node counts equal eigenvalue counts on the built-in families") {
    for (Index N : {100, 1000, 10000}) {
        for (double c : {0.0, 0.2, 2.25, -1.0}) {
            const auto r = josc::nodes_equal_counts(josc::kneser_family(c), 0.0, N);
            CHECK(r.equal);
        }
        for (double c : {0.3, -0.3}) {
            const auto r = josc::nodes_equal_counts(josc::loglog_family(1, c), 0.0, N);
            CHECK(r.equal);
        }
        const auto r = josc::nodes_equal_counts(
            josc::variable_a_family(Sequence::constant(-2.0), Sequence::constant(4.0)), 3.9, N);
        CHECK(r.equal);
    }
    SUBCASE("supercritical count at depth, captured as a regression value") {
        const auto r = josc::nodes_equal_counts(josc::kneser_family(2.25), 0.0, 100000);
        CHECK(r.equal);
        CHECK(r.count == 5);
    }
}

TEST_CASE("growth profiles separate finite from infinite") {
    const std::vector<Index> sizes{1000, 10000, 100000, 1000000};

    SUBCASE("subcritical saturates") {
        const auto p = josc::growth_profile(josc::kneser_family(0.2), 0.0, sizes);
        REQUIRE(p.counts.size() == 4);
        CHECK(p.counts[2] == p.counts[3]);
        CHECK(p.verdict_hint() == "saturating");
    }
    SUBCASE("supercritical grows about one node per decade") {
        const auto p = josc::growth_profile(josc::kneser_family(2.25), 0.0, sizes);
        REQUIRE(p.increments.size() == 3);
        for (Index inc : p.increments) {
            CHECK(inc >= 1);
            CHECK(inc <= 2);
        }
        CHECK(p.verdict_hint() == "growing");
    }
    SUBCASE("size ladder must increase") {
        CHECK_THROWS_AS(josc::growth_profile(josc::kneser_family(0.0), 0.0, {10, 10}),
                        std::invalid_argument);
        CHECK_THROWS_AS(josc::growth_profile(josc::kneser_family(0.0), 0.0, {}),
                        std::invalid_argument);
    }
}

TEST_CASE("bulk counting above the band edge follows the dispersion fraction") {
    // out-of-regime smoke: for the free model the integrated density at 0.5
    // is arccos(3/4)/pi of the box
    const Index N = 100000;
    const Index c = josc::count_below(josc::truncate(josc::kneser_family(0.0), N), 0.5);
    const double fraction = std::acos(0.75) / std::numbers::pi;
    CHECK(std::abs(double(c) - fraction * double(N)) <= 5.0);
}
