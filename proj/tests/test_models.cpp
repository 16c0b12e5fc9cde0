#include <josc/iterated_log.hpp>
#include <josc/model.hpp>
#include <josc/numeric.hpp>

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using josc::Index;
using josc::Sequence;

TEST_CASE("iterated log values") {
    CHECK(josc::iterated_log(0, 5.0) == 5.0);
    CHECK(josc::iterated_log(1, std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(josc::iterated_log(2, std::exp(std::exp(1.0))) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(josc::iterated_log(1, 100.0) == doctest::Approx(std::log(100.0)));
    CHECK(josc::iterated_log(2, 100.0) == doctest::Approx(std::log(std::log(100.0))));
}

TEST_CASE("iterated log thresholds") {
    CHECK(josc::e_threshold(1) == 0.0);
    CHECK(josc::e_threshold(2) == 1.0);
    CHECK(josc::e_threshold(3) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
    CHECK(josc::e_threshold(4) == doctest::Approx(15.1542622415).epsilon(1e-10));
    for (int k = 1; k < 5; ++k) CHECK(josc::e_threshold(k) < josc::e_threshold(k + 1));
    CHECK_THROWS_AS(josc::e_threshold(0), std::invalid_argument);
}

TEST_CASE("iterated log domain") {
    CHECK_THROWS_AS(josc::iterated_log(1, 0.0), std::domain_error);
    CHECK_THROWS_AS(josc::iterated_log(2, 1.0), std::domain_error);
    CHECK_THROWS_AS(josc::iterated_log(-1, 10.0), std::invalid_argument);
    // positive one threshold up: ln_k(x) > 0 for x > e_{k+1}
    for (int k = 1; k <= 3; ++k) {
        const double x = josc::e_threshold(k + 1) * 1.001 + 0.001;
        CHECK(josc::iterated_log(k, x) > 0.0);
    }
    // strictly increasing on a sample grid
    for (int k = 1; k <= 3; ++k) {
        double prev = josc::iterated_log(k, josc::e_threshold(k + 1) + 1.0);
        for (double x : {20.0, 50.0, 1e3, 1e6}) {
            const double v = josc::iterated_log(k, x);
            CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("kneser family coefficients") {
    const auto m = josc::kneser_family(2.25);
    CHECK(m.n0 == 1);
    CHECK(m.a(7) == -1.0);
    CHECK(m.b(10) == doctest::Approx(1.9775).epsilon(1e-15));
    CHECK(m.b0(10) == 2.0);
    CHECK(m.u0(10) == 1.0);
    CHECK(m.eval_delta(10) == doctest::Approx(-0.0225).epsilon(1e-15));
    CHECK(m.a_bounds.lower == 1.0);
    CHECK(m.a_bounds.upper == 1.0);
    CHECK(m.u0_minimal_declared);
    CHECK(m.u0_exact);

    const auto quarter = josc::kneser_family(0.25);
    CHECK(quarter.b(2) == 1.9375);  // 0.25/4 is exact in binary
}

TEST_CASE("loglog family coefficients") {
    const auto m1 = josc::loglog_family(1, 0.0);
    CHECK(m1.n0 == 2);
    CHECK(m1.b0(100) == doctest::Approx(1.999975).epsilon(1e-15));
    CHECK(m1.u0(100) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(m1.b(100) == m1.b0(100));  // c = 0

    const auto m2 = josc::loglog_family(2, 0.5);
    CHECK(m2.n0 == 6);
    const double n = 100.0;
    const double ln = std::log(n);
    const double lnln = std::log(ln);
    CHECK(m2.u0(100) == doctest::Approx(std::sqrt(n * ln)).epsilon(1e-15));
    CHECK(m2.b0(100) ==
          doctest::Approx(2.0 - 0.25 * (1.0 / (n * n) + 1.0 / (n * ln * n * ln))).epsilon(1e-15));
    CHECK(m2.eval_delta(100) ==
          doctest::Approx(0.5 / ((n * ln * lnln) * (n * ln * lnln))).epsilon(1e-12));

    CHECK(josc::loglog_family(3, 0.0).n0 == 182);
    CHECK_THROWS_AS(josc::loglog_family(4, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(josc::loglog_family(-1, 0.0), std::invalid_argument);
}

TEST_CASE("loglog depth zero matches the kneser family bitwise") {
    const auto lk = josc::loglog_family(0, 0.3);
    const auto kn = josc::kneser_family(-0.3);
    CHECK(lk.n0 == kn.n0);
    for (Index n = 1; n <= 100; ++n) {
        CHECK(lk.b(n) == kn.b(n));
        CHECK(lk.b0(n) == kn.b0(n));
        CHECK(lk.u0(n) == kn.u0(n));
        CHECK(lk.eval_delta(n) == kn.eval_delta(n));
    }
}

TEST_CASE("b_from_u recovers the diagonal solved by u") {
    const Sequence a = Sequence::constant(-1.0);

    SUBCASE("linear solution gives the free diagonal") {
        const Sequence b = josc::b_from_u(a, Sequence([](Index n) { return double(n); }));
        for (Index n = 2; n <= 50; ++n) CHECK(b(n) == 2.0);
    }
    SUBCASE("square root solution, checked in extended precision") {
        const Sequence b = josc::b_from_u(a, Sequence([](Index n) {
                                              return std::sqrt(double(n));
                                          }));
        const long double expect = (std::sqrt(5.0L) + std::sqrt(3.0L)) / 2.0L;
        CHECK(std::abs(b(4) - double(expect)) < 5e-16);
        CHECK(b(4) == doctest::Approx(1.98405939).epsilon(1e-8));
    }
    SUBCASE("vanishing u is rejected with the index") {
        const Sequence b = josc::b_from_u(a, Sequence([](Index n) { return double(n - 3); }));
        CHECK_THROWS_WITH_AS(b(3), doctest::Contains("n = 3"), std::domain_error);
        CHECK_NOTHROW(b(4));  // the zero only poisons the denominator site
    }
}

TEST_CASE("round trip: reference model built from u validates") {
    const Sequence a([](Index n) { return -1.5 - 0.3 * std::sin(double(n)); });
    const Sequence u([](Index n) { return std::sqrt(double(n) + 0.7); });
    const auto m = josc::reference_model(a, u);
    CHECK(m.u0_exact);
    CHECK_NOTHROW(josc::validate_model(m, 5000));
    // b defaults to b0, so the difference evaluates to zero
    for (Index n : {2, 17, 923}) CHECK(m.eval_delta(n) == 0.0);
}

TEST_CASE("validate_model flags broken references") {
    SUBCASE("u0 fails the three-term residual when declared exact") {
        auto m = josc::kneser_family(0.0);
        m.u0 = Sequence([](Index n) { return 1.0 + 1e-3 * double(n % 7); });
        CHECK_THROWS_AS(josc::validate_model(m, 1000), std::invalid_argument);
    }
    SUBCASE("decreasing u0") {
        auto m = josc::kneser_family(0.0);
        m.u0 = Sequence([](Index n) { return 1.0 / double(n + 2); });
        m.u0_exact = false;
        CHECK_THROWS_AS(josc::validate_model(m, 1000), std::invalid_argument);
    }
    SUBCASE("a outside the declared bounds") {
        auto m = josc::kneser_family(0.0);
        m.a = Sequence::constant(-3.0);
        CHECK_THROWS_AS(josc::validate_model(m, 1000), std::invalid_argument);
    }
    SUBCASE("healthy families pass") {
        CHECK_NOTHROW(josc::validate_model(josc::kneser_family(2.25), 100000));
        CHECK_NOTHROW(josc::validate_model(josc::loglog_family(1, -0.2), 100000));
        CHECK_NOTHROW(josc::validate_model(josc::loglog_family(2, 0.1), 100000));
    }
}

TEST_CASE("variable_a family") {
    const auto m = josc::variable_a_family(Sequence::constant(-2.0), Sequence::constant(4.0));
    CHECK(m.b0(5) == 4.0);  // -a(n) - a(n-1)
    CHECK(m.u0(5) == 1.0);
    CHECK(m.a_bounds.lower == 2.0);
    CHECK(m.a_bounds.upper == 2.0);

    SUBCASE("sign-indefinite a is rejected") {
        const Sequence flip([](Index n) { return n % 2 == 0 ? -1.0 : 1.0; });
        CHECK_THROWS_AS(josc::variable_a_family(flip, Sequence::constant(2.0)),
                        std::invalid_argument);
    }
    SUBCASE("vanishing a is rejected") {
        const Sequence dip([](Index n) { return n == 7 ? 0.0 : -1.0; });
        CHECK_THROWS_AS(josc::variable_a_family(dip, Sequence::constant(2.0)),
                        std::invalid_argument);
    }
}

TEST_CASE("table model domains") {
    const std::vector<double> a{-1.0, -1.0, -1.0, -1.0};
    const std::vector<double> b{0.0, 2.0, 1.5, 2.5};
    const auto m = josc::table_model(a, b);
    CHECK(m.eval_a(0) == -1.0);
    CHECK(m.b(2) == 1.5);
    CHECK_THROWS_AS(m.b(4), std::domain_error);  // past the table
    CHECK_THROWS_AS(m.eval_a(17), std::domain_error);

    SUBCASE("u0 requires b0") {
        josc::TableModelOptions opt;
        opt.u0 = std::vector<double>{1.0, 1.0, 1.0, 1.0};
        CHECK_THROWS_AS(josc::table_model(a, b, opt), std::invalid_argument);
    }
    SUBCASE("table over fallback evaluator") {
        const Sequence s =
            Sequence::table_over(3, {5.0, 6.0}, Sequence([](Index n) { return double(n); }));
        CHECK(s(3) == 5.0);
        CHECK(s(4) == 6.0);
        CHECK(s(2) == 2.0);   // fallback left of the table
        CHECK(s(10) == 10.0);  // fallback right of the table
    }
}

TEST_CASE("eval_a rejects zero with the offending index") {
    auto m = josc::kneser_family(0.0);
    m.a = Sequence([](Index n) { return n == 3 ? 0.0 : -1.0; });
    CHECK(m.eval_a(2) == -1.0);
    CHECK_THROWS_WITH_AS(m.eval_a(3), doctest::Contains("n = 3"), std::domain_error);
}
