#include "jlg/marginal.hpp"
#include "jlg/special.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace jlg;

TEST_CASE("pair count is exact") {
    CHECK(pair_count(2) == 1ull);
    CHECK(pair_count(3) == 3ull);
    CHECK(pair_count(4) == 6ull);
    CHECK(pair_count(100000) == 4999950000ull);
    CHECK(pair_count(1000000000) == 499999999500000000ull);
}

TEST_CASE("spec validation") {
    CHECK_NOTHROW(validate(EmbeddingSpec{2, 1, 0.5}));
    CHECK_THROWS_AS(validate(EmbeddingSpec{1, 10, 0.5}), std::domain_error);
    CHECK_THROWS_AS(validate(EmbeddingSpec{10, 0, 0.5}), std::domain_error);
    CHECK_THROWS_AS(validate(EmbeddingSpec{10, 5, 0.0}), std::domain_error);
    CHECK_THROWS_AS(validate(EmbeddingSpec{10, 5, 1.0}), std::domain_error);
    CHECK_THROWS_AS(validate(EmbeddingSpec{10, 5, -0.2}), std::domain_error);
}

TEST_CASE("probability wrapper clamps roundoff but rejects junk") {
    CHECK(make_probability(1.0 + 5e-10, ProbMethod::quadrature).value == 1.0);
    CHECK(make_probability(-5e-10, ProbMethod::quadrature).value == 0.0);
    CHECK_THROWS_AS(make_probability(1.1, ProbMethod::quadrature), numerical_error);
    CHECK_THROWS_AS(make_probability(-0.01, ProbMethod::quadrature), numerical_error);
}

TEST_CASE("single success probability reference points") {
    // k=4, eps=0.5: closed form e^{-1}(1+1) - e^{-3}(1+3)
    const double mu45 = std::exp(-1.0) * 2.0 - std::exp(-3.0) * 4.0;
    CHECK(success_probability(4, 0.5).value ==
          doctest::Approx(0.53661060887142887127).epsilon(1e-14));
    CHECK(success_probability(4, 0.5).value == doctest::Approx(mu45).epsilon(1e-14));

    CHECK(success_probability(30, 0.4).value ==
          doctest::Approx(0.886959946068908).epsilon(1e-12));
    CHECK(success_probability(40, 0.2).value ==
          doctest::Approx(0.631988014166646).epsilon(1e-12));
    CHECK(success_probability(1000, 0.025).value ==
          doctest::Approx(0.423855029438).epsilon(1e-11));
    CHECK(success_probability(10000, 0.025).value ==
          doctest::Approx(0.922919580121).epsilon(1e-11));
    CHECK(success_probability(10, 0.3).value ==
          doctest::Approx(0.501773136498105).epsilon(1e-12));
    CHECK(success_probability(100, 0.1).value ==
          doctest::Approx(0.520993185098973).epsilon(1e-12));
}

TEST_CASE("failure probability keeps precision when mu is near one") {
    // naive 1 - mu would round these to zero digits
    const double f1 = failure_probability(10000, 0.1).value;
    CHECK(f1 / 3.7453068751485234823e-12 == doctest::Approx(1.0).epsilon(1e-10));
    const double f2 = failure_probability(500, 0.4).value;
    CHECK(f2 / 7.729049757e-9 == doctest::Approx(1.0).epsilon(1e-9));
    const double f3 = failure_probability(285, 0.4).value;
    CHECK(f3 / 9.266418275e-6 == doctest::Approx(1.0).epsilon(1e-9));

    CHECK(log_failure_probability(10000, 0.1) ==
          doctest::Approx(std::log(3.7453068751485234823e-12)).epsilon(1e-12));

    // tiny band: success itself is near zero, failure near one
    const double mu_tiny = success_probability(2, 1e-12).value;
    CHECK(mu_tiny / 7.3575888234288464319e-13 == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(failure_probability(2, 1e-12).value ==
          doctest::Approx(1.0 - 7.3575888234288464319e-13).epsilon(1e-14));
}

TEST_CASE("success and failure are complementary") {
    for (long long k : {2, 50, 300, 4000}) {
        for (double eps : {0.05, 0.2, 0.6}) {
            const double mu = success_probability(k, eps).value;
            const double f = failure_probability(k, eps).value;
            CHECK(mu + f == doctest::Approx(1.0).epsilon(1e-13));
            CHECK(std::exp(log_failure_probability(k, eps)) ==
                  doctest::Approx(f).epsilon(1e-12));
        }
    }
}

TEST_CASE("success probability is monotone in eps and concentrates with k") {
    double prev = 0.0;
    for (double eps : {0.05, 0.1, 0.2, 0.3, 0.5, 0.8}) {
        const double mu = success_probability(64, eps).value;
        CHECK(mu > prev);
        prev = mu;
    }
    // fixed eps: larger k concentrates V/k around 1, raising mu toward 1
    double prev_k = 0.0;
    for (long long k : {8, 32, 128, 512, 2048, 8192}) {
        const double mu = success_probability(k, 0.1).value;
        CHECK(mu > prev_k);
        prev_k = mu;
    }
    // at k=200000 the failure mass ~1e-206 sits far below double resolution,
    // so mu rounds to exactly one while the log form still resolves the tail
    CHECK(success_probability(200000, 0.1).value == 1.0);
    const double lf = log_failure_probability(200000, 0.1);
    CHECK(lf > -474.0);
    CHECK(lf < -473.0);
}

TEST_CASE("marginal domain errors") {
    CHECK_THROWS_AS(success_probability(0, 0.1), std::domain_error);
    CHECK_THROWS_AS(success_probability(10, 0.0), std::domain_error);
    CHECK_THROWS_AS(success_probability(10, 1.0), std::domain_error);
    CHECK_THROWS_AS(failure_probability(-3, 0.1), std::domain_error);
}
