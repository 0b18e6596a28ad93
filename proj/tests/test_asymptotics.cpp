#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <map>

#include "doctest.h"
#include "srcdet/asymptotics.hpp"
#include "srcdet/rng.hpp"
#include "srcdet/spread.hpp"

using namespace srcdet;

TEST_CASE("finite-n detection probability on degree-3 trees") {
    CHECK(*detection_prob_exact(3, 5).exact == Rational(2, 5));
    for (long long n = 2; n <= 200; ++n) {
        Rational expected = n % 2 == 0 ? Rational(n * n + 10 * n, 4 * n * n + 4 * n)
                                       : Rational(n * n + 4 * n + 3, 4 * n * n + 4 * n);
        CHECK(*detection_prob_exact(3, n).exact == expected);
    }
    CHECK(*detection_prob_exact(3, 1).exact == 1);
    CHECK(std::fabs(static_cast<double>(detection_prob_exact(3, 2000).value) - 0.25) < 0.01);
}

TEST_CASE("branch-tail sum equals composition enumeration") {
    for (int d = 2; d <= 6; ++d) {
        for (int n = 1; n <= (d <= 3 ? 14 : 10); ++n) {
            for (auto tie : {TieRule::kFull, TieRule::kHalf}) {
                CHECK(*detection_prob_exact(d, n, tie).exact == detection_prob_by_compositions(d, n, tie));
            }
        }
    }
    for (int d = 3; d <= 7; ++d) {
        for (long long n : {2LL, 3LL, 17LL, 60LL, 301LL}) {
            for (auto tie : {TieRule::kFull, TieRule::kHalf}) {
                auto ex = detection_prob_exact(d, n, tie);
                auto fl = detection_prob_exact(d, n, tie, false);
                CHECK(std::fabs(static_cast<double>(fl.value - ex.value)) < 1e-13);
                CHECK(!fl.exact);
            }
        }
    }
    CHECK_THROWS_AS(detection_prob_exact(1, 5), std::invalid_argument);
    CHECK_THROWS_AS(detection_prob_exact(3, 0), std::invalid_argument);
}

TEST_CASE("line detection probability") {
    // 1/sqrt(4t) <= C(2t,t)/4^t <= 1/sqrt(3t+1), compared after squaring.
    for (long long t = 1; t <= 1000; ++t) {
        Rational p = *detection_prob_exact(2, 2 * t + 1).exact;
        CHECK(p * p >= Rational(1, 4 * t));
        CHECK(p * p <= Rational(1, 3 * t + 1));
    }
    CHECK(*detection_prob_exact(2, 21).exact == Rational(184756, 1048576));
    CHECK(detection_prob_exact(2, 20001, TieRule::kFull, false).value < 0.006L);
    CHECK(*detection_prob_exact(2, 4).exact == Rational(3, 4));
    CHECK(*detection_prob_exact(2, 4, TieRule::kHalf).exact == Rational(3, 8));
}

TEST_CASE("finite-n values approach the limit") {
    for (int d = 3; d <= 6; ++d) {
        auto p = detection_prob_exact(d, 2000, TieRule::kFull, false);
        CHECK(std::fabs(static_cast<double>(p.value - detection_prob_limit(d))) < 0.01);
    }
}

TEST_CASE("limiting detection probability") {
    CHECK(detection_prob_limit(3) == 0.25L);
    CHECK(std::fabs(static_cast<double>(detection_prob_limit(4) - (4.0L / std::acos(-1.0L) - 1.0L))) < 1e-12);
    const long double ceiling = 1.0L - std::log(2.0L);
    long double prev = 0;
    for (int d = 3; d <= 1200; ++d) {
        long double v = detection_prob_limit(d);
        CHECK(v >= 0.25L);
        CHECK(v < ceiling);
        CHECK(v > prev - 1e-15L);
        prev = v;
        if (d <= 60 || d % 97 == 0) {
            CHECK(std::fabs(static_cast<double>(v - detection_prob_limit_beta(d))) < 1e-12);
        }
    }
    CHECK(std::fabs(static_cast<double>(detection_prob_limit(1000000) - ceiling)) < 1e-4);
    CHECK_THROWS_AS(detection_prob_limit(2), std::invalid_argument);
}

TEST_CASE("incomplete beta") {
    CHECK(incomplete_beta(0, 2, 3) == 0);
    CHECK(incomplete_beta(1, 2, 3) == 1);
    CHECK(std::fabs(static_cast<double>(incomplete_beta(0.5L, 1, 2)) - 0.75) < 1e-15);
    for (double a : {1e-6, 0.01, 0.5, 1.0, 2.5, 30.0}) {
        for (double b : {1e-3, 0.5, 1.0, 1.5, 7.0, 120.0}) {
            for (double x : {0.001, 0.1, 0.37, 0.5, 0.8, 0.999}) {
                long double mine = incomplete_beta(x, a, b);
                double ref = boost::math::ibeta(a, b, x);
                CHECK(std::fabs(static_cast<double>(mine) - ref) <= 1e-12 * std::max(1.0, std::fabs(ref)));
                CHECK(std::fabs(static_cast<double>(mine + incomplete_beta(1 - x, b, a) - 1.0L)) < 1e-12);
            }
        }
    }
    CHECK_THROWS_AS(incomplete_beta(1.5L, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(incomplete_beta(0.5L, 0, 1), std::invalid_argument);
}

TEST_CASE("urn probabilities") {
    UrnSpec two{{1, 1}, 1, 2};
    for (long long x = 0; x <= 2; ++x) {
        CHECK(urn_joint_pmf(two, {x, 2 - x}) == Rational(1, 3));
    }
    for (int d = 2; d <= 5; ++d) {
        for (int n = 1; n <= 7; ++n) {
            UrnSpec u = spreading_urn(d, n);
            Rational total = 0;
            std::function<void(std::vector<long long>&, int, long long)> walk = [&](std::vector<long long>& x, int i,
                                                                                  long long left) {
                if (i == d - 1) {
                    x[i] = left;
                    total += urn_joint_pmf(u, x);
                    return;
                }
                for (long long v = 0; v <= left; ++v) {
                    x[i] = v;
                    walk(x, i + 1, left - v);
                }
            };
            std::vector<long long> x(d);
            walk(x, 0, n - 1);
            CHECK(total == 1);
        }
    }
    UrnSpec odd{{2, 3, 1}, 4, 5};
    Rational total = 0;
    for (long long a = 0; a <= 5; ++a) {
        for (long long b = 0; a + b <= 5; ++b) {
            total += urn_joint_pmf(odd, {a, b, 5 - a - b});
        }
    }
    CHECK(total == 1);
    CHECK_THROWS_AS(urn_joint_pmf(two, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(urn_joint_pmf(two, {2}), std::invalid_argument);
}

TEST_CASE("urn law equals the spread branch law") {
    for (int d = 3; d <= 4; ++d) {
        for (int n = 1; n <= 6; ++n) {
            UrnSpec u = spreading_urn(d, n);
            for (const auto& [branches, p] : regular_tree_branch_law(d, n)) {
                std::vector<long long> x(branches.begin(), branches.end());
                CHECK(urn_joint_pmf(u, x) == p);
            }
        }
    }
}

TEST_CASE("urn sampling") {
    // No reinforcement: Binomial(200, 1/4) mean and variance.
    UrnSpec flat{{1, 3}, 0, 200};
    double mean = 0, sq = 0;
    const int runs = 20000;
    for (int r = 0; r < runs; ++r) {
        double x = static_cast<double>(urn_sample(flat, derive_seed(1, r))[0]);
        mean += x;
        sq += x * x;
    }
    mean /= runs;
    double var = sq / runs - mean * mean;
    CHECK(std::fabs(mean - 50.0) < 4 * std::sqrt(37.5 / runs));
    CHECK(std::fabs(var - 37.5) < 2.0);

    // b = (1,1), m = 1: X_1/n tends to Uniform(0, 1).
    UrnSpec polya{{1, 1}, 1, 10000};
    std::vector<double> ratios;
    for (int r = 0; r < 10000; ++r) {
        ratios.push_back(static_cast<double>(urn_sample(polya, derive_seed(2, r))[0]) / 10000.0);
    }
    double ks = ks_statistic(ratios, [](double x) { return x; });
    CHECK(ks_pvalue(ks, ratios.size()) > 0.01);

    // Spreading preset with d = 3: Beta(1, 2), CDF 1 - (1 - x)^2.
    UrnSpec spread = spreading_urn(3, 2000);
    std::vector<double> first;
    double mart = 0;
    for (int r = 0; r < 5000; ++r) {
        auto x = urn_sample(spread, derive_seed(3, r));
        first.push_back(static_cast<double>(x[0]) / 1999.0);
        mart += (1.0 + static_cast<double>(x[0])) / (3.0 + 1999.0);
    }
    CHECK(ks_pvalue(ks_statistic(first, [](double x) { return 1.0 - (1.0 - x) * (1.0 - x); }), first.size()) > 0.01);
    // The colour-1 share of the urn is a martingale started at 1/3.
    CHECK(std::fabs(mart / 5000 - 1.0 / 3.0) < 4 * std::sqrt(2.0 / 36.0 / 5000));
}

TEST_CASE("Monte Carlo detection on the infinite 4-regular tree") {
    const int n = 14, runs = 200000;
    int hits = 0;
    for (int r = 0; r < runs; ++r) {
        auto spread = simulate_si_regular_tree(4, n, derive_seed(9, r));
        std::vector<int> sizes(4, 0);
        for (int b : spread.branch) {
            if (b >= 0) {
                ++sizes[b];
            }
        }
        bool center = true;
        for (int s : sizes) {
            center = center && 2 * s <= n;
        }
        hits += center ? 1 : 0;
    }
    double p = static_cast<double>(detection_prob_exact(4, n).value);
    double sigma = std::sqrt(p * (1 - p) / runs);
    CHECK(std::fabs(static_cast<double>(hits) / runs - p) < 3 * sigma);
}

TEST_CASE("increasing tree counts") {
    CHECK(increasing_tree_count({1, 2, 1}, 3) == 6);
    for (int n = 1; n <= 12; ++n) {
        CHECK(increasing_tree_count({1, 2, 1}, n) == factorial(n));
        CHECK(increasing_tree_count(3, n).labelled == factorial(n + 1) / 2);
        CHECK(increasing_tree_count(3, n).plain == factorial(n));
        CHECK(increasing_tree_count(4, n).plain == increasing_tree_count({1, 3, 3, 1}, n));
        CHECK(increasing_tree_count(5, n).plain == increasing_tree_count({1, 4, 6, 4, 1}, n));
    }
    // Summing the unnormalised branch-size weights over all compositions gives T~_n.
    for (int d = 3; d <= 5; ++d) {
        for (int n = 1; n <= 7; ++n) {
            UrnSpec u = spreading_urn(d, n);
            BigInt scale = increasing_tree_count(d, n).labelled;
            Rational total = 0;
            for (const auto& [branches, p] : regular_tree_branch_law(d, n)) {
                total += p * Rational(scale);
            }
            CHECK(total == Rational(scale));
            for (const auto& [branches, p] : regular_tree_branch_law(d, n)) {
                CHECK(denominator(Rational(p * Rational(scale))) == 1);
            }
        }
    }
    // Plane-oriented trees: phi = 1/(1-w), truncated, gives (2n-3)!!.
    std::vector<long long> plane(12, 1);
    CHECK(increasing_tree_count(plane, 5) == 105);
    CHECK_THROWS_AS(increasing_tree_count(2, 4), std::invalid_argument);
}

TEST_CASE("Kolmogorov-Smirnov helpers") {
    std::vector<double> u;
    for (int i = 0; i < 1000; ++i) {
        u.push_back((i + 0.5) / 1000.0);
    }
    CHECK(ks_statistic(u, [](double x) { return x; }) == doctest::Approx(0.0005));
    CHECK(ks_pvalue(0.0005, 1000) == 1.0);
    CHECK(ks_pvalue(0.2, 1000) < 1e-10);
}
