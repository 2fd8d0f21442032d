#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "symdyn/error.hpp"
#include "symdyn/measure.hpp"
#include "symdyn/splicer.hpp"

using namespace symdyn;

TEST_SUITE("splicer") {

TEST_CASE("skeleton parameters follow the floor formulas") {
    for (double eps : {0.2, 0.3, 0.5}) {
        for (std::int64_t N : {100, 250, 1000}) {
            const double gamma = eps / 4;
            const auto p = skeleton_params(eps, gamma, N);
            CHECK(p.k0 == static_cast<std::int64_t>(std::floor(gamma / 2 * N)));
            CHECK(p.k1 == static_cast<std::int64_t>(std::floor((1 - eps - gamma / 2) * N)));
            CHECK(p.k2 == static_cast<std::int64_t>(std::floor((eps - gamma / 2) * N)));
            const double T = static_cast<double>(2 * p.k0 + p.k1 + p.k2);
            CHECK(p.ratio1 == static_cast<double>(p.k1) / T);
            CHECK(p.ratio2 == static_cast<double>(p.k2) / T);
            CHECK(p.ratio1 > 1 - eps - gamma);
            CHECK(p.ratio2 > eps - gamma);
        }
    }
    CHECK_THROWS_AS(skeleton_params(0.2, 0.3, 100), PreconditionError);
    CHECK_THROWS_AS(skeleton_params(0.3, 0.05, 20), PreconditionError);
}

TEST_CASE("worked skeleton example") {
    const auto p = skeleton_params(0.2, 0.1, 1000);
    CHECK(p.k0 == 50);
    CHECK(p.k1 == 750);
    CHECK(p.k2 == 150);
    CHECK(p.ratio1 == 0.75);
    CHECK(p.ratio2 == 0.15);
    CHECK(p.ratio1 > 0.7);
    CHECK(p.ratio2 > 0.1);
    CHECK_THROWS_AS(skeleton_params(0.2, 0.2, 1000), PreconditionError);
    CHECK_THROWS_AS(skeleton_params(0.2, 0.1, 10), PreconditionError);
    CHECK_THROWS_AS(entropy_boost_skeleton(5, 40, 0, 1000, 1), PreconditionError);
}

TEST_CASE("entropy-boost splice of constant sources") {
    const Sft sft = full_shift(2);
    const auto p = skeleton_params(0.2, 0.1, 1000);
    const std::size_t n = 100000;
    const Word y1(std::vector<Symbol>(n, 0)), y2(std::vector<Symbol>(n, 1));
    const Skeleton sk = entropy_boost_skeleton(p.k0, p.k1, p.k2, n, 5);
    const Word y3 = splice_entropy_boost(sft, y1, y2, sk);
    const double ones = static_cast<double>(std::count(y3.symbols.begin(), y3.symbols.end(), 1)) / n;
    CHECK(std::abs(ones - p.ratio2) <= 0.02);
    // Disagreement with y1 is confined to the 2-runs and the 0-runs.
    std::size_t differ = 0, zeros = 0;
    for (std::size_t i = 0; i < n; ++i) {
        differ += y3[i] != y1[i];
        zeros += sk.seq[i] == 0;
    }
    CHECK(static_cast<double>(differ) / n <= 0.2 + 0.1 + static_cast<double>(zeros) / n);
}

TEST_CASE("skeletons parse into legal blocks") {
    const Skeleton a = entropy_boost_skeleton(3, 40, 12, 50000, 1);
    CHECK(a.seq.size() == 50000);
    CHECK(skeleton_parses(a));
    Skeleton broken = a;
    broken.seq[5] = 2;
    CHECK_FALSE(skeleton_parses(broken));
    const Skeleton b = full_support_skeleton(30, 3, 50000, 2);
    CHECK(skeleton_parses(b));
    CHECK(b.seq == full_support_skeleton(30, 3, 50000, 2).seq);
}

TEST_CASE("entropy-boost splice agrees with both sources on their runs") {
    const Sft sft = golden_mean_shift();
    const auto m1 = MarkovMeasure::from_transition((Eigen::MatrixXd(2, 2) << 0.9, 0.1, 1.0, 0.0).finished());
    const auto m2 = MarkovMeasure::parry(sft);
    const std::size_t n = 40000;
    const Word y1 = m1.sample(n, 11), y2 = m2.sample(n, 12);
    const Skeleton sk = entropy_boost_skeleton(3, 60, 25, n, 13);
    const Word y3 = splice_entropy_boost(sft, y1, y2, sk);
    CHECK(y3.size() == n);
    CHECK(sft.admissible(y3));
    for (std::size_t i = 0; i < n; ++i) {
        if (sk.seq[i] == 1) CHECK(y3[i] == y1[i]);
        if (sk.seq[i] == 2) CHECK(y3[i] == y2[i]);
    }
    const Skeleton tight = entropy_boost_skeleton(1, 60, 25, n, 13);
    CHECK_THROWS_AS(splice_entropy_boost(sft, y1, y2, tight), PreconditionError);
}

TEST_CASE("full-support splice on the full shift") {
    const Sft sft = full_shift(2);
    const auto mu = MarkovMeasure::bernoulli({0.9, 0.1});
    const Word y1 = mu.sample(1000000, 3);
    const Word target = oracle::word("101");
    const Word y3 = splice_full_support(sft, y1, target, 100, 2, 4);
    CHECK(visit_frequency(y3, target) >= 1.0 / 101 - 0.002);
    const Sft golden = golden_mean_shift();
    const Word g1(std::vector<Symbol>(5000, 0));
    CHECK_THROWS_AS(splice_full_support(golden, g1, oracle::word("011"), 100, 4, 1), PreconditionError);
    // Gap of the golden-mean shift is 2; M - 1 < 2 leaves no room to connect.
    CHECK_THROWS_AS(splice_full_support(golden, g1, oracle::word("010"), 100, 2, 1), PreconditionError);
}

TEST_CASE("full-support splice plants the target at every marked site") {
    const Sft sft = golden_mean_shift();
    const auto m1 = MarkovMeasure::from_transition((Eigen::MatrixXd(2, 2) << 0.95, 0.05, 1.0, 0.0).finished());
    const Word y1 = m1.sample(30000, 21);
    const Word target = oracle::word("10101");
    const std::int64_t N = 50, M = 4;
    const Word y3 = splice_full_support(sft, y1, target, N, M, 22);
    CHECK(sft.admissible(y3));
    const Skeleton sk = full_support_skeleton(N, M, y1.size(), 22);
    std::size_t sites = 0;
    for (std::size_t i = 2; i + 3 <= y3.size(); ++i) {
        if (sk.seq[i] == 1) CHECK(y3[i] == y1[i]);
        if (sk.seq[i] != 2) continue;
        ++sites;
        CHECK(y3.sub(i - 2, 5).symbols == target.symbols);
    }
    CHECK(sites > 0);
    CHECK(visit_frequency(y3, target) >= 1.0 / (N + 1) - 0.002);
    CHECK_THROWS_AS(splice_full_support(sft, y1, oracle::word("1010"), N, M, 22), PreconditionError);
    CHECK_THROWS_AS(splice_full_support(sft, y1, target, N, 3, 22), PreconditionError);
}

TEST_CASE("visit frequency counts overlapping occurrences") {
    CHECK(visit_frequency(oracle::word("0000"), oracle::word("00")) == doctest::Approx(0.75));
    CHECK(visit_frequency(oracle::word("0101"), oracle::word("11")) == 0.0);
    CHECK(visit_frequency(oracle::word("01"), oracle::word("011")) == 0.0);
}

}  // TEST_SUITE
