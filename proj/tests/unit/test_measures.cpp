#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "symdyn/error.hpp"
#include "symdyn/measure.hpp"

using namespace symdyn;

namespace {

Eigen::MatrixXd mat2(double a, double b, double c, double d) {
    Eigen::MatrixXd m(2, 2);
    m << a, b, c, d;
    return m;
}

double plogp(double p) { return p > 0 ? p * std::log(p) : 0.0; }

}  // namespace

TEST_SUITE("measures") {

TEST_CASE("stationary vector of a two-state chain") {
    // pi P = pi solved by hand: pi_1 = b / (a + b) for P = [[1-a, a], [b, 1-b]].
    const auto pi = stationary_vector(mat2(0.9, 0.1, 0.5, 0.5));
    CHECK(pi(0) == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
    CHECK(pi(1) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("entropy rate") {
    const auto mu = MarkovMeasure::from_transition(mat2(0.9, 0.1, 0.5, 0.5));
    const double expect = -(5.0 / 6.0) * (plogp(0.9) + plogp(0.1)) - (1.0 / 6.0) * (2 * plogp(0.5));
    CHECK(mu.entropy() == doctest::Approx(expect).epsilon(1e-12));
    const auto b = MarkovMeasure::bernoulli({0.1, 0.9});
    CHECK(b.entropy() == doctest::Approx(-(plogp(0.1) + plogp(0.9))).epsilon(1e-12));
}

TEST_CASE("cylinder probabilities") {
    const auto mu = MarkovMeasure::from_transition(mat2(0.9, 0.1, 0.5, 0.5));
    // mu[0110] = pi_0 p01 p11 p10
    CHECK(mu.cylinder_probability(oracle::word("0110")) ==
          doctest::Approx(5.0 / 6.0 * 0.1 * 0.5 * 0.5).epsilon(1e-12));
    for (std::size_t n = 1; n <= 8; ++n) {
        double total = 0, lo = 1, hi = 0;
        for (const auto& w : oracle::all_words(2, n)) {
            const double p = mu.cylinder_probability(Word(w));
            total += p;
            lo = std::min(lo, p);
            hi = std::max(hi, p);
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::exp(static_cast<double>(mu.min_log_cylinder(n))) == doctest::Approx(lo).epsilon(1e-9));
        CHECK(std::exp(static_cast<double>(mu.max_log_cylinder(n))) == doctest::Approx(hi).epsilon(1e-9));
    }
    const auto g = MarkovMeasure::from_transition(mat2(0.6, 0.4, 1.0, 0.0));
    CHECK(g.cylinder_probability(oracle::word("011")) == 0.0);
    CHECK(std::isinf(static_cast<double>(g.log_cylinder(oracle::word("11")))));
}

TEST_CASE("parry measure maximises entropy") {
    const auto p = MarkovMeasure::parry(golden_mean_shift());
    CHECK(p.entropy() == doctest::Approx(std::log((1 + std::sqrt(5.0)) / 2)).epsilon(1e-12));
    CHECK_FALSE(p.allowed(1, 1));
    const auto f = MarkovMeasure::parry(full_shift(3));
    CHECK(f.entropy() == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("support shift") {
    const auto g = MarkovMeasure::from_transition(mat2(0.6, 0.4, 1.0, 0.0));
    const Sft s = g.support();
    CHECK(s.admissible(oracle::word("0100101")));
    CHECK_FALSE(s.admissible(oracle::word("0110")));
}

TEST_CASE("sampling is deterministic and matches the law") {
    const auto mu = MarkovMeasure::from_transition(mat2(0.9, 0.1, 0.5, 0.5));
    const Word a = mu.sample(200000, 17);
    CHECK(a.symbols == mu.sample(200000, 17).symbols);
    CHECK(a.symbols != mu.sample(200000, 18).symbols);
    std::size_t ones = 0, pairs11 = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ones += a[i];
        if (i + 1 < a.size()) pairs11 += a[i] & a[i + 1];
    }
    // Standard errors are about 1e-3; 5e-3 leaves ample margin.
    CHECK(std::abs(static_cast<double>(ones) / a.size() - 1.0 / 6.0) < 5e-3);
    CHECK(std::abs(static_cast<double>(pairs11) / (a.size() - 1) - 1.0 / 12.0) < 5e-3);
    const auto g = MarkovMeasure::from_transition(mat2(0.6, 0.4, 1.0, 0.0));
    CHECK(g.support().admissible(g.sample(10000, 3)));
}

TEST_CASE("measure worked examples") {
    const auto pi = stationary_vector(mat2(0.5, 0.5, 0.5, 0.5));
    CHECK(pi(0) == doctest::Approx(0.5));
    const auto fair = MarkovMeasure::bernoulli({0.5, 0.5});
    CHECK(fair.cylinder_probability(oracle::word("01")) == doctest::Approx(0.25));
    CHECK(fair.cylinder_probability(Word{}) == 1.0);
    CHECK(fair.entropy() == doctest::Approx(std::log(2.0)));
    const auto mu = MarkovMeasure::from_transition(mat2(0.9, 0.1, 0.5, 0.5));
    CHECK(mu.cylinder_probability(oracle::word("01")) == doctest::Approx(1.0 / 12).epsilon(1e-12));
    CHECK(MarkovMeasure::bernoulli({0.9, 0.1}).entropy() == doctest::Approx(0.3251).epsilon(1e-4));
    const auto cycle = MarkovMeasure::from_transition(mat2(0.0, 1.0, 1.0, 0.0));
    CHECK(cycle.entropy() == 0.0);
    const Word c = cycle.sample(100, 5);
    for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i] != c[i - 1]);
    CHECK(fair.sample(0, 1).empty());
    const Word f = fair.sample(100000, 6);
    CHECK(std::abs(static_cast<double>(std::count(f.symbols.begin(), f.symbols.end(), 1)) / 1e5 - 0.5) < 0.01);
}

TEST_CASE("invalid transition matrices") {
    CHECK_THROWS_AS(MarkovMeasure::from_transition(mat2(0.5, 0.6, 0.5, 0.5)), PreconditionError);
    CHECK_THROWS_AS(MarkovMeasure::from_transition(mat2(1.0, 0.0, 0.0, 1.0)), ReducibleError);
    CHECK_THROWS_AS(MarkovMeasure::bernoulli({0.5, -0.1, 0.6}), PreconditionError);
}

TEST_CASE("measure text format") {
    const auto mu = parse_measure("states 2\nrow 0.9 0.1 # a\nrow 0.5 0.5\n");
    CHECK(mu.transition()(0, 1) == 0.1);
    const auto back = parse_measure(serialize_measure(mu));
    CHECK(back.transition() == mu.transition());
    CHECK_THROWS_AS(parse_measure("states 2\nrow 0.9\nrow 0.5 0.5\n"), ParseError);
    CHECK_THROWS_AS(parse_measure("states 2\nrow 0.9 x\nrow 0.5 0.5\n"), ParseError);
    CHECK_THROWS_AS(parse_measure("row 1\n"), ParseError);
}

}  // TEST_SUITE
