#include <doctest.h>

#include <optional>

#include "oracles.hpp"
#include "symdyn/error.hpp"
#include "symdyn/interp.hpp"
#include "symdyn/measure.hpp"
#include "symdyn/rng.hpp"

using namespace symdyn;

namespace {

std::optional<std::vector<Symbol>> brute_connector(const std::vector<Word>& forb, int k, const Word& u, const Word& v,
                                                   std::size_t gap) {
    for (const auto& w : oracle::all_words(k, gap)) {
        std::vector<Symbol> all = u.symbols;
        all.insert(all.end(), w.begin(), w.end());
        all.insert(all.end(), v.symbols.begin(), v.symbols.end());
        if (oracle::admissible(all, forb)) return w;
    }
    return std::nullopt;
}

}  // namespace

TEST_SUITE("interp") {

TEST_CASE("connectors are the lexicographically least joins") {
    const std::vector<Word> forb{oracle::word("11"), oracle::word("000")};
    const Sft sft = Sft::build(2, forb);
    for (std::size_t lu = 1; lu <= 4; ++lu)
        for (const auto& u : oracle::all_words(2, lu)) {
            if (!oracle::admissible(u, forb)) continue;
            for (const auto& v : oracle::all_words(2, 3)) {
                if (!oracle::admissible(v, forb)) continue;
                for (std::size_t gap = 0; gap <= 5; ++gap) {
                    const auto expect = brute_connector(forb, 2, Word(u), Word(v), gap);
                    if (expect) {
                        CHECK(connect_words(sft, Word(u), Word(v), static_cast<std::int64_t>(gap)).symbols == *expect);
                    } else {
                        CHECK_THROWS_AS(connect_words(sft, Word(u), Word(v), static_cast<std::int64_t>(gap)),
                                        NoConnectorError);
                    }
                }
            }
        }
}

TEST_CASE("golden-mean worked examples") {
    const Sft golden = golden_mean_shift();
    const Word one = oracle::word("1");
    CHECK(to_string(connect_words(golden, one, one, 2)) == "00");
    CHECK(to_string(connect_words(golden, one, one, 1)) == "0");
    CHECK(connect_words(full_shift(2), one, one, 0).empty());

    SegmentPlan plan;
    plan.lo = 0;
    plan.hi = 8;
    plan.min_gap = 2;
    plan.segments = {{0, oracle::word("101")}, {5, oracle::word("101")}};
    CHECK(to_string(interpolate(golden, plan)) == "10100101");
    SegmentPlan empty;
    empty.lo = 0;
    empty.hi = 5;
    CHECK(to_string(interpolate(golden, empty)) == "00000");
}

TEST_CASE("golden-mean connections fail only at gap 0") {
    // The "11" boundary is the one obstruction; a single 0 joins any pair.
    const Sft golden = golden_mean_shift();
    CHECK_THROWS_AS(connect_words(golden, oracle::word("1"), oracle::word("1"), 0), NoConnectorError);
    const std::vector<Word> forb{oracle::word("11")};
    for (std::size_t lu = 1; lu <= 3; ++lu)
        for (const auto& u : oracle::all_words(2, lu))
            for (const auto& v : oracle::all_words(2, lu)) {
                if (!oracle::admissible(u, forb) || !oracle::admissible(v, forb)) continue;
                CHECK(brute_connector(forb, 2, Word(u), Word(v), 1).has_value());
                CHECK_NOTHROW(connect_words(golden, Word(u), Word(v), 1));
            }
}

TEST_CASE("connectors on a three-symbol shift") {
    const std::vector<Word> forb{oracle::word("00"), oracle::word("12"), oracle::word("21")};
    const Sft sft = Sft::build(3, forb);
    for (const auto& u : oracle::all_words(3, 2))
        for (const auto& v : oracle::all_words(3, 2)) {
            if (!oracle::admissible(u, forb) || !oracle::admissible(v, forb)) continue;
            for (std::size_t gap = 1; gap <= 4; ++gap) {
                const auto expect = brute_connector(forb, 3, Word(u), Word(v), gap);
                if (expect) CHECK(connect_words(sft, Word(u), Word(v), static_cast<std::int64_t>(gap)).symbols == *expect);
            }
        }
}

TEST_CASE("interpolation carries every segment and stays admissible") {
    const Sft sft = golden_mean_shift();
    const auto mu = MarkovMeasure::parry(sft);
    const std::int64_t gap = specification_gap(sft);
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        SegmentPlan plan;
        plan.lo = -static_cast<std::int64_t>(rng.below(20));
        plan.min_gap = gap;
        std::int64_t cursor = plan.lo + static_cast<std::int64_t>(rng.below(4));
        for (int s = 0; s < 6; ++s) {
            const std::size_t len = 1 + rng.below(8);
            plan.segments.emplace_back(cursor, mu.sample(len, rng.bits()));
            cursor += static_cast<std::int64_t>(len) + gap + static_cast<std::int64_t>(rng.below(5));
        }
        plan.hi = cursor + static_cast<std::int64_t>(rng.below(5));
        const Word y = interpolate(sft, plan);
        REQUIRE(y.lo() == plan.lo);
        REQUIRE(y.hi() == plan.hi);
        CHECK(sft.admissible(y));
        for (const auto& [start, w] : plan.segments)
            CHECK(y.slice(start, start + static_cast<std::int64_t>(w.size())).symbols == w.symbols);
    }
}

TEST_CASE("plan invariants are enforced") {
    const Sft sft = golden_mean_shift();
    SegmentPlan plan;
    plan.lo = 0;
    plan.hi = 10;
    plan.min_gap = 2;
    plan.segments = {{0, oracle::word("10")}, {3, oracle::word("1")}};
    CHECK_THROWS_AS(plan.validate(), PreconditionError);
    plan.segments = {{0, oracle::word("10")}, {1, oracle::word("1")}};
    CHECK_THROWS_AS(plan.validate(), PreconditionError);
    plan.segments = {{8, oracle::word("101")}};
    CHECK_THROWS_AS(plan.validate(), PreconditionError);
    plan.segments = {{2, oracle::word("11")}};
    CHECK_THROWS_AS(interpolate(sft, plan), PreconditionError);
    plan.segments = {{0, oracle::word("1")}, {4, oracle::word("01")}};
    plan.max_segment = 1;
    CHECK_THROWS_AS(plan.validate(), PreconditionError);
}

TEST_CASE("connector object agrees with connect_words") {
    const Sft sft = Sft::build(2, {oracle::word("111")});
    const Connector c(sft);
    std::vector<Symbol> out;
    const int q = c.dfa().run(c.start(), oracle::word("011"));
    const int end = c.extend(q, oracle::word("110"), 3, out);
    // extend writes the connector followed by the right word.
    std::vector<Symbol> expected = connect_words(sft, oracle::word("011"), oracle::word("110"), 3).symbols;
    for (Symbol s : oracle::word("110").symbols) expected.push_back(s);
    CHECK(out == expected);
    CHECK(end >= 0);
}

}  // TEST_SUITE
