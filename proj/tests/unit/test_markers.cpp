#include <doctest.h>

#include "oracles.hpp"
#include "symdyn/error.hpp"
#include "symdyn/markers.hpp"
#include "symdyn/rng.hpp"

using namespace symdyn;

namespace {

// Direct reading of the definition: the 2M-window at 6M occurs nowhere
// earlier in the word.
bool distinguishing_oracle(const std::vector<Symbol>& w, std::size_t M) {
    if (w.size() != 8 * M) return false;
    for (std::size_t i = 0; i < 6 * M; ++i) {
        bool same = true;
        for (std::size_t j = 0; j < 2 * M; ++j) same = same && w[i + j] == w[6 * M + j];
        if (same) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("markers") {

TEST_CASE("self-distinguishing words") {
    for (std::size_t M : {1, 2})
        for (const auto& w : oracle::all_words(2, 8 * M))
            CHECK(self_distinguishing(Word(w), static_cast<std::int64_t>(M)) == distinguishing_oracle(w, M));
    CHECK_FALSE(self_distinguishing(oracle::word("0001"), 1));
}

TEST_CASE("exhaustive marker search returns the least valid word") {
    const Sft sft = full_shift(2);
    const auto nu = MarkovMeasure::parry(sft);
    const MarkerScheme s = find_marker(sft, nu, 1, 0.5, 1000, 0);
    Word expect;
    for (const auto& w : oracle::all_words(2, 8))
        if (distinguishing_oracle(w, 1)) {
            expect = Word(w);
            break;
        }
    CHECK(s.y_mark.symbols == expect.symbols);
    CHECK(scheme_valid(s, sft, nu));
    CHECK(to_string(s.h1) == to_string(s.y_mark.sub(0, 2)));
    CHECK(to_string(s.h2) == to_string(s.y_mark.sub(6, 2)));
    CHECK(s.nu_h1 == doctest::Approx(0.25));
}

TEST_CASE("randomised search on a larger marker") {
    const Sft sft = golden_mean_shift();
    const auto nu = MarkovMeasure::parry(sft);
    const MarkerScheme s = find_marker(sft, nu, 4, 0.5, 200000, 9);
    CHECK(s.y_mark.size() == 32);
    CHECK(scheme_valid(s, sft, nu));
    CHECK(find_marker(sft, nu, 4, 0.5, 200000, 9).y_mark == s.y_mark);
}

TEST_CASE("markers that cannot exist are reported") {
    const auto nu = MarkovMeasure::parry(full_shift(2));
    // Every 2-window of the full 2-shift has mass 1/4, which is not below 0.1.
    CHECK_THROWS_AS(find_marker(full_shift(2), nu, 1, 0.1, 1000, 0), NoMarkerError);
    CHECK_THROWS_AS(find_marker(full_shift(2), nu, 0, 0.5, 1000, 0), PreconditionError);
}

TEST_CASE("worked marker examples") {
    const Sft sft = full_shift(2);
    const auto nu = MarkovMeasure::bernoulli({0.9, 0.1});
    const MarkerScheme s = find_marker(sft, nu, 1, 0.5, 1000, 0);
    CHECK(scheme_valid(s, sft, nu));
    CHECK(s.nu_h1 < 0.5);
    CHECK(s.nu_h2 < 0.5);
    CHECK(make_scheme(oracle::word("11010000"), 1, 0.5, nu).nu_h1 == doctest::Approx(0.01));
    const Sft loop = full_shift(1);
    CHECK_THROWS_AS(find_marker(loop, MarkovMeasure::parry(loop), 1, 0.5, 1000, 0), NoMarkerError);
    CHECK_THROWS_AS(find_marker(sft, nu, 1, 0.0, 1000, 0), PreconditionError);

    // Offsets: y_mark at L - 9M gives j = 0, five earlier gives j = 5.
    const std::int64_t M = 1, L = 40;
    for (std::int64_t shift : {0, 5}) {
        std::vector<Symbol> w(L, 1);
        const std::int64_t pos = L - 9 * M - shift;
        std::copy(s.y_mark.symbols.begin(), s.y_mark.symbols.end(), w.begin() + pos);
        std::int64_t first = -1;
        for (std::int64_t i = 0; i + 8 * M <= L && first < 0; ++i)
            if (std::equal(s.y_mark.symbols.begin(), s.y_mark.symbols.end(), w.begin() + i)) first = i;
        REQUIRE(first == pos);
        CHECK(locate_offset(Word(w), s, L) == shift);
    }
}

TEST_CASE("offset recovery finds the planted marker") {
    const Sft sft = full_shift(2);
    const auto nu = MarkovMeasure::parry(sft);
    const MarkerScheme s = find_marker(sft, nu, 2, 0.5, 1000, 0);
    const std::int64_t M = 2, L = 64;
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const std::int64_t pos = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(L - 8 * M + 1)));
        std::vector<Symbol> w(L);
        for (auto& c : w) c = static_cast<Symbol>(rng.coin());
        std::copy(s.y_mark.symbols.begin(), s.y_mark.symbols.end(), w.begin() + pos);
        // Oracle: first occurrence by direct comparison.
        std::int64_t first = -1;
        for (std::int64_t i = 0; i + 8 * M <= L && first < 0; ++i)
            if (std::equal(s.y_mark.symbols.begin(), s.y_mark.symbols.end(), w.begin() + i)) first = i;
        CHECK(locate_offset(Word(w), s, L) == (L - 9 * M) - first);
    }
    CHECK_THROWS_AS(locate_offset(Word(std::vector<Symbol>(64, 1)), s, 64), MarkerNotFoundError);
    CHECK_THROWS_AS(locate_offset(Word(std::vector<Symbol>(64, 1)), s, 30), PreconditionError);
}

TEST_CASE("avoidance filter") {
    const auto nu = MarkovMeasure::parry(full_shift(2));
    const MarkerScheme s = make_scheme(oracle::word("00000001"), 1, 0.5, nu);
    CHECK(to_string(s.h1) == "00");
    CHECK(to_string(s.h2) == "01");
    CHECK(avoidance_pass(oracle::word("111110"), s, 4));
    CHECK_FALSE(avoidance_pass(oracle::word("110111"), s, 4));
    CHECK_THROWS_AS(avoidance_pass(oracle::word("111"), s, 4), PreconditionError);
    const auto kept = avoidance_filter({oracle::word("111111"), oracle::word("100111")}, s, 4);
    CHECK(kept.size() == 1);

    // H1 = "11" over the full 2-shift, N = 10.
    const MarkerScheme t = make_scheme(oracle::word("11000010"), 1, 0.5, nu);
    const std::int64_t N = 10;
    CHECK(avoidance_pass(Word(std::vector<Symbol>(N + 2, 0)), t, N));
    std::vector<Symbol> hit(N + 2, 0);
    hit[3] = hit[4] = 1;
    CHECK_FALSE(avoidance_pass(Word(hit), t, N));
    std::vector<Symbol> late(N + 4, 0);
    late[N + 1] = late[N + 2] = 1;
    CHECK(avoidance_pass(Word(late), t, N));
}

TEST_CASE("marker text round trip") {
    const auto nu = MarkovMeasure::parry(full_shift(2));
    const MarkerScheme s = make_scheme(oracle::word("0000000000000001"), 2, 0.25, nu);
    const MarkerScheme t = parse_marker(serialize_marker(s), nu);
    CHECK(t.y_mark == s.y_mark);
    CHECK(t.M == 2);
    CHECK(t.alpha == 0.25);
    CHECK_THROWS_AS(parse_marker("M=2 alpha=x word=01", nu), ParseError);
    CHECK_THROWS_AS(parse_marker("M=2 word", nu), ParseError);
}

}  // TEST_SUITE
