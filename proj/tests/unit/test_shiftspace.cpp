#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "symdyn/error.hpp"
#include "symdyn/interp.hpp"
#include "symdyn/language.hpp"
#include "symdyn/sft.hpp"

using namespace symdyn;

namespace {

// Forbidden lists whose locally admissible words all extend both ways, so
// the essential part equals the whole language.
const std::vector<std::vector<std::string>> kEssential = {
    {}, {"11"}, {"111"}, {"00", "111"}, {"010"}, {"0110", "11"},
};

std::vector<Word> words_of(const std::vector<std::string>& s) {
    std::vector<Word> out;
    for (const auto& t : s) out.push_back(oracle::word(t));
    return out;
}

// Least g such that every pair of admissible words of length <= len joins
// through some connector of every length in [g, g + extra].
std::int64_t brute_gap(const std::vector<Word>& forb, int k, int len, int extra) {
    for (std::int64_t g = 0; g < 12; ++g) {
        bool ok = true;
        for (int lu = 1; lu <= len && ok; ++lu) {
            const auto us = oracle::all_words(k, lu);
            for (const auto& u : us) {
                if (!oracle::admissible(u, forb)) continue;
                for (const auto& v : us) {
                    if (!oracle::admissible(v, forb)) continue;
                    for (std::int64_t gg = g; gg <= g + extra && ok; ++gg) {
                        bool found = false;
                        for (const auto& w : oracle::all_words(k, static_cast<std::size_t>(gg))) {
                            std::vector<Symbol> uwv = u;
                            uwv.insert(uwv.end(), w.begin(), w.end());
                            uwv.insert(uwv.end(), v.begin(), v.end());
                            if (oracle::admissible(uwv, forb)) {
                                found = true;
                                break;
                            }
                        }
                        ok = found;
                    }
                    if (!ok) break;
                }
                if (!ok) break;
            }
        }
        if (ok) return g;
    }
    return -1;
}

}  // namespace

TEST_SUITE("shiftspace") {

TEST_CASE("word parsing and slicing") {
    const Word w = parse_word("0129az");
    CHECK(w.size() == 6);
    CHECK(w[3] == 9);
    CHECK(w[4] == 10);
    CHECK(w[5] == 35);
    CHECK(to_string(w) == "0129az");
    CHECK_THROWS_AS(parse_word("01-"), Error);

    Word shifted(w.symbols, -2);
    CHECK(shifted.at(-2) == 0);
    CHECK(shifted.at(3) == 35);
    CHECK_THROWS_AS(shifted.at(4), RangeError);
    const Word s = shifted.slice(-1, 2);
    CHECK(s.base == -1);
    CHECK(to_string(s) == "129");
    CHECK(to_string(concat(parse_word("01"), parse_word("10"))) == "0110");
}

TEST_CASE("word counts match brute-force enumeration") {
    for (const auto& f : kEssential) {
        const auto forb = words_of(f);
        const Sft sft = Sft::build(2, forb);
        for (std::size_t n = 0; n <= 12; ++n) {
            CAPTURE(n);
            CHECK(count_words(sft, n) == oracle::count_admissible(2, n, forb));
        }
    }
    const std::vector<Word> forb3 = words_of({"00", "12", "21"});
    const Sft s3 = Sft::build(3, forb3);
    for (std::size_t n = 1; n <= 8; ++n) CHECK(count_words(s3, n) == oracle::count_admissible(3, n, forb3));
}

TEST_CASE("admissibility agrees with substring search") {
    const auto forb = words_of({"00", "111"});
    const Sft sft = Sft::build(2, forb);
    for (std::size_t n = 1; n <= 10; ++n)
        for (const auto& w : oracle::all_words(2, n)) CHECK(sft.admissible(Word(w)) == oracle::admissible(w, forb));
}

TEST_CASE("enumerate_words lists the language in lexicographic order") {
    const auto forb = words_of({"11"});
    const Sft sft = Sft::build(2, forb);
    std::vector<Word> expect;
    for (const auto& w : oracle::all_words(2, 7))
        if (oracle::admissible(w, forb)) expect.emplace_back(w);
    const auto got = enumerate_words(sft, 7);
    REQUIRE(got.size() == expect.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].symbols == expect[i].symbols);
}

TEST_CASE("topological entropy against closed forms") {
    CHECK(topological_entropy(full_shift(2)) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(topological_entropy(full_shift(5)) == doctest::Approx(std::log(5.0)).epsilon(1e-12));
    const double phi = (1 + std::sqrt(5.0)) / 2;
    CHECK(topological_entropy(golden_mean_shift()) == doctest::Approx(std::log(phi)).epsilon(1e-12));
    // Tribonacci constant: no three consecutive ones.
    const double trib = 1.839286755214161;
    CHECK(topological_entropy(Sft::build(2, words_of({"111"}))) == doctest::Approx(std::log(trib)).epsilon(1e-12));
}

TEST_CASE("shift space worked examples") {
    const Sft full = full_shift(2);
    CHECK(full.memory() == 0);
    const Sft golden = golden_mean_shift();
    CHECK(golden.memory() == 1);
    CHECK(golden.adjacency() == std::vector<std::vector<std::uint8_t>>{{1, 1}, {1, 0}});
    CHECK(topological_entropy(full_shift(1)) == 0.0);
    std::vector<std::string> three;
    for (const auto& w : enumerate_words(golden, 3)) three.push_back(to_string(w));
    CHECK(three == std::vector<std::string>{"000", "001", "010", "100", "101"});
    CHECK(count_words(golden, 3) == 5);
    for (std::size_t k = 0; k <= 20; ++k) CHECK(count_words(full, k) == mpz_class(1) << static_cast<unsigned>(k));
    REQUIRE(enumerate_words(golden, 0).size() == 1);
    CHECK(enumerate_words(golden, 0)[0].empty());

    const Word u(std::vector<Symbol>(20, 0), -5);
    CHECK(window_distance_below(u, u, {0, 5, 3}));
    Word v = u;
    v.symbols[static_cast<std::size_t>(0 - v.base)] = 1;  // coordinate lo = 0
    CHECK_FALSE(window_distance_below(u, v, {0, 5, 0}));
    Word far = u;
    far.symbols[static_cast<std::size_t>(5 + 3 - far.base)] = 1;  // coordinate hi + 3
    CHECK(window_distance_below(u, far, {0, 5, 2}));
}

TEST_CASE("perron root of explicit matrices") {
    CHECK(perron_root({{1, 1}, {1, 0}}) == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-12));
    CHECK(perron_root({{2, 0}, {0, 3}}) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(perron_root({{0, 1}, {1, 0}}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("specification gap equals the brute-force connector bound") {
    CHECK(specification_gap(full_shift(2)) == 1);
    CHECK(specification_gap(golden_mean_shift()) == 2);
    for (const auto& f : {std::vector<std::string>{"11"}, std::vector<std::string>{"111"},
                          std::vector<std::string>{"00", "111"}}) {
        const auto forb = words_of(f);
        const Sft sft = Sft::build(2, forb);
        const std::int64_t g = specification_gap(sft);
        const std::int64_t brute = brute_gap(forb, 2, 3, 3);
        CAPTURE(f.size());
        // The reported gap always suffices; it may exceed the sharp value by
        // at most the state length.
        CHECK(brute >= 0);
        CHECK(g >= brute);
        CHECK(g <= brute + sft.state_length());
    }
}

TEST_CASE("non-mixing and empty shifts are rejected") {
    // Period-2 orbit only.
    const Sft periodic = Sft::build(2, words_of({"00", "11"}));
    CHECK_THROWS_AS(specification_gap(periodic), NotMixingError);
    CHECK_THROWS_AS(Sft::build(2, words_of({"0", "1"})), EmptySftError);
    CHECK_THROWS_AS(Sft::build(2, words_of({"2"})), PreconditionError);
}

TEST_CASE("window metric") {
    const Word u(parse_word("0011001").symbols, -3);
    const Word v(parse_word("1011000").symbols, -3);
    CHECK(window_distance_below(u, v, {0, 1, 2}));
    CHECK_FALSE(window_distance_below(u, v, {0, 1, 3}));
    CHECK_THROWS_AS(window_distance_below(u, v, {0, 1, 4}), RangeError);
}

TEST_CASE("language automata") {
    const std::vector<Word> pats = words_of({"101", "0000"});
    const Dfa raw = avoid_patterns(2, pats);
    const Dfa min = minimize(raw);
    CHECK(min.num_states() <= raw.num_states());
    for (std::size_t n = 0; n <= 10; ++n) {
        for (const auto& w : oracle::all_words(2, n)) {
            const bool expect = oracle::admissible(w, pats);
            CHECK(raw.accepts(Word(w)) == expect);
            CHECK(min.accepts(Word(w)) == expect);
        }
        CHECK(count_accepted(min, n) == oracle::count_admissible(2, n, pats));
    }
    const Dfa both = minimize(dfa_product(avoid_patterns(2, words_of({"11"})), avoid_patterns(2, words_of({"000"}))));
    for (const auto& w : oracle::all_words(2, 9))
        CHECK(both.accepts(Word(w)) == oracle::admissible(w, words_of({"11", "000"})));
}

TEST_CASE("word ranker is a lexicographic bijection") {
    const auto forb = words_of({"11", "000"});
    const WordRanker r(minimize(avoid_patterns(2, forb)), 11);
    std::vector<std::vector<Symbol>> expect;
    for (const auto& w : oracle::all_words(2, 11))
        if (oracle::admissible(w, forb)) expect.push_back(w);
    REQUIRE(r.count() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) {
        CHECK(r.rank(Word(expect[i])) == i);
        CHECK(r.unrank(i).symbols == expect[i]);
    }
    CHECK_FALSE(r.contains(parse_word("11000000000")));
}

TEST_CASE("sft text format") {
    const Sft s = parse_sft("# comment\nalphabet 3\nforbid 12  # trailing\nforbid 00\n", "mem");
    CHECK(s.alphabet_size() == 3);
    CHECK(s.forbidden().size() == 2);
    const Sft t = parse_sft(serialize_sft(s));
    CHECK(serialize_sft(t) == serialize_sft(s));
    try {
        parse_sft("alphabet 2\nforbid 11 extra\n", "f.sft");
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("f.sft:2:") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_sft("forbid 11\n"), ParseError);
    CHECK_THROWS_AS(parse_sft("alphabet 2\nblah\n"), ParseError);
    CHECK_THROWS_AS(parse_sft(""), ParseError);
}

}  // TEST_SUITE
