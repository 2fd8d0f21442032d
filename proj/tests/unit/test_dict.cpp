#include <doctest.h>

#include <cmath>
#include <functional>
#include <memory>
#include <set>

#include "oracles.hpp"
#include "symdyn/dict.hpp"
#include "symdyn/error.hpp"
#include "symdyn/estimators.hpp"
#include "symdyn/matching.hpp"
#include "symdyn/rng.hpp"

using namespace symdyn;

namespace {

long double brute_log_mu(const MarkovMeasure& mu, const std::vector<Symbol>& w) {
    long double l = std::log(static_cast<long double>(mu.stationary()(w[0])));
    for (std::size_t i = 1; i < w.size(); ++i) l += std::log(static_cast<long double>(mu.transition()(w[i - 1], w[i])));
    return l;
}

// Thresholds halfway between consecutive distinct cylinder log-masses, so
// that rounding cannot move a word across the cut.
std::vector<long double> midpoints(const MarkovMeasure& mu, std::size_t N) {
    std::vector<long double> v;
    for (const auto& w : oracle::all_words(mu.num_states(), N)) {
        const long double l = brute_log_mu(mu, w);
        if (std::isfinite(static_cast<double>(l))) v.push_back(l);
    }
    std::sort(v.begin(), v.end());
    std::vector<long double> mids;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] - v[i - 1] > 1e-9L) mids.push_back((v[i] + v[i - 1]) / 2);
    return mids;
}

// Size of a maximum matching by exhaustive search over boys.
int exhaustive_matching(const std::vector<std::vector<int>>& adj, std::vector<char>& used, std::size_t b) {
    if (b == adj.size()) return 0;
    int best = exhaustive_matching(adj, used, b + 1);
    for (int g : adj[b]) {
        if (used[g]) continue;
        used[g] = 1;
        best = std::max(best, 1 + exhaustive_matching(adj, used, b + 1));
        used[g] = 0;
    }
    return best;
}

ParameterPack pack_for(std::int64_t N, std::int64_t M) {
    ParameterPack p;
    p.N = N;
    p.M = M;
    return p;
}

}  // namespace

TEST_SUITE("dict") {

TEST_CASE("log of big integers") {
    CHECK(static_cast<double>(log_mpz(mpz_class(1) << 4000)) == doctest::Approx(4000 * std::log(2.0)));
    CHECK(std::isinf(static_cast<double>(log_mpz(0))));
}

TEST_CASE("boy counts and masses against enumeration") {
    const std::vector<MarkovMeasure> measures = {
        MarkovMeasure::bernoulli({0.9, 0.1}),
        MarkovMeasure::from_transition((Eigen::MatrixXd(2, 2) << 0.9, 0.1, 0.5, 0.5).finished()),
        MarkovMeasure::from_transition((Eigen::MatrixXd(2, 2) << 0.6, 0.4, 1.0, 0.0).finished()),
        MarkovMeasure::bernoulli({0.5, 0.3, 0.2}),
    };
    for (const auto& mu : measures) {
        const std::size_t N = mu.num_states() == 3 ? 7 : 12;
        const auto mids = midpoints(mu, N);
        for (std::size_t pick = 0; pick < mids.size(); pick += std::max<std::size_t>(1, mids.size() / 7)) {
            const long double t = mids[pick];
            BoySet boys(mu, static_cast<std::int64_t>(N), t);
            std::vector<std::vector<Symbol>> expect;
            long double mass = 0;
            for (const auto& w : oracle::all_words(mu.num_states(), N)) {
                const long double l = brute_log_mu(mu, w);
                if (l >= t) {
                    expect.push_back(w);
                    mass += std::exp(l);
                }
            }
            CAPTURE(static_cast<double>(t));
            REQUIRE(boys.count() == expect.size());
            CHECK(static_cast<double>(boys.mass()) == doctest::Approx(static_cast<double>(mass)).epsilon(1e-12));
            boys.enable_ranking();
            for (std::size_t i = 0; i < expect.size(); ++i) {
                CHECK(boys.unrank(i).symbols == expect[i]);
                CHECK(boys.rank(Word(expect[i])) == i);
            }
            for (const auto& w : oracle::all_words(mu.num_states(), N))
                CHECK(boys.contains(Word(w)) == std::binary_search(expect.begin(), expect.end(), w));
        }
    }
}

TEST_CASE("boy ranking at a length beyond enumeration") {
    const auto mu = MarkovMeasure::bernoulli({0.9, 0.1});
    BoySet boys(mu, 200, -200 * (mu.entropy() + 0.05));
    boys.enable_ranking();
    Rng rng(1);
    for (int i = 0; i < 50; ++i) {
        const mpz_class r = rng.below(boys.count());
        const Word w = boys.unrank(r);
        CHECK(boys.contains(w));
        CHECK(boys.rank(w) == r);
    }
    CHECK_THROWS_AS(boys.unrank(boys.count()), RangeError);
}

TEST_CASE("girl counts against enumeration") {
    const Sft sft = golden_mean_shift();
    const auto nu = MarkovMeasure::parry(sft);
    const MarkerScheme s = make_scheme(oracle::word("0001001010100100"), 2, 0.5, nu);
    GirlSet girls(sft, 11, &s);
    std::vector<std::vector<Symbol>> expect;
    for (const auto& w : oracle::all_words(2, 11)) {
        if (!oracle::admissible(w, {oracle::word("11"), s.h1, s.h2})) continue;
        expect.push_back(w);
    }
    REQUIRE(girls.count() == expect.size());
    girls.enable_ranking();
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(girls.unrank(i).symbols == expect[i]);
    GirlSet plain(sft, 11, nullptr);
    CHECK(plain.count() == oracle::count_admissible(2, 11, {oracle::word("11")}));
}

TEST_CASE("maximum matching agrees with exhaustive search") {
    Rng rng(8);
    for (int trial = 0; trial < 300; ++trial) {
        const int nb = 1 + static_cast<int>(rng.below(8)), ng = 1 + static_cast<int>(rng.below(8));
        std::vector<std::vector<int>> adj(nb);
        for (int b = 0; b < nb; ++b)
            for (int g = 0; g < ng; ++g)
                if (rng.uniform() < 0.3) adj[b].push_back(g);
        const auto match = max_bipartite_matching(adj, ng);
        std::set<int> seen;
        int size = 0;
        for (int b = 0; b < nb; ++b) {
            if (match[b] < 0) continue;
            ++size;
            CHECK(std::find(adj[b].begin(), adj[b].end(), match[b]) != adj[b].end());
            CHECK(seen.insert(match[b]).second);
        }
        std::vector<char> used(ng, 0);
        CHECK(size == exhaustive_matching(adj, used, 0));
    }
}

TEST_CASE("relation building, regularisation and Hall matching") {
    const auto mu = MarkovMeasure::bernoulli({0.8, 0.2});
    const Sft target = full_shift(2);
    const auto nu = MarkovMeasure::parry(target);
    const std::int64_t N = 10;
    auto boys = std::make_shared<BoySet>(mu, N, std::log(0.8L) * 10 + std::log(0.2L / 0.8L) * 2.5L);
    auto girls = std::make_shared<GirlSet>(target, N, nullptr);
    std::vector<std::pair<Word, Word>> samples;
    for (int i = 0; i < 3000; ++i) samples.emplace_back(mu.sample(N, derive_seed(1, i)), nu.sample(N, derive_seed(2, i)));
    const Relation raw = build_relation(*boys, *girls, samples, pack_for(N, 0));
    CHECK(raw.num_edges() > 0);
    for (std::size_t b = 0; b < raw.boys.size(); ++b)
        for (int g : raw.adj[b]) {
            const auto& pr = samples[raw.witness.at({static_cast<int>(b), g})];
            CHECK(pr.first.symbols == raw.boys[b].symbols);
            CHECK(pr.second.symbols == raw.girls[g].symbols);
        }
    for (int K : {1, 2, 3}) {
        const Relation rel = regularize_relation(raw, K);
        std::vector<int> girl_deg(rel.girls.size(), 0);
        for (const auto& row : rel.adj) {
            CHECK(static_cast<int>(row.size()) >= K);
            for (int g : row) ++girl_deg[g];
        }
        for (int d : girl_deg) CHECK(d <= K);
        const auto match = hall_match(rel, K);
        std::set<int> used;
        for (std::size_t b = 0; b < match.size(); ++b) {
            CHECK(std::binary_search(rel.adj[b].begin(), rel.adj[b].end(), match[b]));
            CHECK(used.insert(match[b]).second);
        }
    }
}

TEST_CASE("Hall degree violations name the vertex") {
    Relation rel;
    rel.boys = {oracle::word("00"), oracle::word("01")};
    rel.girls = {oracle::word("10"), oracle::word("11")};
    rel.adj = {{0}, {0}};
    try {
        hall_match(rel, 1);
        FAIL("expected HallDegreeError");
    } catch (const HallDegreeError& e) {
        CHECK(std::string(e.what()).find("girl 10") != std::string::npos);
    }
    rel.adj = {{0, 1}, {}};
    try {
        hall_match(rel, 1);
        FAIL("expected HallDegreeError");
    } catch (const HallDegreeError& e) {
        CHECK(std::string(e.what()).find("boy 01") != std::string::npos);
    }
}

TEST_CASE("enumerative dictionary is a bijection onto its image") {
    const auto mu = MarkovMeasure::bernoulli({0.9, 0.1});
    const Sft target = full_shift(2);
    auto boys = std::make_shared<BoySet>(mu, 12, std::log(0.9L) * 10 + std::log(0.1L) * 2);
    auto girls = std::make_shared<GirlSet>(target, 9, nullptr);
    const Dictionary d = Dictionary::enumerative(boys, girls);
    std::set<std::vector<Symbol>> images;
    for (const auto& w : oracle::all_words(2, 12)) {
        const auto g = d.encode(Word(w));
        CHECK(g.has_value() == boys->contains(Word(w)));
        if (!g) continue;
        CHECK(girls->contains(*g));
        CHECK(images.insert(g->symbols).second);
        CHECK(d.decode(*g)->symbols == w);
    }
    auto few = std::make_shared<GirlSet>(target, 3, nullptr);
    CHECK_THROWS_AS(Dictionary::enumerative(boys, few), CapacityError);
}

TEST_CASE("dictionary bound predicates") {
    const auto mu = MarkovMeasure::bernoulli({0.5, 0.5});
    ParameterPack p = pack_for(40, 1);
    p.h_source = std::log(2.0);
    p.h_target = std::log(3.0);
    p.Delta = (p.h_target - p.h_source) / 10;
    p.delta = 0.001;
    const BoySet boys = BoySet::from_pack(mu, p);
    const GirlSet girls(full_shift(3), 40 - 11, nullptr);
    const auto r = verify_dictionary_bounds(boys, girls, p, p.h_source, p.h_target);
    CHECK(static_cast<double>(r.log_boys) == doctest::Approx(40 * std::log(2.0)));
    CHECK(static_cast<double>(r.log_girls) == doctest::Approx(29 * std::log(3.0)));
    CHECK(r.boys_ok);
    CHECK(r.mass_ok);
    CHECK(r.ratio_ok == (r.log_girls - r.log_boys >= 40 * (p.h_target - p.h_source - 2 * p.Delta)));
}

TEST_CASE("parameter selection worked examples") {
    const double hs = binary_entropy(0.1), ht = std::log(2.0);
    const auto nu = MarkovMeasure::parry(full_shift(2));
    ParameterRequest req;
    req.h_source = hs;
    req.h_target = ht;
    req.eps = 0.2;
    req.mode = ParamMode::Strict;
    req.target_measure = &nu;
    const ParameterPack p = choose_parameters(req);
    CHECK(p.Delta == (ht - hs) / 10);
    CHECK(p.Delta == doctest::Approx(0.0368).epsilon(1e-3));
    CHECK(p.M == static_cast<std::int64_t>(std::floor(p.delta * static_cast<double>(p.N) / 11)));
    // The checklist is a pure function of the pack and the target measure.
    ParameterPack again = p;
    evaluate_checklist(again, &nu);
    REQUIRE(again.checklist.size() == p.checklist.size());
    for (std::size_t i = 0; i < p.checklist.size(); ++i) {
        CHECK(again.checklist[i].id == p.checklist[i].id);
        CHECK(again.checklist[i].status == p.checklist[i].status);
    }

    req.eps = 0.5;
    const ParameterPack q = choose_parameters(req);
    const double part = 0.5 * q.Delta / (16 * (1 + std::log(2.0)));
    CHECK(part == doctest::Approx(6.8e-4).epsilon(0.01));
    CHECK(q.delta_part == doctest::Approx(part).epsilon(1e-6));
    CHECK(q.delta <= part);
    CHECK(static_cast<double>(q.N) >= 11 / q.delta);
    CHECK(q.N >= 16000);

    req.h_target = hs;
    CHECK_THROWS_AS(choose_parameters(req), PreconditionError);
}

TEST_CASE("marriage bound") {
    ParameterPack p = pack_for(100, 1);
    p.Delta = 0.01;
    CHECK(marriage_bound(p, 0.8, 0.5) == doctest::Approx(std::log(0.5) + 28));
    CHECK(marriage_bound(p, 0.5, 0.5) == doctest::Approx(std::log(0.5) - 2));
    CHECK(marriage_bound(p, 0.5, 0.5) < 0);
}

TEST_CASE("boy set worked examples") {
    const auto fair = MarkovMeasure::bernoulli({0.5, 0.5});
    const BoySet all(fair, 16, -16 * (std::log(2.0L) + 0.01L));
    CHECK(all.count() == 65536);
    // Bernoulli(0.1), N = 64: boys are the words with at most k* ones.
    const auto mu = MarkovMeasure::bernoulli({0.9, 0.1});
    const long double h = mu.entropy(), Delta = 0.02L;
    const long double cut = 64 * (h + Delta);
    int kstar = -1;
    for (int k = 0; k <= 64; ++k)
        if (k * std::log(10.0L) + (64 - k) * std::log(1 / 0.9L) <= cut) kstar = k;
    mpz_class expect = 0;
    for (int k = 0; k <= kstar; ++k) {
        mpz_class c;
        mpz_bin_uiui(c.get_mpz_t(), 64, static_cast<unsigned long>(k));
        expect += c;
    }
    CHECK(BoySet(mu, 64, -cut).count() == expect);
    const auto cycle = MarkovMeasure::from_transition((Eigen::MatrixXd(2, 2) << 0, 1, 1, 0).finished());
    const BoySet one(cycle, 7, std::log(0.5L) - 1e-9L);
    CHECK(one.count() == 2);  // one block per phase of the cycle
}

TEST_CASE("girl set worked examples") {
    CHECK(GirlSet(full_shift(2), 5, nullptr).count() == 32);
    const auto nu = MarkovMeasure::parry(full_shift(2));
    // H1 = "11" and H2 = "10" forbidden, counted against brute force.
    const MarkerScheme s = make_scheme(oracle::word("11000010"), 1, 0.5, nu);
    for (std::size_t n = 2; n <= 14; ++n) {
        const auto expect = oracle::count_admissible(2, n, {s.h1, s.h2});
        CHECK(GirlSet(full_shift(2), static_cast<std::int64_t>(n), &s).count() == expect);
    }
    const Sft golden = golden_mean_shift();
    CHECK(GirlSet(golden, 3, nullptr).count() == 5);
    // Avoiding "01" and "00" inside the golden-mean shift leaves nothing.
    const MarkerScheme bare = make_scheme(oracle::word("01000100"), 1, 0.5, MarkovMeasure::parry(golden));
    CHECK_THROWS_AS(GirlSet(golden, 11, &bare), CapacityError);
}

TEST_CASE("Hall matching worked examples") {
    Relation rel;
    rel.boys = {oracle::word("1"), oracle::word("2")};
    rel.girls = {oracle::word("1"), oracle::word("2"), oracle::word("3")};
    rel.adj = {{0, 1}, {1, 2}};
    const auto phi = hall_match(rel, 2);
    REQUIRE(phi.size() == 2);
    CHECK(phi[0] != phi[1]);
    for (std::size_t b = 0; b < 2; ++b)
        CHECK(std::find(rel.adj[b].begin(), rel.adj[b].end(), phi[b]) != rel.adj[b].end());
    rel.adj = {{0}, {0}};
    CHECK_THROWS_AS(hall_match(rel, 1), HallDegreeError);
    Relation empty;
    CHECK(hall_match(empty, 1).empty());
}

TEST_CASE("relations are witnessed by stored samples") {
    const auto fair = MarkovMeasure::bernoulli({0.5, 0.5});
    const BoySet boys(fair, 6, -6 * std::log(2.0L) - 1e-6L);
    const GirlSet girls(full_shift(2), 6, nullptr);
    const ParameterPack p = pack_for(6, 0);
    CHECK(build_relation(boys, girls, {}, p).num_edges() == 0);
    std::vector<std::pair<Word, Word>> samples;
    for (int i = 0; i < 200; ++i) samples.emplace_back(fair.sample(6, derive_seed(1, i)), fair.sample(6, derive_seed(2, i)));
    const Relation rel = build_relation(boys, girls, samples, p);
    CHECK(rel.num_edges() > 0);
    for (const auto& [edge, idx] : rel.witness) {
        CHECK(samples[idx].first.symbols == rel.boys[edge.first].symbols);
        CHECK(samples[idx].second.symbols == rel.girls[edge.second].symbols);
    }
    // Samples whose source block is not a boy add nothing.
    const auto mu = MarkovMeasure::bernoulli({0.9, 0.1});
    const BoySet strict(mu, 6, 6 * std::log(0.9L) - 1e-9L);  // only 000000
    const Relation r2 = build_relation(strict, girls, {{oracle::word("111111"), oracle::word("000000")}}, p);
    CHECK(r2.num_edges() == 0);
}

TEST_CASE("enumerative dictionary worked examples") {
    const auto fair = MarkovMeasure::bernoulli({0.5, 0.5});
    auto boys = std::make_shared<BoySet>(fair, 3, -3 * std::log(2.0L) - 1e-6L);
    auto girls = std::make_shared<GirlSet>(full_shift(2), 4, nullptr);
    const Dictionary d = Dictionary::enumerative(boys, girls);
    for (const auto& w : oracle::all_words(2, 3)) CHECK(to_string(*d.encode(Word(w))) == "0" + to_string(Word(w)));
    auto big = std::make_shared<BoySet>(fair, 4, -4 * std::log(2.0L) - 1e-6L);
    auto small = std::make_shared<GirlSet>(full_shift(2), 3, nullptr);
    try {
        Dictionary::enumerative(big, small);
        FAIL("expected CapacityError");
    } catch (const CapacityError& e) {
        CHECK(std::string(e.what()).find("16") != std::string::npos);
        CHECK(std::string(e.what()).find("8") != std::string::npos);
    }
    const Sft golden = golden_mean_shift();
    auto g5 = std::make_shared<GirlSet>(golden, 5, nullptr);
    CHECK(g5->count() == 13);
    const auto mu = MarkovMeasure::bernoulli({0.9, 0.1});
    auto b5 = std::make_shared<BoySet>(mu, 5, 4 * std::log(0.9L) + std::log(0.1L) - 1e-9L);  // at most one 1
    CHECK(b5->count() == 6);
    const Dictionary gd = Dictionary::enumerative(b5, g5);
    std::set<std::vector<Symbol>> images;
    for (const auto& w : oracle::all_words(2, 5))
        if (const auto g = gd.encode(Word(w))) {
            CHECK(golden.admissible(*g));
            CHECK(images.insert(g->symbols).second);
        }
    CHECK(images.size() == 6);
}

TEST_CASE("degenerate entropy gap reduces the ratio predicate") {
    const auto fair = MarkovMeasure::bernoulli({0.5, 0.5});
    ParameterPack p = pack_for(30, 1);
    p.h_source = std::log(2.0);
    p.Delta = 0.03;
    p.h_target = p.h_source + 10 * p.Delta;
    p.delta = 0.001;
    const BoySet boys = BoySet::from_pack(fair, p);
    const GirlSet girls(full_shift(3), 30 - 11, nullptr);
    const auto r = verify_dictionary_bounds(boys, girls, p, p.h_source, p.h_target);
    CHECK(static_cast<double>(r.ratio_threshold) == doctest::Approx(8 * 30 * p.Delta));
}

}  // TEST_SUITE
