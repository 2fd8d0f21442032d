#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "symdyn/language.hpp"
#include "symdyn/markers.hpp"
#include "symdyn/measure.hpp"
#include "symdyn/params.hpp"
#include "symdyn/sft.hpp"

namespace symdyn {

long double log_mpz(const mpz_class& v);  // natural log; -inf for 0

// Source blocks of length N with log mu([B]) >= log_threshold. Words are
// grouped into composition classes (initial symbol, counts of each distinct
// transition probability), which fixes their measure; counting and
// ranking run over classes without listing members.
class BoySet {
public:
    BoySet(const MarkovMeasure& mu, std::int64_t N, long double log_threshold);
    static BoySet from_pack(const MarkovMeasure& mu, const ParameterPack& pack);

    std::int64_t length() const { return N_; }
    long double log_threshold() const { return threshold_; }
    const MarkovMeasure& measure() const { return mu_; }
    bool contains(const Word& w) const;
    const mpz_class& count() const { return count_; }
    long double mass() const { return mass_; }
    std::size_t num_value_classes() const { return logv_.size(); }

    // Builds the per-length completion tables (CapacityError when too big).
    void enable_ranking();
    bool ranking_enabled() const { return !tables_.empty(); }
    mpz_class rank(const Word& w) const;
    Word unrank(const mpz_class& r) const;

private:
    using Table = std::map<std::uint64_t, mpz_class>;  // packed counts -> words

    bool is_boy(int first, std::uint64_t key) const;
    mpz_class boys_below(std::int64_t k, int a, int first, std::uint64_t prefix) const;
    std::uint64_t unit(int cls) const { return radix_pow_[cls]; }
    std::vector<Table> step(const std::vector<Table>& prev) const;

    MarkovMeasure mu_;
    std::int64_t N_;
    long double threshold_;
    std::vector<long double> logv_;
    std::vector<int> tclass_;  // a * n + b -> value class, -1 if forbidden
    std::vector<long double> logpi_;
    std::vector<std::uint64_t> radix_pow_;
    mpz_class count_;
    long double mass_ = 0;
    std::vector<std::vector<Table>> tables_;  // [k][a]: words with k transitions starting at a
};

// Target words of a fixed length that contain neither marker window.
class GirlSet {
public:
    GirlSet(const Sft& target, std::int64_t length, const MarkerScheme* scheme);

    std::int64_t length() const { return length_; }
    const mpz_class& count() const { return count_; }
    bool contains(const Word& w) const;
    const Dfa& automaton() const { return dfa_; }

    void enable_ranking();
    bool ranking_enabled() const { return ranker_ != nullptr; }
    mpz_class rank(const Word& w) const;
    Word unrank(const mpz_class& r) const;

private:
    std::int64_t length_;
    Dfa dfa_;
    mpz_class count_;
    std::shared_ptr<WordRanker> ranker_;
};

// Explicit bipartite relation between boy and girl words.
struct Relation {
    std::vector<Word> boys;
    std::vector<Word> girls;
    std::vector<std::vector<int>> adj;                    // boy -> sorted girl indices
    std::map<std::pair<int, int>, std::size_t> witness;  // edge -> first sample index

    std::size_t num_edges() const;
    int boy_index(const Word& b) const;
    int girl_index(const Word& g) const;
};

// (B, g) related iff some sample pair (u, v) has u = B and v[M, N-10M) = g.
Relation build_relation(const BoySet& boys, const GirlSet& girls,
                        const std::vector<std::pair<Word, Word>>& samples, const ParameterPack& pack);
// Trims each girl to at most K boys (lexicographically least kept), then
// drops boys left with fewer than K girls, until both bounds hold.
Relation regularize_relation(const Relation& rel, int K);
// Injection boy -> girl inside the relation; checks the degree conditions.
std::vector<int> hall_match(const Relation& rel, int K);

// log K = log(1/2) + N (h_joint - h_source - 2 Delta).
double marriage_bound(const ParameterPack& pack, double h_joint, double h_source);

enum class DictMode { Enumerative, Hall };

class Dictionary {
public:
    static Dictionary enumerative(std::shared_ptr<BoySet> boys, std::shared_ptr<GirlSet> girls);
    static Dictionary hall(const Relation& rel, int K, std::shared_ptr<BoySet> boys, std::shared_ptr<GirlSet> girls);

    DictMode mode() const { return mode_; }
    const BoySet& boys() const { return *boys_; }
    const GirlSet& girls() const { return *girls_; }
    std::shared_ptr<BoySet> boys_ptr() const { return boys_; }
    std::shared_ptr<GirlSet> girls_ptr() const { return girls_; }
    const std::map<std::vector<Symbol>, Word>& table() const { return phi_; }

    // phi(B); nullopt when B is outside the domain.
    std::optional<Word> encode(const Word& boy) const;
    // phi^{-1}(g); nullopt when g is not in the image.
    std::optional<Word> decode(const Word& girl) const;

private:
    DictMode mode_ = DictMode::Enumerative;
    std::shared_ptr<BoySet> boys_;
    std::shared_ptr<GirlSet> girls_;
    std::map<std::vector<Symbol>, Word> phi_, inverse_;
};

struct DictionaryBounds {
    long double log_boys = 0, log_girls = 0, mass = 0;
    long double girls_threshold = 0, boys_threshold = 0, mass_threshold = 0, ratio_threshold = 0;
    bool girls_ok = false, boys_ok = false, mass_ok = false, ratio_ok = false;
    bool all() const { return girls_ok && boys_ok && mass_ok && ratio_ok; }
};
DictionaryBounds verify_dictionary_bounds(const BoySet& boys, const GirlSet& girls, const ParameterPack& pack,
                                          double h_source, double h_target);

}  // namespace symdyn
