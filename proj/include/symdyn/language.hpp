#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "symdyn/word.hpp"

namespace symdyn {

// Deterministic automaton over symbols 0..alphabet-1; -1 marks the dead state.
struct Dfa {
    int alphabet = 0;
    int start = 0;
    std::vector<int> delta;  // state * alphabet + symbol
    std::vector<char> accepting;

    int num_states() const { return static_cast<int>(accepting.size()); }
    int next(int q, Symbol a) const { return q < 0 ? -1 : delta[q * alphabet + a]; }
    int run(int q, const Word& w) const;
    bool accepts(const Word& w) const;
};

Dfa dfa_product(const Dfa& a, const Dfa& b);
// Aho-Corasick automaton for words containing none of `patterns`.
Dfa avoid_patterns(int alphabet, const std::vector<Word>& patterns);
// Drops unreachable and dead states, then merges equivalent states.
Dfa minimize(const Dfa& d);

// Number of accepted words of length n (rolling DP, O(states) big integers).
mpz_class count_accepted(const Dfa& d, std::size_t n);

// Lexicographic rank/unrank among accepted words of one fixed length.
class WordRanker {
public:
    WordRanker(Dfa dfa, std::size_t length);

    std::size_t length() const { return length_; }
    const mpz_class& count() const { return completions_[length_][dfa_.start]; }
    const Dfa& dfa() const { return dfa_; }
    bool contains(const Word& w) const;
    mpz_class rank(const Word& w) const;
    Word unrank(const mpz_class& r) const;

private:
    const mpz_class& completions(std::size_t k, int q) const { return completions_[k][q]; }

    Dfa dfa_;
    std::size_t length_;
    std::vector<std::vector<mpz_class>> completions_;  // [k][q]: accepted suffixes of length k
};

}  // namespace symdyn
