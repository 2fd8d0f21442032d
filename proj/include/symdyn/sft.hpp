#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "symdyn/language.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

// Subshift of finite type, recoded as a vertex shift whose states are the
// admissible words of length max(memory, 1). Only the essential part is kept.
class Sft {
public:
    static Sft build(int alphabet_size, const std::vector<Word>& forbidden);

    int alphabet_size() const { return alphabet_; }
    int memory() const { return memory_; }
    int state_length() const { return state_len_; }
    std::size_t num_states() const { return states_.size(); }
    const std::vector<Word>& forbidden() const { return forbidden_; }
    const Word& state_word(std::size_t i) const { return states_[i]; }
    const std::vector<std::vector<std::uint8_t>>& adjacency() const { return adj_; }

    // Successor state when `a` is appended to state `q`, or -1.
    int step(int q, Symbol a) const { return trans_[static_cast<std::size_t>(q) * alphabet_ + a]; }
    // State index of an s-word, or -1.
    int state_of(const Symbol* w) const;

    bool admissible(const Word& w) const;
    // Automaton accepting exactly the admissible words.
    const Dfa& language() const { return dfa_; }

private:
    int alphabet_ = 0;
    int memory_ = 0;
    int state_len_ = 1;
    std::vector<Word> forbidden_;
    std::vector<Word> states_;
    std::vector<std::int64_t> code_to_state_;
    std::vector<std::vector<std::uint8_t>> adj_;
    std::vector<int> trans_;
    Dfa dfa_;
};

double topological_entropy(const Sft& sft);
// Perron root of a non-negative square matrix (max over strongly connected
// components), bracketed by Collatz-Wielandt bounds on A + I.
double perron_root(const std::vector<std::vector<double>>& a);

// Primitivity index of the recoded adjacency matrix.
std::int64_t specification_gap(const Sft& sft);

struct WindowMetricParams {
    std::int64_t lo = 0;
    std::int64_t hi = 1;
    std::int64_t radius = 0;
};
bool window_distance_below(const Word& u, const Word& v, const WindowMetricParams& p);

using WordPredicate = std::function<bool(const Word&)>;
std::vector<Word> enumerate_words(const Sft& sft, std::size_t n, const WordPredicate& keep = {});
mpz_class count_words(const Sft& sft, std::size_t n);

Sft parse_sft(const std::string& text, const std::string& source = "<sft>");
std::string serialize_sft(const Sft& sft);

// Convenience constructors used by tests and the CLI.
Sft full_shift(int alphabet_size);
Sft golden_mean_shift();

}  // namespace symdyn
