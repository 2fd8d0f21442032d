#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symdyn/measure.hpp"
#include "symdyn/sft.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

// Marker word of length 8M. h1 is its first 2M-window and h2 its 2M-window
// at offset 6M; the decoder relies on h2 differing from every earlier window.
struct MarkerScheme {
    Word y_mark;
    std::int64_t M = 0;
    double alpha = 0;
    Word h1, h2;
    double nu_h1 = 0, nu_h2 = 0;
    std::int64_t radius = 0;
};

bool self_distinguishing(const Word& w, std::int64_t M);
// Builds a scheme from a given word, recording nu(H1), nu(H2).
MarkerScheme make_scheme(const Word& y_mark, std::int64_t M, double alpha, const MarkovMeasure& nu);
// Checks all three marker conditions against nu.
bool scheme_valid(const MarkerScheme& s, const Sft& sft, const MarkovMeasure& nu);

MarkerScheme find_marker(const Sft& sft, const MarkovMeasure& nu, std::int64_t M, double alpha,
                         std::uint64_t budget, std::uint64_t seed);

// j = (L - 9M) - first exact occurrence of y_mark in w[0, L).
std::int64_t locate_offset(const Word& w, const MarkerScheme& scheme, std::int64_t L);

// True iff no 2M-window of w at offsets [0, N) equals h1 or h2.
bool avoidance_pass(const Word& w, const MarkerScheme& scheme, std::int64_t N);
std::vector<Word> avoidance_filter(const std::vector<Word>& words, const MarkerScheme& scheme, std::int64_t N);

std::string serialize_marker(const MarkerScheme& s);
// Parses "M=<int> alpha=<real> word=<digits>"; nu recomputes the recorded bounds.
MarkerScheme parse_marker(const std::string& line, const MarkovMeasure& nu);

}  // namespace symdyn
