#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "symdyn/measure.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

double binary_entropy(double eta);
// H(eta) + eta log|P|: entropy gap allowed when d-bar < eta.
double dbar_entropy_bound(double eta, int alphabet_size);
// Normalized Hamming distance under the identity-time coupling.
double dbar_sample_upper(const Word& u, const Word& v);

// -(1/n) log mu of the window [-t, n+t) of x (absolute coordinates).
double bk_estimate(const MarkovMeasure& mu, const Word& x, std::int64_t n, std::int64_t radius = 0);
// (1/n) log of the first return of the n-window of z (search up to `bound`).
double dw_estimate(const Word& z, std::int64_t n, std::int64_t radius = 0,
                   std::optional<std::int64_t> bound = std::nullopt);

struct BlockDistribution {
    int k = 0;
    std::map<std::vector<Symbol>, double> freq;
};
BlockDistribution block_distribution(const Word& w, int k);
// Exact k-block law of a Markov measure.
BlockDistribution exact_block_distribution(const MarkovMeasure& mu, int k);
double total_variation(const BlockDistribution& a, const BlockDistribution& b);
// sum_{k=1}^{kmax} 2^-k TV(a_k, b_k); lists are indexed by k-1.
double weakstar_surrogate(const std::vector<BlockDistribution>& a,
                          const std::vector<BlockDistribution>& b, int kmax);
std::vector<BlockDistribution> block_distributions(const Word& w, int kmax);

// Pair process (x_i, y_i) encoded as x_i * ny + y_i.
Word pair_word(const Word& x, const Word& y, int ny);

}  // namespace symdyn
