#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symdyn/sft.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

enum class SkeletonKind { EntropyBoost, FullSupport };

// A {0,1,2}-valued process built from two legal blocks chosen by fair coins.
struct Skeleton {
    SkeletonKind kind = SkeletonKind::EntropyBoost;
    std::vector<Symbol> seq;
    std::int64_t k0 = 0, k1 = 0, k2 = 0;  // entropy boost
    std::int64_t N = 0, M = 0;            // full support
    std::uint64_t seed = 0;
};

struct SkeletonParams {
    std::int64_t k0 = 0, k1 = 0, k2 = 0;
    double ratio1 = 0, ratio2 = 0;  // k1/T, k2/T with T = 2k0+k1+k2
    double bound1 = 0, bound2 = 0;  // 1-eps-gamma, eps-gamma
};

SkeletonParams skeleton_params(double eps, double gamma, std::int64_t N);

Skeleton entropy_boost_skeleton(std::int64_t k0, std::int64_t k1, std::int64_t k2, std::size_t length,
                                std::uint64_t seed);
Skeleton full_support_skeleton(std::int64_t N, std::int64_t M, std::size_t length, std::uint64_t seed);
// Greedy parse into legal blocks (a truncated final block is allowed).
bool skeleton_parses(const Skeleton& s);

// Agrees with y1 where the skeleton is 1 and with y2 where it is 2.
Word splice_entropy_boost(const Sft& sft, const Word& y1, const Word& y2, const Skeleton& skeleton);
// Agrees with y1 on skeleton-1 positions and carries `target`, centred, at
// every skeleton-2 position. Output has the length of y1.
Word splice_full_support(const Sft& sft, const Word& y1, const Word& target, std::int64_t N, std::int64_t M,
                         std::uint64_t seed);

// Fraction of positions i in [0, |y|) where y[i, i+|t|) equals t.
double visit_frequency(const Word& y, const Word& target);

}  // namespace symdyn
