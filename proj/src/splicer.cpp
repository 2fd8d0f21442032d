#include "symdyn/splicer.hpp"

#include <algorithm>
#include <cmath>

#include "symdyn/error.hpp"
#include "symdyn/interp.hpp"
#include "symdyn/rng.hpp"

namespace symdyn {

namespace {

// Floors of products like 0.05 * 1000 must not land one below.
std::int64_t safe_floor(double x) { return static_cast<std::int64_t>(std::floor(x + 1e-9)); }

void append_run(std::vector<Symbol>& out, Symbol s, std::int64_t n) { out.insert(out.end(), static_cast<std::size_t>(n), s); }

// Segments of `src` at maximal runs of `label` in `seq`.
void collect_runs(const std::vector<Symbol>& seq, Symbol label, const Word& src,
                  std::vector<std::pair<std::int64_t, Word>>& segs) {
    const std::size_t n = seq.size();
    std::size_t i = 0;
    while (i < n) {
        if (seq[i] != label) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && seq[j] == label) ++j;
        segs.emplace_back(static_cast<std::int64_t>(i),
                          Word(std::vector<Symbol>(src.symbols.begin() + i, src.symbols.begin() + j)));
        i = j;
    }
}

}  // namespace

SkeletonParams skeleton_params(double eps, double gamma, std::int64_t N) {
    if (!(gamma > 0 && gamma < eps && eps < 1))
        throw PreconditionError("splicer", "need 0 < gamma < eps < 1");
    if (N < 1) throw PreconditionError("splicer", "N must be positive");
    SkeletonParams p;
    p.k0 = safe_floor(gamma / 2 * static_cast<double>(N));
    p.k1 = safe_floor((1 - eps - gamma / 2) * static_cast<double>(N));
    p.k2 = safe_floor((eps - gamma / 2) * static_cast<double>(N));
    if (p.k0 < 1) throw PreconditionError("splicer", "k0 = floor(gamma N / 2) is 0 at N = " + std::to_string(N));
    const double total = static_cast<double>(2 * p.k0 + p.k1 + p.k2);
    p.ratio1 = static_cast<double>(p.k1) / total;
    p.ratio2 = static_cast<double>(p.k2) / total;
    p.bound1 = 1 - eps - gamma;
    p.bound2 = eps - gamma;
    if (!(p.ratio1 > p.bound1))
        throw PreconditionError("splicer", "time ratio k1/(2k0+k1+k2) = " + std::to_string(p.ratio1) +
                                               " does not exceed 1-eps-gamma");
    if (!(p.ratio2 > p.bound2))
        throw PreconditionError("splicer", "time ratio k2/(2k0+k1+k2) = " + std::to_string(p.ratio2) +
                                               " does not exceed eps-gamma");
    return p;
}

Skeleton entropy_boost_skeleton(std::int64_t k0, std::int64_t k1, std::int64_t k2, std::size_t length,
                                std::uint64_t seed) {
    if (k0 < 1 || k1 < 1 || k2 < 1) throw PreconditionError("splicer", "skeleton runs must be positive");
    Skeleton s;
    s.kind = SkeletonKind::EntropyBoost;
    s.k0 = k0;
    s.k1 = k1;
    s.k2 = k2;
    s.seed = seed;
    Rng rng(derive_seed(seed, 11));
    while (s.seq.size() < length) {
        append_run(s.seq, 1, k1 + (rng.coin() ? 1 : 0));
        append_run(s.seq, 0, k0);
        append_run(s.seq, 2, k2);
        append_run(s.seq, 0, k0);
    }
    s.seq.resize(length);
    return s;
}

Skeleton full_support_skeleton(std::int64_t N, std::int64_t M, std::size_t length, std::uint64_t seed) {
    if (M < 1 || N - 2 * M < 1) throw PreconditionError("splicer", "need M >= 1 and N - 2M >= 1");
    Skeleton s;
    s.kind = SkeletonKind::FullSupport;
    s.N = N;
    s.M = M;
    s.seed = seed;
    Rng rng(derive_seed(seed, 12));
    while (s.seq.size() < length) {
        append_run(s.seq, 1, N - 2 * M + (rng.coin() ? 1 : 0));
        append_run(s.seq, 0, M);
        append_run(s.seq, 2, 1);
        append_run(s.seq, 0, M);
    }
    s.seq.resize(length);
    return s;
}

bool skeleton_parses(const Skeleton& s) {
    std::int64_t ones, zeros, twos;
    if (s.kind == SkeletonKind::EntropyBoost) {
        ones = s.k1;
        zeros = s.k0;
        twos = s.k2;
    } else {
        ones = s.N - 2 * s.M;
        zeros = s.M;
        twos = 1;
    }
    const auto& q = s.seq;
    const std::size_t n = q.size();
    std::size_t i = 0;
    auto run = [&](Symbol sym, std::int64_t lo, std::int64_t hi) -> int {
        // 1: full run read; 0: truncated at end; -1: illegal
        std::int64_t len = 0;
        while (i < n && q[i] == sym) {
            ++i;
            ++len;
        }
        if (i == n && len <= hi) return 0;
        return (len >= lo && len <= hi) ? 1 : -1;
    };
    while (i < n) {
        for (auto [sym, lo, hi] : {std::tuple<Symbol, std::int64_t, std::int64_t>{1, ones, ones + 1},
                                   {0, zeros, zeros},
                                   {2, twos, twos},
                                   {0, zeros, zeros}}) {
            const int r = run(sym, lo, hi);
            if (r < 0) return false;
            if (r == 0) return true;
        }
    }
    return true;
}

Word splice_entropy_boost(const Sft& sft, const Word& y1, const Word& y2, const Skeleton& skeleton) {
    if (skeleton.kind != SkeletonKind::EntropyBoost) throw PreconditionError("splicer", "wrong skeleton kind");
    if (skeleton.k2 < 1) throw PreconditionError("splicer", "k2 = 0 gives a degenerate skeleton");
    const std::size_t n = skeleton.seq.size();
    if (y1.size() < n || y2.size() < n) throw PreconditionError("splicer", "sources shorter than skeleton");
    if (!sft.admissible(y1) || !sft.admissible(y2)) throw PreconditionError("splicer", "source words must be admissible");
    const std::int64_t gap = specification_gap(sft);
    if (skeleton.k0 < gap)
        throw PreconditionError("splicer", "k0 = " + std::to_string(skeleton.k0) + " below specification gap " +
                                               std::to_string(gap));
    SegmentPlan plan;
    plan.lo = 0;
    plan.hi = static_cast<std::int64_t>(n);
    plan.min_gap = gap;
    collect_runs(skeleton.seq, 1, y1, plan.segments);
    collect_runs(skeleton.seq, 2, y2, plan.segments);
    std::sort(plan.segments.begin(), plan.segments.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return interpolate(sft, plan);
}

Word splice_full_support(const Sft& sft, const Word& y1, const Word& target, std::int64_t N, std::int64_t M,
                         std::uint64_t seed) {
    if (target.empty() || target.size() % 2 == 0)
        throw PreconditionError("splicer", "target must have odd length 1 + 2t");
    if (!sft.admissible(target)) throw PreconditionError("splicer", "target word is not admissible");
    if (!sft.admissible(y1)) throw PreconditionError("splicer", "y1 is not admissible");
    if (static_cast<std::int64_t>(y1.size()) < N + 2) throw PreconditionError("splicer", "y1 shorter than N + 2");
    const std::int64_t t = static_cast<std::int64_t>(target.size() / 2);
    const std::int64_t gap = specification_gap(sft);
    if (M - t < gap)
        throw PreconditionError("splicer", "M - t = " + std::to_string(M - t) + " below specification gap " +
                                               std::to_string(gap));
    const Skeleton sk = full_support_skeleton(N, M, y1.size(), seed);
    const std::int64_t n = static_cast<std::int64_t>(y1.size());
    SegmentPlan plan;
    plan.lo = 0;
    plan.hi = n;
    plan.min_gap = gap;
    collect_runs(sk.seq, 1, y1, plan.segments);
    for (std::int64_t i = 0; i < n; ++i) {
        if (sk.seq[i] != 2) continue;
        if (i - t < 0 || i + t + 1 > n) continue;  // clipped at the ends
        plan.segments.emplace_back(i - t, target);
    }
    std::sort(plan.segments.begin(), plan.segments.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return interpolate(sft, plan);
}

double visit_frequency(const Word& y, const Word& target) {
    if (y.empty() || target.empty() || target.size() > y.size()) return 0.0;
    std::size_t hits = 0;
    const std::size_t last = y.size() - target.size();
    for (std::size_t i = 0; i <= last; ++i)
        hits += std::equal(target.symbols.begin(), target.symbols.end(), y.symbols.begin() + i);
    return static_cast<double>(hits) / static_cast<double>(y.size());
}

}  // namespace symdyn
