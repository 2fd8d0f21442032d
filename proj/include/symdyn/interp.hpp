#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "symdyn/sft.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

// Planned orbit segments on [lo, hi) with everything else left vacuous.
struct SegmentPlan {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    std::vector<std::pair<std::int64_t, Word>> segments;  // (start, word), sorted
    std::int64_t min_gap = 0;
    std::int64_t max_segment = -1;  // -1: unbounded
    bool constrained_ends = false;  // boundary gaps must also reach min_gap

    // Throws PreconditionError naming the first violated invariant.
    void validate() const;
};

// Lexicographically least w of length `gap` with left.w.right admissible.
Word connect_words(const Sft& sft, const Word& left, const Word& right, std::int64_t gap);
// Admissible word on [plan.lo, plan.hi) carrying every segment in place.
Word interpolate(const Sft& sft, const SegmentPlan& plan);

// Reusable connector search for one SFT; backward-feasible state sets are
// cached per right-hand constraint.
class Connector {
public:
    explicit Connector(const Sft& sft);

    // Appends the least connector of length `gap` to `out`, starting from
    // automaton state `q` and ending where `right` can be read. Returns the
    // automaton state after `right`.
    int extend(int q, const Word& right, std::int64_t gap, std::vector<Symbol>& out) const;
    int start() const { return dfa_.start; }
    const Dfa& dfa() const { return dfa_; }

private:
    const Dfa& dfa_;
    int prefix_len_;
};

}  // namespace symdyn
