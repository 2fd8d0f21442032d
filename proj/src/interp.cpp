#include "symdyn/interp.hpp"

#include <algorithm>

#include "symdyn/error.hpp"

namespace symdyn {

void SegmentPlan::validate() const {
    if (hi < lo) throw PreconditionError("interp", "plan range is inverted");
    std::int64_t cursor = lo;
    bool first = true;
    for (const auto& [start, w] : segments) {
        const std::int64_t end = start + static_cast<std::int64_t>(w.size());
        if (start < cursor)
            throw PreconditionError("interp", "segment at " + std::to_string(start) + " overlaps or is unsorted");
        if (end > hi) throw PreconditionError("interp", "segment at " + std::to_string(start) + " exceeds range");
        if ((!first || constrained_ends) && start - cursor < min_gap)
            throw PreconditionError("interp", "gap " + std::to_string(start - cursor) + " before segment at " +
                                                  std::to_string(start) + " is below min_gap " + std::to_string(min_gap));
        if (max_segment >= 0 && static_cast<std::int64_t>(w.size()) > max_segment)
            throw PreconditionError("interp", "segment at " + std::to_string(start) + " longer than max_segment");
        cursor = end;
        first = false;
    }
    if (constrained_ends && !segments.empty() && hi - cursor < min_gap)
        throw PreconditionError("interp", "final gap below min_gap");
}

Connector::Connector(const Sft& sft) : dfa_(sft.language()), prefix_len_(sft.state_length()) {}

int Connector::extend(int q, const Word& right, std::int64_t gap, std::vector<Symbol>& out) const {
    if (gap < 0) throw PreconditionError("interp", "negative gap");
    const int n = dfa_.num_states();
    const int k = dfa_.alphabet;
    // Only the first s symbols of an admissible right word constrain the join.
    const std::size_t probe = std::min<std::size_t>(right.size(), static_cast<std::size_t>(prefix_len_));
    std::vector<char> goal(n, 0);
    for (int p = 0; p < n; ++p) {
        int r = p;
        for (std::size_t i = 0; i < probe && r >= 0; ++i) r = dfa_.next(r, right.symbols[i]);
        goal[p] = r >= 0;
    }
    // feasible[j][p]: some word of length j leads from p into goal.
    std::vector<std::vector<char>> feasible{goal};
    while (static_cast<std::int64_t>(feasible.size()) <= gap) {
        const auto& prev = feasible.back();
        std::vector<char> cur(n, 0);
        for (int p = 0; p < n; ++p)
            for (int a = 0; a < k; ++a) {
                const int r = dfa_.delta[p * k + a];
                if (r >= 0 && prev[r]) {
                    cur[p] = 1;
                    break;
                }
            }
        if (cur == prev) break;  // stationary from here on
        feasible.push_back(std::move(cur));
    }
    auto feas = [&](std::int64_t j) -> const std::vector<char>& {
        return feasible[static_cast<std::size_t>(std::min<std::int64_t>(j, static_cast<std::int64_t>(feasible.size()) - 1))];
    };
    if (q < 0 || !feas(gap)[q])
        throw NoConnectorError("interp", "no connecting word of length " + std::to_string(gap));
    for (std::int64_t i = 0; i < gap; ++i) {
        const auto& need = feas(gap - i - 1);
        int a = 0;
        for (; a < k; ++a) {
            const int r = dfa_.delta[q * k + a];
            if (r >= 0 && need[r]) {
                q = r;
                break;
            }
        }
        out.push_back(static_cast<Symbol>(a));
    }
    for (Symbol s : right.symbols) {
        q = dfa_.next(q, s);
        if (q < 0) throw PreconditionError("interp", "right word " + to_string(right) + " is not admissible");
        out.push_back(s);
    }
    return q;
}

Word connect_words(const Sft& sft, const Word& left, const Word& right, std::int64_t gap) {
    if (!sft.admissible(left)) throw PreconditionError("interp", "left word is not admissible");
    if (!sft.admissible(right)) throw PreconditionError("interp", "right word is not admissible");
    Connector c(sft);
    const int q = c.dfa().run(c.start(), left);
    std::vector<Symbol> out;
    c.extend(q, right, gap, out);
    out.resize(static_cast<std::size_t>(gap));
    return Word(std::move(out));
}

Word interpolate(const Sft& sft, const SegmentPlan& plan) {
    plan.validate();
    Connector c(sft);
    std::vector<Symbol> out;
    out.reserve(static_cast<std::size_t>(plan.hi - plan.lo));
    int q = c.start();
    std::int64_t cursor = plan.lo;
    for (const auto& [start, w] : plan.segments) {
        if (!sft.admissible(w))
            throw PreconditionError("interp", "segment at " + std::to_string(start) + " is not admissible");
        q = c.extend(q, w, start - cursor, out);
        cursor = start + static_cast<std::int64_t>(w.size());
    }
    c.extend(q, Word{}, plan.hi - cursor, out);
    return Word(std::move(out), plan.lo);
}

}  // namespace symdyn
