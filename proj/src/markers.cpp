#include "symdyn/markers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "symdyn/error.hpp"
#include "symdyn/rng.hpp"

namespace symdyn {

namespace {

// Number of offsets i < 6M whose 2M-window equals the window at 6M.
std::int64_t collisions(const std::vector<Symbol>& w, std::int64_t M) {
    const std::int64_t m2 = 2 * M, ref = 6 * M;
    std::int64_t bad = 0;
    for (std::int64_t i = 0; i < ref; ++i)
        bad += std::equal(w.begin() + i, w.begin() + i + m2, w.begin() + ref);
    return bad;
}

}  // namespace

bool self_distinguishing(const Word& w, std::int64_t M) {
    if (M < 1 || static_cast<std::int64_t>(w.size()) != 8 * M) return false;
    return collisions(w.symbols, M) == 0;
}

MarkerScheme make_scheme(const Word& y_mark, std::int64_t M, double alpha, const MarkovMeasure& nu) {
    if (M < 1) throw PreconditionError("markers", "M must be >= 1");
    if (static_cast<std::int64_t>(y_mark.size()) != 8 * M)
        throw PreconditionError("markers", "marker length must be 8M");
    MarkerScheme s;
    s.y_mark = Word(y_mark.symbols);
    s.M = M;
    s.alpha = alpha;
    s.h1 = s.y_mark.sub(0, static_cast<std::size_t>(2 * M));
    s.h2 = s.y_mark.sub(static_cast<std::size_t>(6 * M), static_cast<std::size_t>(2 * M));
    s.nu_h1 = nu.cylinder_probability(s.h1);
    s.nu_h2 = nu.cylinder_probability(s.h2);
    return s;
}

bool scheme_valid(const MarkerScheme& s, const Sft& sft, const MarkovMeasure& nu) {
    const double cap = s.alpha / static_cast<double>(s.M);
    return static_cast<std::int64_t>(s.y_mark.size()) == 8 * s.M && sft.admissible(s.y_mark) &&
           self_distinguishing(s.y_mark, s.M) && nu.cylinder_probability(s.h1) < cap &&
           nu.cylinder_probability(s.h2) < cap;
}

MarkerScheme find_marker(const Sft& sft, const MarkovMeasure& nu, std::int64_t M, double alpha,
                         std::uint64_t budget, std::uint64_t seed) {
    if (M < 1) throw PreconditionError("markers", "M must be >= 1");
    if (!(alpha > 0)) throw PreconditionError("markers", "alpha must be positive");
    if (nu.num_states() != sft.alphabet_size())
        throw PreconditionError("markers", "reference measure and SFT alphabets differ");
    bool deterministic = true;
    for (const auto& row : sft.adjacency())
        if (std::count(row.begin(), row.end(), 1) != 1) deterministic = false;
    if (deterministic && static_cast<std::int64_t>(sft.num_states()) <= 6 * M)
        throw NoMarkerError("markers", "no marker exists: the SFT is a single periodic orbit of period " +
                                           std::to_string(sft.num_states()));
    specification_gap(sft);  // throws when not mixing
    const std::int64_t len = 8 * M;
    const double cap = alpha / static_cast<double>(M);
    const std::size_t m2 = static_cast<std::size_t>(2 * M);
    auto penalty = [&](const std::vector<Symbol>& w) {
        std::int64_t v = collisions(w, M);
        if (!(nu.cylinder_probability(Word(std::vector<Symbol>(w.begin(), w.begin() + m2))) < cap)) v += 1;
        if (!(nu.cylinder_probability(Word(std::vector<Symbol>(w.begin() + 6 * M, w.begin() + 8 * M))) < cap)) v += 1;
        return v;
    };
    const double bits = static_cast<double>(len) * std::log2(static_cast<double>(sft.alphabet_size()));
    const Dfa& d = sft.language();
    if (bits <= 24.0) {
        // Exhaustive in lexicographic order: the first hit is canonical.
        bool any_distinguishing = false;
        const std::vector<Word> words = enumerate_words(sft, static_cast<std::size_t>(len));
        for (const Word& w : words) {
            if (collisions(w.symbols, M) != 0) continue;
            any_distinguishing = true;
            if (penalty(w.symbols) == 0) return make_scheme(w, M, alpha, nu);
        }
        if (!any_distinguishing)
            throw NoMarkerError("markers", "no marker exists: no admissible self-distinguishing word of length " +
                                               std::to_string(len));
        throw NoMarkerError("markers", "no self-distinguishing word meets nu(H) < alpha/M = " + std::to_string(cap));
    }
    // Random restarts with single-symbol hill climbing on the violation count.
    Rng rng(derive_seed(seed, 21));
    std::vector<Symbol> best;
    std::int64_t best_pen = -1;
    std::uint64_t evals = 0;
    auto random_word = [&]() {
        std::vector<Symbol> w;
        int q = d.start;
        for (std::int64_t i = 0; i < len; ++i) {
            std::vector<Symbol> opts;
            for (int a = 0; a < d.alphabet; ++a)
                if (d.next(q, static_cast<Symbol>(a)) >= 0) opts.push_back(static_cast<Symbol>(a));
            const Symbol a = opts[rng.below(opts.size())];
            w.push_back(a);
            q = d.next(q, a);
        }
        return w;
    };
    while (evals < budget) {
        std::vector<Symbol> w = random_word();
        std::int64_t pen = penalty(w);
        ++evals;
        bool improved = true;
        while (pen > 0 && improved && evals < budget) {
            improved = false;
            for (std::int64_t i = 0; i < len && !improved && evals < budget; ++i) {
                const Symbol old = w[i];
                for (int a = 0; a < d.alphabet && evals < budget; ++a) {
                    if (a == old) continue;
                    w[i] = static_cast<Symbol>(a);
                    if (!d.accepts(Word(w))) continue;
                    ++evals;
                    const std::int64_t p = penalty(w);
                    if (p < pen) {
                        pen = p;
                        improved = true;
                        break;
                    }
                }
                if (!improved) w[i] = old;
            }
        }
        if (best_pen < 0 || pen < best_pen) {
            best_pen = pen;
            best = w;
        }
        if (pen == 0) return make_scheme(Word(w), M, alpha, nu);
    }
    if (best.empty()) throw NoMarkerError("markers", "budget exhausted before any candidate");
    const std::int64_t col = collisions(best, M);
    throw NoMarkerError("markers", "budget exhausted; best candidate " + to_string(Word(best)) + " has " +
                                       std::to_string(col) + " window collisions and " +
                                       std::to_string(best_pen - col) + " measure violations");
}

std::int64_t locate_offset(const Word& w, const MarkerScheme& scheme, std::int64_t L) {
    const std::int64_t M = scheme.M;
    if (!(L > 18 * M)) throw PreconditionError("markers", "offset recovery needs L > 18M");
    if (static_cast<std::int64_t>(w.size()) < L) throw RangeError("markers", "word shorter than L");
    const auto& m = scheme.y_mark.symbols;
    auto first = w.symbols.begin();
    auto it = std::search(first, first + L, m.begin(), m.end());
    if (it == first + L) throw MarkerNotFoundError("markers", "marker not found in window of length " + std::to_string(L));
    return (L - 9 * M) - static_cast<std::int64_t>(it - first);
}

bool avoidance_pass(const Word& w, const MarkerScheme& scheme, std::int64_t N) {
    const std::int64_t m2 = 2 * scheme.M;
    if (static_cast<std::int64_t>(w.size()) < N + m2)
        throw PreconditionError("markers", "avoidance filter needs words of length >= N + 2M");
    const auto& a = scheme.h1.symbols;
    const auto& b = scheme.h2.symbols;
    for (std::int64_t j = 0; j < N; ++j) {
        auto s = w.symbols.begin() + j;
        if (std::equal(a.begin(), a.end(), s) || std::equal(b.begin(), b.end(), s)) return false;
    }
    return true;
}

std::vector<Word> avoidance_filter(const std::vector<Word>& words, const MarkerScheme& scheme, std::int64_t N) {
    std::vector<Word> out;
    for (const Word& w : words)
        if (avoidance_pass(w, scheme, N)) out.push_back(w);
    return out;
}

std::string serialize_marker(const MarkerScheme& s) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", s.alpha);
    return "M=" + std::to_string(s.M) + " alpha=" + buf + " word=" + to_string(s.y_mark);
}

MarkerScheme parse_marker(const std::string& line, const MarkovMeasure& nu) {
    std::istringstream in(line);
    std::string tok;
    std::int64_t M = -1;
    double alpha = -1;
    std::string word;
    int col = 1;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw ParseError("<marker>", 1, col, "expected key=value, got '" + tok + "'");
        const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        try {
            if (key == "M")
                M = std::stoll(val);
            else if (key == "alpha")
                alpha = std::stod(val);
            else if (key == "word")
                word = val;
            else
                throw ParseError("<marker>", 1, col, "unknown key '" + key + "'");
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError("<marker>", 1, col + static_cast<int>(eq) + 1, "bad value '" + val + "'");
        }
        col += static_cast<int>(tok.size()) + 1;
    }
    if (M < 1 || alpha < 0 || word.empty()) throw ParseError("<marker>", 1, 1, "marker line needs M, alpha and word");
    return make_scheme(parse_word(word), M, alpha, nu);
}

}  // namespace symdyn
