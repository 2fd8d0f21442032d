#include "symdyn/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "symdyn/error.hpp"

namespace symdyn {

double binary_entropy(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw PreconditionError("estimators", "binary entropy argument outside [0,1]");
    if (eta == 0.0 || eta == 1.0) return 0.0;
    return -eta * std::log(eta) - (1.0 - eta) * std::log1p(-eta);
}

double dbar_entropy_bound(double eta, int alphabet_size) {
    if (!(eta > 0.0 && eta < 1.0)) throw PreconditionError("estimators", "eta must lie in (0,1)");
    if (alphabet_size < 2) throw PreconditionError("estimators", "alphabet size must be >= 2");
    return binary_entropy(eta) + eta * std::log(static_cast<double>(alphabet_size));
}

double dbar_sample_upper(const Word& u, const Word& v) {
    if (u.size() != v.size()) throw PreconditionError("estimators", "d-bar sample needs equal lengths");
    if (u.empty()) throw PreconditionError("estimators", "d-bar sample needs length >= 1");
    std::size_t diff = 0;
    for (std::size_t i = 0; i < u.size(); ++i) diff += u.symbols[i] != v.symbols[i];
    return static_cast<double>(diff) / static_cast<double>(u.size());
}

double bk_estimate(const MarkovMeasure& mu, const Word& x, std::int64_t n, std::int64_t radius) {
    if (n < 1) throw PreconditionError("estimators", "Brin-Katok estimate needs n >= 1");
    if (!x.covers(-radius, n + radius))
        throw RangeError("estimators", "sample does not cover [" + std::to_string(-radius) + "," +
                                           std::to_string(n + radius) + ")");
    const long double lp = mu.log_cylinder(x.slice(-radius, n + radius));
    return static_cast<double>(-lp / static_cast<long double>(n));
}

double dw_estimate(const Word& z, std::int64_t n, std::int64_t radius, std::optional<std::int64_t> bound) {
    if (n < 1) throw PreconditionError("estimators", "return-time estimate needs n >= 1");
    const std::int64_t lo = -radius, hi = n + radius;
    if (!z.covers(lo, hi)) throw RangeError("estimators", "sample does not cover the window");
    const std::int64_t room = z.hi() - hi;
    const std::int64_t limit = std::min(bound.value_or(std::min<std::int64_t>(static_cast<std::int64_t>(z.size()) - n, 10000000)), room);
    const Symbol* w = z.symbols.data() + (lo - z.base);
    const std::int64_t len = hi - lo;
    for (std::int64_t i = 1; i <= limit; ++i) {
        if (std::equal(w, w + len, w + i)) return std::log(static_cast<double>(i)) / static_cast<double>(n);
    }
    throw NoReturnError("estimators", "no return within search bound " + std::to_string(limit));
}

BlockDistribution block_distribution(const Word& w, int k) {
    BlockDistribution d;
    d.k = k;
    if (k < 1 || w.size() < static_cast<std::size_t>(k)) return d;
    const std::size_t total = w.size() - k + 1;
    std::map<std::vector<Symbol>, std::size_t> counts;
    std::vector<Symbol> key(k);
    for (std::size_t i = 0; i < total; ++i) {
        std::copy(w.symbols.begin() + i, w.symbols.begin() + i + k, key.begin());
        ++counts[key];
    }
    for (auto& [key2, c] : counts) d.freq[key2] = static_cast<double>(c) / static_cast<double>(total);
    return d;
}

BlockDistribution exact_block_distribution(const MarkovMeasure& mu, int k) {
    BlockDistribution d;
    d.k = k;
    const Sft sft = mu.support();
    for (const Word& w : enumerate_words(sft, static_cast<std::size_t>(k)))
        d.freq[w.symbols] = mu.cylinder_probability(w);
    return d;
}

std::vector<BlockDistribution> block_distributions(const Word& w, int kmax) {
    std::vector<BlockDistribution> out;
    for (int k = 1; k <= kmax; ++k) out.push_back(block_distribution(w, k));
    return out;
}

double total_variation(const BlockDistribution& a, const BlockDistribution& b) {
    if (a.k != b.k) throw PreconditionError("estimators", "block lengths differ");
    double s = 0;
    auto ia = a.freq.begin();
    auto ib = b.freq.begin();
    while (ia != a.freq.end() || ib != b.freq.end()) {
        if (ib == b.freq.end() || (ia != a.freq.end() && ia->first < ib->first)) {
            s += std::abs(ia->second);
            ++ia;
        } else if (ia == a.freq.end() || ib->first < ia->first) {
            s += std::abs(ib->second);
            ++ib;
        } else {
            s += std::abs(ia->second - ib->second);
            ++ia;
            ++ib;
        }
    }
    return 0.5 * s;
}

double weakstar_surrogate(const std::vector<BlockDistribution>& a,
                          const std::vector<BlockDistribution>& b, int kmax) {
    if (kmax < 1 || a.size() < static_cast<std::size_t>(kmax) || b.size() < static_cast<std::size_t>(kmax))
        throw PreconditionError("estimators", "distribution lists must cover k = 1.." + std::to_string(kmax));
    double s = 0;
    double weight = 0.5;
    for (int k = 1; k <= kmax; ++k, weight *= 0.5) {
        if (a[k - 1].k != k || b[k - 1].k != k)
            throw PreconditionError("estimators", "distribution list entry " + std::to_string(k) + " has wrong block length");
        s += weight * total_variation(a[k - 1], b[k - 1]);
    }
    return s;
}

Word pair_word(const Word& x, const Word& y, int ny) {
    if (x.size() != y.size()) throw PreconditionError("estimators", "pair words need equal lengths");
    if (ny < 1) throw PreconditionError("estimators", "target alphabet size must be positive");
    Word out;
    out.base = x.base;
    out.symbols.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const int v = x.symbols[i] * ny + y.symbols[i];
        if (v > 255) throw RangeError("estimators", "pair alphabet exceeds 256 symbols");
        out.symbols[i] = static_cast<Symbol>(v);
    }
    return out;
}

}  // namespace symdyn
