#include "symdyn/dict.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "symdyn/error.hpp"
#include "symdyn/matching.hpp"

namespace symdyn {

namespace {

constexpr std::size_t kMaxTableEntries = 20'000'000;

}  // namespace

long double log_mpz(const mpz_class& v) {
    if (v <= 0) return -std::numeric_limits<long double>::infinity();
    long exp = 0;
    const double m = mpz_get_d_2exp(&exp, v.get_mpz_t());
    return std::log(static_cast<long double>(m)) + static_cast<long double>(exp) * std::log(2.0L);
}

// ---------------------------------------------------------------- boys

BoySet::BoySet(const MarkovMeasure& mu, std::int64_t N, long double log_threshold)
    : mu_(mu), N_(N), threshold_(log_threshold) {
    if (N < 1) throw PreconditionError("dict", "boy length must be >= 1");
    const int n = mu.num_states();
    std::vector<double> values;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (mu.transition()(a, b) > 0) values.push_back(mu.transition()(a, b));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (double v : values) logv_.push_back(std::log(static_cast<long double>(v)));
    tclass_.assign(static_cast<std::size_t>(n) * n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const double t = mu.transition()(a, b);
            if (t > 0)
                tclass_[a * n + b] =
                    static_cast<int>(std::lower_bound(values.begin(), values.end(), t) - values.begin());
        }
    for (int a = 0; a < n; ++a) logpi_.push_back(std::log(static_cast<long double>(mu.stationary()(a))));
    const long double bits = static_cast<long double>(logv_.size()) * std::log2(static_cast<long double>(N));
    if (bits > 62) throw CapacityError("dict", "too many composition classes for packed keys");
    std::uint64_t p = 1;
    for (std::size_t t = 0; t < logv_.size(); ++t) {
        radix_pow_.push_back(p);
        p *= static_cast<std::uint64_t>(N);
    }

    std::vector<Table> cur(n);
    for (int a = 0; a < n; ++a) cur[a][0] = 1;
    for (std::int64_t k = 1; k < N; ++k) cur = step(cur);
    count_ = 0;
    mass_ = 0;
    for (int a = 0; a < n; ++a) {
        if (!(mu.stationary()(a) > 0)) continue;
        for (const auto& [key, c] : cur[a]) {
            if (!is_boy(a, key)) continue;
            count_ += c;
            long double lw = logpi_[a];
            std::uint64_t rest = key;
            for (std::size_t t = 0; t < logv_.size(); ++t) {
                lw += static_cast<long double>(rest % static_cast<std::uint64_t>(N)) * logv_[t];
                rest /= static_cast<std::uint64_t>(N);
            }
            mass_ += std::exp(log_mpz(c) + lw);
        }
    }
}

BoySet BoySet::from_pack(const MarkovMeasure& mu, const ParameterPack& pack) {
    return BoySet(mu, pack.N, -static_cast<long double>(pack.N) * (pack.h_source + pack.Delta));
}

std::vector<BoySet::Table> BoySet::step(const std::vector<Table>& prev) const {
    const int n = mu_.num_states();
    std::vector<Table> out(n);
    std::size_t entries = 0;
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const int t = tclass_[a * n + b];
            if (t < 0) continue;
            const std::uint64_t u = unit(t);
            for (const auto& [key, c] : prev[b]) out[a][key + u] += c;
        }
        entries += out[a].size();
    }
    if (entries > kMaxTableEntries) throw CapacityError("dict", "composition-class table exceeds capacity");
    return out;
}

bool BoySet::is_boy(int first, std::uint64_t key) const {
    long double lw = logpi_[first];
    const std::uint64_t R = static_cast<std::uint64_t>(N_);
    for (std::size_t t = 0; t < logv_.size(); ++t) {
        lw += static_cast<long double>(key % R) * logv_[t];
        key /= R;
    }
    return lw >= threshold_;
}

bool BoySet::contains(const Word& w) const {
    if (static_cast<std::int64_t>(w.size()) != N_) return false;
    const int n = mu_.num_states();
    for (Symbol s : w.symbols)
        if (s >= n) return false;
    if (!(mu_.stationary()(w.symbols[0]) > 0)) return false;
    std::uint64_t key = 0;
    for (std::size_t i = 1; i < w.size(); ++i) {
        const int t = tclass_[w.symbols[i - 1] * n + w.symbols[i]];
        if (t < 0) return false;
        key += unit(t);
    }
    return is_boy(w.symbols[0], key);
}

void BoySet::enable_ranking() {
    if (ranking_enabled()) return;
    const int n = mu_.num_states();
    std::vector<std::vector<Table>> tables;
    std::vector<Table> cur(n);
    for (int a = 0; a < n; ++a) cur[a][0] = 1;
    std::size_t total = 0;
    for (std::int64_t k = 0; k < N_; ++k) {
        if (k > 0) cur = step(cur);
        for (const auto& t : cur) total += t.size();
        if (total > kMaxTableEntries) throw CapacityError("dict", "boy ranking tables exceed capacity");
        tables.push_back(cur);
    }
    tables_ = std::move(tables);
}

mpz_class BoySet::boys_below(std::int64_t k, int a, int first, std::uint64_t prefix) const {
    mpz_class s = 0;
    for (const auto& [key, c] : tables_[static_cast<std::size_t>(k)][a])
        if (is_boy(first, prefix + key)) s += c;
    return s;
}

mpz_class BoySet::rank(const Word& w) const {
    if (!ranking_enabled()) throw PreconditionError("dict", "boy ranking not enabled");
    if (!contains(w)) throw RangeError("dict", "word " + to_string(w) + " is not a boy");
    const int n = mu_.num_states();
    mpz_class r = 0;
    for (int a = 0; a < w.symbols[0]; ++a)
        if (mu_.stationary()(a) > 0) r += boys_below(N_ - 1, a, a, 0);
    std::uint64_t prefix = 0;
    const int first = w.symbols[0];
    for (std::int64_t i = 1; i < N_; ++i) {
        const int prev = w.symbols[i - 1];
        for (int a = 0; a < w.symbols[i]; ++a) {
            const int t = tclass_[prev * n + a];
            if (t >= 0) r += boys_below(N_ - 1 - i, a, first, prefix + unit(t));
        }
        prefix += unit(tclass_[prev * n + w.symbols[i]]);
    }
    return r;
}

Word BoySet::unrank(const mpz_class& r_in) const {
    if (!ranking_enabled()) throw PreconditionError("dict", "boy ranking not enabled");
    if (r_in < 0 || r_in >= count_) throw RangeError("dict", "boy rank " + r_in.get_str() + " out of range");
    const int n = mu_.num_states();
    mpz_class r = r_in;
    Word w;
    int first = -1;
    for (int a = 0; a < n && first < 0; ++a) {
        if (!(mu_.stationary()(a) > 0)) continue;
        const mpz_class c = boys_below(N_ - 1, a, a, 0);
        if (r < c)
            first = a;
        else
            r -= c;
    }
    w.symbols.push_back(static_cast<Symbol>(first));
    std::uint64_t prefix = 0;
    for (std::int64_t i = 1; i < N_; ++i) {
        const int prev = w.symbols.back();
        for (int a = 0; a < n; ++a) {
            const int t = tclass_[prev * n + a];
            if (t < 0) continue;
            const mpz_class c = boys_below(N_ - 1 - i, a, first, prefix + unit(t));
            if (r < c) {
                w.symbols.push_back(static_cast<Symbol>(a));
                prefix += unit(t);
                break;
            }
            r -= c;
        }
    }
    return w;
}

// ---------------------------------------------------------------- girls

GirlSet::GirlSet(const Sft& target, std::int64_t length, const MarkerScheme* scheme) : length_(length) {
    if (length < 1) throw PreconditionError("dict", "girl length N - 11M must be >= 1");
    Dfa d = target.language();
    if (scheme && scheme->M > 0) d = dfa_product(d, avoid_patterns(target.alphabet_size(), {scheme->h1, scheme->h2}));
    dfa_ = minimize(d);
    count_ = count_accepted(dfa_, static_cast<std::size_t>(length));
    if (count_ == 0) throw CapacityError("dict", "no girls of length " + std::to_string(length));
}

bool GirlSet::contains(const Word& w) const {
    return static_cast<std::int64_t>(w.size()) == length_ && dfa_.accepts(w);
}

void GirlSet::enable_ranking() {
    if (ranker_) return;
    const long double entries = static_cast<long double>(length_) * dfa_.num_states();
    if (entries > 5e7L) throw CapacityError("dict", "girl ranking tables exceed capacity");
    ranker_ = std::make_shared<WordRanker>(dfa_, static_cast<std::size_t>(length_));
}

mpz_class GirlSet::rank(const Word& w) const {
    if (!ranker_) throw PreconditionError("dict", "girl ranking not enabled");
    return ranker_->rank(w);
}

Word GirlSet::unrank(const mpz_class& r) const {
    if (!ranker_) throw PreconditionError("dict", "girl ranking not enabled");
    return ranker_->unrank(r);
}

// ---------------------------------------------------------------- relation

std::size_t Relation::num_edges() const {
    std::size_t e = 0;
    for (const auto& a : adj) e += a.size();
    return e;
}

int Relation::boy_index(const Word& b) const {
    auto it = std::lower_bound(boys.begin(), boys.end(), b);
    return it != boys.end() && it->symbols == b.symbols ? static_cast<int>(it - boys.begin()) : -1;
}

int Relation::girl_index(const Word& g) const {
    auto it = std::lower_bound(girls.begin(), girls.end(), g);
    return it != girls.end() && it->symbols == g.symbols ? static_cast<int>(it - girls.begin()) : -1;
}

Relation build_relation(const BoySet& boys, const GirlSet& girls,
                        const std::vector<std::pair<Word, Word>>& samples, const ParameterPack& pack) {
    const std::int64_t N = pack.N, M = pack.M;
    const std::int64_t glen = N - 11 * M;
    if (glen != girls.length()) throw PreconditionError("dict", "girl length does not match N - 11M");
    const long double cells = static_cast<long double>(boys.count().get_d()) * girls.count().get_d();
    if (cells > 1e8L) throw CapacityError("dict", "relation mode limited to |boys| * |girls| <= 1e8");
    std::map<std::vector<Symbol>, std::map<std::vector<Symbol>, std::size_t>> edges;
    std::set<std::vector<Symbol>> girl_words;
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const auto& [u, v] = samples[s];
        if (static_cast<std::int64_t>(u.size()) < N || static_cast<std::int64_t>(v.size()) < N) continue;
        const Word block = u.sub(0, static_cast<std::size_t>(N));
        if (!boys.contains(block)) continue;
        const Word g = v.sub(static_cast<std::size_t>(M), static_cast<std::size_t>(glen));
        if (!girls.contains(g)) continue;
        edges[block.symbols].emplace(g.symbols, s);
        girl_words.insert(g.symbols);
    }
    Relation rel;
    for (const auto& g : girl_words) rel.girls.emplace_back(g);
    for (const auto& [b, gs] : edges) {
        rel.boys.emplace_back(b);
        std::vector<int> row;
        const int bi = static_cast<int>(rel.boys.size()) - 1;
        for (const auto& [g, s] : gs) {
            const int gi = rel.girl_index(Word(g));
            row.push_back(gi);
            rel.witness[{bi, gi}] = s;
        }
        rel.adj.push_back(std::move(row));
    }
    return rel;
}

Relation regularize_relation(const Relation& rel, int K) {
    if (K < 1) throw PreconditionError("dict", "K must be >= 1");
    std::vector<std::set<int>> adj(rel.adj.size());
    for (std::size_t b = 0; b < rel.adj.size(); ++b) adj[b].insert(rel.adj[b].begin(), rel.adj[b].end());
    std::vector<char> alive(rel.boys.size(), 1);
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<std::vector<int>> by_girl(rel.girls.size());
        for (std::size_t b = 0; b < adj.size(); ++b)
            if (alive[b])
                for (int g : adj[b]) by_girl[g].push_back(static_cast<int>(b));
        for (std::size_t g = 0; g < by_girl.size(); ++g)
            for (std::size_t i = static_cast<std::size_t>(K); i < by_girl[g].size(); ++i) {
                adj[by_girl[g][i]].erase(static_cast<int>(g));
                changed = true;
            }
        for (std::size_t b = 0; b < adj.size(); ++b)
            if (alive[b] && static_cast<int>(adj[b].size()) < K) {
                alive[b] = 0;
                changed = true;
            }
    }
    Relation out;
    out.girls = rel.girls;
    for (std::size_t b = 0; b < adj.size(); ++b) {
        if (!alive[b]) continue;
        out.boys.push_back(rel.boys[b]);
        const int nb = static_cast<int>(out.boys.size()) - 1;
        out.adj.emplace_back(adj[b].begin(), adj[b].end());
        for (int g : adj[b]) {
            auto it = rel.witness.find({static_cast<int>(b), g});
            if (it != rel.witness.end()) out.witness[{nb, g}] = it->second;
        }
    }
    return out;
}

std::vector<int> hall_match(const Relation& rel, int K) {
    if (K < 1) throw PreconditionError("dict", "K must be >= 1");
    std::vector<int> girl_deg(rel.girls.size(), 0);
    for (std::size_t b = 0; b < rel.adj.size(); ++b) {
        if (static_cast<int>(rel.adj[b].size()) < K)
            throw HallDegreeError("dict", "boy " + to_string(rel.boys[b]) + " has degree " +
                                              std::to_string(rel.adj[b].size()) + " < K = " + std::to_string(K));
        for (int g : rel.adj[b]) ++girl_deg[g];
    }
    for (std::size_t g = 0; g < girl_deg.size(); ++g)
        if (girl_deg[g] > K)
            throw HallDegreeError("dict", "girl " + to_string(rel.girls[g]) + " has degree " +
                                              std::to_string(girl_deg[g]) + " > K = " + std::to_string(K));
    std::vector<int> match = max_bipartite_matching(rel.adj, static_cast<int>(rel.girls.size()));
    for (std::size_t b = 0; b < match.size(); ++b)
        if (match[b] < 0)
            throw InternalError("dict", "matching misses boy " + to_string(rel.boys[b]) +
                                            " although the degree conditions hold");
    return match;
}

double marriage_bound(const ParameterPack& pack, double h_joint, double h_source) {
    return std::log(0.5) + static_cast<double>(pack.N) * (h_joint - h_source - 2 * pack.Delta);
}

// ---------------------------------------------------------------- dictionary

Dictionary Dictionary::enumerative(std::shared_ptr<BoySet> boys, std::shared_ptr<GirlSet> girls) {
    if (boys->count() > girls->count()) {
        const long double diff = log_mpz(girls->count()) - log_mpz(boys->count());
        throw CapacityError("dict", "capacity failure: " + boys->count().get_str() + " boys > " +
                                        girls->count().get_str() + " girls (log ratio " +
                                        std::to_string(static_cast<double>(diff)) + ")");
    }
    boys->enable_ranking();
    girls->enable_ranking();
    Dictionary d;
    d.mode_ = DictMode::Enumerative;
    d.boys_ = std::move(boys);
    d.girls_ = std::move(girls);
    return d;
}

Dictionary Dictionary::hall(const Relation& rel, int K, std::shared_ptr<BoySet> boys, std::shared_ptr<GirlSet> girls) {
    const std::vector<int> match = hall_match(rel, K);
    girls->enable_ranking();  // flags draw uniform girls
    Dictionary d;
    d.mode_ = DictMode::Hall;
    d.boys_ = std::move(boys);
    d.girls_ = std::move(girls);
    for (std::size_t b = 0; b < match.size(); ++b) {
        d.phi_[rel.boys[b].symbols] = rel.girls[match[b]];
        d.inverse_[rel.girls[match[b]].symbols] = rel.boys[b];
    }
    return d;
}

std::optional<Word> Dictionary::encode(const Word& boy) const {
    if (mode_ == DictMode::Hall) {
        auto it = phi_.find(boy.symbols);
        if (it == phi_.end()) return std::nullopt;
        return it->second;
    }
    if (!boys_->contains(boy)) return std::nullopt;
    const mpz_class r = boys_->rank(boy);
    if (r >= girls_->count()) return std::nullopt;
    return girls_->unrank(r);
}

std::optional<Word> Dictionary::decode(const Word& girl) const {
    if (mode_ == DictMode::Hall) {
        auto it = inverse_.find(girl.symbols);
        if (it == inverse_.end()) return std::nullopt;
        return it->second;
    }
    if (!girls_->contains(girl)) return std::nullopt;
    const mpz_class r = girls_->rank(girl);
    if (r >= boys_->count()) return std::nullopt;
    return boys_->unrank(r);
}

DictionaryBounds verify_dictionary_bounds(const BoySet& boys, const GirlSet& girls, const ParameterPack& pack,
                                          double h_source, double h_target) {
    DictionaryBounds r;
    const long double N = static_cast<long double>(pack.N);
    r.log_boys = log_mpz(boys.count());
    r.log_girls = log_mpz(girls.count());
    r.mass = boys.mass();
    r.girls_threshold = std::log(0.5L) + N * (h_target - pack.Delta);
    r.boys_threshold = N * (h_source + pack.Delta);
    r.mass_threshold = 1.0L - 15.0L * pack.delta;
    r.ratio_threshold = N * (h_target - h_source - 2 * pack.Delta);
    r.girls_ok = r.log_girls > r.girls_threshold;
    r.boys_ok = r.log_boys <= r.boys_threshold;
    r.mass_ok = r.mass > r.mass_threshold;
    r.ratio_ok = r.log_girls - r.log_boys >= r.ratio_threshold;
    return r;
}

}  // namespace symdyn
