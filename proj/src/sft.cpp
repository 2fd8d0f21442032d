#include "symdyn/sft.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

constexpr std::int64_t kMaxStateCodes = std::int64_t{1} << 22;

bool has_forbidden_factor(const std::vector<Symbol>& w, const std::vector<Word>& forbidden) {
    for (const Word& f : forbidden) {
        if (f.size() > w.size()) continue;
        auto it = std::search(w.begin(), w.end(), f.symbols.begin(), f.symbols.end());
        if (it != w.end()) return true;
    }
    return false;
}

std::int64_t encode(const Symbol* w, int len, int alphabet) {
    std::int64_t c = 0;
    for (int i = 0; i < len; ++i) c = c * alphabet + w[i];
    return c;
}

// Tarjan SCC; returns component id per vertex.
std::vector<int> strongly_connected(const std::vector<std::vector<int>>& succ, int& count) {
    const int n = static_cast<int>(succ.size());
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
    std::vector<char> on(n, 0);
    int counter = 0;
    count = 0;
    // Iterative to stay safe on long chains.
    for (int root = 0; root < n; ++root) {
        if (index[root] >= 0) continue;
        std::vector<std::pair<int, std::size_t>> frames{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on[root] = 1;
        while (!frames.empty()) {
            auto& [v, pos] = frames.back();
            if (pos < succ[v].size()) {
                const int w = succ[v][pos++];
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on[w] = 1;
                    frames.emplace_back(w, 0);
                } else if (on[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            } else {
                if (low[v] == index[v]) {
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on[w] = 0;
                        comp[w] = count;
                    } while (w != v);
                    ++count;
                }
                const int done = v;
                frames.pop_back();
                if (!frames.empty()) {
                    const int parent = frames.back().first;
                    low[parent] = std::min(low[parent], low[done]);
                }
            }
        }
    }
    return comp;
}

}  // namespace

Sft Sft::build(int alphabet_size, const std::vector<Word>& forbidden_in) {
    if (alphabet_size < 1 || alphabet_size > 36)
        throw PreconditionError("shiftspace", "alphabet size must lie in [1,36]");
    Sft s;
    s.alphabet_ = alphabet_size;
    std::set<std::vector<Symbol>> uniq;
    std::size_t max_len = 0;
    for (const Word& f : forbidden_in) {
        if (f.empty()) throw PreconditionError("shiftspace", "forbidden word of length 0");
        for (Symbol a : f.symbols)
            if (a >= alphabet_size)
                throw PreconditionError("shiftspace", "forbidden word " + to_string(f) +
                                                          " uses symbol outside alphabet");
        uniq.insert(f.symbols);
        max_len = std::max(max_len, f.size());
    }
    for (const auto& f : uniq) s.forbidden_.emplace_back(f);
    s.memory_ = max_len == 0 ? 0 : static_cast<int>(max_len) - 1;
    s.state_len_ = std::max(s.memory_, 1);
    const int len = s.state_len_;

    std::int64_t codes = 1;
    for (int i = 0; i < len; ++i) {
        codes *= alphabet_size;
        if (codes > kMaxStateCodes)
            throw CapacityError("shiftspace", "recoded state space too large (memory " +
                                                  std::to_string(s.memory_) + ")");
    }
    // Candidate states: s-words with no forbidden factor.
    std::vector<std::vector<Symbol>> words;
    std::vector<std::int64_t> code_of;
    std::vector<Symbol> w(len, 0);
    for (std::int64_t c = 0; c < codes; ++c) {
        std::int64_t x = c;
        for (int i = len - 1; i >= 0; --i) {
            w[i] = static_cast<Symbol>(x % alphabet_size);
            x /= alphabet_size;
        }
        if (!has_forbidden_factor(w, s.forbidden_)) {
            words.push_back(w);
            code_of.push_back(c);
        }
    }
    std::vector<std::int64_t> idx(codes, -1);
    for (std::size_t i = 0; i < words.size(); ++i) idx[code_of[i]] = static_cast<std::int64_t>(i);
    const std::size_t n = words.size();
    std::vector<std::vector<int>> succ(n);
    std::vector<Symbol> ext(len + 1);
    for (std::size_t i = 0; i < n; ++i) {
        std::copy(words[i].begin(), words[i].end(), ext.begin());
        for (int a = 0; a < alphabet_size; ++a) {
            ext[len] = static_cast<Symbol>(a);
            const std::int64_t j = idx[encode(ext.data() + 1, len, alphabet_size)];
            if (j < 0) continue;
            if (has_forbidden_factor(ext, s.forbidden_)) continue;
            succ[i].push_back(static_cast<int>(j));
        }
    }
    // Prune states with no predecessor or no successor until stable.
    std::vector<char> alive(n, 1);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> indeg(n, 0), outdeg(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            for (int j : succ[i])
                if (alive[j]) {
                    ++outdeg[i];
                    ++indeg[j];
                }
        }
        for (std::size_t i = 0; i < n; ++i)
            if (alive[i] && (indeg[i] == 0 || outdeg[i] == 0)) {
                alive[i] = 0;
                changed = true;
            }
    }
    std::vector<int> remap(n, -1);
    for (std::size_t i = 0; i < n; ++i)
        if (alive[i]) {
            remap[i] = static_cast<int>(s.states_.size());
            s.states_.emplace_back(words[i]);
        }
    if (s.states_.empty()) throw EmptySftError("shiftspace", "empty SFT: no admissible point survives");
    const std::size_t m = s.states_.size();
    s.code_to_state_.assign(codes, -1);
    s.adj_.assign(m, std::vector<std::uint8_t>(m, 0));
    s.trans_.assign(m * alphabet_size, -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (!alive[i]) continue;
        s.code_to_state_[code_of[i]] = remap[i];
        for (int j : succ[i]) {
            if (!alive[j]) continue;
            s.adj_[remap[i]][remap[j]] = 1;
            s.trans_[static_cast<std::size_t>(remap[i]) * alphabet_size + words[j].back()] = remap[j];
        }
    }

    // Language automaton: prefix states for words shorter than s, then states.
    Dfa& d = s.dfa_;
    d.alphabet = alphabet_size;
    std::vector<std::vector<Symbol>> prefixes{{}};
    std::vector<int> prefix_id;  // for each prefix, dfa id
    std::set<std::vector<Symbol>> prefix_set;
    for (const Word& st : s.states_)
        for (int l = 1; l < len; ++l) prefix_set.insert(std::vector<Symbol>(st.symbols.begin(), st.symbols.begin() + l));
    for (const auto& p : prefix_set) prefixes.push_back(p);
    std::sort(prefixes.begin(), prefixes.end(),
              [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
    const int np = static_cast<int>(prefixes.size());
    const int total = np + static_cast<int>(m);
    d.start = 0;
    d.accepting.assign(total, 1);
    d.delta.assign(static_cast<std::size_t>(total) * alphabet_size, -1);
    std::map<std::vector<Symbol>, int> pindex;
    for (int i = 0; i < np; ++i) pindex[prefixes[i]] = i;
    for (int i = 0; i < np; ++i) {
        for (int a = 0; a < alphabet_size; ++a) {
            std::vector<Symbol> e = prefixes[i];
            e.push_back(static_cast<Symbol>(a));
            int target = -1;
            if (static_cast<int>(e.size()) < len) {
                auto it = pindex.find(e);
                if (it != pindex.end()) target = it->second;
            } else {
                const int st = s.state_of(e.data());
                if (st >= 0) target = np + st;
            }
            d.delta[static_cast<std::size_t>(i) * alphabet_size + a] = target;
        }
    }
    for (std::size_t q = 0; q < m; ++q)
        for (int a = 0; a < alphabet_size; ++a) {
            const int t = s.trans_[q * alphabet_size + a];
            d.delta[(np + q) * alphabet_size + a] = t < 0 ? -1 : np + t;
        }
    return s;
}

int Sft::state_of(const Symbol* w) const {
    for (int i = 0; i < state_len_; ++i)
        if (w[i] >= alphabet_) return -1;
    return static_cast<int>(code_to_state_[encode(w, state_len_, alphabet_)]);
}

bool Sft::admissible(const Word& w) const { return dfa_.accepts(w); }

double perron_root(const std::vector<std::vector<double>>& a) {
    const int n = static_cast<int>(a.size());
    std::vector<std::vector<int>> succ(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (a[i][j] > 0) succ[i].push_back(j);
    int ncomp = 0;
    const std::vector<int> comp = strongly_connected(succ, ncomp);
    double best = 0.0;
    for (int c = 0; c < ncomp; ++c) {
        std::vector<int> members;
        for (int i = 0; i < n; ++i)
            if (comp[i] == c) members.push_back(i);
        const int k = static_cast<int>(members.size());
        bool has_edge = false;
        for (int i : members)
            for (int j : members)
                if (a[i][j] > 0) has_edge = true;
        if (!has_edge) continue;
        // B = A_c + I is primitive, so the Collatz-Wielandt bracket closes.
        std::vector<double> x(k, 1.0), y(k);
        double lo = 0, hi = 0;
        for (int it = 0; it < 100000; ++it) {
            lo = INFINITY;
            hi = 0;
            for (int p = 0; p < k; ++p) {
                double s = x[p];
                for (int q = 0; q < k; ++q) s += a[members[p]][members[q]] * x[q];
                y[p] = s;
                lo = std::min(lo, s / x[p]);
                hi = std::max(hi, s / x[p]);
            }
            double norm = 0;
            for (double v : y) norm = std::max(norm, v);
            for (int p = 0; p < k; ++p) x[p] = y[p] / norm;
            if (hi - lo <= 1e-14 * hi) break;
        }
        best = std::max(best, 0.5 * (lo + hi) - 1.0);
    }
    return best;
}

double topological_entropy(const Sft& sft) {
    const std::size_t n = sft.num_states();
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = sft.adjacency()[i][j];
    const double rho = perron_root(a);
    // A single cycle gives rho == 1 up to rounding.
    return rho <= 1.0 + 1e-14 ? 0.0 : std::log(rho);
}

std::int64_t specification_gap(const Sft& sft) {
    const std::size_t n = sft.num_states();
    const auto& adj = sft.adjacency();
    std::vector<std::vector<int>> succ(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (adj[i][j]) succ[i].push_back(static_cast<int>(j));
    int ncomp = 0;
    strongly_connected(succ, ncomp);
    if (ncomp != 1) throw NotMixingError("shiftspace", "not mixing: adjacency matrix is reducible");
    // Boolean powers up to Wielandt's bound (n-1)^2 + 1.
    const std::int64_t bound = static_cast<std::int64_t>((n - 1) * (n - 1) + 1);
    std::vector<std::vector<std::uint8_t>> p = adj;
    for (std::int64_t k = 1; k <= bound; ++k) {
        bool positive = true;
        for (std::size_t i = 0; i < n && positive; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (!p[i][j]) {
                    positive = false;
                    break;
                }
        if (positive) return k;
        std::vector<std::vector<std::uint8_t>> q(n, std::vector<std::uint8_t>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l)
                if (p[i][l])
                    for (int j : succ[l]) q[i][j] = 1;
        p.swap(q);
    }
    throw NotMixingError("shiftspace", "not mixing: adjacency matrix is periodic");
}

bool window_distance_below(const Word& u, const Word& v, const WindowMetricParams& p) {
    if (p.hi <= p.lo) throw PreconditionError("shiftspace", "window requires hi > lo");
    if (p.radius < 0) throw PreconditionError("shiftspace", "negative radius");
    const std::int64_t lo = p.lo - p.radius, hi = p.hi + p.radius;
    if (!u.covers(lo, hi) || !v.covers(lo, hi))
        throw RangeError("shiftspace", "words do not cover window [" + std::to_string(lo) + "," +
                                           std::to_string(hi) + ")");
    for (std::int64_t c = lo; c < hi; ++c)
        if (u.symbols[c - u.base] != v.symbols[c - v.base]) return false;
    return true;
}

std::vector<Word> enumerate_words(const Sft& sft, std::size_t n, const WordPredicate& keep) {
    const Dfa& d = sft.language();
    std::vector<Word> out;
    std::vector<Symbol> w;
    std::vector<int> qs{d.start};
    // Explicit DFS in lexicographic order.
    std::vector<int> next_sym{0};
    while (!qs.empty()) {
        if (w.size() == n) {
            Word cand{w};
            if (!keep || keep(cand)) out.push_back(std::move(cand));
            qs.pop_back();
            next_sym.pop_back();
            if (!w.empty()) w.pop_back();
            continue;
        }
        int& a = next_sym.back();
        if (a >= d.alphabet) {
            qs.pop_back();
            next_sym.pop_back();
            if (!w.empty()) w.pop_back();
            continue;
        }
        const int t = d.next(qs.back(), static_cast<Symbol>(a));
        ++a;
        if (t < 0) continue;
        w.push_back(static_cast<Symbol>(a - 1));
        qs.push_back(t);
        next_sym.push_back(0);
    }
    return out;
}

mpz_class count_words(const Sft& sft, std::size_t n) { return count_accepted(sft.language(), n); }

Sft parse_sft(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int alphabet = -1;
    std::vector<Word> forbidden;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "alphabet") {
            if (alphabet >= 0) throw ParseError(source, lineno, 1, "duplicate alphabet line");
            if (!(ls >> alphabet) || alphabet < 1)
                throw ParseError(source, lineno, static_cast<int>(line.find(key) + key.size() + 2),
                                 "expected positive alphabet size");
        } else if (key == "forbid") {
            if (alphabet < 0) throw ParseError(source, lineno, 1, "forbid before alphabet");
            std::string word;
            if (!(ls >> word)) throw ParseError(source, lineno, 8, "expected word after forbid");
            try {
                forbidden.push_back(parse_word(word));
            } catch (const Error& e) {
                throw ParseError(source, lineno, static_cast<int>(line.find(word) + 1), e.what());
            }
        } else {
            throw ParseError(source, lineno, static_cast<int>(line.find(key) + 1), "unknown key '" + key + "'");
        }
        std::string extra;
        if (ls >> extra)
            throw ParseError(source, lineno, static_cast<int>(line.rfind(extra) + 1), "trailing token '" + extra + "'");
    }
    if (alphabet < 0) throw ParseError(source, lineno + 1, 1, "missing alphabet line");
    return Sft::build(alphabet, forbidden);
}

std::string serialize_sft(const Sft& sft) {
    std::string out = "alphabet " + std::to_string(sft.alphabet_size()) + "\n";
    for (const Word& f : sft.forbidden()) out += "forbid " + to_string(f) + "\n";
    return out;
}

Sft full_shift(int alphabet_size) { return Sft::build(alphabet_size, {}); }

Sft golden_mean_shift() { return Sft::build(2, {parse_word("11")}); }

}  // namespace symdyn
