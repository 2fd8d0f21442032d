#include "symdyn/language.hpp"

#include <deque>
#include <map>

#include "symdyn/error.hpp"

namespace symdyn {

int Dfa::run(int q, const Word& w) const {
    for (Symbol a : w.symbols) {
        if (q < 0) return -1;
        if (a >= alphabet) return -1;
        q = delta[q * alphabet + a];
    }
    return q;
}

bool Dfa::accepts(const Word& w) const {
    const int q = run(start, w);
    return q >= 0 && accepting[q];
}

Dfa dfa_product(const Dfa& a, const Dfa& b) {
    if (a.alphabet != b.alphabet) throw PreconditionError("language", "alphabet mismatch in product");
    const int k = a.alphabet;
    Dfa out;
    out.alphabet = k;
    std::map<std::pair<int, int>, int> index;
    std::vector<std::pair<int, int>> states;
    auto intern = [&](int x, int y) {
        auto [it, fresh] = index.emplace(std::make_pair(x, y), static_cast<int>(states.size()));
        if (fresh) states.emplace_back(x, y);
        return it->second;
    };
    out.start = intern(a.start, b.start);
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto [x, y] = states[i];
        for (int s = 0; s < k; ++s) {
            const int nx = a.next(x, static_cast<Symbol>(s));
            const int ny = b.next(y, static_cast<Symbol>(s));
            out.delta.push_back(nx < 0 || ny < 0 ? -1 : intern(nx, ny));
        }
    }
    out.accepting.resize(states.size());
    for (std::size_t i = 0; i < states.size(); ++i)
        out.accepting[i] = a.accepting[states[i].first] && b.accepting[states[i].second];
    return out;
}

Dfa avoid_patterns(int alphabet, const std::vector<Word>& patterns) {
    // Trie with goto function completed by failure links.
    std::vector<std::vector<int>> go(1, std::vector<int>(alphabet, -1));
    std::vector<char> terminal(1, 0);
    for (const Word& p : patterns) {
        if (p.empty()) throw PreconditionError("language", "empty avoided pattern");
        int q = 0;
        for (Symbol s : p.symbols) {
            if (s >= alphabet) throw PreconditionError("language", "pattern symbol out of range");
            if (go[q][s] < 0) {
                go[q][s] = static_cast<int>(go.size());
                go.emplace_back(alphabet, -1);
                terminal.push_back(0);
            }
            q = go[q][s];
        }
        terminal[q] = 1;
    }
    std::vector<int> fail(go.size(), 0);
    std::deque<int> queue;
    for (int s = 0; s < alphabet; ++s) {
        if (go[0][s] < 0) {
            go[0][s] = 0;
        } else {
            fail[go[0][s]] = 0;
            queue.push_back(go[0][s]);
        }
    }
    while (!queue.empty()) {
        const int q = queue.front();
        queue.pop_front();
        terminal[q] = terminal[q] || terminal[fail[q]];
        for (int s = 0; s < alphabet; ++s) {
            const int r = go[q][s];
            if (r < 0) {
                go[q][s] = go[fail[q]][s];
            } else {
                fail[r] = go[fail[q]][s];
                queue.push_back(r);
            }
        }
    }
    Dfa d;
    d.alphabet = alphabet;
    d.start = 0;
    d.accepting.resize(go.size());
    d.delta.resize(go.size() * alphabet);
    for (std::size_t q = 0; q < go.size(); ++q) {
        d.accepting[q] = !terminal[q];
        for (int s = 0; s < alphabet; ++s) {
            const int r = go[q][s];
            d.delta[q * alphabet + s] = terminal[r] ? -1 : r;
        }
    }
    return d;
}

Dfa minimize(const Dfa& d) {
    const int k = d.alphabet;
    const int n = d.num_states();
    // Forward reachability.
    std::vector<char> reach(n, 0);
    std::vector<int> stack{d.start};
    reach[d.start] = 1;
    while (!stack.empty()) {
        const int q = stack.back();
        stack.pop_back();
        for (int s = 0; s < k; ++s) {
            const int r = d.delta[q * k + s];
            if (r >= 0 && !reach[r]) {
                reach[r] = 1;
                stack.push_back(r);
            }
        }
    }
    // Co-reachability of an accepting state.
    std::vector<char> live(n, 0);
    bool changed = true;
    for (int q = 0; q < n; ++q) live[q] = reach[q] && d.accepting[q];
    while (changed) {
        changed = false;
        for (int q = 0; q < n; ++q) {
            if (live[q] || !reach[q]) continue;
            for (int s = 0; s < k; ++s) {
                const int r = d.delta[q * k + s];
                if (r >= 0 && live[r]) {
                    live[q] = 1;
                    changed = true;
                    break;
                }
            }
        }
    }
    if (!live[d.start]) {
        Dfa empty;
        empty.alphabet = k;
        empty.start = 0;
        empty.accepting = {0};
        empty.delta.assign(k, -1);
        return empty;
    }
    // Moore refinement on live states; dead successor gets class -1.
    std::vector<int> cls(n, -1);
    for (int q = 0; q < n; ++q)
        if (live[q]) cls[q] = d.accepting[q] ? 1 : 0;
    int num_classes = 0;
    for (;;) {
        std::map<std::vector<int>, int> sig_index;
        std::vector<int> next_cls(n, -1);
        for (int q = 0; q < n; ++q) {
            if (!live[q]) continue;
            std::vector<int> sig{cls[q]};
            for (int s = 0; s < k; ++s) {
                const int r = d.delta[q * k + s];
                sig.push_back(r >= 0 && live[r] ? cls[r] : -1);
            }
            auto [it, fresh] = sig_index.emplace(std::move(sig), static_cast<int>(sig_index.size()));
            next_cls[q] = it->second;
        }
        const int count = static_cast<int>(sig_index.size());
        cls.swap(next_cls);
        if (count == num_classes) break;
        num_classes = count;
    }
    // Renumber classes in BFS order from the start for a canonical layout.
    std::vector<int> order(num_classes, -1);
    std::vector<int> rep(num_classes, -1);
    for (int q = 0; q < n; ++q)
        if (live[q] && rep[cls[q]] < 0) rep[cls[q]] = q;
    Dfa out;
    out.alphabet = k;
    std::deque<int> queue{cls[d.start]};
    order[cls[d.start]] = 0;
    int next_id = 1;
    std::vector<int> bfs{cls[d.start]};
    while (!queue.empty()) {
        const int c = queue.front();
        queue.pop_front();
        for (int s = 0; s < k; ++s) {
            const int r = d.delta[rep[c] * k + s];
            if (r < 0 || !live[r]) continue;
            const int rc = cls[r];
            if (order[rc] < 0) {
                order[rc] = next_id++;
                queue.push_back(rc);
                bfs.push_back(rc);
            }
        }
    }
    out.start = 0;
    out.accepting.resize(bfs.size());
    out.delta.assign(bfs.size() * k, -1);
    for (std::size_t i = 0; i < bfs.size(); ++i) {
        const int q = rep[bfs[i]];
        out.accepting[i] = d.accepting[q];
        for (int s = 0; s < k; ++s) {
            const int r = d.delta[q * k + s];
            if (r >= 0 && live[r]) out.delta[i * k + s] = order[cls[r]];
        }
    }
    return out;
}

mpz_class count_accepted(const Dfa& d, std::size_t n) {
    const int k = d.alphabet;
    const int m = d.num_states();
    // Backward: cur[q] = accepted words of length j readable from q.
    std::vector<mpz_class> cur(m), nxt(m);
    for (int q = 0; q < m; ++q) cur[q] = d.accepting[q] ? 1 : 0;
    for (std::size_t j = 0; j < n; ++j) {
        for (int q = 0; q < m; ++q) {
            nxt[q] = 0;
            for (int s = 0; s < k; ++s) {
                const int r = d.delta[q * k + s];
                if (r >= 0) nxt[q] += cur[r];
            }
        }
        cur.swap(nxt);
    }
    return cur[d.start];
}

WordRanker::WordRanker(Dfa dfa, std::size_t length) : dfa_(std::move(dfa)), length_(length) {
    const int k = dfa_.alphabet;
    const int m = dfa_.num_states();
    completions_.assign(length_ + 1, std::vector<mpz_class>(m));
    for (int q = 0; q < m; ++q) completions_[0][q] = dfa_.accepting[q] ? 1 : 0;
    for (std::size_t j = 1; j <= length_; ++j) {
        for (int q = 0; q < m; ++q) {
            mpz_class& acc = completions_[j][q];
            for (int s = 0; s < k; ++s) {
                const int r = dfa_.delta[q * k + s];
                if (r >= 0) acc += completions_[j - 1][r];
            }
        }
    }
}

bool WordRanker::contains(const Word& w) const {
    return w.size() == length_ && dfa_.accepts(w);
}

mpz_class WordRanker::rank(const Word& w) const {
    if (!contains(w)) throw RangeError("language", "word " + to_string(w) + " not in ranked set");
    mpz_class r = 0;
    int q = dfa_.start;
    for (std::size_t i = 0; i < length_; ++i) {
        const std::size_t rest = length_ - i - 1;
        for (Symbol s = 0; s < w.symbols[i]; ++s) {
            const int t = dfa_.next(q, s);
            if (t >= 0) r += completions(rest, t);
        }
        q = dfa_.next(q, w.symbols[i]);
    }
    return r;
}

Word WordRanker::unrank(const mpz_class& r_in) const {
    if (r_in < 0 || r_in >= count())
        throw RangeError("language", "rank " + r_in.get_str() + " outside [0," + count().get_str() + ")");
    mpz_class r = r_in;
    Word w;
    w.symbols.reserve(length_);
    int q = dfa_.start;
    for (std::size_t i = 0; i < length_; ++i) {
        const std::size_t rest = length_ - i - 1;
        for (int s = 0; s < dfa_.alphabet; ++s) {
            const int t = dfa_.next(q, static_cast<Symbol>(s));
            if (t < 0) continue;
            const mpz_class& c = completions(rest, t);
            if (r < c) {
                w.symbols.push_back(static_cast<Symbol>(s));
                q = t;
                break;
            }
            r -= c;
        }
    }
    return w;
}

}  // namespace symdyn
