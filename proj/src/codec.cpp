#include "symdyn/codec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_map>

#include "symdyn/error.hpp"
#include "symdyn/estimators.hpp"
#include "symdyn/interp.hpp"
#include "symdyn/rng.hpp"

namespace symdyn {

std::int64_t BlockParse::error_positions() const {
    std::int64_t e = 0;
    for (std::size_t j = 0; j < size(); ++j)
        if (error(j)) ++e;
    return e;
}

BlockParse rokhlin_parse(std::int64_t length, std::int64_t N, double delta, std::uint64_t seed) {
    if (N < 2) throw PreconditionError("codec", "rokhlin_parse needs N >= 2");
    if (!(delta >= 0 && delta < 1)) throw PreconditionError("codec", "rokhlin_parse needs 0 <= delta < 1");
    // An error block at each boundary with probability q gives error density
    // q / (q + (1 - q) N) = delta.
    const double dN = delta * static_cast<double>(N);
    const double q = dN / (1.0 - delta + dN);
    BlockParse p;
    p.N = N;
    Rng rng(seed);
    for (std::int64_t pos = 0; pos < length;) {
        const bool err = q > 0 && rng.uniform() < q;
        const std::int64_t len = err ? 1 : std::min(N, length - pos);
        p.starts.push_back(pos);
        p.lengths.push_back(len);
        pos += len;
    }
    p.flag_d.assign(p.size(), 1);
    p.flags.assign(p.size(), Word{});
    return p;
}

void assign_flags(BlockParse& parse, const GirlSet& girls, double eps, std::uint64_t seed) {
    if (!girls.ranking_enabled()) throw PreconditionError("codec", "girl ranking must be enabled to draw flags");
    Rng rng(seed);
    for (std::size_t j = 0; j < parse.size(); ++j) {
        parse.flag_d[j] = 1;
        parse.flags[j] = Word{};
        if (!parse.full(j)) continue;
        if (rng.uniform() < eps / 2) {
            parse.flag_d[j] = 0;
            parse.flags[j] = girls.unrank(rng.below(girls.count()));
        }
    }
}

namespace {

bool in_domain(const Dictionary& dict, const Word& b) {
    if (dict.mode() == DictMode::Hall) return dict.table().count(b.symbols) > 0;
    return dict.boys().contains(b);
}

}  // namespace

CodedPair encode(const Word& x, const Dictionary& dict, const MarkerScheme& scheme, const ParameterPack& pack,
                 const Sft& target, std::uint64_t seed) {
    const std::int64_t N = pack.N, M = pack.M;
    if (M < 1) throw PreconditionError("codec", "encoding needs M >= 1");
    if (scheme.M != M) throw PreconditionError("codec", "marker scheme M differs from the parameter pack");
    if (N - 11 * M < 1) throw PreconditionError("codec", "N - 11M must be positive");
    const std::int64_t L = specification_gap(target);
    if (M < L)
        throw PreconditionError("codec", "structural gap M = " + std::to_string(M) +
                                             " is below the specification gap " + std::to_string(L));
    const std::int64_t n = static_cast<std::int64_t>(x.size());
    CodedPair out;
    out.x = x;
    out.parse = rokhlin_parse(n, N, pack.delta, derive_seed(seed, 1));
    assign_flags(out.parse, dict.girls(), pack.eps, derive_seed(seed, 2));
    out.block_boy.assign(out.parse.size(), 0);
    out.mask.assign(static_cast<std::size_t>(n), 0);

    SegmentPlan plan;
    plan.lo = x.lo();
    plan.hi = x.hi();
    plan.min_gap = M;
    for (std::size_t j = 0; j < out.parse.size(); ++j) {
        if (!out.parse.full(j)) continue;
        const std::int64_t s = out.parse.starts[j];
        const Word block = x.sub(static_cast<std::size_t>(s), static_cast<std::size_t>(N));
        if (out.parse.flag_d[j]) {
            auto g = dict.encode(block);
            if (!g) continue;
            out.block_boy[j] = 1;
            plan.segments.emplace_back(x.lo() + s + M, *g);
            plan.segments.emplace_back(x.lo() + s + N - 9 * M, scheme.y_mark);
            std::fill(out.mask.begin() + s, out.mask.begin() + s + N, 1);
        } else {
            out.block_boy[j] = in_domain(dict, block);
            plan.segments.emplace_back(x.lo() + s + M, out.parse.flags[j]);
        }
    }
    out.y = interpolate(target, plan);
    return out;
}

double DecodeResult::coverage() const {
    if (mask.empty()) return 0;
    return static_cast<double>(std::count(mask.begin(), mask.end(), 1)) / static_cast<double>(mask.size());
}

DecodeResult decode(const Word& y, const Dictionary& dict, const MarkerScheme& scheme, const ParameterPack& pack,
                    const Sft& target) {
    const std::int64_t N = pack.N, M = pack.M;
    if (M < 1 || N - 11 * M < 1) throw PreconditionError("codec", "decoding needs M >= 1 and N - 11M >= 1");
    const std::int64_t n = static_cast<std::int64_t>(y.size());
    const auto& mark = scheme.y_mark.symbols;
    DecodeResult r;
    r.x_hat = Word(std::vector<Symbol>(static_cast<std::size_t>(n), 0), y.lo());
    r.mask.assign(static_cast<std::size_t>(n), 0);

    std::vector<std::pair<std::int64_t, Word>> accepted;
    const auto first = y.symbols.begin();
    for (auto it = std::search(first, y.symbols.end(), mark.begin(), mark.end()); it != y.symbols.end();
         it = std::search(it + 1, y.symbols.end(), mark.begin(), mark.end())) {
        const std::int64_t p = it - first;
        const std::int64_t s = p - (N - 9 * M);
        if (s < 0 || s + N > n) continue;
        ++r.candidates;
        try {
            const Word window = y.sub(static_cast<std::size_t>(s), static_cast<std::size_t>(N));
            if (locate_offset(window, scheme, N) != 0) throw InternalError("codec", "earlier marker");
            const Word info = window.sub(static_cast<std::size_t>(M), static_cast<std::size_t>(N - 11 * M));
            auto b = dict.decode(info);
            if (!b) throw InternalError("codec", "info window outside the image");
            const Word gap = window.sub(static_cast<std::size_t>(N - 10 * M), static_cast<std::size_t>(M));
            if (gap.symbols != connect_words(target, info, scheme.y_mark, M).symbols)
                throw InternalError("codec", "connector mismatch");
            accepted.emplace_back(s, std::move(*b));
        } catch (const Error&) {
            ++r.rejected;
        }
    }
    // Two accepted blocks closer than N cannot both be genuine; drop both.
    std::vector<char> keep(accepted.size(), 1);
    for (std::size_t i = 1; i < accepted.size(); ++i)
        if (accepted[i].first - accepted[i - 1].first < N) keep[i] = keep[i - 1] = 0;
    for (std::size_t i = 0; i < accepted.size(); ++i) {
        if (!keep[i]) {
            ++r.rejected;
            continue;
        }
        const auto& [s, b] = accepted[i];
        std::copy(b.symbols.begin(), b.symbols.end(), r.x_hat.symbols.begin() + s);
        std::fill(r.mask.begin() + s, r.mask.begin() + s + N, 1);
        r.block_starts.push_back(s);
    }
    return r;
}

BadSetReport audit_badset(const CodedPair& pair, const ParameterPack& pack, double slack) {
    BadSetReport r;
    const auto& p = pair.parse;
    std::int64_t c1 = 0, c2 = 0, c3 = 0, c4 = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (p.error(j))
            c1 += 1;
        else if (!p.full(j))
            c2 += p.lengths[j];
        else if (!p.flag_d[j])
            c3 += p.N;
        else if (!pair.block_boy[j])
            c2 += p.N;
        else
            c4 += 11 * pack.M;
    }
    const double n = static_cast<double>(std::max<std::size_t>(pair.x.size(), 1));
    r.bs1 = static_cast<double>(c1) / n;
    r.bs2 = static_cast<double>(c2) / n;
    r.bs3 = static_cast<double>(c3) / n;
    r.bs4 = static_cast<double>(c4) / n;
    r.total = r.bs1 + r.bs2 + r.bs3 + r.bs4;
    r.bound = 17 * pack.delta + pack.eps / 2;
    r.slack = slack;
    r.ok = r.total <= r.bound + slack;
    return r;
}

namespace {

std::vector<BlockDistribution> merged_distributions(const std::vector<Word>& words, int kmax) {
    std::vector<BlockDistribution> out;
    for (int k = 1; k <= kmax; ++k) {
        BlockDistribution d;
        d.k = k;
        double total = 0;
        for (const Word& w : words) {
            if (w.size() < static_cast<std::size_t>(k)) continue;
            const double windows = static_cast<double>(w.size() - k + 1);
            for (const auto& [key, f] : block_distribution(w, k).freq) d.freq[key] += f * windows;
            total += windows;
        }
        if (total > 0)
            for (auto& [key, f] : d.freq) f /= total;
        out.push_back(std::move(d));
    }
    return out;
}

}  // namespace

double audit_weakstar(const CodedPair& pair, const std::vector<std::pair<Word, Word>>& reference, int kmax,
                      int target_alphabet) {
    const auto a = block_distributions(pair_word(pair.x, pair.y, target_alphabet), kmax);
    std::vector<Word> ref;
    for (const auto& [x, y] : reference) ref.push_back(pair_word(x, y, target_alphabet));
    return weakstar_surrogate(a, merged_distributions(ref, kmax), kmax);
}

double lz78_entropy(const Word& w) {
    const std::size_t n = w.size();
    if (n == 0) return 0;
    std::unordered_map<std::uint64_t, std::uint32_t> trie;
    trie.reserve(n / 4);
    std::uint32_t nodes = 1;
    std::uint64_t phrases = 0;
    std::uint32_t cur = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t key = (static_cast<std::uint64_t>(cur) << 8) | w.symbols[i];
        auto it = trie.find(key);
        if (it != trie.end()) {
            cur = it->second;
            continue;
        }
        trie.emplace(key, nodes++);
        ++phrases;
        cur = 0;
    }
    if (cur != 0) ++phrases;
    // The k-th phrase is about ln(k)/h long, so n ~ ln(c!)/h.
    return std::lgamma(static_cast<double>(phrases) + 1.0) / static_cast<double>(n);
}

EntropyReport audit_entropy(const CodedPair& pair, const ParameterPack& pack, double h_source, double h_target,
                            long double log_boys, long double log_girls) {
    EntropyReport r;
    r.lz = lz78_entropy(pair.y);
    const double N = static_cast<double>(pack.N);
    r.log_girls_minus_boys = static_cast<double>(log_girls - log_boys);
    r.ratio_threshold = N * (h_target - h_source - 2 * pack.Delta);
    r.ratio_ok = pack.Delta > 0 && r.log_girls_minus_boys >= r.ratio_threshold;
    std::int64_t eg = 0;
    for (std::size_t j = 0; j < pair.parse.size(); ++j)
        if (pair.parse.full(j) && !pair.parse.flag_d[j] && pair.block_boy[j]) ++eg;
    r.eg_frequency = pair.x.empty() ? 0 : static_cast<double>(eg) / static_cast<double>(pair.x.size());
    r.eg_target = (1.0 / N) * (1 - pack.delta) * (1 - 15 * pack.delta) * (pack.eps / 2);
    r.entropy_gap_ok = pack.Delta > 0 && 8 * N * pack.Delta * r.eg_frequency > 3 * pack.eps * pack.Delta;
    return r;
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// ---------------------------------------------------------------- files

std::string serialize_dictionary(const DictionaryBundle& b) {
    const Dictionary& d = *b.dict;
    std::ostringstream o;
    char thr[64];
    std::snprintf(thr, sizeof thr, "%.21Lg", d.boys().log_threshold());
    o << "symdyn-dict 1\n";
    o << "mode=" << (d.mode() == DictMode::Hall ? "hall" : "enumerative") << "\n";
    o << "pack=" << pack_fingerprint(b.pack) << "\n";
    o << "boy_log_threshold=" << thr << "\n";
    o << "boys=" << d.boys().count().get_str() << "\n";
    o << "girls=" << d.girls().count().get_str() << "\n";
    o << "marker=" << serialize_marker(b.scheme) << "\n";
    o << "begin source\n" << serialize_measure(b.source) << "end source\n";
    o << "begin target\n" << serialize_sft(b.target) << "end target\n";
    o << "begin target_measure\n" << serialize_measure(b.target_measure) << "end target_measure\n";
    if (d.mode() == DictMode::Hall)
        for (const auto& [boy, girl] : d.table()) o << to_string(Word(boy)) << " -> " << to_string(girl) << "\n";
    return o.str();
}

DictionaryBundle parse_dictionary(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto next = [&](const std::string& key) {
        if (!std::getline(in, line)) throw ParseError(source, lineno + 1, 1, "missing '" + key + "' line");
        ++lineno;
        if (line.rfind(key + "=", 0) != 0) throw ParseError(source, lineno, 1, "expected '" + key + "='");
        return line.substr(key.size() + 1);
    };
    auto block = [&](const std::string& name) {
        if (!std::getline(in, line) || line != "begin " + name)
            throw ParseError(source, lineno + 1, 1, "expected 'begin " + name + "'");
        ++lineno;
        const int first = lineno + 1;
        std::string body;
        while (true) {
            if (!std::getline(in, line)) throw ParseError(source, lineno + 1, 1, "unterminated " + name + " block");
            ++lineno;
            if (line == "end " + name) break;
            body += line + "\n";
        }
        return std::make_pair(body, first);
    };
    if (!std::getline(in, line) || line != "symdyn-dict 1") throw ParseError(source, 1, 1, "not a dictionary file");
    ++lineno;
    const std::string mode = next("mode");
    if (mode != "hall" && mode != "enumerative") throw ParseError(source, lineno, 6, "unknown mode '" + mode + "'");
    DictionaryBundle b;
    b.pack = parse_pack_fingerprint(next("pack"));
    const long double threshold = std::strtold(next("boy_log_threshold").c_str(), nullptr);
    const mpz_class boys_count(next("boys"));
    const mpz_class girls_count(next("girls"));
    const std::string marker_line = next("marker");
    const auto [src, src_line] = block("source");
    b.source = parse_measure(src, source + ":source@" + std::to_string(src_line));
    const auto [tgt, tgt_line] = block("target");
    b.target = parse_sft(tgt, source + ":target@" + std::to_string(tgt_line));
    const auto [tm, tm_line] = block("target_measure");
    b.target_measure = parse_measure(tm, source + ":target_measure@" + std::to_string(tm_line));
    b.scheme = parse_marker(marker_line, b.target_measure);

    auto boys = std::make_shared<BoySet>(b.source, b.pack.N, threshold);
    auto girls = std::make_shared<GirlSet>(b.target, b.pack.N - 11 * b.pack.M, &b.scheme);
    if (boys->count() != boys_count || girls->count() != girls_count)
        throw ParseError(source, 5, 1, "recorded counts do not match the reconstructed sets");
    if (mode == "enumerative") {
        b.dict = std::make_shared<Dictionary>(Dictionary::enumerative(boys, girls));
        return b;
    }
    Relation rel;
    std::map<std::vector<Symbol>, std::vector<Symbol>> pairs;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto arrow = line.find(" -> ");
        if (arrow == std::string::npos) throw ParseError(source, lineno, 1, "expected 'B -> G'");
        Word boy, girl;
        try {
            boy = parse_word(line.substr(0, arrow));
            girl = parse_word(line.substr(arrow + 4));
        } catch (const Error& e) {
            throw ParseError(source, lineno, 1, e.what());
        }
        pairs[boy.symbols] = girl.symbols;
    }
    std::map<std::vector<Symbol>, int> girl_index;
    for (const auto& [boy, girl] : pairs) girl_index[girl] = 0;
    for (auto& [girl, idx] : girl_index) {
        idx = static_cast<int>(rel.girls.size());
        rel.girls.emplace_back(girl);
    }
    for (const auto& [boy, girl] : pairs) {
        rel.boys.emplace_back(boy);
        rel.adj.push_back({girl_index[girl]});
    }
    girls->enable_ranking();
    b.dict = std::make_shared<Dictionary>(Dictionary::hall(rel, 1, boys, girls));
    return b;
}

std::string dictionary_hash(const DictionaryBundle& b) { return hex64(fnv1a(serialize_dictionary(b))); }

std::string serialize_coded(const CodedFile& f) {
    std::ostringstream o;
    o << "symdyn-coded 1\n";
    o << "pack=" << f.pack_hash << "\n";
    o << "dict=" << f.dict_hash << "\n";
    o << "marker=" << f.marker << "\n";
    o << "base=" << f.y.lo() << "\n";
    o << "length=" << f.y.size() << "\n";
    o << to_string(f.y) << "\n";
    return o.str();
}

CodedFile parse_coded(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto next = [&](const std::string& key) {
        if (!std::getline(in, line)) throw ParseError(source, lineno + 1, 1, "missing '" + key + "' line");
        ++lineno;
        if (line.rfind(key + "=", 0) != 0) throw ParseError(source, lineno, 1, "expected '" + key + "='");
        return line.substr(key.size() + 1);
    };
    if (!std::getline(in, line) || line != "symdyn-coded 1") throw ParseError(source, 1, 1, "not a coded stream");
    ++lineno;
    CodedFile f;
    f.pack_hash = next("pack");
    f.dict_hash = next("dict");
    f.marker = next("marker");
    std::int64_t base = 0;
    std::size_t length = 0;
    try {
        base = std::stoll(next("base"));
        length = static_cast<std::size_t>(std::stoull(next("length")));
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError(source, lineno, 1, "bad integer");
    }
    if (!std::getline(in, line)) line.clear();
    ++lineno;
    try {
        f.y = parse_word(line);
    } catch (const Error& e) {
        throw ParseError(source, lineno, 1, e.what());
    }
    if (f.y.size() != length)
        throw ParseError(source, lineno, 1,
                         "stream has " + std::to_string(f.y.size()) + " symbols, header says " + std::to_string(length));
    f.y.base = base;
    return f;
}

}  // namespace symdyn
