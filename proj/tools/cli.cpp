#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "symdyn/codec.hpp"
#include "symdyn/dict.hpp"
#include "symdyn/error.hpp"
#include "symdyn/estimators.hpp"
#include "symdyn/markers.hpp"
#include "symdyn/measure.hpp"
#include "symdyn/params.hpp"
#include "symdyn/report.hpp"
#include "symdyn/rng.hpp"
#include "symdyn/sft.hpp"
#include "symdyn/splicer.hpp"
#include "symdyn/toral.hpp"

namespace symdyn::cli {

namespace {

struct FileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// block,start,length,kind,flag,boy,planted
std::string blocks_table(const CodedPair& pair) {
    std::ostringstream os;
    os << "block,start,length,kind,flag,boy,planted\n";
    const auto& p = pair.parse;
    for (std::size_t j = 0; j < p.size(); ++j) {
        const bool full = p.full(j);
        std::int64_t planted = 0;
        for (std::int64_t i = p.starts[j]; i < p.starts[j] + p.lengths[j]; ++i) planted += pair.mask[i];
        os << j << ',' << p.starts[j] << ',' << p.lengths[j] << ',' << (full ? "N" : p.error(j) ? "error" : "tail")
           << ',' << (!full ? "" : p.flag_d[j] ? "D" : to_string(p.flags[j])) << ','
           << (full ? int(pair.block_boy[j]) : 0) << ',' << planted << '\n';
    }
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream o(path, std::ios::binary);
    if (!o) throw FileError("cannot write '" + path + "'");
    o << text;
}

std::string matrix_inline(const IntMat& a) {
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ';';
        for (std::size_t j = 0; j < a[i].size(); ++j) {
            if (j) s += ' ';
            s += a[i][j].get_str();
        }
    }
    return s.empty() ? "empty" : s;
}

std::string pack_hash(const ParameterPack& p) { return hex64(fnv1a(pack_fingerprint(p))); }

// Options shared by `params` and `dict`.
struct PackOptions {
    std::string source, target, target_measure;
    double eps = 0;
    std::string mode = "practical";
    std::optional<std::int64_t> N, M;
    std::optional<double> delta, alpha, h_joint;

    void attach(CLI::App* sub) {
        sub->add_option("--source", source, "source measure file")->required();
        sub->add_option("--target", target, "target SFT file")->required();
        sub->add_option("--target-measure", target_measure, "target measure file (default: Parry measure)");
        sub->add_option("--eps", eps, "epsilon")->required();
        sub->add_option("--mode", mode, "strict or practical")->check(CLI::IsMember({"strict", "practical"}));
        sub->add_option("--N", N);
        sub->add_option("--M", M);
        sub->add_option("--delta", delta);
        sub->add_option("--alpha", alpha);
        sub->add_option("--h-joint", h_joint);
    }
};

struct Inputs {
    MarkovMeasure source, target_measure;
    Sft target;
};

Inputs load_inputs(const PackOptions& o) {
    Inputs in;
    in.source = parse_measure(read_file(o.source), o.source);
    in.target = parse_sft(read_file(o.target), o.target);
    in.target_measure = o.target_measure.empty() ? MarkovMeasure::parry(in.target)
                                                 : parse_measure(read_file(o.target_measure), o.target_measure);
    return in;
}

ParameterPack make_pack(const PackOptions& o, const Inputs& in) {
    ParameterRequest req;
    req.h_source = in.source.entropy();
    req.h_target = topological_entropy(in.target);
    req.eps = o.eps;
    req.mode = o.mode == "strict" ? ParamMode::Strict : ParamMode::Practical;
    req.N = o.N;
    req.M = o.M;
    req.delta = o.delta;
    req.alpha = o.alpha;
    req.h_joint = o.h_joint;
    req.source_alphabet = in.source.num_states();
    req.target_gap = specification_gap(in.target);
    req.target_measure = &in.target_measure;
    return choose_parameters(req);
}

void report_pack(Report& r, const ParameterPack& p) {
    r.set("mode", p.mode == ParamMode::Strict ? "strict" : "practical");
    r.set("h_source", p.h_source);
    r.set("h_target", p.h_target);
    r.set("h_joint", p.h_joint);
    r.set("eps", p.eps);
    r.set("Delta", p.Delta);
    r.set("eta", p.eta);
    r.set("r", p.r);
    r.set("ell", p.ell);
    r.set("delta", p.delta);
    r.set("alpha", p.alpha);
    r.set("delta_en", p.delta_en);
    r.set("delta_part", p.delta_part);
    r.set("delta_stupid", p.delta_stupid);
    r.set("delta_eps", p.delta_eps);
    r.set("delta_binding", p.delta_binding);
    r.set("M", p.M);
    r.set("N", p.N);
    r.set("M_b", p.M_b);
    r.set("M_d", p.M_d);
    r.set("M_e", p.M_e);
    r.set("M_binding", p.M_binding.empty() ? "none" : p.M_binding);
    r.set("N_binding", p.N_binding.empty() ? "none" : p.N_binding);
    for (const auto& c : p.checklist) {
        r.set("check." + c.id, c.status);
        if (c.samples > 0) {
            r.set("check." + c.id + ".estimate", c.estimate);
            r.set("check." + c.id + ".lower", c.lower);
            r.set("check." + c.id + ".upper", c.upper);
            r.set("check." + c.id + ".samples", c.samples);
        }
    }
    r.set("decidable_ok", p.decidable_ok());
}

Word read_word_file(const std::string& path) {
    std::string text = read_file(path);
    text.erase(std::remove_if(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); }), text.end());
    try {
        return parse_word(text);
    } catch (const Error& e) {
        throw ParseError(path, 1, 1, e.what());
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"symdyn: symbolic dynamics toolkit"};
    app.require_subcommand(1);

    // entropy
    std::string sft_path, measure_path;
    auto* c_entropy = app.add_subcommand("entropy", "topological (and optional measure) entropy");
    c_entropy->add_option("--sft", sft_path)->required();
    c_entropy->add_option("--measure", measure_path);

    // gap
    auto* c_gap = app.add_subcommand("gap", "specification gap of a mixing SFT");
    c_gap->add_option("--sft", sft_path)->required();

    // marker
    std::int64_t M = 0;
    double alpha = 0;
    std::uint64_t budget = 1000000, seed = 0;
    auto* c_marker = app.add_subcommand("marker", "search a self-distinguishing marker word");
    c_marker->add_option("--sft", sft_path)->required();
    c_marker->add_option("--measure", measure_path, "target measure (default: Parry measure)");
    c_marker->add_option("--M", M)->required();
    c_marker->add_option("--alpha", alpha)->required();
    c_marker->add_option("--budget", budget);
    c_marker->add_option("--seed", seed)->required();

    // params
    PackOptions pack_opts;
    std::int64_t samples = 0;
    auto* c_params = app.add_subcommand("params", "choose N, M, delta and evaluate the checklist");
    pack_opts.attach(c_params);
    c_params->add_option("--samples", samples, "Monte-Carlo samples for the almost-sure items");
    auto* params_seed = c_params->add_option("--seed", seed);

    // dict
    PackOptions dict_opts;
    std::string out_path;
    bool hall = false;
    int K = 1;
    std::int64_t relation_samples = 20000;
    auto* c_dict = app.add_subcommand("dict", "build a marriage dictionary");
    dict_opts.attach(c_dict);
    c_dict->add_option("--seed", seed)->required();
    c_dict->add_option("--budget", budget);
    c_dict->add_flag("--hall", hall, "relation-constrained matching instead of rank/unrank");
    c_dict->add_option("--K", K);
    c_dict->add_option("--samples", relation_samples);
    c_dict->add_option("--out", out_path)->required();

    // encode
    std::string dict_path, input_path, x_out, blocks_csv;
    std::int64_t length = 0;
    auto* c_encode = app.add_subcommand("encode", "encode a source word");
    c_encode->add_option("--dict", dict_path)->required();
    auto* enc_input = c_encode->add_option("--input", input_path, "source word file");
    auto* enc_length = c_encode->add_option("--length", length, "sample a source word of this length");
    enc_input->excludes(enc_length);
    c_encode->add_option("--seed", seed)->required();
    c_encode->add_option("--out", out_path)->required();
    c_encode->add_option("--x-out", x_out, "write the source word");
    c_encode->add_option("--blocks-csv", blocks_csv, "write a per-block table");

    // decode
    std::string coded_path;
    auto* c_decode = app.add_subcommand("decode", "decode a coded stream");
    c_decode->add_option("--dict", dict_path)->required();
    c_decode->add_option("--coded", coded_path)->required();
    c_decode->add_option("--out", out_path, "write x_hat ('.' marks undecoded coordinates)");

    // verify
    int phase_trials = 1000, kmax = 2;
    auto* c_verify = app.add_subcommand("verify", "encode, decode and audit a sampled source word");
    c_verify->add_option("--dict", dict_path)->required();
    c_verify->add_option("--length", length)->required();
    c_verify->add_option("--seed", seed)->required();
    c_verify->add_option("--phase-trials", phase_trials);
    c_verify->add_option("--kmax", kmax);

    // splice
    std::string kind, measure2_path, target_word;
    double gamma = 0, eps = 0;
    std::int64_t N = 0;
    auto* c_splice = app.add_subcommand("splice", "entropy-boost or full-support splicing");
    c_splice->add_option("--kind", kind)->required()->check(CLI::IsMember({"entropy-boost", "full-support"}));
    c_splice->add_option("--sft", sft_path)->required();
    c_splice->add_option("--measure1", measure_path)->required();
    c_splice->add_option("--measure2", measure2_path);
    c_splice->add_option("--target-word", target_word);
    c_splice->add_option("--eps", eps);
    c_splice->add_option("--gamma", gamma);
    c_splice->add_option("--N", N)->required();
    c_splice->add_option("--M", M);
    c_splice->add_option("--length", length)->required();
    c_splice->add_option("--seed", seed)->required();

    // toral
    std::string op, matrix_path;
    double tol = 1e-10;
    auto* c_toral = app.add_subcommand("toral", "toral automorphism analysis");
    c_toral->add_option("op", op)->required()->check(CLI::IsMember({"classify", "entropy", "split"}));
    c_toral->add_option("--matrix", matrix_path)->required();
    c_toral->add_option("--tol", tol);

    // halmos
    int hn = 0, hm = 0;
    auto* c_halmos = app.add_subcommand("halmos", "Halmos invariant membership of Phi_n on Z/m");
    c_halmos->add_option("n", hn)->required();
    c_halmos->add_option("m", hm)->required();

    // schema-check
    std::string report_path;
    auto* c_schema = app.add_subcommand("schema-check", "validate a key=value report");
    c_schema->add_option("file", report_path)->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*c_entropy) {
            const Sft sft = parse_sft(read_file(sft_path), sft_path);
            Report r("entropy");
            r.set("alphabet", sft.alphabet_size());
            r.set("memory", sft.memory());
            r.set("states", sft.num_states());
            r.set("h_top", topological_entropy(sft));
            if (!measure_path.empty()) r.set("h_mu", parse_measure(read_file(measure_path), measure_path).entropy());
            out << r.str();
        } else if (*c_gap) {
            const Sft sft = parse_sft(read_file(sft_path), sft_path);
            Report r("gap");
            r.set("alphabet", sft.alphabet_size());
            r.set("memory", sft.memory());
            r.set("gap", specification_gap(sft));
            out << r.str();
        } else if (*c_marker) {
            const Sft sft = parse_sft(read_file(sft_path), sft_path);
            const MarkovMeasure nu =
                measure_path.empty() ? MarkovMeasure::parry(sft) : parse_measure(read_file(measure_path), measure_path);
            const MarkerScheme s = find_marker(sft, nu, M, alpha, budget, seed);
            Report r("marker");
            r.set("M", s.M);
            r.set("alpha", s.alpha);
            r.set("word", to_string(s.y_mark));
            r.set("nu_h1", s.nu_h1);
            r.set("nu_h2", s.nu_h2);
            r.set("self_distinguishing", self_distinguishing(s.y_mark, s.M));
            r.set("valid", scheme_valid(s, sft, nu));
            out << r.str();
        } else if (*c_params) {
            if (samples > 0 && params_seed->count() == 0)
                throw PreconditionError("cli", "--seed is required when --samples is given");
            const Inputs in = load_inputs(pack_opts);
            ParameterPack p = make_pack(pack_opts, in);
            if (samples > 0) estimate_almost_sure(p, in.source, in.target_measure, samples, seed);
            Report r("params");
            report_pack(r, p);
            out << r.str();
        } else if (*c_dict) {
            const Inputs in = load_inputs(dict_opts);
            DictionaryBundle b;
            b.pack = make_pack(dict_opts, in);
            b.source = in.source;
            b.target = in.target;
            b.target_measure = in.target_measure;
            b.scheme = find_marker(in.target, in.target_measure, b.pack.M, b.pack.alpha, budget, derive_seed(seed, 21));
            auto boys = std::make_shared<BoySet>(BoySet::from_pack(in.source, b.pack));
            auto girls = std::make_shared<GirlSet>(in.target, b.pack.N - 11 * b.pack.M, &b.scheme);
            Report r("dict");
            r.set("mode", hall ? "hall" : "enumerative");
            r.set("N", b.pack.N);
            r.set("M", b.pack.M);
            r.set("delta", b.pack.delta);
            r.set("eps", b.pack.eps);
            r.set("marker", to_string(b.scheme.y_mark));
            r.set("boys", boys->count().get_str());
            r.set("girls", girls->count().get_str());
            if (hall) {
                std::vector<std::pair<Word, Word>> pairs;
                for (std::int64_t i = 0; i < relation_samples; ++i)
                    pairs.emplace_back(in.source.sample(static_cast<std::size_t>(b.pack.N), derive_seed(seed, 1000 + 2 * i)),
                                       in.target_measure.sample(static_cast<std::size_t>(b.pack.N),
                                                                derive_seed(seed, 1001 + 2 * i)));
                const Relation raw = build_relation(*boys, *girls, pairs, b.pack);
                const Relation rel = regularize_relation(raw, K);
                r.set("relation_edges", raw.num_edges());
                r.set("relation_boys", rel.boys.size());
                r.set("K", K);
                b.dict = std::make_shared<Dictionary>(Dictionary::hall(rel, K, boys, girls));
                r.set("matched", b.dict->table().size());
            } else {
                b.dict = std::make_shared<Dictionary>(Dictionary::enumerative(boys, girls));
            }
            const DictionaryBounds db = verify_dictionary_bounds(*boys, *girls, b.pack, in.source.entropy(),
                                                                 topological_entropy(in.target));
            r.set("log_boys", db.log_boys);
            r.set("log_girls", db.log_girls);
            r.set("boy_mass", db.mass);
            r.set("girls_threshold", db.girls_threshold);
            r.set("boys_threshold", db.boys_threshold);
            r.set("mass_threshold", db.mass_threshold);
            r.set("ratio_threshold", db.ratio_threshold);
            r.set("girls_ok", db.girls_ok);
            r.set("boys_ok", db.boys_ok);
            r.set("mass_ok", db.mass_ok);
            r.set("ratio_ok", db.ratio_ok);
            r.set("pack_hash", pack_hash(b.pack));
            r.set("dict_hash", dictionary_hash(b));
            write_file(out_path, serialize_dictionary(b));
            r.set("out", out_path);
            out << r.str();
        } else if (*c_encode) {
            const DictionaryBundle b = parse_dictionary(read_file(dict_path), dict_path);
            const Word x = input_path.empty()
                               ? b.source.sample(static_cast<std::size_t>(length), derive_seed(seed, 31))
                               : read_word_file(input_path);
            const CodedPair pair = encode(x, *b.dict, b.scheme, b.pack, b.target, seed);
            CodedFile f{pack_hash(b.pack), dictionary_hash(b), serialize_marker(b.scheme), pair.y};
            write_file(out_path, serialize_coded(f));
            if (!x_out.empty()) write_file(x_out, to_string(x) + "\n");
            if (!blocks_csv.empty()) write_file(blocks_csv, blocks_table(pair));
            std::int64_t errs = 0, dflag = 0, gflag = 0, boys = 0;
            for (std::size_t j = 0; j < pair.parse.size(); ++j) {
                if (pair.parse.error(j)) ++errs;
                if (!pair.parse.full(j)) continue;
                (pair.parse.flag_d[j] ? dflag : gflag) += 1;
                boys += pair.block_boy[j];
            }
            Report r("encode");
            r.set("length", x.size());
            r.set("blocks", pair.parse.size());
            r.set("error_blocks", errs);
            r.set("d_blocks", dflag);
            r.set("girl_flag_blocks", gflag);
            r.set("boy_blocks", boys);
            r.set("planned",
                  x.empty() ? 0.0 : static_cast<double>(std::count(pair.mask.begin(), pair.mask.end(), 1)) / x.size());
            r.set("admissible", b.target.admissible(pair.y));
            r.set("pack_hash", f.pack_hash);
            r.set("dict_hash", f.dict_hash);
            r.set("out", out_path);
            out << r.str();
        } else if (*c_decode) {
            const DictionaryBundle b = parse_dictionary(read_file(dict_path), dict_path);
            const CodedFile f = parse_coded(read_file(coded_path), coded_path);
            if (f.dict_hash != dictionary_hash(b))
                throw PreconditionError("cli", "coded stream was produced with a different dictionary");
            const DecodeResult d = decode(f.y, *b.dict, b.scheme, b.pack, b.target);
            Report r("decode");
            r.set("length", f.y.size());
            r.set("candidates", d.candidates);
            r.set("rejected", d.rejected);
            r.set("decoded_blocks", d.block_starts.size());
            r.set("coverage", d.coverage());
            if (!out_path.empty()) {
                std::string s = to_string(d.x_hat);
                for (std::size_t i = 0; i < s.size(); ++i)
                    if (!d.mask[i]) s[i] = '.';
                write_file(out_path, s + "\n");
                r.set("out", out_path);
            }
            out << r.str();
        } else if (*c_verify) {
            const DictionaryBundle b = parse_dictionary(read_file(dict_path), dict_path);
            const ParameterPack& p = b.pack;
            const Word x = b.source.sample(static_cast<std::size_t>(length), derive_seed(seed, 31));
            const CodedPair pair = encode(x, *b.dict, b.scheme, p, b.target, seed);
            const DecodeResult d = decode(pair.y, *b.dict, b.scheme, p, b.target);
            std::int64_t sym_err = 0;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (d.mask[i] && d.x_hat.symbols[i] != x.symbols[i]) ++sym_err;
            std::vector<std::int64_t> planned;
            for (std::size_t j = 0; j < pair.parse.size(); ++j)
                if (pair.parse.full(j) && pair.parse.flag_d[j] && pair.block_boy[j]) planned.push_back(pair.parse.starts[j]);
            std::int64_t missed = 0;
            for (std::int64_t s : planned)
                if (!std::binary_search(d.block_starts.begin(), d.block_starts.end(), s)) ++missed;
            // Phase recovery from windows starting j symbols into a planted block.
            Rng rng(derive_seed(seed, 41));
            std::int64_t trials = 0, recovered = 0;
            for (int t = 0; t < phase_trials && !planned.empty(); ++t) {
                const std::int64_t s = planned[rng.below(planned.size())];
                const std::int64_t j = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(p.N - 9 * p.M + 1)));
                if (s + j + p.N > static_cast<std::int64_t>(pair.y.size())) continue;
                ++trials;
                try {
                    if (locate_offset(pair.y.sub(static_cast<std::size_t>(s + j), static_cast<std::size_t>(p.N)), b.scheme,
                                      p.N) == j)
                        ++recovered;
                } catch (const MarkerNotFoundError&) {
                }
            }
            const BadSetReport bs = audit_badset(pair, p);
            const Word xr = b.source.sample(static_cast<std::size_t>(length), derive_seed(seed, 51));
            const Word yr = b.target_measure.sample(static_cast<std::size_t>(length), derive_seed(seed, 52));
            const double ws = audit_weakstar(pair, {{xr, yr}}, kmax, b.target.alphabet_size());
            const EntropyReport en = audit_entropy(pair, p, b.source.entropy(), topological_entropy(b.target),
                                                   log_mpz(b.dict->boys().count()), log_mpz(b.dict->girls().count()));
            const double cov_bound = 1 - (17 * p.delta + p.eps / 2) - 0.01;
            Report r("verify");
            r.set("length", x.size());
            r.set("seed", std::to_string(seed));
            r.set("blocks", pair.parse.size());
            r.set("coverage", d.coverage());
            r.set("coverage_bound", cov_bound);
            r.set("coverage_ok", d.coverage() >= cov_bound);
            r.set("symbol_errors", sym_err);
            r.set("planned_blocks", planned.size());
            r.set("decoded_blocks", d.block_starts.size());
            r.set("missed_blocks", missed);
            r.set("phase_trials", trials);
            r.set("phase_recovered", recovered);
            r.set("admissible", b.target.admissible(pair.y));
            r.set("badset", bs.total);
            r.set("bs1", bs.bs1);
            r.set("bs2", bs.bs2);
            r.set("bs3", bs.bs3);
            r.set("bs4", bs.bs4);
            r.set("badset_bound", bs.bound);
            r.set("badset_ok", bs.ok);
            r.set("weakstar", ws);
            r.set("weakstar_ok", ws < p.eps);
            r.set("lz_entropy", en.lz);
            r.set("h_source", b.source.entropy());
            r.set("log_ratio", en.log_girls_minus_boys);
            r.set("ratio_threshold", en.ratio_threshold);
            r.set("ratio_ok", en.ratio_ok);
            r.set("eg_frequency", en.eg_frequency);
            r.set("eg_target", en.eg_target);
            r.set("entropy_gap_ok", en.entropy_gap_ok);
            out << r.str();
        } else if (*c_splice) {
            const Sft sft = parse_sft(read_file(sft_path), sft_path);
            const MarkovMeasure m1 = parse_measure(read_file(measure_path), measure_path);
            const Word y1 = m1.sample(static_cast<std::size_t>(length), derive_seed(seed, 62));
            Report r("splice");
            r.set("kind", kind);
            r.set("length", length);
            r.set("N", N);
            if (kind == "entropy-boost") {
                if (measure2_path.empty()) throw PreconditionError("cli", "entropy-boost needs --measure2");
                const MarkovMeasure m2 = parse_measure(read_file(measure2_path), measure2_path);
                const Word y2 = m2.sample(static_cast<std::size_t>(length), derive_seed(seed, 63));
                const SkeletonParams sp = skeleton_params(eps, gamma, N);
                const Skeleton sk =
                    entropy_boost_skeleton(sp.k0, sp.k1, sp.k2, static_cast<std::size_t>(length), derive_seed(seed, 61));
                const Word y3 = splice_entropy_boost(sft, y1, y2, sk);
                std::int64_t agree = 0, fixed = 0;
                for (std::size_t i = 0; i < y3.size(); ++i) {
                    if (sk.seq[i] == 0) continue;
                    ++fixed;
                    agree += y3.symbols[i] == (sk.seq[i] == 1 ? y1.symbols[i] : y2.symbols[i]);
                }
                r.set("k0", sp.k0);
                r.set("k1", sp.k1);
                r.set("k2", sp.k2);
                r.set("ratio1", sp.ratio1);
                r.set("ratio2", sp.ratio2);
                r.set("bound1", sp.bound1);
                r.set("bound2", sp.bound2);
                r.set("ratio_ok", sp.ratio1 > sp.bound1 && sp.ratio2 > sp.bound2);
                r.set("skeleton_parses", skeleton_parses(sk));
                r.set("admissible", sft.admissible(y3));
                r.set("agreement", fixed ? static_cast<double>(agree) / fixed : 1.0);
                r.set("lz_y1", lz78_entropy(y1));
                r.set("lz_y2", lz78_entropy(y2));
                r.set("lz_y3", lz78_entropy(y3));
            } else {
                if (target_word.empty()) throw PreconditionError("cli", "full-support needs --target-word");
                const Word t = parse_word(target_word);
                const Word y3 = splice_full_support(sft, y1, t, N, M, derive_seed(seed, 64));
                const double f = visit_frequency(y3, t);
                const double bound = 1.0 / static_cast<double>(N + 1);
                r.set("M", M);
                r.set("admissible", sft.admissible(y3));
                r.set("visit_frequency", f);
                r.set("visit_bound", bound);
                r.set("visit_ok", f >= bound - 0.002);
            }
            out << r.str();
        } else if (*c_toral) {
            const IntMat A = parse_matrix(read_file(matrix_path), matrix_path);
            validate_automorphism(A);
            const IntPoly f = charpoly(A);
            Report r("toral");
            r.set("op", op);
            r.set("dim", mat_rows(A));
            r.set("charpoly", to_string(f));
            if (op == "classify") {
                r.set("quasi_hyperbolic", is_quasi_hyperbolic(A));
                r.set("unit_circle_roots", unit_circle_root_count(f));
                r.set("minpoly", to_string(minimal_polynomial(A)));
                r.set("class", to_string(classify(A)));
            } else if (op == "entropy") {
                r.set("entropy", toral_entropy(A, tol));
                r.set("entropy_eigen", toral_entropy_eigen(A));
            } else {
                const CyclotomicSplit cs = cyclotomic_split(f);
                for (const auto& fac : cs.factors) r.set("cyclotomic." + std::to_string(fac.n), fac.multiplicity);
                const SplitResult s = split_action(A);
                r.set("g", to_string(cs.g));
                r.set("h", to_string(cs.h));
                r.set("dim_q", mat_rows(s.A_p));
                r.set("dim_o", mat_rows(s.A_q));
                r.set("A_q", matrix_inline(s.A_p));
                r.set("A_o", matrix_inline(s.A_q));
                r.set("index", s.index.get_str());
            }
            out << r.str();
        } else if (*c_halmos) {
            const HalmosResult h = halmos_analysis(hn, hm);
            Report r("halmos");
            r.set("n", hn);
            r.set("m", hm);
            r.set("phi", to_string(cyclotomic(hn)));
            r.set("member", h.member);
            std::string inv;
            for (const auto& v : h.invariants) inv += (inv.empty() ? "" : ",") + v.get_str();
            r.set("invariants", inv.empty() ? "none" : inv);
            r.set("finite_order", h.finite_order.get_str());
            r.set("nullity", h.nullity);
            r.set("constant_dim", h.constant_dim);
            r.set("constant_order", h.constant_order.get_str());
            out << r.str();
        } else if (*c_schema) {
            const SchemaCheck s = report_schema_check(read_file(report_path));
            Report r("schema-check");
            r.set("file", report_path);
            r.set("ok", s.ok);
            if (!s.ok) {
                r.set("line", s.line);
                r.set("message", s.message);
            }
            out << r.str();
            return s.ok ? 0 : 1;
        }
    } catch (const FileError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace symdyn::cli
