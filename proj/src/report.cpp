#include "symdyn/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "symdyn/error.hpp"

namespace symdyn {

Report::Report(std::string command) : command_(std::move(command)) {}

void Report::set(const std::string& key, const std::string& value) {
    if (key.empty() || key.find_first_of("= \t\n") != std::string::npos)
        throw PreconditionError("report", "invalid key '" + key + "'");
    if (value.find('\n') != std::string::npos) throw PreconditionError("report", "value for '" + key + "' spans lines");
    for (auto& kv : lines_)
        if (kv.first == key) {
            kv.second = value;
            return;
        }
    lines_.emplace_back(key, value);
}

void Report::set(const std::string& key, double value) { set(key, format_real(value)); }
void Report::set(const std::string& key, std::int64_t value) { set(key, std::to_string(value)); }
void Report::set(const std::string& key, bool value) { set(key, std::string(value ? "true" : "false")); }

std::string Report::str() const {
    std::string out = "command=" + command_ + "\n";
    for (const auto& [k, v] : lines_) out += k + "=" + v + "\n";
    return out;
}

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

const std::map<std::string, std::vector<std::string>>& report_schema() {
    static const std::map<std::string, std::vector<std::string>> schema = {
        {"entropy", {"alphabet", "memory", "states", "h_top", "h_mu"}},
        {"gap", {"alphabet", "memory", "gap"}},
        {"marker", {"M", "alpha", "word", "nu_h1", "nu_h2", "valid", "self_distinguishing"}},
        {"params",
         {"mode", "h_source", "h_target", "h_joint", "eps", "Delta", "eta", "r", "ell", "delta", "alpha", "delta_en",
          "delta_part", "delta_stupid", "delta_eps", "delta_binding", "M", "N", "M_b", "M_d", "M_e", "M_binding",
          "N_binding", "decidable_ok", "check.*"}},
        {"dict",
         {"mode", "N", "M", "delta", "eps", "marker", "boys", "girls", "log_boys", "log_girls", "boy_mass",
          "girls_ok", "boys_ok", "mass_ok", "ratio_ok", "girls_threshold", "boys_threshold", "mass_threshold",
          "ratio_threshold", "relation_edges", "relation_boys", "K", "matched", "dict_hash", "pack_hash", "out"}},
        {"encode", {"length", "blocks", "error_blocks", "d_blocks", "girl_flag_blocks", "boy_blocks", "planned",
                    "admissible", "pack_hash", "dict_hash", "out"}},
        {"decode", {"length", "candidates", "rejected", "decoded_blocks", "coverage", "out"}},
        {"verify",
         {"length", "seed", "blocks", "coverage", "coverage_bound", "coverage_ok", "symbol_errors", "planned_blocks",
          "decoded_blocks", "missed_blocks", "phase_trials", "phase_recovered", "admissible", "badset", "bs1", "bs2",
          "bs3", "bs4", "badset_bound", "badset_ok", "weakstar", "weakstar_ok", "lz_entropy", "h_source",
          "ratio_ok", "log_ratio", "ratio_threshold", "eg_frequency", "eg_target", "entropy_gap_ok"}},
        {"splice", {"kind", "length", "N", "M", "k0", "k1", "k2", "ratio1", "ratio2", "bound1", "bound2",
                    "ratio_ok", "skeleton_parses", "admissible", "visit_frequency", "visit_bound", "visit_ok",
                    "agreement", "lz_y1", "lz_y2", "lz_y3"}},
        {"toral", {"op", "dim", "charpoly", "g", "h", "cyclotomic.*", "quasi_hyperbolic", "class", "entropy",
                   "entropy_eigen", "minpoly", "unit_circle_roots", "A_q", "A_o", "index", "dim_q", "dim_o"}},
        {"halmos", {"n", "m", "phi", "member", "invariants", "finite_order", "nullity", "constant_dim",
                    "constant_order"}},
        {"schema-check", {"file", "ok", "line", "message"}},
    };
    return schema;
}

namespace {

bool key_declared(const std::vector<std::string>& keys, const std::string& key) {
    for (const auto& k : keys) {
        if (!k.empty() && k.back() == '*') {
            if (key.compare(0, k.size() - 1, k, 0, k.size() - 1) == 0) return true;
        } else if (k == key) {
            return true;
        }
    }
    return false;
}

}  // namespace

SchemaCheck report_schema_check(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    const std::vector<std::string>* keys = nullptr;
    auto fail = [&](const std::string& msg) { return SchemaCheck{false, lineno, msg}; };
    while (std::getline(in, line)) {
        ++lineno;
        const auto eq = line.find('=');
        if (eq == std::string::npos || eq == 0) return fail("not a key=value line: '" + line + "'");
        const std::string key = line.substr(0, eq), value = line.substr(eq + 1);
        if (key.find_first_of(" \t") != std::string::npos) return fail("whitespace in key '" + key + "'");
        if (key == "command") {
            auto it = report_schema().find(value);
            if (it == report_schema().end()) return fail("unknown command '" + value + "'");
            keys = &it->second;
            continue;
        }
        if (!keys) return fail("key '" + key + "' before any command line");
        if (!key_declared(*keys, key)) return fail("undeclared key '" + key + "'");
    }
    return {};
}

}  // namespace symdyn
