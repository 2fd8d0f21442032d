#include "symdyn/params.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "symdyn/error.hpp"
#include "symdyn/estimators.hpp"
#include "symdyn/rng.hpp"

namespace symdyn {

namespace {

// Strict inequalities are met by backing off this relative margin.
constexpr double kMargin = 1e-9;

std::int64_t floor_div11(double delta, std::int64_t N) {
    return static_cast<std::int64_t>(std::floor(delta * static_cast<double>(N) / 11.0));
}

void set_item(ParameterPack& p, const std::string& id, const std::string& status) {
    for (auto& c : p.checklist)
        if (c.id == id) {
            c.status = status;
            return;
        }
    p.checklist.push_back({id, status});
}

const char* tf(bool b) { return b ? "true" : "false"; }

// Least M with min_{2M-words} nu < alpha(M)/M, alpha = delta^2/22 in strict
// mode or fixed otherwise.
std::int64_t least_marker_M(const MarkovMeasure& nu, double alpha, std::int64_t cap) {
    for (std::int64_t M = 1; M <= cap; ++M) {
        const long double lhs = nu.min_log_cylinder(static_cast<std::size_t>(2 * M));
        if (lhs < std::log(static_cast<long double>(alpha) / static_cast<long double>(M))) return M;
    }
    return -1;
}

}  // namespace

const CheckItem* ParameterPack::item(const std::string& id) const {
    for (const auto& c : checklist)
        if (c.id == id) return &c;
    return nullptr;
}

bool ParameterPack::decidable_ok() const {
    for (const char* id : {"def-cap-delta", "en-cap-delta", "part-cap-delta", "stupid", "choice-of-con", "theM",
                           "(a)", "(b)", "(c)", "(d)", "(e)"}) {
        const CheckItem* c = item(id);
        if (!c || c->status != "true") return false;
    }
    return true;
}

WilsonInterval wilson_interval(std::int64_t k, std::int64_t n, double z) {
    if (n <= 0) return {0.0, 1.0};
    const double nn = static_cast<double>(n);
    const double ph = static_cast<double>(k) / nn;
    const double z2 = z * z;
    const double denom = 1 + z2 / nn;
    const double centre = (ph + z2 / (2 * nn)) / denom;
    const double half = z * std::sqrt(ph * (1 - ph) / nn + z2 / (4 * nn * nn)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

void evaluate_checklist(ParameterPack& p, const MarkovMeasure* nu) {
    const double d = p.delta;
    set_item(p, "def-cap-delta", tf(p.Delta == (p.h_target - p.h_source) / 10.0));
    set_item(p, "en-cap-delta", tf(d * (1 + p.h_joint) < p.Delta));
    set_item(p, "part-cap-delta", tf(16 * d * (1 + std::log(static_cast<double>(p.source_alphabet))) < p.eps * p.Delta));
    set_item(p, "stupid", tf(4 * (1 - d) * (1 - 15 * d) >= 3));
    set_item(p, "choice-of-con", tf(120 * p.r < p.eps && 80 * d < p.eps && 12 * p.eta < p.eps));
    set_item(p, "theM", tf(p.M == floor_div11(d, p.N)));
    set_item(p, "(a)", tf(static_cast<double>(p.N) * p.Delta > std::log(2.0)));
    set_item(p, "(b)", tf(std::ldexp(1.0, -static_cast<int>(std::min<std::int64_t>(p.M, 100000))) < p.r));
    set_item(p, "(c)", tf(1.0 / static_cast<double>(p.N) < d));
    set_item(p, "(d)", tf(p.target_gap < p.M));
    if (nu && p.M >= 1) {
        const long double lhs = nu->min_log_cylinder(static_cast<std::size_t>(2 * p.M));
        const bool ok = p.alpha > 0 &&
                        lhs < std::log(static_cast<long double>(p.alpha) / static_cast<long double>(p.M));
        set_item(p, "(e)", tf(ok));
    } else {
        set_item(p, "(e)", p.M < 1 ? "false" : "undetermined");
    }
}

ParameterPack choose_parameters(const ParameterRequest& req) {
    if (!(req.h_target > req.h_source && req.h_source > 0))
        throw PreconditionError("dict", "need h_target > h_source > 0 (Delta would vanish)");
    if (!(req.eps > 0 && req.eps < 1)) throw PreconditionError("dict", "eps must lie in (0,1)");
    ParameterPack p;
    p.mode = req.mode;
    p.h_source = req.h_source;
    p.h_target = req.h_target;
    p.h_joint = req.h_joint.value_or(req.h_source + req.h_target);
    p.eps = req.eps;
    p.source_alphabet = req.source_alphabet;
    p.target_gap = req.target_gap;
    p.Delta = (req.h_target - req.h_source) / 10.0;
    p.eta = req.eps / 12.0 * (1 - kMargin);
    p.r = p.eta / 10.0 * (1 - kMargin);
    p.ell = static_cast<std::int64_t>(std::floor(10.0 / p.eta)) + 1;

    p.delta_en = p.Delta / (1 + p.h_joint);
    p.delta_part = req.eps * p.Delta / (16 * (1 + std::log(static_cast<double>(req.source_alphabet))));
    p.delta_stupid = (64 - std::sqrt(64.0 * 64.0 - 240.0)) / 120.0;  // root of 60d^2 - 64d + 1
    p.delta_eps = req.eps / 80.0;
    struct Bound {
        double v;
        const char* name;
        bool strict;
    };
    Bound bounds[] = {{p.delta_en, "en-cap-delta", true},
                      {p.delta_part, "part-cap-delta", true},
                      {p.delta_stupid, "stupid", false},
                      {p.delta_eps, "choice-of-con", true}};
    const Bound* tight = &bounds[0];
    for (const Bound& b : bounds)
        if (b.v < tight->v) tight = &b;
    p.delta_binding = tight->name;
    const double auto_delta = tight->strict ? tight->v * (1 - kMargin) : tight->v;
    p.delta = req.delta.value_or(auto_delta);
    if (!(p.delta > 0 && p.delta < 1)) throw PreconditionError("dict", "delta must lie in (0,1)");
    if (req.delta) p.delta_binding = "override";

    if (req.mode == ParamMode::Practical) {
        if (!req.N) throw PreconditionError("dict", "practical mode needs N");
        p.N = *req.N;
        p.M = req.M.value_or(floor_div11(p.delta, p.N));
        p.alpha = req.alpha.value_or(p.delta * p.delta / 22.0);
        p.M_binding = req.M ? "override" : "theM";
        p.N_binding = "override";
        evaluate_checklist(p, req.target_measure);
        return p;
    }

    // Strict: least M meeting (b), (d), (e), then least N with floor(dN/11) >= M.
    p.alpha = p.delta * p.delta / 22.0;
    if (req.alpha) throw PreconditionError("dict", "alpha is fixed to delta^2/22 in strict mode");
    p.M_b = static_cast<std::int64_t>(std::floor(std::log2(1.0 / p.r))) + 1;
    while (std::ldexp(1.0, -static_cast<int>(p.M_b)) >= p.r) ++p.M_b;
    p.M_d = p.target_gap + 1;
    const std::int64_t M_cap = floor_div11(p.delta, req.max_N);
    if (req.target_measure) {
        p.M_e = least_marker_M(*req.target_measure, p.alpha, std::max<std::int64_t>(M_cap, 1));
        if (p.M_e < 0) throw InfeasibleError("dict", "strict mode infeasible: item (e) fails for all N <= max_N");
    }
    std::int64_t M = std::max({p.M_b, p.M_d, p.M_e, std::int64_t{1}});
    p.M_binding = M == p.M_e ? "(e)" : M == p.M_b ? "(b)" : M == p.M_d ? "(d)" : "M>=1";
    if (req.M) {
        if (*req.M < M) throw PreconditionError("dict", "requested M below the strict minimum " + std::to_string(M));
        M = *req.M;
        p.M_binding = "override";
    }
    std::int64_t N = static_cast<std::int64_t>(std::ceil(11.0 * static_cast<double>(M) / p.delta));
    while (N > 1 && floor_div11(p.delta, N - 1) >= M) --N;
    while (floor_div11(p.delta, N) < M) ++N;
    p.N_binding = "theM";
    const std::int64_t N_a = static_cast<std::int64_t>(std::floor(std::log(2.0) / p.Delta)) + 1;
    const std::int64_t N_c = static_cast<std::int64_t>(std::floor(1.0 / p.delta)) + 1;
    if (N_a > N) {
        N = N_a;
        p.N_binding = "(a)";
    }
    if (N_c > N) {
        N = N_c;
        p.N_binding = "(c)";
    }
    if (req.N) {
        if (*req.N < N) throw PreconditionError("dict", "requested N below the strict minimum " + std::to_string(N));
        N = *req.N;
        p.N_binding = "override";
    }
    if (N > req.max_N)
        throw InfeasibleError("dict", "strict mode infeasible within N <= " + std::to_string(req.max_N) +
                                          "; binding constraint " + p.M_binding);
    p.N = N;
    p.M = floor_div11(p.delta, N);
    evaluate_checklist(p, req.target_measure);
    if (!p.decidable_ok()) {
        for (const auto& c : p.checklist)
            if (c.status != "true")
                throw InfeasibleError("dict", "strict mode: checklist item " + c.id + " is " + c.status);
    }
    return p;
}

void estimate_almost_sure(ParameterPack& p, const MarkovMeasure& mu, const MarkovMeasure& nu,
                          std::int64_t samples, std::uint64_t seed, int kmax) {
    const std::int64_t N = p.N, M = p.M;
    const std::int64_t lo = M, hi = N - 10 * M;
    if (hi <= lo) throw PreconditionError("dict", "window [M, N-10M) is empty");
    const long double Nl = static_cast<long double>(N);
    const int nx = mu.num_states(), ny = nu.num_states();
    const int npair = nx * ny;
    // Exact product-joining block laws for the weak* surrogate.
    std::vector<std::vector<double>> exact(kmax + 1);
    for (int k = 1; k <= kmax; ++k) {
        std::int64_t size = 1;
        for (int i = 0; i < k; ++i) size *= npair;
        exact[k].assign(static_cast<std::size_t>(size), 0.0);
        std::vector<Symbol> xs(k), ys(k);
        for (std::int64_t code = 0; code < size; ++code) {
            std::int64_t c = code;
            for (int i = k - 1; i >= 0; --i) {
                const int v = static_cast<int>(c % npair);
                c /= npair;
                xs[i] = static_cast<Symbol>(v / ny);
                ys[i] = static_cast<Symbol>(v % ny);
            }
            exact[k][code] = mu.cylinder_probability(Word(xs)) * nu.cylinder_probability(Word(ys));
        }
    }
    std::int64_t hit[7] = {0};
    for (std::int64_t s = 0; s < samples; ++s) {
        const Word x = mu.sample(static_cast<std::size_t>(N), derive_seed(seed, 2 * s));
        const Word y = nu.sample(static_cast<std::size_t>(N), derive_seed(seed, 2 * s + 1));
        const long double lx = mu.log_cylinder(x), ly = nu.log_cylinder(y);
        const long double wx = mu.log_cylinder(x.sub(lo, hi - lo)), wy = nu.log_cylinder(y.sub(lo, hi - lo));
        hit[1] += lx > -(p.h_source + p.Delta) * Nl;
        hit[2] += wy < -(p.h_target - p.Delta) * Nl;
        hit[3] += wx + wy < -(p.h_joint - p.Delta) * Nl;
        hit[4] += lx + ly > -(p.h_joint + p.Delta) * Nl;
        double sur = 0, weight = 0.5;
        for (int k = 1; k <= kmax; ++k, weight *= 0.5) {
            std::vector<double> counts(exact[k].size(), 0.0);
            const std::int64_t total = (hi - lo) - k + 1;
            std::int64_t mod = 1;
            for (int i = 0; i < k; ++i) mod *= npair;
            std::int64_t code = 0;
            for (std::int64_t i = lo; i < hi; ++i) {
                code = (code * npair + x.symbols[i] * ny + y.symbols[i]) % mod;
                if (i - lo + 1 >= k) counts[code] += 1.0;
            }
            double tv = 0;
            for (std::size_t c = 0; c < counts.size(); ++c) tv += std::abs(counts[c] / static_cast<double>(total) - exact[k][c]);
            sur += weight * 0.5 * tv;
        }
        hit[5] += sur < p.eps / 12.0;
    }
    const char* ids[] = {"", "(1)", "(2)", "(3)", "(4)", "(5)"};
    for (int i = 1; i <= 5; ++i) {
        const WilsonInterval w = wilson_interval(hit[i], samples, kZ99);
        CheckItem c;
        c.id = ids[i];
        c.samples = samples;
        c.estimate = samples ? static_cast<double>(hit[i]) / static_cast<double>(samples) : 0.0;
        c.lower = w.lower;
        c.upper = w.upper;
        const double need = 1 - p.delta;
        c.status = w.lower > need ? "true" : (w.upper < need ? "false" : "undetermined");
        auto it = std::find_if(p.checklist.begin(), p.checklist.end(), [&](const CheckItem& e) { return e.id == c.id; });
        if (it == p.checklist.end())
            p.checklist.push_back(c);
        else
            *it = c;
    }
    // Cylinder partitions are clopen: their r-boundaries are empty.
    set_item(p, "(6)", "vacuous");
}

std::string pack_fingerprint(const ParameterPack& p) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "mode=%s h_source=%.17g h_target=%.17g h_joint=%.17g eps=%.17g Delta=%.17g delta=%.17g "
                  "eta=%.17g r=%.17g alpha=%.17g M=%lld N=%lld",
                  p.mode == ParamMode::Strict ? "strict" : "practical", p.h_source, p.h_target, p.h_joint, p.eps,
                  p.Delta, p.delta, p.eta, p.r, p.alpha, static_cast<long long>(p.M), static_cast<long long>(p.N));
    return buf;
}

}  // namespace symdyn

namespace symdyn {

ParameterPack parse_pack_fingerprint(const std::string& line) {
    ParameterPack p;
    std::istringstream in(line);
    std::string tok;
    int col = 1;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw ParseError("<pack>", 1, col, "expected key=value, got '" + tok + "'");
        const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        try {
            if (key == "mode") {
                if (val != "strict" && val != "practical") throw ParseError("<pack>", 1, col, "bad mode '" + val + "'");
                p.mode = val == "strict" ? ParamMode::Strict : ParamMode::Practical;
            } else if (key == "h_source") p.h_source = std::stod(val);
            else if (key == "h_target") p.h_target = std::stod(val);
            else if (key == "h_joint") p.h_joint = std::stod(val);
            else if (key == "eps") p.eps = std::stod(val);
            else if (key == "Delta") p.Delta = std::stod(val);
            else if (key == "delta") p.delta = std::stod(val);
            else if (key == "eta") p.eta = std::stod(val);
            else if (key == "r") p.r = std::stod(val);
            else if (key == "alpha") p.alpha = std::stod(val);
            else if (key == "M") p.M = std::stoll(val);
            else if (key == "N") p.N = std::stoll(val);
            else throw ParseError("<pack>", 1, col, "unknown key '" + key + "'");
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError("<pack>", 1, col, "bad value for '" + key + "'");
        }
        col += static_cast<int>(tok.size()) + 1;
    }
    if (p.N <= 0) throw ParseError("<pack>", 1, 1, "missing N");
    return p;
}

}  // namespace symdyn
