#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symdyn/measure.hpp"

namespace symdyn {

enum class ParamMode { Strict, Practical };

// One line of the parameter checklist. status is "true", "false",
// "vacuous" or "undetermined"; Monte-Carlo items also carry an estimate and
// a 0.99 Wilson interval.
struct CheckItem {
    std::string id;
    std::string status;
    double estimate = 0, lower = 0, upper = 0;
    std::int64_t samples = 0;
};

struct ParameterPack {
    ParamMode mode = ParamMode::Practical;
    double h_source = 0, h_target = 0, h_joint = 0;
    double eps = 0, Delta = 0, delta = 0, eta = 0, r = 0, alpha = 0;
    std::int64_t ell = 0, M = 0, N = 0;
    int source_alphabet = 2;
    std::int64_t target_gap = 1;

    // Upper bounds on delta from each constraint and the one that binds.
    double delta_en = 0, delta_part = 0, delta_stupid = 0, delta_eps = 0;
    std::string delta_binding;
    // Least M demanded by items (b), (d), (e) (0 when not evaluated).
    std::int64_t M_b = 0, M_d = 0, M_e = 0;
    std::string M_binding, N_binding;

    std::vector<CheckItem> checklist;
    const CheckItem* item(const std::string& id) const;
    bool decidable_ok() const;  // every decidable item true
};

struct ParameterRequest {
    double h_source = 0, h_target = 0, eps = 0;
    ParamMode mode = ParamMode::Practical;
    std::optional<std::int64_t> N, M;
    std::optional<double> delta, alpha;
    std::optional<double> h_joint;  // defaults to h_source + h_target
    int source_alphabet = 2;
    std::int64_t target_gap = 1;
    const MarkovMeasure* target_measure = nullptr;  // needed for item (e)
    std::int64_t max_N = 1000000000;
};

ParameterPack choose_parameters(const ParameterRequest& req);
// Re-evaluates the decidable items (a)-(e) and the delta inequalities.
void evaluate_checklist(ParameterPack& pack, const MarkovMeasure* nu);
// Monte-Carlo estimates of the almost-sure items (1)-(6) under the product
// joining of mu and nu.
void estimate_almost_sure(ParameterPack& pack, const MarkovMeasure& mu, const MarkovMeasure& nu,
                          std::int64_t samples, std::uint64_t seed, int kmax = 2);

struct WilsonInterval {
    double lower, upper;
};
WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials, double z);
constexpr double kZ99 = 2.5758293035489004;

// Canonical text used for hashing and dictionary headers.
std::string pack_fingerprint(const ParameterPack& p);
// Inverse of pack_fingerprint (checklist and bound diagnostics are not restored).
ParameterPack parse_pack_fingerprint(const std::string& line);

}  // namespace symdyn
