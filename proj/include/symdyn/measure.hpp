#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symdyn/sft.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

// Unique stationary vector of an irreducible stochastic matrix.
Eigen::VectorXd stationary_vector(const Eigen::MatrixXd& transition);

// Stationary Markov chain on symbols 0..n-1 (memory one); Bernoulli
// measures are the rank-one case.
class MarkovMeasure {
public:
    static MarkovMeasure from_transition(const Eigen::MatrixXd& transition);
    static MarkovMeasure bernoulli(const std::vector<double>& p);
    // Measure of maximal entropy of a memory <= 1 SFT.
    static MarkovMeasure parry(const Sft& sft);

    int num_states() const { return static_cast<int>(p_.rows()); }
    const Eigen::MatrixXd& transition() const { return p_; }
    const Eigen::VectorXd& stationary() const { return pi_; }
    bool allowed(int a, int b) const { return p_(a, b) > 0; }

    // SFT forbidding the zero-probability transitions.
    Sft support() const;

    // log mu([w]); -infinity for inadmissible words.
    long double log_cylinder(const Word& w) const;
    double cylinder_probability(const Word& w) const;
    // Minimum of log mu([w]) over admissible words of length k.
    long double min_log_cylinder(std::size_t k) const;
    long double max_log_cylinder(std::size_t k) const;
    double entropy() const;

    Word sample(std::size_t n, std::uint64_t seed) const;

private:
    Eigen::MatrixXd p_;
    Eigen::VectorXd pi_;
    std::vector<std::vector<double>> cdf_;
};

MarkovMeasure parse_measure(const std::string& text, const std::string& source = "<measure>");
std::string serialize_measure(const MarkovMeasure& m);

}  // namespace symdyn
