#include "symdyn/measure.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "symdyn/error.hpp"
#include "symdyn/rng.hpp"

namespace symdyn {

namespace {

void check_stochastic(const Eigen::MatrixXd& p) {
    if (p.rows() == 0 || p.rows() != p.cols())
        throw PreconditionError("measures", "transition matrix must be square and non-empty");
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
        double s = 0;
        for (Eigen::Index j = 0; j < p.cols(); ++j) {
            if (!(p(i, j) >= 0) || !std::isfinite(p(i, j)))
                throw PreconditionError("measures", "negative or non-finite entry in row " + std::to_string(i));
            s += p(i, j);
        }
        if (std::abs(s - 1.0) > 1e-12)
            throw PreconditionError("measures", "row " + std::to_string(i) + " sums to " + std::to_string(s));
    }
}

// Names a pair (i, j) with j unreachable from i, or returns false.
bool find_unreachable(const Eigen::MatrixXd& p, int& from, int& to) {
    const int n = static_cast<int>(p.rows());
    for (int i = 0; i < n; ++i) {
        std::vector<char> seen(n, 0);
        std::vector<int> stack{i};
        seen[i] = 1;
        while (!stack.empty()) {
            const int a = stack.back();
            stack.pop_back();
            for (int b = 0; b < n; ++b)
                if (p(a, b) > 0 && !seen[b]) {
                    seen[b] = 1;
                    stack.push_back(b);
                }
        }
        for (int j = 0; j < n; ++j)
            if (!seen[j]) {
                from = i;
                to = j;
                return true;
            }
    }
    return false;
}

}  // namespace

Eigen::VectorXd stationary_vector(const Eigen::MatrixXd& p) {
    check_stochastic(p);
    int from = 0, to = 0;
    if (find_unreachable(p, from, to))
        throw ReducibleError("measures", "reducible matrix: state " + std::to_string(to) +
                                             " is not reachable from state " + std::to_string(from));
    const Eigen::Index n = p.rows();
    Eigen::MatrixXd a = p.transpose() - Eigen::MatrixXd::Identity(n, n);
    a.row(n - 1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs(n - 1) = 1.0;
    Eigen::VectorXd pi = a.fullPivLu().solve(rhs);
    for (Eigen::Index i = 0; i < n; ++i) pi(i) = std::max(pi(i), 0.0);
    pi /= pi.sum();
    return pi;
}

MarkovMeasure MarkovMeasure::from_transition(const Eigen::MatrixXd& transition) {
    MarkovMeasure m;
    m.pi_ = stationary_vector(transition);
    m.p_ = transition;
    const int n = m.num_states();
    m.cdf_.assign(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i) {
        double acc = 0;
        for (int j = 0; j < n; ++j) {
            acc += transition(i, j);
            m.cdf_[i][j] = acc;
        }
    }
    return m;
}

MarkovMeasure MarkovMeasure::bernoulli(const std::vector<double>& prob) {
    const Eigen::Index n = static_cast<Eigen::Index>(prob.size());
    Eigen::MatrixXd t(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) t(i, j) = prob[j];
    return from_transition(t);
}

MarkovMeasure MarkovMeasure::parry(const Sft& sft) {
    if (sft.memory() > 1 || sft.num_states() != static_cast<std::size_t>(sft.alphabet_size()))
        throw PreconditionError("measures", "Parry measure needs a memory <= 1 SFT using every symbol");
    const int n = sft.alphabet_size();
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int si = static_cast<int>(sft.state_word(i)[0]);
            const int sj = static_cast<int>(sft.state_word(j)[0]);
            a(si, sj) = sft.adjacency()[i][j];
        }
    // Right Perron vector by power iteration on A + I.
    Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
    const Eigen::MatrixXd b = a + Eigen::MatrixXd::Identity(n, n);
    for (int it = 0; it < 100000; ++it) {
        Eigen::VectorXd w = b * v;
        w /= w.maxCoeff();
        if ((w - v).cwiseAbs().maxCoeff() < 1e-15) {
            v = w;
            break;
        }
        v = w;
    }
    const double lambda = (a * v).cwiseQuotient(v).mean();
    Eigen::MatrixXd t(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) t(i, j) = a(i, j) * v(j) / (lambda * v(i));
        t.row(i) /= t.row(i).sum();
    }
    return from_transition(t);
}

Sft MarkovMeasure::support() const {
    std::vector<Word> forbidden;
    for (int i = 0; i < num_states(); ++i)
        for (int j = 0; j < num_states(); ++j)
            if (!(p_(i, j) > 0)) forbidden.emplace_back(std::vector<Symbol>{static_cast<Symbol>(i), static_cast<Symbol>(j)});
    return Sft::build(num_states(), forbidden);
}

long double MarkovMeasure::log_cylinder(const Word& w) const {
    if (w.empty()) return 0.0L;
    const int n = num_states();
    for (Symbol s : w.symbols)
        if (s >= n) return -std::numeric_limits<long double>::infinity();
    long double acc = std::log(static_cast<long double>(pi_(w.symbols[0])));
    for (std::size_t i = 1; i < w.size(); ++i) {
        const double t = p_(w.symbols[i - 1], w.symbols[i]);
        if (!(t > 0)) return -std::numeric_limits<long double>::infinity();
        acc += std::log(static_cast<long double>(t));
    }
    return acc;
}

double MarkovMeasure::cylinder_probability(const Word& w) const {
    return static_cast<double>(std::exp(log_cylinder(w)));
}

long double MarkovMeasure::min_log_cylinder(std::size_t k) const {
    if (k == 0) return 0.0L;
    const int n = num_states();
    const long double inf = std::numeric_limits<long double>::infinity();
    std::vector<long double> cur(n), nxt(n);
    for (int i = 0; i < n; ++i) cur[i] = std::log(static_cast<long double>(pi_(i)));
    for (std::size_t step = 1; step < k; ++step) {
        for (int j = 0; j < n; ++j) {
            nxt[j] = inf;
            for (int i = 0; i < n; ++i)
                if (p_(i, j) > 0) nxt[j] = std::min(nxt[j], cur[i] + std::log(static_cast<long double>(p_(i, j))));
        }
        cur.swap(nxt);
    }
    long double best = inf;
    for (long double v : cur) best = std::min(best, v);
    return best;
}

long double MarkovMeasure::max_log_cylinder(std::size_t k) const {
    if (k == 0) return 0.0L;
    const int n = num_states();
    const long double ninf = -std::numeric_limits<long double>::infinity();
    std::vector<long double> cur(n), nxt(n);
    for (int i = 0; i < n; ++i) cur[i] = std::log(static_cast<long double>(pi_(i)));
    for (std::size_t step = 1; step < k; ++step) {
        for (int j = 0; j < n; ++j) {
            nxt[j] = ninf;
            for (int i = 0; i < n; ++i)
                if (p_(i, j) > 0) nxt[j] = std::max(nxt[j], cur[i] + std::log(static_cast<long double>(p_(i, j))));
        }
        cur.swap(nxt);
    }
    long double best = ninf;
    for (long double v : cur) best = std::max(best, v);
    return best;
}

double MarkovMeasure::entropy() const {
    double h = 0;
    for (int i = 0; i < num_states(); ++i)
        for (int j = 0; j < num_states(); ++j) {
            const double t = p_(i, j);
            if (t > 0) h -= pi_(i) * t * std::log(t);
        }
    return h;
}

Word MarkovMeasure::sample(std::size_t n, std::uint64_t seed) const {
    Word w;
    w.symbols.resize(n);
    if (n == 0) return w;
    Rng rng(seed);
    const int k = num_states();
    auto draw = [&](const auto& cdf) {
        const double u = rng.uniform();
        for (int j = 0; j < k - 1; ++j)
            if (u < cdf[j]) return j;
        return k - 1;
    };
    std::vector<double> pi_cdf(k);
    double acc = 0;
    for (int i = 0; i < k; ++i) pi_cdf[i] = (acc += pi_(i));
    // Skip zero-probability tail symbols that rounding could select.
    auto fix = [&](int prev, int j) {
        while (p_(prev, j) <= 0) j = (j + k - 1) % k;
        return j;
    };
    int cur = draw(pi_cdf);
    w.symbols[0] = static_cast<Symbol>(cur);
    for (std::size_t i = 1; i < n; ++i) {
        cur = fix(cur, draw(cdf_[cur]));
        w.symbols[i] = static_cast<Symbol>(cur);
    }
    return w;
}

MarkovMeasure parse_measure(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int n = -1;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "states") {
            if (!(ls >> n) || n < 1) throw ParseError(source, lineno, 8, "expected positive state count");
        } else if (key == "row") {
            if (n < 0) throw ParseError(source, lineno, 1, "row before states line");
            std::vector<double> r;
            std::string tok;
            while (ls >> tok) {
                try {
                    std::size_t used = 0;
                    r.push_back(std::stod(tok, &used));
                    if (used != tok.size()) throw std::invalid_argument(tok);
                } catch (const std::exception&) {
                    throw ParseError(source, lineno, static_cast<int>(line.find(tok) + 1), "bad number '" + tok + "'");
                }
            }
            if (static_cast<int>(r.size()) != n)
                throw ParseError(source, lineno, 1, "row has " + std::to_string(r.size()) + " entries, expected " + std::to_string(n));
            rows.push_back(r);
        } else {
            throw ParseError(source, lineno, static_cast<int>(line.find(key) + 1), "unknown key '" + key + "'");
        }
    }
    if (n < 0) throw ParseError(source, lineno + 1, 1, "missing states line");
    if (static_cast<int>(rows.size()) != n)
        throw ParseError(source, lineno + 1, 1, "expected " + std::to_string(n) + " rows");
    Eigen::MatrixXd p(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) p(i, j) = rows[i][j];
    return MarkovMeasure::from_transition(p);
}

std::string serialize_measure(const MarkovMeasure& m) {
    std::string out = "states " + std::to_string(m.num_states()) + "\n";
    char buf[64];
    for (int i = 0; i < m.num_states(); ++i) {
        out += "row";
        for (int j = 0; j < m.num_states(); ++j) {
            std::snprintf(buf, sizeof buf, " %.17g", m.transition()(i, j));
            out += buf;
        }
        out += "\n";
    }
    return out;
}

}  // namespace symdyn
