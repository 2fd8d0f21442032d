#include "symdyn/smith.hpp"

#include <sstream>
#include <utility>

#include "symdyn/error.hpp"

namespace symdyn {

std::size_t mat_rows(const IntMat& a) { return a.size(); }
std::size_t mat_cols(const IntMat& a) { return a.empty() ? 0 : a[0].size(); }

IntMat zero_matrix(std::size_t rows, std::size_t cols) {
    return IntMat(rows, std::vector<mpz_class>(cols, 0));
}

IntMat identity_matrix(std::size_t n) {
    IntMat m = zero_matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
    if (mat_cols(a) != mat_rows(b)) throw PreconditionError("smith", "matrix dimensions do not match");
    IntMat c = zero_matrix(mat_rows(a), mat_cols(b));
    for (std::size_t i = 0; i < mat_rows(a); ++i)
        for (std::size_t k = 0; k < mat_cols(a); ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < mat_cols(b); ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

IntMat transpose(const IntMat& a) {
    IntMat t = zero_matrix(mat_cols(a), mat_rows(a));
    for (std::size_t i = 0; i < mat_rows(a); ++i)
        for (std::size_t j = 0; j < mat_cols(a); ++j) t[j][i] = a[i][j];
    return t;
}

mpz_class determinant(const IntMat& a) {
    const std::size_t n = mat_rows(a);
    if (n != mat_cols(a)) throw PreconditionError("smith", "determinant of a non-square matrix");
    if (n == 0) return 1;
    IntMat m = a;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

std::vector<mpz_class> SmithForm::diagonal() const {
    std::vector<mpz_class> d;
    for (std::size_t i = 0; i < std::min(mat_rows(D), mat_cols(D)); ++i) d.push_back(D[i][i]);
    return d;
}

namespace {

void row_axpy(IntMat& m, std::size_t dst, std::size_t src, const mpz_class& q) {
    for (std::size_t j = 0; j < m[dst].size(); ++j) m[dst][j] -= q * m[src][j];
}

void col_axpy(IntMat& m, std::size_t dst, std::size_t src, const mpz_class& q) {
    for (auto& row : m) row[dst] -= q * row[src];
}

void col_swap(IntMat& m, std::size_t a, std::size_t b) {
    for (auto& row : m) std::swap(row[a], row[b]);
}

}  // namespace

SmithForm smith_normal_form(const IntMat& a) {
    const std::size_t m = mat_rows(a), n = mat_cols(a);
    SmithForm s{identity_matrix(m), a, identity_matrix(n), 0};
    IntMat& D = s.D;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        auto place_min = [&]() {
            std::size_t bi = m, bj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (D[i][j] != 0 && (bi == m || abs(D[i][j]) < abs(D[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == m) return false;
            std::swap(D[t], D[bi]);
            std::swap(s.U[t], s.U[bi]);
            col_swap(D, t, bj);
            col_swap(s.V, t, bj);
            return true;
        };
        if (!place_min()) break;
        while (true) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D[i][t] == 0) continue;
                mpz_class q;
                mpz_tdiv_q(q.get_mpz_t(), D[i][t].get_mpz_t(), D[t][t].get_mpz_t());
                row_axpy(D, i, t, q);
                row_axpy(s.U, i, t, q);
                if (D[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D[t][j] == 0) continue;
                mpz_class q;
                mpz_tdiv_q(q.get_mpz_t(), D[t][j].get_mpz_t(), D[t][t].get_mpz_t());
                col_axpy(D, j, t, q);
                col_axpy(s.V, j, t, q);
                if (D[t][j] != 0) clean = false;
            }
            if (!clean) {
                // A remainder smaller than the pivot exists in row or column t.
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < m; ++i)
                    if (D[i][t] != 0 && abs(D[i][t]) < abs(D[bi][bj])) bi = i, bj = t;
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D[t][j] != 0 && abs(D[t][j]) < abs(D[bi][bj])) bi = t, bj = j;
                if (bi != t) {
                    std::swap(D[t], D[bi]);
                    std::swap(s.U[t], s.U[bi]);
                }
                if (bj != t) {
                    col_swap(D, t, bj);
                    col_swap(s.V, t, bj);
                }
                continue;
            }
            bool divisible = true;
            for (std::size_t i = t + 1; i < m && divisible; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(D[i][j].get_mpz_t(), D[t][t].get_mpz_t())) {
                        row_axpy(D, t, i, -1);
                        row_axpy(s.U, t, i, -1);
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        if (D[t][t] < 0) {
            for (auto& v : D[t]) v = -v;
            for (auto& v : s.U[t]) v = -v;
        }
        ++s.rank;
    }
    return s;
}

IntMat integer_kernel(const IntMat& a) {
    const SmithForm s = smith_normal_form(a);
    const std::size_t n = mat_cols(a);
    IntMat k = zero_matrix(n, n - s.rank);
    for (std::size_t j = s.rank; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) k[i][j - s.rank] = s.V[i][j];
    return k;
}

std::string to_string(const IntMat& a) {
    std::string out;
    for (const auto& row : a) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out += ' ';
            out += row[j].get_str();
        }
        out += '\n';
    }
    return out;
}

IntMat parse_matrix(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    IntMat m;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        std::vector<mpz_class> row;
        std::size_t col = 0;
        while (ls >> tok) {
            col = line.find(tok, col);
            mpz_class v;
            if (v.set_str(tok, 10) != 0)
                throw ParseError(source, lineno, static_cast<int>(col + 1), "bad integer '" + tok + "'");
            row.push_back(v);
            col += tok.size();
        }
        if (row.empty()) continue;
        if (!m.empty() && row.size() != m[0].size())
            throw ParseError(source, lineno, 1,
                             "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(m[0].size()));
        m.push_back(std::move(row));
    }
    return m;
}

}  // namespace symdyn
