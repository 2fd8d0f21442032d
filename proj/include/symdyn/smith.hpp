#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

namespace symdyn {

using IntMat = std::vector<std::vector<mpz_class>>;

IntMat identity_matrix(std::size_t n);
IntMat zero_matrix(std::size_t rows, std::size_t cols);
IntMat mat_mul(const IntMat& a, const IntMat& b);
IntMat transpose(const IntMat& a);
mpz_class determinant(const IntMat& a);  // Bareiss, exact
std::size_t mat_rows(const IntMat& a);
std::size_t mat_cols(const IntMat& a);

// U * A * V = D with U, V unimodular, D diagonal, d_i | d_{i+1}, d_i >= 0.
struct SmithForm {
    IntMat U, D, V;
    std::size_t rank = 0;
    std::vector<mpz_class> diagonal() const;
};
SmithForm smith_normal_form(const IntMat& a);

// Basis of the saturated lattice {v in Z^n : A v = 0}, as columns.
IntMat integer_kernel(const IntMat& a);

std::string to_string(const IntMat& a);  // rows on separate lines
IntMat parse_matrix(const std::string& text, const std::string& source = "<matrix>");

}  // namespace symdyn
