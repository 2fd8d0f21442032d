#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace symdyn {

// Integer polynomial, constant term first, no trailing zeros (0 is empty).
struct IntPoly {
    std::vector<mpz_class> c;

    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs);
    static IntPoly constant(const mpz_class& v);
    static IntPoly monomial(int deg, const mpz_class& v = 1);

    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for 0
    bool is_zero() const { return c.empty(); }
    const mpz_class& lead() const { return c.back(); }
    mpz_class eval(const mpz_class& x) const;
    bool operator==(const IntPoly& o) const { return c == o.c; }
};

IntPoly operator+(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const IntPoly& a, const IntPoly& b);
IntPoly derivative(const IntPoly& a);
// Reversed coefficients: x^deg a(1/x).
IntPoly reciprocal(const IntPoly& a);
mpz_class content(const IntPoly& a);
IntPoly primitive_part(const IntPoly& a);  // positive leading coefficient
// Exact division over Z; false (q untouched) when b does not divide a.
bool exact_divide(const IntPoly& a, const IntPoly& b, IntPoly& q);

// Rational polynomial helpers.
struct RatPoly {
    std::vector<mpq_class> c;
    int degree() const { return static_cast<int>(c.size()) - 1; }
};
RatPoly to_rat(const IntPoly& a);
IntPoly to_primitive_int(const RatPoly& a);  // scaled, primitive, positive lead
void divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r);
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);  // primitive, positive lead
IntPoly poly_lcm(const IntPoly& a, const IntPoly& b);
// Yun: a = lc * prod_i s_i^i, each s_i squarefree and pairwise coprime.
std::vector<IntPoly> squarefree_decomposition(const IntPoly& a);
IntPoly squarefree_part(const IntPoly& a);

std::int64_t euler_phi(std::int64_t n);
const IntPoly& cyclotomic(int n);

// Distinct real roots in the open interval (lo, hi) via a Sturm sequence;
// the polynomial must not vanish at lo or hi.
int sturm_count(const IntPoly& p, const mpq_class& lo, const mpq_class& hi);
// Exact test for roots of modulus one (including +-1).
bool has_unit_circle_root(const IntPoly& p);
// Number of distinct roots of modulus one.
int unit_circle_root_count(const IntPoly& p);

// Aberth-Ehrlich iteration at 50 significant digits. `radii` are
// inclusion radii n |p(z_i)| / |lc prod_{j != i} (z_i - z_j)|; the roots are
// certified when the discs are pairwise disjoint.
struct RootIsolation {
    std::vector<std::complex<double>> roots;
    std::vector<double> radii;
    std::vector<double> log_abs;  // log |z_i| at full precision
    bool disjoint = false;
};
RootIsolation isolate_roots(const IntPoly& p);

std::string to_string(const IntPoly& p);  // "c0 c1 ... cd"
IntPoly parse_poly(const std::string& text, const std::string& source = "<poly>");

}  // namespace symdyn
