#pragma once

#include <string>
#include <vector>

#include "symdyn/intpoly.hpp"
#include "symdyn/smith.hpp"

namespace symdyn {

// Throws PreconditionError unless A is square with det A = +-1.
void validate_automorphism(const IntMat& A);

IntPoly charpoly(const IntMat& A);  // Faddeev-LeVerrier, monic
IntPoly minimal_polynomial(const IntMat& A);  // lcm of Krylov annihilators over Q
IntMat companion(const IntPoly& monic);
IntMat poly_at_matrix(const IntPoly& p, const IntMat& A);

struct CyclotomicFactor {
    int n = 0;
    IntPoly phi;
    int multiplicity = 0;
};
struct CyclotomicSplit {
    IntPoly g, h, gcd_gh;
    std::vector<CyclotomicFactor> factors;
};
CyclotomicSplit cyclotomic_split(const IntPoly& f);

bool is_quasi_hyperbolic(const IntMat& A);

// Log Mahler measure of f from certified root discs; CertificationError if
// the discs are not disjoint or wider than tol.
double log_mahler_measure(const IntPoly& f, double tol = 1e-10);
double toral_entropy(const IntMat& A, double tol = 1e-10);
// Floating-point cross-check through Eigen's eigenvalue solver.
double toral_entropy_eigen(const IntMat& A);

enum class ToralClass { NotQuasiHyperbolic, Hyperbolic, CentralSpin, CentralSkew };
std::string to_string(ToralClass c);
ToralClass classify(const IntMat& A);

// Restrictions of A to ker p(A) and ker q(A) in bases of the saturated
// sublattices; index = [Z^d : K_p + K_q].
struct SplitResult {
    IntPoly p, q;
    IntMat basis_p, basis_q;  // columns
    IntMat A_p, A_q;
    mpz_class index;
};
SplitResult split_by_factors(const IntMat& A, const IntPoly& p, const IntPoly& q);
// p = cyclotomic-free cofactor h (quasi-hyperbolic part), q = cyclotomic part g.
SplitResult split_action(const IntMat& A);

struct HalmosResult {
    bool member = false;
    std::vector<mpz_class> invariants;  // nonzero Smith invariants > 1
    mpz_class finite_order = 1;
    int nullity = 0;
    int constant_dim = 0;           // 1 when Phi_n(1) = 0
    mpz_class constant_order = 1;   // |Phi_n(1)| otherwise
};
// Solutions f : Z/m -> T of Phi_n(S)[f] = 0 against the constant ones.
HalmosResult halmos_analysis(int n, int m);
bool halmos_membership(int n, int m);
// The m x m integer circulant of Phi_n acting on functions on Z/m.
IntMat halmos_circulant(int n, int m);

}  // namespace symdyn
