#include "symdyn/toral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/Dense>

#include "symdyn/error.hpp"

namespace symdyn {

void validate_automorphism(const IntMat& A) {
    if (A.empty() || mat_rows(A) != mat_cols(A)) throw PreconditionError("toral", "matrix must be square and non-empty");
    const mpz_class d = determinant(A);
    if (d != 1 && d != -1) throw PreconditionError("toral", "determinant is " + d.get_str() + ", expected +-1");
}

IntPoly charpoly(const IntMat& A) {
    const std::size_t d = mat_rows(A);
    if (d != mat_cols(A)) throw PreconditionError("toral", "charpoly of a non-square matrix");
    std::vector<mpz_class> c(d + 1, 0);
    c[d] = 1;
    IntMat M = zero_matrix(d, d);
    for (std::size_t k = 1; k <= d; ++k) {
        M = mat_mul(A, M);
        for (std::size_t i = 0; i < d; ++i) M[i][i] += c[d - k + 1];
        const IntMat AM = mat_mul(A, M);
        mpz_class tr = 0;
        for (std::size_t i = 0; i < d; ++i) tr += AM[i][i];
        mpz_divexact_ui(tr.get_mpz_t(), tr.get_mpz_t(), static_cast<unsigned long>(k));
        c[d - k] = -tr;
    }
    return IntPoly(std::move(c));
}

IntMat companion(const IntPoly& f) {
    const int d = f.degree();
    if (d < 1 || abs(f.lead()) != 1) throw PreconditionError("toral", "companion needs a monic polynomial of degree >= 1");
    IntMat C = zero_matrix(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    for (int i = 1; i < d; ++i) C[static_cast<std::size_t>(i)][static_cast<std::size_t>(i - 1)] = 1;
    for (int i = 0; i < d; ++i) C[static_cast<std::size_t>(i)][static_cast<std::size_t>(d - 1)] = -f.c[static_cast<std::size_t>(i)] * f.lead();
    return C;
}

IntMat poly_at_matrix(const IntPoly& p, const IntMat& A) {
    const std::size_t d = mat_rows(A);
    IntMat R = zero_matrix(d, d);
    for (int k = p.degree(); k >= 0; --k) {
        R = mat_mul(R, A);
        for (std::size_t i = 0; i < d; ++i) R[i][i] += p.c[static_cast<std::size_t>(k)];
    }
    return R;
}

IntPoly minimal_polynomial(const IntMat& A) {
    const std::size_t d = mat_rows(A);
    IntPoly m = IntPoly::constant(1);
    for (std::size_t e = 0; e < d; ++e) {
        // Krylov vectors e, Ae, A^2 e, ... until the first linear dependence.
        std::vector<std::vector<mpq_class>> krylov;
        std::vector<mpq_class> v(d, 0);
        v[e] = 1;
        while (true) {
            // Solve sum_k c_k krylov[k] = v over Q by elimination on [K | v].
            const std::size_t j = krylov.size();
            std::vector<std::vector<mpq_class>> aug(d, std::vector<mpq_class>(j + 1));
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t k = 0; k < j; ++k) aug[i][k] = krylov[k][i];
                aug[i][j] = v[i];
            }
            std::vector<std::size_t> pivcol;
            std::size_t row = 0;
            for (std::size_t col = 0; col < j && row < d; ++col) {
                std::size_t p = row;
                while (p < d && aug[p][col] == 0) ++p;
                if (p == d) continue;
                std::swap(aug[p], aug[row]);
                for (std::size_t i = 0; i < d; ++i) {
                    if (i == row || aug[i][col] == 0) continue;
                    const mpq_class f = aug[i][col] / aug[row][col];
                    for (std::size_t k = col; k <= j; ++k) aug[i][k] -= f * aug[row][k];
                }
                pivcol.push_back(col);
                ++row;
            }
            bool consistent = true;
            for (std::size_t i = row; i < d; ++i)
                if (aug[i][j] != 0) consistent = false;
            if (consistent) {
                std::vector<mpq_class> coef(j + 1, 0);
                coef[j] = 1;
                for (std::size_t r = 0; r < pivcol.size(); ++r) coef[pivcol[r]] = -aug[r][j] / aug[r][pivcol[r]];
                RatPoly rp;
                rp.c = coef;
                m = poly_lcm(m, to_primitive_int(rp));
                break;
            }
            krylov.push_back(v);
            std::vector<mpq_class> w(d, 0);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t k = 0; k < d; ++k) w[i] += mpq_class(A[i][k]) * v[k];
            v = std::move(w);
        }
    }
    return m;
}

CyclotomicSplit cyclotomic_split(const IntPoly& f) {
    if (f.degree() < 1) throw PreconditionError("toral", "cyclotomic_split needs deg f >= 1");
    CyclotomicSplit s;
    s.g = IntPoly::constant(1);
    s.h = f;
    const int d = f.degree();
    // phi(n) >= sqrt(n / 2), so n <= 2 d^2 covers every candidate.
    const int nmax = std::max(2, 2 * d * d);
    for (int n = 1; n <= nmax; ++n) {
        if (euler_phi(n) > d) continue;
        const IntPoly& phi = cyclotomic(n);
        int mult = 0;
        IntPoly q;
        while (s.h.degree() >= phi.degree() && exact_divide(s.h, phi, q)) {
            s.h = q;
            s.g = s.g * phi;
            ++mult;
        }
        if (mult) s.factors.push_back({n, phi, mult});
    }
    s.gcd_gh = poly_gcd(s.g, s.h);
    for (int n = 1; n <= nmax; ++n) {
        IntPoly q;
        if (euler_phi(n) <= s.h.degree() && exact_divide(s.h, cyclotomic(n), q))
            throw InternalError("toral", "cofactor still divisible by a cyclotomic polynomial");
    }
    if (!(s.g * s.h == f)) throw InternalError("toral", "g * h differs from f");
    return s;
}

bool is_quasi_hyperbolic(const IntMat& A) {
    validate_automorphism(A);
    return cyclotomic_split(charpoly(A)).g.degree() == 0;
}

double log_mahler_measure(const IntPoly& f, double tol) {
    if (f.degree() < 1) return f.is_zero() ? 0 : std::log(std::abs(f.lead().get_d()));
    const auto parts = squarefree_decomposition(f);
    double total = 0;
    int covered = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].degree() < 1) continue;
        const RootIsolation iso = isolate_roots(parts[i]);
        double worst = 0;
        for (double r : iso.radii) worst = std::max(worst, r);
        if (!iso.disjoint || !(worst <= tol)) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "root certification failed at tol=%.3g (widest inclusion disc %.3g); "
                          "the requested tolerance is tighter than the isolation achieved",
                          tol, worst);
            throw CertificationError("toral", buf);
        }
        double part = std::log(std::abs(parts[i].lead().get_d()));
        for (double la : iso.log_abs) part += std::max(0.0, la);
        total += static_cast<double>(i + 1) * part;
        covered += static_cast<int>(i + 1) * parts[i].degree();
    }
    if (covered != f.degree()) throw InternalError("toral", "squarefree decomposition lost degree");
    // Content of f (leading coefficient scale) is absent for monic input.
    return total + std::log(std::abs(f.lead().get_d()) / std::abs(primitive_part(f).lead().get_d()));
}

double toral_entropy(const IntMat& A, double tol) {
    validate_automorphism(A);
    return log_mahler_measure(charpoly(A), tol);
}

double toral_entropy_eigen(const IntMat& A) {
    validate_automorphism(A);
    const std::size_t d = mat_rows(A);
    Eigen::MatrixXd m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = A[i][j].get_d();
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    double h = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) h += std::max(0.0, std::log(std::abs(es.eigenvalues()(i))));
    return h;
}

std::string to_string(ToralClass c) {
    switch (c) {
        case ToralClass::NotQuasiHyperbolic: return "not-quasi-hyperbolic";
        case ToralClass::Hyperbolic: return "hyperbolic";
        case ToralClass::CentralSpin: return "central-spin";
        case ToralClass::CentralSkew: return "central-skew";
    }
    return "?";
}

ToralClass classify(const IntMat& A) {
    validate_automorphism(A);
    const IntPoly f = charpoly(A);
    if (cyclotomic_split(f).g.degree() > 0) return ToralClass::NotQuasiHyperbolic;
    if (!has_unit_circle_root(f)) return ToralClass::Hyperbolic;
    // Roots of multiplicity >= 2 in the minimal polynomial are the roots of
    // gcd(m, m'); a unit-circle one means a non-trivial Jordan block there.
    const IntPoly m = minimal_polynomial(A);
    const IntPoly repeated = poly_gcd(m, derivative(m));
    return has_unit_circle_root(repeated) ? ToralClass::CentralSkew : ToralClass::CentralSpin;
}

namespace {

// X with A K = K X for a saturated basis K (columns) of an A-invariant lattice.
IntMat restrict_to(const IntMat& A, const IntMat& K) {
    const std::size_t d = mat_rows(K), k = mat_cols(K);
    if (k == 0) return {};
    const SmithForm s = smith_normal_form(K);
    for (std::size_t i = 0; i < k; ++i)
        if (s.D[i][i] != 1) throw InternalError("toral", "kernel basis is not saturated");
    // K = U^-1 [I; 0] V^-1, so L = V [I 0] U is a left inverse.
    IntMat top = zero_matrix(k, d);
    for (std::size_t i = 0; i < k; ++i) top[i] = s.U[i];
    const IntMat L = mat_mul(s.V, top);
    const IntMat X = mat_mul(L, mat_mul(A, K));
    if (mat_mul(K, X) != mat_mul(A, K)) throw InternalError("toral", "kernel lattice is not A-invariant");
    return X;
}

}  // namespace

SplitResult split_by_factors(const IntMat& A, const IntPoly& p, const IntPoly& q) {
    validate_automorphism(A);
    const IntPoly f = charpoly(A);
    if (!(p * q == f) && !(p * q == IntPoly::constant(-1) * f))
        throw PreconditionError("toral", "factors do not multiply to the characteristic polynomial");
    const IntPoly g = poly_gcd(p, q);
    if (g.degree() > 0) throw InseparableError("toral", "inseparable: gcd of the factors is " + to_string(g));
    SplitResult r;
    r.p = p;
    r.q = q;
    r.basis_p = integer_kernel(poly_at_matrix(p, A));
    r.basis_q = integer_kernel(poly_at_matrix(q, A));
    r.A_p = restrict_to(A, r.basis_p);
    r.A_q = restrict_to(A, r.basis_q);
    const std::size_t d = mat_rows(A);
    if (mat_cols(r.basis_p) + mat_cols(r.basis_q) != d) throw InternalError("toral", "kernel dimensions do not add up");
    IntMat joint = zero_matrix(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < mat_cols(r.basis_p); ++j) joint[i][j] = r.basis_p[i][j];
        for (std::size_t j = 0; j < mat_cols(r.basis_q); ++j) joint[i][mat_cols(r.basis_p) + j] = r.basis_q[i][j];
    }
    r.index = abs(determinant(joint));
    return r;
}

SplitResult split_action(const IntMat& A) {
    validate_automorphism(A);
    const CyclotomicSplit s = cyclotomic_split(charpoly(A));
    return split_by_factors(A, s.h, s.g);
}

IntMat halmos_circulant(int n, int m) {
    if (n < 1 || m < 1) throw PreconditionError("toral", "halmos needs n >= 1 and m >= 1");
    const IntPoly& phi = cyclotomic(n);
    IntMat C = zero_matrix(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
    for (int x = 0; x < m; ++x)
        for (int k = 0; k <= phi.degree(); ++k)
            C[static_cast<std::size_t>(x)][static_cast<std::size_t>((x + k) % m)] += phi.c[static_cast<std::size_t>(k)];
    return C;
}

HalmosResult halmos_analysis(int n, int m) {
    const IntMat C = halmos_circulant(n, m);
    const SmithForm s = smith_normal_form(C);
    HalmosResult r;
    r.nullity = m - static_cast<int>(s.rank);
    for (std::size_t i = 0; i < s.rank; ++i) {
        const mpz_class& di = s.D[i][i];
        r.finite_order *= di;
        if (di > 1) r.invariants.push_back(di);
    }
    const mpz_class at_one = cyclotomic(n).eval(1);
    if (at_one == 0) {
        r.constant_dim = 1;
        r.constant_order = 1;
        r.member = r.nullity > 1 || r.finite_order > 1;
    } else {
        r.constant_dim = 0;
        r.constant_order = abs(at_one);
        r.member = r.nullity > 0 || r.finite_order > r.constant_order;
    }
    return r;
}

bool halmos_membership(int n, int m) { return halmos_analysis(n, m).member; }

}  // namespace symdyn
