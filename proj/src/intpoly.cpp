#include "symdyn/intpoly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

void trim(std::vector<mpz_class>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}
void trim(std::vector<mpq_class>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

}  // namespace

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : c(std::move(coeffs)) { trim(c); }

IntPoly IntPoly::constant(const mpz_class& v) { return IntPoly(std::vector<mpz_class>{v}); }

IntPoly IntPoly::monomial(int deg, const mpz_class& v) {
    std::vector<mpz_class> c(static_cast<std::size_t>(deg) + 1, 0);
    c.back() = v;
    return IntPoly(std::move(c));
}

mpz_class IntPoly::eval(const mpz_class& x) const {
    mpz_class v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<mpz_class> c(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) c[i] += b.c[i];
    return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<mpz_class> c(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) c[i] -= b.c[i];
    return IntPoly(std::move(c));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpz_class> c(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
    return IntPoly(std::move(c));
}

IntPoly derivative(const IntPoly& a) {
    std::vector<mpz_class> c;
    for (std::size_t i = 1; i < a.c.size(); ++i) c.push_back(a.c[i] * static_cast<unsigned long>(i));
    return IntPoly(std::move(c));
}

IntPoly reciprocal(const IntPoly& a) {
    std::vector<mpz_class> c(a.c.rbegin(), a.c.rend());
    return IntPoly(std::move(c));
}

mpz_class content(const IntPoly& a) {
    mpz_class g = 0;
    for (const auto& v : a.c) g = gcd(g, v);
    return g;
}

IntPoly primitive_part(const IntPoly& a) {
    if (a.is_zero()) return a;
    mpz_class g = content(a);
    if (a.lead() < 0) g = -g;
    std::vector<mpz_class> c;
    for (const auto& v : a.c) c.push_back(v / g);
    return IntPoly(std::move(c));
}

bool exact_divide(const IntPoly& a, const IntPoly& b, IntPoly& q) {
    if (b.is_zero()) throw PreconditionError("intpoly", "division by the zero polynomial");
    if (a.is_zero()) {
        q = IntPoly{};
        return true;
    }
    if (a.degree() < b.degree()) return false;
    std::vector<mpz_class> r = a.c;
    std::vector<mpz_class> out(static_cast<std::size_t>(a.degree() - b.degree() + 1), 0);
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        const mpz_class& top = r[static_cast<std::size_t>(k + b.degree())];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), b.lead().get_mpz_t())) return false;
        const mpz_class t = top / b.lead();
        out[static_cast<std::size_t>(k)] = t;
        for (int i = 0; i <= b.degree(); ++i) r[static_cast<std::size_t>(k + i)] -= t * b.c[static_cast<std::size_t>(i)];
    }
    for (const auto& v : r)
        if (v != 0) return false;
    q = IntPoly(std::move(out));
    return true;
}

RatPoly to_rat(const IntPoly& a) {
    RatPoly r;
    for (const auto& v : a.c) r.c.emplace_back(v);
    return r;
}

IntPoly to_primitive_int(const RatPoly& a) {
    mpz_class l = 1;
    for (const auto& v : a.c) l = lcm(l, v.get_den());
    std::vector<mpz_class> c;
    for (const auto& v : a.c) {
        mpq_class s = v * l;
        c.push_back(s.get_num());
    }
    return primitive_part(IntPoly(std::move(c)));
}

void divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r) {
    if (b.c.empty()) throw PreconditionError("intpoly", "division by the zero polynomial");
    r = a;
    trim(r.c);
    q.c.assign(r.degree() >= b.degree() ? static_cast<std::size_t>(r.degree() - b.degree() + 1) : 0, 0);
    while (!r.c.empty() && r.degree() >= b.degree()) {
        const int k = r.degree() - b.degree();
        const mpq_class t = r.c.back() / b.c.back();
        q.c[static_cast<std::size_t>(k)] = t;
        for (int i = 0; i <= b.degree(); ++i) r.c[static_cast<std::size_t>(k + i)] -= t * b.c[static_cast<std::size_t>(i)];
        r.c.pop_back();
        trim(r.c);
    }
    trim(q.c);
}

IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
    // Primitive remainder sequence keeps coefficients small.
    IntPoly x = primitive_part(a), y = primitive_part(b);
    if (x.is_zero()) return y;
    while (!y.is_zero()) {
        RatPoly q, r;
        divmod(to_rat(x), to_rat(y), q, r);
        x = y;
        y = r.c.empty() ? IntPoly{} : to_primitive_int(r);
    }
    return primitive_part(x);
}

IntPoly poly_lcm(const IntPoly& a, const IntPoly& b) {
    const IntPoly g = poly_gcd(a, b);
    IntPoly q;
    if (!exact_divide(primitive_part(a) * primitive_part(b), g, q))
        throw InternalError("intpoly", "lcm division was not exact");
    return primitive_part(q);
}

namespace {

RatPoly rat_derivative(const RatPoly& a) {
    RatPoly d;
    for (std::size_t i = 1; i < a.c.size(); ++i) d.c.push_back(a.c[i] * static_cast<long>(i));
    trim(d.c);
    return d;
}

RatPoly rat_sub(const RatPoly& a, const RatPoly& b) {
    RatPoly d;
    d.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) d.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) d.c[i] -= b.c[i];
    trim(d.c);
    return d;
}

RatPoly rat_quotient(const RatPoly& a, const RatPoly& b) {
    RatPoly q, r;
    divmod(a, b, q, r);
    return q;
}

}  // namespace

std::vector<IntPoly> squarefree_decomposition(const IntPoly& a) {
    if (a.degree() < 1) return {};
    // Yun's algorithm over Q; entry i - 1 is the factor of multiplicity i.
    const RatPoly f = to_rat(primitive_part(a));
    const RatPoly df = rat_derivative(f);
    const RatPoly g = to_rat(poly_gcd(primitive_part(a), derivative(primitive_part(a))));
    RatPoly b = rat_quotient(f, g);
    RatPoly d = rat_sub(rat_quotient(df, g), rat_derivative(b));
    std::vector<IntPoly> out;
    while (b.degree() >= 1) {
        const IntPoly s = d.c.empty() ? to_primitive_int(b) : poly_gcd(to_primitive_int(b), to_primitive_int(d));
        out.push_back(s);
        const RatPoly rs = to_rat(s);
        b = rat_quotient(b, rs);
        const RatPoly c = rat_quotient(d, rs);
        d = rat_sub(c, rat_derivative(b));
    }
    while (!out.empty() && out.back().degree() < 1) out.pop_back();
    return out;
}

IntPoly squarefree_part(const IntPoly& a) {
    const IntPoly f = primitive_part(a);
    if (f.degree() < 1) return f;
    RatPoly qq, r;
    divmod(to_rat(f), to_rat(poly_gcd(f, derivative(f))), qq, r);
    return to_primitive_int(qq);
}

std::int64_t euler_phi(std::int64_t n) {
    std::int64_t r = n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

const IntPoly& cyclotomic(int n) {
    if (n < 1) throw PreconditionError("intpoly", "cyclotomic index must be >= 1");
    static std::map<int, IntPoly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    IntPoly p = IntPoly::monomial(n) - IntPoly::constant(1);
    for (int d = 1; d < n; ++d) {
        if (n % d) continue;
        // Recursion would re-lock; build divisors directly.
        auto jt = cache.find(d);
        IntPoly phd;
        if (jt != cache.end()) {
            phd = jt->second;
        } else {
            phd = IntPoly::monomial(d) - IntPoly::constant(1);
            for (int e = 1; e < d; ++e)
                if (d % e == 0) {
                    IntPoly q;
                    exact_divide(phd, cache.at(e), q);
                    phd = q;
                }
            cache.emplace(d, phd);
        }
        IntPoly q;
        if (!exact_divide(p, phd, q)) throw InternalError("intpoly", "cyclotomic division failed");
        p = q;
    }
    return cache.emplace(n, p).first->second;
}

namespace {

int sign_at(const RatPoly& p, const mpq_class& x) {
    mpq_class v = 0;
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) v = v * x + *it;
    return sgn(v);
}

int variations(const std::vector<RatPoly>& seq, const mpq_class& x) {
    int v = 0, last = 0;
    for (const auto& p : seq) {
        const int s = sign_at(p, x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

}  // namespace

int sturm_count(const IntPoly& p, const mpq_class& lo, const mpq_class& hi) {
    if (p.degree() < 1) return 0;
    std::vector<RatPoly> seq{to_rat(p), to_rat(derivative(p))};
    while (seq.back().degree() >= 1) {
        RatPoly q, r;
        divmod(seq[seq.size() - 2], seq.back(), q, r);
        if (r.c.empty()) break;
        for (auto& v : r.c) v = -v;
        seq.push_back(r);
    }
    if (sign_at(seq[0], lo) == 0 || sign_at(seq[0], hi) == 0)
        throw PreconditionError("intpoly", "Sturm interval endpoint is a root");
    return variations(seq, lo) - variations(seq, hi);
}

int unit_circle_root_count(const IntPoly& p) {
    IntPoly s = squarefree_part(p);
    if (s.degree() < 1) return 0;
    IntPoly q = poly_gcd(s, reciprocal(s));
    int count = 0;
    const IntPoly xm1(std::vector<mpz_class>{-1, 1}), xp1(std::vector<mpz_class>{1, 1});
    IntPoly t;
    if (q.eval(1) == 0) {
        ++count;
        exact_divide(q, xm1, t);
        q = t;
    }
    if (q.eval(-1) == 0) {
        ++count;
        exact_divide(q, xp1, t);
        q = t;
    }
    q = primitive_part(q);
    if (q.degree() < 1) return count;
    if (!(reciprocal(q) == q) || q.degree() % 2)
        throw InternalError("intpoly", "gcd with the reciprocal is not palindromic");
    // q(z) = z^m Q(z + 1/z); T_j(w) = z^j + z^-j.
    const int m = q.degree() / 2;
    const IntPoly w(std::vector<mpz_class>{0, 1});
    IntPoly prev = IntPoly::constant(2), cur = w;
    IntPoly Q = IntPoly::constant(q.c[static_cast<std::size_t>(m)]);
    for (int j = 1; j <= m; ++j) {
        Q = Q + cur * IntPoly::constant(q.c[static_cast<std::size_t>(m + j)]);
        IntPoly nxt = w * cur - prev;
        prev = cur;
        cur = nxt;
    }
    return count + 2 * sturm_count(Q, mpq_class(-2), mpq_class(2));
}

bool has_unit_circle_root(const IntPoly& p) { return unit_circle_root_count(p) > 0; }

RootIsolation isolate_roots(const IntPoly& p) {
    namespace mp = boost::multiprecision;
    using R = mp::cpp_bin_float_50;
    using C = mp::cpp_complex_50;
    RootIsolation out;
    const int n = p.degree();
    if (n < 1) {
        out.disjoint = true;
        return out;
    }
    std::vector<R> a;
    for (const auto& v : p.c) a.emplace_back(v.get_str());
    auto horner = [&](const C& z, C& val, C& der) {
        val = C(a[static_cast<std::size_t>(n)]);
        der = C(0);
        for (int k = n - 1; k >= 0; --k) {
            der = der * z + val;
            val = val * z + C(a[static_cast<std::size_t>(k)]);
        }
    };
    R bound = 0;
    for (int k = 0; k < n; ++k) {
        const R t = mp::abs(a[static_cast<std::size_t>(k)] / a.back());
        if (t > bound) bound = t;
    }
    bound += 1;
    std::vector<C> z(static_cast<std::size_t>(n));
    const R two_pi = 2 * boost::math::constants::pi<R>();
    for (int k = 0; k < n; ++k) {
        const R th = two_pi * k / n + R(0.4);
        z[static_cast<std::size_t>(k)] = C(bound * mp::cos(th) / 2, bound * mp::sin(th) / 2);
    }
    const R stop("1e-45");
    for (int iter = 0; iter < 2000; ++iter) {
        R worst = 0;
        for (int i = 0; i < n; ++i) {
            C val, der;
            horner(z[static_cast<std::size_t>(i)], val, der);
            if (val == C(0)) continue;
            const C ratio = val / der;
            C s(0);
            for (int j = 0; j < n; ++j)
                if (j != i) s += C(1) / (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
            const C step = ratio / (C(1) - ratio * s);
            z[static_cast<std::size_t>(i)] -= step;
            R mag = mp::abs(z[static_cast<std::size_t>(i)]);
            if (mag < 1) mag = 1;
            const R rel = R(mp::abs(step)) / mag;
            if (rel > worst) worst = rel;
        }
        if (worst < stop) break;
    }
    out.disjoint = true;
    std::vector<R> radii(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        C val, der;
        horner(z[static_cast<std::size_t>(i)], val, der);
        R prod = mp::abs(a.back());
        for (int j = 0; j < n; ++j)
            if (j != i) prod *= mp::abs(z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
        radii[static_cast<std::size_t>(i)] = prod == 0 ? R(1e300) : R(n * mp::abs(val) / prod);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (mp::abs(z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]) <=
                radii[static_cast<std::size_t>(i)] + radii[static_cast<std::size_t>(j)])
                out.disjoint = false;
    for (int i = 0; i < n; ++i) {
        const C& zi = z[static_cast<std::size_t>(i)];
        out.roots.emplace_back(static_cast<double>(zi.real()), static_cast<double>(zi.imag()));
        out.radii.push_back(static_cast<double>(radii[static_cast<std::size_t>(i)]));
        out.log_abs.push_back(static_cast<double>(mp::log(R(mp::abs(zi)))));
    }
    return out;
}

std::string to_string(const IntPoly& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (std::size_t i = 0; i < p.c.size(); ++i) {
        if (i) s += ' ';
        s += p.c[i].get_str();
    }
    return s;
}

IntPoly parse_poly(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<mpz_class> c;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            mpz_class v;
            if (v.set_str(tok, 10) != 0)
                throw ParseError(source, lineno, static_cast<int>(line.find(tok) + 1), "bad integer '" + tok + "'");
            c.push_back(v);
        }
    }
    return IntPoly(std::move(c));
}

}  // namespace symdyn
