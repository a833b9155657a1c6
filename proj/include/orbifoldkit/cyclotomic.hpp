#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "numutil.hpp"

namespace okit {

using Rational = mpq_class;

/// exp(2*pi*i*k/N) with 0 <= k < N and gcd(k,N)=1 after reduction,
/// so the stored order N is the exact multiplicative order.
struct RootOfUnity {
    int64_t num = 0;
    int64_t ord = 1;

    RootOfUnity() = default;
    RootOfUnity(int64_t k, int64_t N) {
        if (N <= 0) throw std::domain_error("RootOfUnity: order must be positive");
        k = mod_floor(k, N);
        int64_t g = std::gcd(k, N);
        if (g == 0) g = N; // k == 0
        num = k / g;
        ord = N / g;
    }
    static RootOfUnity one() { return RootOfUnity(); }

    RootOfUnity operator*(const RootOfUnity& o) const {
        int64_t N = lcmll(ord, o.ord);
        return RootOfUnity(num * (N / ord) + o.num * (N / o.ord), N);
    }
    RootOfUnity inv() const { return RootOfUnity(-num, ord); }
    RootOfUnity conj() const { return inv(); }
    RootOfUnity pow(int64_t e) const { return RootOfUnity(mod_floor(e, ord) * num, ord); }
    bool operator==(const RootOfUnity& o) const { return num == o.num && ord == o.ord; }
    bool operator!=(const RootOfUnity& o) const { return !(*this == o); }
    bool operator<(const RootOfUnity& o) const {
        return ord != o.ord ? ord < o.ord : num < o.num;
    }
    bool is_one() const { return num == 0; }

    std::string str() const {
        std::ostringstream os;
        os << "zeta(" << ord << ")^" << num;
        return os.str();
    }
};

namespace detail {

// Reduction data for Q(zeta_N) in the power basis {zeta^0..zeta^{phi(N)-1}}
// modulo the cyclotomic polynomial Phi_N.
struct CycTables {
    int64_t N = 1;
    int64_t phi = 1;
    // phiN[e] for e in [phi, N): zeta^e expressed in the power basis
    std::vector<std::vector<mpz_class>> redRows;
};

inline std::vector<mpz_class> poly_mul(const std::vector<mpz_class>& a,
                                       const std::vector<mpz_class>& b) {
    std::vector<mpz_class> c(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

// exact division of integer polynomials (remainder must vanish)
inline std::vector<mpz_class> poly_div(std::vector<mpz_class> a,
                                       const std::vector<mpz_class>& b) {
    std::vector<mpz_class> q(a.size() - b.size() + 1);
    for (size_t i = q.size(); i-- > 0;) {
        mpz_class c = a[i + b.size() - 1] / b.back();
        q[i] = c;
        if (c != 0)
            for (size_t j = 0; j < b.size(); ++j) a[i + j] -= c * b[j];
    }
    return q;
}

inline std::vector<mpz_class> cyclotomic_poly(int64_t N) {
    // Phi_N = (x^N - 1) / prod_{d|N, d<N} Phi_d
    std::vector<mpz_class> num(N + 1);
    num[0] = -1;
    num[N] = 1;
    for (int64_t d = 1; d < N; ++d)
        if (N % d == 0) num = poly_div(num, cyclotomic_poly(d));
    return num;
}

inline const CycTables& cyc_tables(int64_t N) {
    static std::map<int64_t, CycTables> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    CycTables t;
    t.N = N;
    t.phi = euler_phi(N);
    auto Phi = cyclotomic_poly(N); // degree phi, monic
    // zeta^phi = -(Phi - x^phi)
    std::vector<std::vector<mpz_class>>& rows = t.redRows;
    rows.resize(N - t.phi);
    {
        std::vector<mpz_class> r(t.phi);
        for (int64_t i = 0; i < t.phi; ++i) r[i] = -Phi[i];
        rows[0] = r;
    }
    for (int64_t e = t.phi + 1; e < N; ++e) {
        // zeta^e = zeta * zeta^{e-1}
        const auto& prev = rows[e - 1 - t.phi];
        std::vector<mpz_class> r(t.phi);
        for (int64_t i = 0; i + 1 < t.phi; ++i) r[i + 1] = prev[i];
        if (prev[t.phi - 1] != 0)
            for (int64_t i = 0; i < t.phi; ++i)
                r[i] += prev[t.phi - 1] * rows[0][i];
        rows[e - t.phi] = r;
    }
    return cache.emplace(N, std::move(t)).first->second;
}

} // namespace detail

/// Exact element of Q(zeta_N).
///
/// Canonical form: coefficients on the power basis {zeta_N^k : 0 <= k < phi(N)}
/// reduced modulo the cyclotomic polynomial Phi_N, with the conductor N
/// minimized (N = 1 for rationals, otherwise N != 2 mod 4). Equality of two
/// values is coefficient equality after rebasing to the common conductor.
class Cyclotomic {
  public:
    Cyclotomic() : N_(1) {}
    Cyclotomic(const Rational& r) : N_(1) {
        if (r != 0) coeff_[0] = r;
    }
    Cyclotomic(int64_t v) : Cyclotomic(Rational(v)) {}
    Cyclotomic(int v) : Cyclotomic(Rational(v)) {}

    static Cyclotomic zeta(int64_t N, int64_t k = 1) {
        Cyclotomic x;
        x.N_ = N;
        x.coeff_[mod_floor(k, N)] = 1;
        x.reduce_();
        x.minimize_();
        return x;
    }
    static Cyclotomic from_root(const RootOfUnity& r) { return zeta(r.ord, r.num); }

    int64_t conductor() const { return N_; }
    bool is_zero() const { return coeff_.empty(); }
    bool is_rational() const { return N_ == 1; }
    Rational rational_value() const {
        if (N_ != 1) throw std::domain_error("not rational");
        return coeff_.empty() ? Rational(0) : coeff_.begin()->second;
    }

    bool operator==(const Cyclotomic& o) const {
        if (N_ == o.N_) return coeff_ == o.coeff_;
        int64_t M = lcmll(N_, o.N_);
        Cyclotomic a = rebased(M), b = o.rebased(M);
        return a.coeff_ == b.coeff_;
    }
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    Cyclotomic operator-() const {
        Cyclotomic r = *this;
        for (auto& [k, c] : r.coeff_) c = -c;
        return r;
    }

    Cyclotomic operator+(const Cyclotomic& o) const {
        int64_t M = lcmll(N_, o.N_);
        Cyclotomic a = rebased(M);
        const Cyclotomic b = o.rebased(M);
        for (auto& [k, c] : b.coeff_) {
            auto it = a.coeff_.find(k);
            if (it == a.coeff_.end()) a.coeff_[k] = c;
            else {
                it->second += c;
                if (it->second == 0) a.coeff_.erase(it);
            }
        }
        a.minimize_();
        return a;
    }
    Cyclotomic operator-(const Cyclotomic& o) const { return *this + (-o); }

    Cyclotomic operator*(const Cyclotomic& o) const {
        if (is_zero() || o.is_zero()) return Cyclotomic();
        int64_t M = lcmll(N_, o.N_);
        Cyclotomic a = rebased(M), b = o.rebased(M);
        Cyclotomic r;
        r.N_ = M;
        for (auto& [k1, c1] : a.coeff_)
            for (auto& [k2, c2] : b.coeff_) {
                int64_t k = k1 + k2;
                if (k >= M) k -= M;
                Rational c = c1 * c2;
                auto it = r.coeff_.find(k);
                if (it == r.coeff_.end()) r.coeff_[k] = c;
                else {
                    it->second += c;
                    if (it->second == 0) r.coeff_.erase(it);
                }
            }
        r.reduce_();
        r.minimize_();
        return r;
    }

    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

    /// complex conjugation (the Galois map zeta -> zeta^{-1})
    Cyclotomic conj() const { return galois(N_ - 1); }

    /// Galois map zeta_N -> zeta_N^j, gcd(j,N)=1
    Cyclotomic galois(int64_t j) const {
        if (N_ == 1) return *this;
        j = mod_floor(j, N_);
        if (std::gcd(j, N_) != 1) throw std::domain_error("galois: j not coprime to N");
        Cyclotomic r;
        r.N_ = N_;
        for (auto& [k, c] : coeff_) {
            int64_t kk = (__int128)k * j % N_;
            r.coeff_[kk] += c;
        }
        for (auto it = r.coeff_.begin(); it != r.coeff_.end();)
            it = it->second == 0 ? r.coeff_.erase(it) : ++it;
        r.reduce_();
        r.minimize_();
        return r;
    }

    Cyclotomic inv() const {
        if (is_zero()) throw std::domain_error("division by zero");
        if (N_ == 1) {
            Cyclotomic r;
            Rational v = 1 / coeff_.begin()->second;
            r.coeff_[0] = v;
            return r;
        }
        // product of the nontrivial Galois conjugates; x * prod = Norm(x) in Q
        Cyclotomic prod = Cyclotomic(Rational(1));
        for (int64_t j = 2; j < N_; ++j)
            if (std::gcd(j, N_) == 1) prod = prod * galois(j);
        Cyclotomic nrm = *this * prod;
        if (!nrm.is_rational()) throw std::logic_error("inv: norm not rational");
        return prod * Cyclotomic(1 / nrm.rational_value());
    }

    Cyclotomic operator/(const Cyclotomic& o) const { return *this * o.inv(); }

    Cyclotomic pow(int64_t e) const {
        if (e < 0) return inv().pow(-e);
        Cyclotomic r(Rational(1)), b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    /// exact check: is this exp(2 pi i k/N) for some k/N?
    std::optional<RootOfUnity> as_root_of_unity() const {
        if (is_zero()) return std::nullopt;
        if (N_ == 1) {
            Rational v = rational_value();
            if (v == 1) return RootOfUnity(0, 1);
            if (v == -1) return RootOfUnity(1, 2);
            return std::nullopt;
        }
        // fast path: a single basis monomial with coefficient 1
        if (coeff_.size() == 1 && coeff_.begin()->second == 1)
            return RootOfUnity(coeff_.begin()->first, N_);
        // roots of unity in Q(zeta_N) form mu_M with M = N or 2N
        int64_t M = (N_ % 2 == 0) ? N_ : 2 * N_;
        if (!(pow(M) == Cyclotomic(1))) return std::nullopt;
        for (int64_t k = 0; k < M; ++k)
            if (*this == zeta(M, k)) return RootOfUnity(k, M);
        return std::nullopt;
    }

    std::complex<double> to_complex() const {
        std::complex<double> z(0, 0);
        for (auto& [k, c] : coeff_)
            z += c.get_d() * std::polar(1.0, 2 * M_PI * (double)k / (double)N_);
        return z;
    }

    /// textual form "cyc(N)[k1:c1, k2:c2, ...]"
    std::string str() const {
        std::ostringstream os;
        os << "cyc(" << N_ << ")[";
        bool first = true;
        for (auto& [k, c] : coeff_) {
            if (!first) os << ", ";
            os << k << ":" << c;
            first = false;
        }
        os << "]";
        return os.str();
    }

    const std::map<int64_t, Rational>& coefficients() const { return coeff_; }

    bool operator<(const Cyclotomic& o) const { // arbitrary total order, for containers
        if (N_ != o.N_) return N_ < o.N_;
        return coeff_ < o.coeff_;
    }

  private:
    int64_t N_;
    std::map<int64_t, Rational> coeff_; // exponent -> coefficient, exponents < phi(N)

    Cyclotomic rebased(int64_t M) const {
        if (M == N_) return *this;
        Cyclotomic r;
        r.N_ = M;
        int64_t f = M / N_;
        for (auto& [k, c] : coeff_) r.coeff_[k * f] = c;
        r.reduce_();
        return r;
    }

    void reduce_() {
        if (N_ == 1) return;
        const auto& T = detail::cyc_tables(N_);
        bool high = false;
        for (auto& [k, c] : coeff_)
            if (k >= T.phi) { high = true; break; }
        if (!high) return;
        std::map<int64_t, Rational> out;
        for (auto& [k, c] : coeff_) {
            if (k < T.phi) out[k] += c;
            else {
                const auto& row = T.redRows[k - T.phi];
                for (int64_t i = 0; i < T.phi; ++i)
                    if (row[i] != 0) out[i] += c * Rational(row[i]);
            }
        }
        coeff_.clear();
        for (auto& [k, c] : out)
            if (c != 0) coeff_[k] = c;
    }

    // try to lower the conductor; restores the canonical-form invariants
    void minimize_() {
        for (;;) {
            if (coeff_.empty()) { N_ = 1; return; }
            if (N_ == 1) return;
            if (coeff_.size() == 1 && coeff_.begin()->first == 0) { N_ = 1; return; }
            if (N_ % 2 == 0 && (N_ / 2) % 2 == 1) {
                // Q(zeta_N) = Q(zeta_{N/2}) for N = 2 mod 4: zeta_N = -zeta_M^{(M+1)/2}
                int64_t M = N_ / 2;
                std::map<int64_t, Rational> out;
                for (auto& [k, c] : coeff_) {
                    int64_t kk = mod_floor(k * ((M + 1) / 2), M);
                    Rational cc = (k % 2 == 0) ? c : -c;
                    out[kk] += cc;
                }
                coeff_.clear();
                for (auto& [k, c] : out)
                    if (c != 0) coeff_[k] = c;
                N_ = M;
                reduce_();
                continue;
            }
            bool lowered = false;
            for (auto& [p, e] : factorize(N_)) {
                int64_t M = N_ / p;
                if (M == 1) {
                    // descend to Q iff invariant under the whole Galois group
                    if (is_galois_invariant_(N_, 1)) {
                        // value is rational: it equals (1/phi) * trace
                        Rational tr = trace_to_Q_();
                        coeff_.clear();
                        if (tr != 0) coeff_[0] = tr / Rational(euler_phi(N_));
                        N_ = 1;
                        lowered = true;
                        break;
                    }
                    continue;
                }
                if (is_galois_invariant_(N_, M) && descend_to_(M)) { lowered = true; break; }
            }
            if (!lowered) return;
        }
    }

    bool is_galois_invariant_(int64_t N, int64_t M) const {
        // invariance under ker( (Z/N)^* -> (Z/M)^* )
        for (int64_t j = 1; j < N; ++j) {
            if (std::gcd(j, N) != 1) continue;
            if (mod_floor(j, M) != 1 % M) continue;
            if (j == 1) continue;
            if (!(galois_raw_(j) == *this)) return false;
        }
        return true;
    }

    Cyclotomic galois_raw_(int64_t j) const { // galois() without minimize recursion
        Cyclotomic r;
        r.N_ = N_;
        for (auto& [k, c] : coeff_) {
            int64_t kk = (__int128)k * j % N_;
            r.coeff_[kk] += c;
        }
        for (auto it = r.coeff_.begin(); it != r.coeff_.end();)
            it = it->second == 0 ? r.coeff_.erase(it) : ++it;
        r.reduce_();
        return r;
    }

    Rational trace_to_Q_() const {
        Rational tr = 0;
        for (auto& [k, c] : coeff_) tr += c * Rational(trace_of_monomial_(k));
        return tr;
    }

    // Tr_{Q(zeta_N)/Q}(zeta_N^k) as an integer (Ramanujan sum)
    int64_t trace_of_monomial_(int64_t k) const {
        int64_t N = N_;
        int64_t d = N / std::gcd(k, N); // order of zeta^k
        // c_N(..)-style: trace = phi(N)/phi(d) * mu(d)
        auto fac = factorize(d);
        int64_t mu = 1;
        for (auto& [p, e] : fac) {
            if (e > 1) return 0;
            mu = -mu;
        }
        return mu * (euler_phi(N) / euler_phi(d));
    }

    // express this element in Q(zeta_M), M | N proper; returns false if impossible
    bool descend_to_(int64_t M) {
        const auto& TN = detail::cyc_tables(N_);
        int64_t phiM = euler_phi(M);
        int64_t f = N_ / M;
        // columns: reduced representation of zeta_N^{m f} for m in [0, phiM)
        std::vector<std::map<int64_t, Rational>> cols(phiM);
        for (int64_t m = 0; m < phiM; ++m) {
            Cyclotomic mono;
            mono.N_ = N_;
            mono.coeff_[mod_floor(m * f, N_)] = 1;
            mono.reduce_();
            cols[m] = mono.coeff_;
        }
        // solve sum_m d_m cols[m] = coeff_ by Gaussian elimination over Q
        int64_t rows = TN.phi;
        std::vector<std::vector<Rational>> mat(rows, std::vector<Rational>(phiM + 1));
        for (int64_t m = 0; m < phiM; ++m)
            for (auto& [k, c] : cols[m]) mat[k][m] = c;
        for (auto& [k, c] : coeff_) mat[k][phiM] = c;
        std::vector<int64_t> pivot_col(rows, -1);
        int64_t prow = 0;
        for (int64_t col = 0; col < phiM && prow < rows; ++col) {
            int64_t sel = -1;
            for (int64_t r = prow; r < rows; ++r)
                if (mat[r][col] != 0) { sel = r; break; }
            if (sel < 0) continue;
            std::swap(mat[sel], mat[prow]);
            Rational pv = mat[prow][col];
            for (int64_t j = col; j <= phiM; ++j) mat[prow][j] /= pv;
            for (int64_t r = 0; r < rows; ++r) {
                if (r == prow || mat[r][col] == 0) continue;
                Rational fmul = mat[r][col];
                for (int64_t j = col; j <= phiM; ++j) mat[r][j] -= fmul * mat[prow][j];
            }
            pivot_col[prow] = col;
            ++prow;
        }
        for (int64_t r = prow; r < rows; ++r)
            if (mat[r][phiM] != 0) return false;
        for (int64_t r = 0; r < prow; ++r) {
            // system must be consistent; read the solution off the pivots
            if (pivot_col[r] < 0 && mat[r][phiM] != 0) return false;
        }
        std::map<int64_t, Rational> out;
        for (int64_t r = 0; r < prow; ++r)
            if (pivot_col[r] >= 0 && mat[r][phiM] != 0) out[pivot_col[r]] = mat[r][phiM];
        coeff_ = std::move(out);
        N_ = M;
        return true;
    }
};

inline Cyclotomic operator*(const Rational& r, const Cyclotomic& x) { return Cyclotomic(r) * x; }
inline Cyclotomic operator*(const RootOfUnity& r, const Cyclotomic& x) {
    return Cyclotomic::from_root(r) * x;
}

inline std::ostream& operator<<(std::ostream& os, const Cyclotomic& x) { return os << x.str(); }
inline std::ostream& operator<<(std::ostream& os, const RootOfUnity& r) { return os << r.str(); }

/// exact sqrt(n) for a positive integer, as an element of a cyclotomic field
inline Cyclotomic sqrt_int(int64_t n) {
    if (n <= 0) throw std::domain_error("sqrt_int: need n > 0");
    Cyclotomic r(1);
    int64_t square = 1;
    for (auto& [p, e] : factorize(n)) {
        for (int i = 0; i + 1 < e; i += 2) square *= p;
        if (e % 2 == 0) continue;
        if (p == 2) {
            r = r * (Cyclotomic::zeta(8) + Cyclotomic::zeta(8, 7));
        } else {
            // quadratic Gauss sum: sum_k (k/p) zeta_p^k = sqrt(p) or i sqrt(p)
            Cyclotomic g;
            for (int64_t k = 1; k < p; ++k)
                g += Rational(legendre(k, p)) * Cyclotomic::zeta(p, k);
            if (p % 4 == 3) g = g * Cyclotomic::zeta(4, 3); // divide by i
            r = r * g;
        }
    }
    return Cyclotomic(Rational(square)) * r;
}

/// parse "zeta(N)^k"
inline RootOfUnity parse_root(const std::string& s) {
    auto l = s.find('('), rp = s.find(')'), c = s.find('^');
    if (l == std::string::npos || rp == std::string::npos)
        throw std::runtime_error("parse_root: bad format: " + s);
    int64_t N = std::stoll(s.substr(l + 1, rp - l - 1));
    int64_t k = c == std::string::npos ? 1 : std::stoll(s.substr(c + 1));
    return RootOfUnity(k, N);
}

} // namespace okit
