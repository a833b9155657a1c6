#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace okit {

using std::int64_t;

inline int64_t gcdll(int64_t a, int64_t b) { return std::gcd(a, b); }

inline int64_t lcmll(int64_t a, int64_t b) {
    if (a == 0 || b == 0) return 0;
    return a / std::gcd(a, b) * b;
}

inline int64_t mod_floor(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// prime -> multiplicity
inline std::map<int64_t, int> factorize(int64_t n) {
    std::map<int64_t, int> f;
    if (n < 0) n = -n;
    for (int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2))
        while (n % p == 0) { ++f[p]; n /= p; }
    if (n > 1) ++f[n];
    return f;
}

inline bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

inline int64_t euler_phi(int64_t n) {
    int64_t r = n;
    for (auto& [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

inline int64_t mod_pow(int64_t b, int64_t e, int64_t m) {
    b = mod_floor(b, m);
    int64_t r = 1 % m;
    while (e > 0) {
        if (e & 1) r = (__int128)r * b % m;
        b = (__int128)b * b % m;
        e >>= 1;
    }
    return r;
}

// inverse of a mod m, requires gcd(a,m)=1
inline int64_t mod_inv(int64_t a, int64_t m) {
    a = mod_floor(a, m);
    int64_t g = m, x = 0, x1 = 1, a1 = a;
    while (a1 != 0) {
        int64_t q = g / a1;
        g -= q * a1; std::swap(g, a1);
        x -= q * x1; std::swap(x, x1);
    }
    if (g != 1) throw std::domain_error("mod_inv: not invertible");
    return mod_floor(x, m);
}

// Legendre symbol (a/p) for odd prime p
inline int legendre(int64_t a, int64_t p) {
    a = mod_floor(a, p);
    if (a == 0) return 0;
    int64_t r = mod_pow(a, (p - 1) / 2, p);
    return r == 1 ? 1 : -1;
}

// least positive quadratic nonresidue mod odd prime p
inline int64_t least_nonresidue(int64_t p) {
    for (int64_t m = 2; m < p; ++m)
        if (legendre(m, p) == -1) return m;
    throw std::domain_error("least_nonresidue: p too small");
}

// smallest prime p with p ≡ 1 (mod k) and p > lower
inline int64_t prime_in_progression(int64_t k, int64_t lower) {
    int64_t p = lower + 1;
    if (k > 0) p += mod_floor(1 - p, k);
    else k = 1;
    while (!is_prime(p)) p += k;
    return p;
}

// a generator of (Z/p)^* for prime p
inline int64_t primitive_root(int64_t p) {
    if (p == 2) return 1;
    auto fac = factorize(p - 1);
    for (int64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (auto& [q, e] : fac)
            if (mod_pow(g, (p - 1) / q, p) == 1) { ok = false; break; }
        if (ok) return g;
    }
    throw std::domain_error("primitive_root: none found");
}

// integer square root; returns -1 if n is not a perfect square
inline int64_t perfect_sqrt(int64_t n) {
    if (n < 0) return -1;
    int64_t r = (int64_t)std::sqrt((double)n);
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r * r == n ? r : -1;
}

// mixed-radix index helpers for tuples over given radices
inline int64_t tuple_to_index(const std::vector<int64_t>& t, const std::vector<int64_t>& radix) {
    int64_t idx = 0;
    for (size_t i = 0; i < radix.size(); ++i) idx = idx * radix[i] + t[i];
    return idx;
}

inline std::vector<int64_t> index_to_tuple(int64_t idx, const std::vector<int64_t>& radix) {
    std::vector<int64_t> t(radix.size());
    for (size_t i = radix.size(); i-- > 0;) { t[i] = idx % radix[i]; idx /= radix[i]; }
    return t;
}

} // namespace okit
