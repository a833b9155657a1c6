#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "numutil.hpp"

namespace okit {

using ZMatrix = std::vector<std::vector<mpz_class>>;

inline ZMatrix zmat(size_t r, size_t c) { return ZMatrix(r, std::vector<mpz_class>(c)); }

inline ZMatrix zmat_identity(size_t n) {
    ZMatrix m = zmat(n, n);
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline ZMatrix zmat_mul(const ZMatrix& a, const ZMatrix& b) {
    size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
    ZMatrix m = zmat(r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < k; ++j) {
            if (a[i][j] == 0) continue;
            for (size_t l = 0; l < c; ++l) m[i][l] += a[i][j] * b[j][l];
        }
    return m;
}

/// Smith normal form: D = U * A * V with U, V unimodular, D diagonal,
/// d_1 | d_2 | ... | d_r, d_i >= 0.
struct SmithForm {
    ZMatrix D, U, V;
    std::vector<mpz_class> diag() const {
        std::vector<mpz_class> d;
        size_t n = std::min(D.size(), D.empty() ? 0 : D[0].size());
        for (size_t i = 0; i < n; ++i) d.push_back(D[i][i]);
        return d;
    }
};

inline SmithForm smith_normal_form(ZMatrix A) {
    size_t rows = A.size(), cols = rows ? A[0].size() : 0;
    ZMatrix U = zmat_identity(rows), V = zmat_identity(cols);
    auto swap_rows = [&](size_t i, size_t j) { std::swap(A[i], A[j]); std::swap(U[i], U[j]); };
    auto swap_cols = [&](size_t i, size_t j) {
        for (size_t r = 0; r < rows; ++r) std::swap(A[r][i], A[r][j]);
        for (size_t r = 0; r < cols; ++r) std::swap(V[r][i], V[r][j]);
    };
    auto addmul_row = [&](size_t dst, size_t src, const mpz_class& f) {
        for (size_t c = 0; c < cols; ++c) A[dst][c] += f * A[src][c];
        for (size_t c = 0; c < rows; ++c) U[dst][c] += f * U[src][c];
    };
    auto addmul_col = [&](size_t dst, size_t src, const mpz_class& f) {
        for (size_t r = 0; r < rows; ++r) A[r][dst] += f * A[r][src];
        for (size_t r = 0; r < cols; ++r) V[r][dst] += f * V[r][src];
    };
    auto negate_row = [&](size_t i) {
        for (size_t c = 0; c < cols; ++c) A[i][c] = -A[i][c];
        for (size_t c = 0; c < rows; ++c) U[i][c] = -U[i][c];
    };

    size_t t = 0;
    while (t < rows && t < cols) {
        // find a pivot
        size_t pi = t, pj = t;
        bool found = false;
        mpz_class best;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (A[i][j] != 0) {
                    mpz_class a = abs(A[i][j]);
                    if (!found || a < best) { best = a; pi = i; pj = j; found = true; }
                }
        if (!found) break;
        swap_rows(t, pi);
        swap_cols(t, pj);
        for (;;) {
            bool clean = true;
            for (size_t i = t + 1; i < rows; ++i)
                if (A[i][t] != 0) {
                    mpz_class q = A[i][t] / A[t][t];
                    if (q != 0) addmul_row(i, t, -q);
                    if (A[i][t] != 0) { swap_rows(t, i); clean = false; }
                }
            for (size_t j = t + 1; j < cols; ++j)
                if (A[t][j] != 0) {
                    mpz_class q = A[t][j] / A[t][t];
                    if (q != 0) addmul_col(j, t, -q);
                    if (A[t][j] != 0) { swap_cols(t, j); clean = false; }
                }
            if (clean) break;
        }
        if (A[t][t] < 0) negate_row(t);
        ++t;
    }
    // enforce divisibility chain
    for (;;) {
        bool ok = true;
        for (size_t i = 0; i + 1 < t; ++i) {
            if (A[i + 1][i + 1] == 0) continue;
            if (A[i][i] == 0 || A[i + 1][i + 1] % A[i][i] != 0) {
                ok = false;
                // fold entry (i+1,i+1) into column i and redo the corner
                addmul_col(i, i + 1, 1);
                // local re-elimination at position i
                size_t s = i;
                for (;;) {
                    bool clean = true;
                    for (size_t r = s; r < rows; ++r)
                        for (size_t c = s; c < cols; ++c) {
                            if ((r == s && c == s) || A[r][c] == 0) continue;
                        }
                    // re-run a mini SNF step on the trailing block
                    size_t pi = s, pj = s;
                    bool found = false;
                    mpz_class best;
                    for (size_t r = s; r < rows; ++r)
                        for (size_t c = s; c < cols; ++c)
                            if (A[r][c] != 0) {
                                mpz_class a = abs(A[r][c]);
                                if (!found || a < best) { best = a; pi = r; pj = c; found = true; }
                            }
                    if (!found) break;
                    swap_rows(s, pi);
                    swap_cols(s, pj);
                    clean = true;
                    for (size_t r = s + 1; r < rows; ++r)
                        if (A[r][s] != 0) {
                            mpz_class q = A[r][s] / A[s][s];
                            if (q != 0) addmul_row(r, s, -q);
                            if (A[r][s] != 0) { swap_rows(s, r); clean = false; }
                        }
                    for (size_t c = s + 1; c < cols; ++c)
                        if (A[s][c] != 0) {
                            mpz_class q = A[s][c] / A[s][s];
                            if (q != 0) addmul_col(c, s, -q);
                            if (A[s][c] != 0) { swap_cols(s, c); clean = false; }
                        }
                    if (clean) break;
                }
                if (A[i][i] < 0) negate_row(i);
                if (A[i + 1][i + 1] < 0) negate_row(i + 1);
                break;
            }
        }
        if (ok) break;
    }
    SmithForm s;
    s.D = std::move(A);
    s.U = std::move(U);
    s.V = std::move(V);
    return s;
}

/// Solutions of A x = b (mod m): a particular solution plus generators of the
/// solution lattice mod m. Entries of A, b are int64; all arithmetic mod m.
struct ModSolveResult {
    bool solvable = false;
    std::vector<int64_t> particular;          // size cols
    std::vector<std::vector<int64_t>> kernel; // generators of homogeneous solutions
    std::vector<int64_t> kernel_order;        // additive order of each generator mod m
};

/// Diagonalize and solve A x = b over Z/m via Smith-style unimodular row/col ops
/// carried out modulo m (entries stay bounded).
class ZmSolver {
  public:
    ZmSolver(std::vector<std::vector<int64_t>> A, int64_t m) : m_(m), A_(std::move(A)) {
        rows_ = A_.size();
        cols_ = rows_ ? A_[0].size() : 0;
        for (auto& row : A_)
            for (auto& v : row) v = mod_floor(v, m_);
        rowops_.clear();
        V_.assign(cols_, std::vector<int64_t>(cols_, 0));
        for (size_t i = 0; i < cols_; ++i) V_[i][i] = 1;
        diagonalize_();
    }

    ModSolveResult solve(std::vector<int64_t> b) const {
        ModSolveResult res;
        for (auto& v : b) v = mod_floor(v, m_);
        // apply recorded row operations to b
        for (auto& op : rowops_) {
            switch (op.kind) {
                case RowOp::Swap: std::swap(b[op.i], b[op.j]); break;
                case RowOp::AddMul: b[op.i] = mod_floor(b[op.i] + (__int128)op.f * b[op.j] % m_, m_); break;
                case RowOp::Combine2: {
                    int64_t bi = b[op.i], bj = b[op.j];
                    b[op.i] = mod_floor(((__int128)op.f * bi + (__int128)op.g * bj) % m_, m_);
                    b[op.j] = mod_floor(((__int128)op.h * bi + (__int128)op.k * bj) % m_, m_);
                    break;
                }
            }
        }
        std::vector<int64_t> z(cols_, 0);
        size_t t = std::min(rows_, cols_);
        for (size_t i = 0; i < rows_; ++i) {
            int64_t d = i < t ? D_[i] : 0;
            int64_t rhs = b[i];
            if (i >= cols_ || d == 0) {
                if (rhs % m_ != 0) return res; // unsolvable row
                continue;
            }
            int64_t g = std::gcd(d, m_);
            if (rhs % g != 0) return res;
            int64_t mg = m_ / g;
            z[i] = mod_floor((__int128)(rhs / g) % mg * mod_inv(d / g, mg) % mg, mg);
        }
        res.solvable = true;
        res.particular = apply_V_(z);
        // kernel generators: z_i free modulo m/gcd(d_i,m) (scaled), plus fully free coords
        for (size_t i = 0; i < cols_; ++i) {
            int64_t d = i < t ? D_[i] : 0;
            int64_t g = std::gcd(d, m_);
            int64_t step = (d == 0) ? 1 : m_ / g; // z_i ranges over multiples of step... order m/step
            int64_t order = (d == 0) ? m_ : g;
            if (order == 1) continue;
            std::vector<int64_t> zk(cols_, 0);
            zk[i] = (d == 0) ? 1 : m_ / g;
            res.kernel.push_back(apply_V_(zk));
            res.kernel_order.push_back(order);
            (void)step;
        }
        return res;
    }

    int64_t modulus() const { return m_; }

  private:
    struct RowOp {
        enum Kind { Swap, AddMul, Combine2 } kind;
        size_t i, j;
        int64_t f = 0, g = 0, h = 0, k = 0;
    };

    int64_t m_;
    std::vector<std::vector<int64_t>> A_;
    size_t rows_, cols_;
    std::vector<RowOp> rowops_;
    std::vector<std::vector<int64_t>> V_; // cols x cols, x = V z
    std::vector<int64_t> D_;              // diagonal after reduction

    std::vector<int64_t> apply_V_(const std::vector<int64_t>& z) const {
        std::vector<int64_t> x(cols_, 0);
        for (size_t i = 0; i < cols_; ++i) {
            if (z[i] == 0) continue;
            for (size_t r = 0; r < cols_; ++r)
                x[r] = mod_floor(x[r] + (__int128)V_[r][i] * z[i] % m_, m_);
        }
        return x;
    }

    // extended gcd returning (g, s, t) with s*a + t*b = g
    static std::tuple<int64_t, int64_t, int64_t> xgcd_(int64_t a, int64_t b) {
        int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
        while (r != 0) {
            int64_t q = old_r / r;
            old_r -= q * r; std::swap(old_r, r);
            old_s -= q * s; std::swap(old_s, s);
            old_t -= q * t; std::swap(old_t, t);
        }
        return {old_r, old_s, old_t};
    }

    void row_combine_(size_t i, size_t j, int64_t f, int64_t g, int64_t h, int64_t k) {
        for (size_t c = 0; c < cols_; ++c) {
            int64_t ai = A_[i][c], aj = A_[j][c];
            A_[i][c] = mod_floor(((__int128)f * ai + (__int128)g * aj) % m_, m_);
            A_[j][c] = mod_floor(((__int128)h * ai + (__int128)k * aj) % m_, m_);
        }
        rowops_.push_back({RowOp::Combine2, i, j, f, g, h, k});
    }

    void col_combine_(size_t i, size_t j, int64_t f, int64_t g, int64_t h, int64_t k) {
        // (col_i, col_j) <- (f*col_i + g*col_j, h*col_i + k*col_j); V updated with
        // the inverse-transpose bookkeeping: x = V z stays valid
        for (size_t r = 0; r < rows_; ++r) {
            int64_t ai = A_[r][i], aj = A_[r][j];
            A_[r][i] = mod_floor(((__int128)f * ai + (__int128)g * aj) % m_, m_);
            A_[r][j] = mod_floor(((__int128)h * ai + (__int128)k * aj) % m_, m_);
        }
        for (size_t r = 0; r < cols_; ++r) {
            int64_t vi = V_[r][i], vj = V_[r][j];
            V_[r][i] = mod_floor(((__int128)f * vi + (__int128)g * vj) % m_, m_);
            V_[r][j] = mod_floor(((__int128)h * vi + (__int128)k * vj) % m_, m_);
        }
    }

    void diagonalize_() {
        size_t t = 0;
        while (t < rows_ && t < cols_) {
            // choose pivot minimizing gcd with m
            size_t pi = t, pj = t;
            bool found = false;
            int64_t bestg = 0;
            for (size_t i = t; i < rows_; ++i)
                for (size_t j = t; j < cols_; ++j)
                    if (A_[i][j] != 0) {
                        int64_t g = std::gcd(A_[i][j], m_);
                        if (!found || g < bestg) { bestg = g; pi = i; pj = j; found = true; }
                        if (bestg == 1) goto have;
                    }
            if (!found) break;
        have:
            if (pi != t) { std::swap(A_[pi], A_[t]); rowops_.push_back({RowOp::Swap, pi, t}); }
            if (pj != t) {
                for (size_t r = 0; r < rows_; ++r) std::swap(A_[r][pj], A_[r][t]);
                for (size_t r = 0; r < cols_; ++r) std::swap(V_[r][pj], V_[r][t]);
            }
            for (;;) {
                bool clean = true;
                for (size_t i = t + 1; i < rows_; ++i) {
                    if (A_[i][t] == 0) continue;
                    int64_t a = A_[t][t], b = A_[i][t];
                    auto [g, s, u] = xgcd_(a, b);
                    // unimodular: [s u; -b/g a/g]
                    row_combine_(t, i, mod_floor(s, m_), mod_floor(u, m_),
                                 mod_floor(-(b / g), m_), mod_floor(a / g, m_));
                    clean = false;
                }
                for (size_t j = t + 1; j < cols_; ++j) {
                    if (A_[t][j] == 0) continue;
                    int64_t a = A_[t][t], b = A_[t][j];
                    auto [g, s, u] = xgcd_(a, b);
                    col_combine_(t, j, mod_floor(s, m_), mod_floor(u, m_),
                                 mod_floor(-(b / g), m_), mod_floor(a / g, m_));
                    clean = false;
                }
                if (clean) break;
            }
            ++t;
        }
        D_.assign(std::min(rows_, cols_), 0);
        for (size_t i = 0; i < D_.size(); ++i) D_[i] = A_[i][i];
    }
};

/// Solve A x = b (mod m) once (convenience wrapper).
inline ModSolveResult solve_mod(const std::vector<std::vector<int64_t>>& A,
                                const std::vector<int64_t>& b, int64_t m) {
    return ZmSolver(A, m).solve(b);
}

} // namespace okit
