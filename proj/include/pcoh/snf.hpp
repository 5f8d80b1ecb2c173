#pragma once

#include <cstdlib>
#include <numeric>
#include <optional>
#include <vector>

#include "pcoh/common.hpp"

namespace pcoh {

using i64 = long long;

// Matrix entries are 128-bit: the unimodular transforms produced by the
// Smith reduction can grow far beyond the input magnitude. Overflow past
// 128 bits still throws rather than wrapping.
using i128 = __int128;

inline i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw MathError("internal-error", "integer overflow in exact arithmetic");
    return r;
}

inline i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw MathError("internal-error", "integer overflow in exact arithmetic");
    return r;
}

inline i64 narrow(i128 v) {
    if (v > static_cast<i128>(9223372036854775807LL) || v < -static_cast<i128>(9223372036854775807LL))
        throw MathError("internal-error", "result does not fit 64 bits");
    return static_cast<i64>(v);
}

struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<i128> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), 0) {}

    i128& at(int r, int c) { return a[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)]; }
    i128 at(int r, int c) const { return a[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static Mat diagonal(const std::vector<i64>& d) {
        Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
        for (int i = 0; i < m.rows; ++i) m.at(i, i) = d[static_cast<std::size_t>(i)];
        return m;
    }

    // horizontal concatenation [A | B]
    static Mat hstack(const Mat& x, const Mat& y) {
        Mat m(x.rows, x.cols + y.cols);
        for (int r = 0; r < x.rows; ++r) {
            for (int c = 0; c < x.cols; ++c) m.at(r, c) = x.at(r, c);
            for (int c = 0; c < y.cols; ++c) m.at(r, x.cols + c) = y.at(r, c);
        }
        return m;
    }

    Mat columns(int from, int to) const {  // [from, to)
        Mat m(rows, to - from);
        for (int r = 0; r < rows; ++r)
            for (int c = from; c < to; ++c) m.at(r, c - from) = at(r, c);
        return m;
    }
};

inline std::vector<i128> mat_vec(const Mat& m, const std::vector<i128>& x) {
    std::vector<i128> y(static_cast<std::size_t>(m.rows), 0);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c)
            y[static_cast<std::size_t>(r)] =
                checked_add(y[static_cast<std::size_t>(r)], checked_mul(m.at(r, c), x[static_cast<std::size_t>(c)]));
    return y;
}

// U*A*V = S with U, V unimodular and S diagonal, s_1 | s_2 | ... >= 0.
// Pivoting is deterministic: smallest nonzero absolute value, then lowest
// row-major index.
struct SnfResult {
    Mat s;
    Mat u;  // rows transform
    Mat v;  // cols transform
    int rank = 0;

    std::vector<i64> diagonal() const {
        std::vector<i64> d;
        for (int i = 0; i < std::min(s.rows, s.cols); ++i)
            if (s.at(i, i) != 0) d.push_back(narrow(s.at(i, i)));
        return d;
    }
};

inline SnfResult smith_normal_form(Mat a) {
    SnfResult res;
    res.u = Mat::identity(a.rows);
    res.v = Mat::identity(a.cols);
    Mat& s = a;

    auto row_axpy = [&](int dst, int src, i128 k) {  // row dst -= k * row src
        for (int c = 0; c < s.cols; ++c) s.at(dst, c) = checked_add(s.at(dst, c), checked_mul(-k, s.at(src, c)));
        for (int c = 0; c < res.u.cols; ++c)
            res.u.at(dst, c) = checked_add(res.u.at(dst, c), checked_mul(-k, res.u.at(src, c)));
    };
    auto col_axpy = [&](int dst, int src, i128 k) {
        for (int r = 0; r < s.rows; ++r) s.at(r, dst) = checked_add(s.at(r, dst), checked_mul(-k, s.at(r, src)));
        for (int r = 0; r < res.v.rows; ++r)
            res.v.at(r, dst) = checked_add(res.v.at(r, dst), checked_mul(-k, res.v.at(r, src)));
    };
    auto row_swap = [&](int i, int j) {
        if (i == j) return;
        for (int c = 0; c < s.cols; ++c) std::swap(s.at(i, c), s.at(j, c));
        for (int c = 0; c < res.u.cols; ++c) std::swap(res.u.at(i, c), res.u.at(j, c));
    };
    auto col_swap = [&](int i, int j) {
        if (i == j) return;
        for (int r = 0; r < s.rows; ++r) std::swap(s.at(r, i), s.at(r, j));
        for (int r = 0; r < res.v.rows; ++r) std::swap(res.v.at(r, i), res.v.at(r, j));
    };
    auto row_negate = [&](int i) {
        for (int c = 0; c < s.cols; ++c) s.at(i, c) = -s.at(i, c);
        for (int c = 0; c < res.u.cols; ++c) res.u.at(i, c) = -res.u.at(i, c);
    };

    const int nmin = std::min(s.rows, s.cols);
    int t = 0;
    while (t < nmin) {
        // pivot: smallest |nonzero| in submatrix, lowest row-major index
        int pr = -1, pc = -1;
        i128 best = 0;
        for (int r = t; r < s.rows; ++r)
            for (int c = t; c < s.cols; ++c) {
                const i128 v = s.at(r, c) < 0 ? -s.at(r, c) : s.at(r, c);
                if (v != 0 && (pr < 0 || v < best)) {
                    best = v;
                    pr = r;
                    pc = c;
                }
            }
        if (pr < 0) break;  // submatrix is zero
        row_swap(t, pr);
        col_swap(t, pc);
        if (s.at(t, t) < 0) row_negate(t);

        bool clean = true;
        for (int r = t + 1; r < s.rows; ++r) {
            if (s.at(r, t) == 0) continue;
            row_axpy(r, t, s.at(r, t) / s.at(t, t));
            if (s.at(r, t) != 0) clean = false;
        }
        for (int c = t + 1; c < s.cols; ++c) {
            if (s.at(t, c) == 0) continue;
            col_axpy(c, t, s.at(t, c) / s.at(t, t));
            if (s.at(t, c) != 0) clean = false;
        }
        if (!clean) continue;  // remainders left, re-pivot on a smaller value

        // divisibility: s_t must divide everything below-right
        bool divides = true;
        for (int r = t + 1; r < s.rows && divides; ++r)
            for (int c = t + 1; c < s.cols && divides; ++c)
                if (s.at(r, c) % s.at(t, t) != 0) {
                    row_axpy(t, r, -1);  // pull the offending row up, restart this step
                    divides = false;
                }
        if (!divides) continue;
        ++t;
    }
    res.rank = 0;
    for (int i = 0; i < nmin; ++i)
        if (s.at(i, i) != 0) ++res.rank;
    res.s = std::move(s);
    return res;
}

// Basis of {x : A x = 0} as columns.
inline Mat kernel_basis(const Mat& a) {
    const SnfResult snf = smith_normal_form(a);
    return snf.v.columns(snf.rank, snf.v.cols);
}

// Generators (columns) of the congruence kernel {x ∈ Z^r : A x ≡ 0 mod d},
// where every d_i divides the exponent m. The lattice contains m·Z^r, so
// generators can be reduced mod m throughout: row-by-row gcd elimination
// with every entry kept in [0, m), no unimodular transform bookkeeping.
inline Mat congruence_kernel_generators(const Mat& a, const std::vector<i64>& d, i64 m) {
    const int r = a.cols;
    Mat g(r, 2 * r);  // r working columns + the columns m·e_j
    for (int j = 0; j < r; ++j) {
        g.at(j, j) = 1;
        g.at(j, r + j) = m;
    }
    for (int i = 0; i < a.rows; ++i) {
        const i64 di = d[static_cast<std::size_t>(i)];
        if (di == 1) continue;
        std::vector<i64> val(static_cast<std::size_t>(r), 0);
        for (int c = 0; c < r; ++c) {
            i128 acc = 0;
            for (int j = 0; j < r; ++j) acc = checked_add(acc, checked_mul(a.at(i, j), g.at(j, c)));
            val[static_cast<std::size_t>(c)] = narrow(((acc % di) + di) % di);
        }
        // Euclid the columns against each other until one value remains
        while (true) {
            int c1 = -1;
            for (int c = 0; c < r; ++c)
                if (val[static_cast<std::size_t>(c)] != 0 &&
                    (c1 < 0 || val[static_cast<std::size_t>(c)] < val[static_cast<std::size_t>(c1)]))
                    c1 = c;
            if (c1 < 0) break;
            bool others = false;
            for (int c = 0; c < r; ++c) {
                if (c == c1 || val[static_cast<std::size_t>(c)] == 0) continue;
                const i64 k = val[static_cast<std::size_t>(c)] / val[static_cast<std::size_t>(c1)];
                for (int j = 0; j < r; ++j) {
                    i128 v = g.at(j, c) - static_cast<i128>(k) * g.at(j, c1);
                    v %= m;
                    if (v < 0) v += m;
                    g.at(j, c) = v;
                }
                val[static_cast<std::size_t>(c)] -= k * val[static_cast<std::size_t>(c1)];
                if (val[static_cast<std::size_t>(c)] != 0) others = true;
            }
            if (!others) {
                // scale the surviving column into the kernel
                const i64 u = val[static_cast<std::size_t>(c1)];
                const i64 scale = di / std::gcd(u, di);
                for (int j = 0; j < r; ++j)
                    g.at(j, c1) = static_cast<i128>(scale) * g.at(j, c1) % m;
                break;
            }
        }
    }
    return g;
}

// One integer solution of A x = b, if any.
inline std::optional<std::vector<i64>> solve_linear(const Mat& a, const std::vector<i64>& b) {
    const SnfResult snf = smith_normal_form(a);
    const std::vector<i128> c = mat_vec(snf.u, std::vector<i128>(b.begin(), b.end()));
    std::vector<i128> y(static_cast<std::size_t>(a.cols), 0);
    for (int i = 0; i < a.rows; ++i) {
        const i128 d = i < std::min(a.rows, a.cols) ? snf.s.at(i, i) : 0;
        if (d == 0) {
            if (c[static_cast<std::size_t>(i)] != 0) return std::nullopt;
        } else {
            if (c[static_cast<std::size_t>(i)] % d != 0) return std::nullopt;
            y[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)] / d;
        }
    }
    const std::vector<i128> x = mat_vec(snf.v, y);
    std::vector<i64> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = narrow(x[i]);
    return out;
}

// Lower-triangular basis (column style) of the lattice spanned by the
// columns of gens; requires full row rank.
inline Mat lattice_column_basis(Mat gens) {
    const int r = gens.rows;
    auto col_axpy = [&](int dst, int src, i128 k) {
        for (int i = 0; i < gens.rows; ++i)
            gens.at(i, dst) = checked_add(gens.at(i, dst), checked_mul(-k, gens.at(i, src)));
    };
    auto col_swap = [&](int i, int j) {
        if (i == j) return;
        for (int row = 0; row < gens.rows; ++row) std::swap(gens.at(row, i), gens.at(row, j));
    };
    int lead = 0;
    for (int row = 0; row < r; ++row) {
        // gcd-out everything in this row right of the lead column
        while (true) {
            int p = -1;
            i128 best = 0;
            for (int c = lead; c < gens.cols; ++c) {
                const i128 v = gens.at(row, c) < 0 ? -gens.at(row, c) : gens.at(row, c);
                if (v != 0 && (p < 0 || v < best)) {
                    best = v;
                    p = c;
                }
            }
            if (p < 0) throw MathError("internal-error", "lattice generators are not full rank");
            col_swap(lead, p);
            bool done = true;
            for (int c = lead + 1; c < gens.cols; ++c) {
                if (gens.at(row, c) == 0) continue;
                col_axpy(c, lead, gens.at(row, c) / gens.at(row, lead));
                if (gens.at(row, c) != 0) done = false;
            }
            if (done) break;
        }
        if (gens.at(row, lead) < 0)
            for (int i = 0; i < gens.rows; ++i) gens.at(i, lead) = -gens.at(i, lead);
        ++lead;
    }
    return gens.columns(0, r);
}

// Exact forward substitution for lower-triangular L; throws if the solution
// is not integral (which would mean the vector is outside the lattice).
inline std::vector<i128> solve_lower_triangular(const Mat& l, const std::vector<i128>& b) {
    std::vector<i128> x(static_cast<std::size_t>(l.cols), 0);
    for (int i = 0; i < l.rows; ++i) {
        i128 acc = b[static_cast<std::size_t>(i)];
        for (int j = 0; j < i; ++j) acc = checked_add(acc, checked_mul(-l.at(i, j), x[static_cast<std::size_t>(j)]));
        if (l.at(i, i) == 0 || acc % l.at(i, i) != 0)
            throw MathError("internal-error", "vector is not in the lattice");
        x[static_cast<std::size_t>(i)] = acc / l.at(i, i);
    }
    return x;
}

// Invariant factors (> 1, ascending divisibility) of the finite quotient
// Z-lattice / B-lattice, both given by generator matrices with full row
// rank and B contained in Z.
inline std::vector<i64> lattice_quotient_invariants(const Mat& z_gens, const Mat& b_gens) {
    const int r = z_gens.rows;
    if (r == 0) return {};
    const Mat basis = lattice_column_basis(z_gens);
    Mat x(r, b_gens.cols);
    for (int c = 0; c < b_gens.cols; ++c) {
        std::vector<i128> col(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i) col[static_cast<std::size_t>(i)] = b_gens.at(i, c);
        const std::vector<i128> sol = solve_lower_triangular(basis, col);
        for (int i = 0; i < r; ++i) x.at(i, c) = sol[static_cast<std::size_t>(i)];
    }
    const SnfResult snf = smith_normal_form(std::move(x));
    if (snf.rank < r) throw MathError("internal-error", "lattice quotient is infinite");
    std::vector<i64> inv;
    for (i64 d : snf.diagonal())
        if (d > 1) inv.push_back(d);
    return inv;
}

}  // namespace pcoh
