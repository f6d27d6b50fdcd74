#ifndef QOMP_ARITH_HPP
#define QOMP_ARITH_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

namespace qomp
{

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;
using IntMat = std::vector<IntVec>;
using RatMat = std::vector<RatVec>;

// Scalars.

/// mpq_class(num, den) does not reduce; everything downstream assumes it does.
inline Rat make_rat(const Int &num, const Int &den)
{
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat parse_rat(const std::string &text)
{
    std::string s;
    for (char c : text) {
        if (c != ' ' && c != '\t') {
            s.push_back(c);
        }
    }
    if (s.empty()) {
        throw Error(ErrorCode::ParseError, "empty rational literal");
    }
    const auto slash = s.find('/');
    auto is_int = [](const std::string &t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i == t.size()) {
            return false;
        }
        return std::all_of(t.begin() + static_cast<std::ptrdiff_t>(i), t.end(),
                           [](char c) { return c >= '0' && c <= '9'; });
    };
    const std::string num = s.substr(0, slash);
    const std::string den = slash == std::string::npos ? std::string("1") : s.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+') {
        throw Error(ErrorCode::ParseError, "malformed rational literal '" + text + "'");
    }
    Int n(num[0] == '+' ? num.substr(1) : num, 10);
    Int q(den, 10);
    if (q == 0) {
        throw Error(ErrorCode::ParseError, "zero denominator in '" + text + "'");
    }
    return make_rat(n, q);
}

inline std::string to_string(const Int &z)
{
    return z.get_str();
}

inline std::string to_string(const Rat &q)
{
    return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

inline std::string to_string(const RatVec &v)
{
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? "," : "") + to_string(v[i]);
    }
    return out + ")";
}

inline std::string to_string(const IntVec &v)
{
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? "," : "") + v[i].get_str();
    }
    return out + ")";
}

inline bool is_integer(const Rat &q)
{
    return q.get_den() == 1;
}

inline Int floor_div(const Int &a, const Int &b)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int floor_rat(const Rat &q)
{
    return floor_div(q.get_num(), q.get_den());
}

inline Int lcm(const Int &a, const Int &b)
{
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int gcd(const Int &a, const Int &b)
{
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// Narrowing used for exponents of the formal symbols; exponents outside the
/// machine range are an internal error, not a silent wrap.
inline long to_long(const Int &z)
{
    if (!z.fits_slong_p()) {
        throw Error(ErrorCode::InternalInconsistency, "exponent " + z.get_str() + " exceeds machine range");
    }
    return z.get_si();
}

inline long to_long(const Rat &q)
{
    if (!is_integer(q)) {
        throw Error(ErrorCode::InternalInconsistency, "expected an integer, got " + to_string(q));
    }
    return to_long(q.get_num());
}

// Vectors.

template <typename A, typename B>
inline Rat dot(const std::vector<A> &a, const std::vector<B> &b)
{
    Rat acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += Rat(a[i]) * Rat(b[i]);
    }
    return acc;
}

inline Int dot_int(const IntVec &a, const IntVec &b)
{
    Int acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

inline RatVec to_rat(const IntVec &v)
{
    return RatVec(v.begin(), v.end());
}

inline RatVec operator+(const RatVec &a, const RatVec &b)
{
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] + b[i];
    }
    return r;
}

inline RatVec operator-(const RatVec &a, const RatVec &b)
{
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] - b[i];
    }
    return r;
}

inline RatVec operator*(const Rat &c, const RatVec &a)
{
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = c * a[i];
    }
    return r;
}

inline bool is_zero(const RatVec &v)
{
    return std::all_of(v.begin(), v.end(), [](const Rat &q) { return q == 0; });
}

inline bool is_zero(const IntVec &v)
{
    return std::all_of(v.begin(), v.end(), [](const Int &q) { return q == 0; });
}

inline RatVec unit_vector(std::size_t d, std::size_t i)
{
    RatVec e(d, Rat(0));
    e[i] = 1;
    return e;
}

inline Int common_denominator(const RatVec &v)
{
    Int den = 1;
    for (const auto &q : v) {
        den = lcm(den, q.get_den());
    }
    return den;
}

/// Smallest positive rational multiple of v with integer entries that are coprime.
inline IntVec primitive_integer(const RatVec &v)
{
    const Int den = common_denominator(v);
    IntVec out(v.size());
    Int g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rat s = v[i] * den;
        out[i] = s.get_num();
        g = gcd(g, out[i]);
    }
    if (g == 0) {
        return out;
    }
    for (auto &x : out) {
        x /= g;
    }
    return out;
}

inline IntVec primitive_integer(const IntVec &v)
{
    return primitive_integer(to_rat(v));
}

// Matrices.

inline std::size_t rank(RatMat m)
{
    std::size_t r = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c] == 0) {
            ++piv;
        }
        if (piv == m.size()) {
            continue;
        }
        std::swap(m[piv], m[r]);
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            if (m[i][c] != 0) {
                const Rat f = m[i][c] / m[r][c];
                for (std::size_t j = c; j < cols; ++j) {
                    m[i][j] -= f * m[r][j];
                }
            }
        }
        ++r;
    }
    return r;
}

inline std::size_t rank(const IntMat &m)
{
    RatMat q;
    q.reserve(m.size());
    for (const auto &row : m) {
        q.push_back(to_rat(row));
    }
    return rank(std::move(q));
}

/// Reduced row echelon form; zero rows are dropped.
inline RatMat rref(RatMat m)
{
    std::size_t r = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c] == 0) {
            ++piv;
        }
        if (piv == m.size()) {
            continue;
        }
        std::swap(m[piv], m[r]);
        const Rat inv = 1 / m[r][c];
        for (std::size_t j = 0; j < cols; ++j) {
            m[r][j] *= inv;
        }
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i != r && m[i][c] != 0) {
                const Rat f = m[i][c];
                for (std::size_t j = 0; j < cols; ++j) {
                    m[i][j] -= f * m[r][j];
                }
            }
        }
        ++r;
    }
    m.resize(r);
    return m;
}

inline RatMat inverse(RatMat m)
{
    const std::size_t n = m.size();
    RatMat inv(n, RatVec(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) {
        inv[i][i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) {
            ++piv;
        }
        if (piv == n) {
            throw Error(ErrorCode::RankDeficient, "singular matrix");
        }
        std::swap(m[piv], m[c]);
        std::swap(inv[piv], inv[c]);
        const Rat p = m[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            m[c][j] /= p;
            inv[c][j] /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i != c && m[i][c] != 0) {
                const Rat f = m[i][c];
                for (std::size_t j = 0; j < n; ++j) {
                    m[i][j] -= f * m[c][j];
                    inv[i][j] -= f * inv[c][j];
                }
            }
        }
    }
    return inv;
}

inline RatMat transpose(const RatMat &m)
{
    if (m.empty()) {
        return {};
    }
    RatMat t(m[0].size(), RatVec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m[i].size(); ++j) {
            t[j][i] = m[i][j];
        }
    }
    return t;
}

inline IntMat transpose(const IntMat &m)
{
    if (m.empty()) {
        return {};
    }
    IntMat t(m[0].size(), IntVec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m[i].size(); ++j) {
            t[j][i] = m[i][j];
        }
    }
    return t;
}

/// Row vector times matrix.
inline RatVec mul(const RatVec &x, const RatMat &m)
{
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    RatVec out(cols, Rat(0));
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < cols; ++j) {
            out[j] += x[i] * m[i][j];
        }
    }
    return out;
}

/// Bareiss fraction-free determinant.
inline Int determinant(IntMat m)
{
    const std::size_t n = m.size();
    if (n == 0) {
        return 1;
    }
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) {
                ++piv;
            }
            if (piv == n) {
                return 0;
            }
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

/// Row-style Hermite normal form by unimodular row operations.
///
/// On return `h` holds the nonzero rows in echelon form with positive pivots
/// and entries above each pivot reduced into [0, pivot). When `transform` is
/// non-null it receives U with U * input = [h; 0] (rows beyond the rank span
/// the left kernel of the input).
struct HermiteResult {
    IntMat h;
    IntMat transform;
    std::vector<std::size_t> pivots;
};

inline HermiteResult row_hermite(IntMat a, bool want_transform = false)
{
    const std::size_t n = a.size();
    const std::size_t m = n ? a[0].size() : 0;
    IntMat u;
    if (want_transform) {
        u.assign(n, IntVec(n, Int(0)));
        for (std::size_t i = 0; i < n; ++i) {
            u[i][i] = 1;
        }
    }
    auto row_sub = [&](std::size_t dst, std::size_t src, const Int &q) {
        if (q == 0) {
            return;
        }
        for (std::size_t j = 0; j < m; ++j) {
            a[dst][j] -= q * a[src][j];
        }
        if (want_transform) {
            for (std::size_t j = 0; j < n; ++j) {
                u[dst][j] -= q * u[src][j];
            }
        }
    };
    auto row_swap = [&](std::size_t i, std::size_t j) {
        std::swap(a[i], a[j]);
        if (want_transform) {
            std::swap(u[i], u[j]);
        }
    };
    auto row_neg = [&](std::size_t i) {
        for (auto &x : a[i]) {
            x = -x;
        }
        if (want_transform) {
            for (auto &x : u[i]) {
                x = -x;
            }
        }
    };

    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m && r < n; ++c) {
        while (true) {
            std::size_t best = n;
            for (std::size_t i = r; i < n; ++i) {
                if (a[i][c] != 0 && (best == n || abs(a[i][c]) < abs(a[best][c]))) {
                    best = i;
                }
            }
            if (best == n) {
                break;
            }
            row_swap(best, r);
            bool done = true;
            for (std::size_t i = r + 1; i < n; ++i) {
                if (a[i][c] != 0) {
                    row_sub(i, r, floor_div(a[i][c], a[r][c]));
                    if (a[i][c] != 0) {
                        done = false;
                    }
                }
            }
            if (done) {
                break;
            }
        }
        if (a[r][c] == 0) {
            continue;
        }
        if (a[r][c] < 0) {
            row_neg(r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            row_sub(i, r, floor_div(a[i][c], a[r][c]));
        }
        pivots.push_back(c);
        ++r;
    }
    HermiteResult res;
    res.h.assign(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(r));
    res.pivots = std::move(pivots);
    if (want_transform) {
        res.transform = std::move(u);
    }
    return res;
}

/// Basis of the integer left kernel {x in Z^n : x * a = 0}; the basis is
/// saturated (it spans every integer solution).
inline IntMat left_kernel(const IntMat &a)
{
    auto res = row_hermite(a, true);
    IntMat ker(res.transform.begin() + static_cast<std::ptrdiff_t>(res.h.size()), res.transform.end());
    return row_hermite(ker).h;
}

/// Basis of the integer right kernel {y in Z^m : a * y = 0}.
inline IntMat right_kernel(const IntMat &a, std::size_t cols)
{
    if (a.empty()) {
        IntMat id(cols, IntVec(cols, Int(0)));
        for (std::size_t i = 0; i < cols; ++i) {
            id[i][i] = 1;
        }
        return id;
    }
    return left_kernel(transpose(a));
}

/// Scale a rational matrix row-wise into integers with one common denominator.
inline std::pair<IntMat, Int> clear_denominators(const RatMat &m)
{
    Int den = 1;
    for (const auto &row : m) {
        den = lcm(den, common_denominator(row));
    }
    IntMat out;
    out.reserve(m.size());
    for (const auto &row : m) {
        IntVec r(row.size());
        for (std::size_t j = 0; j < row.size(); ++j) {
            Rat s = row[j] * den;
            r[j] = s.get_num();
        }
        out.push_back(std::move(r));
    }
    return {out, den};
}

} // namespace qomp

#endif
