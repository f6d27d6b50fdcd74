#ifndef QOMP_LTSERIES_HPP
#define QOMP_LTSERIES_HPP

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "arith.hpp"

namespace qomp
{

/// Laurent polynomial in L with integer coefficients.
class LPoly
{
public:
    LPoly() = default;
    LPoly(const Int &c) // NOLINT: constants convert implicitly
    {
        if (c != 0) {
            m_terms[0] = c;
        }
    }
    LPoly(long c) : LPoly(Int(c)) {}

    static LPoly monomial(long exp, const Int &coeff = 1)
    {
        LPoly p;
        if (coeff != 0) {
            p.m_terms[exp] = coeff;
        }
        return p;
    }

    const std::map<long, Int> &terms() const
    {
        return m_terms;
    }
    bool is_zero() const
    {
        return m_terms.empty();
    }
    long min_exp() const
    {
        return m_terms.begin()->first;
    }
    long max_exp() const
    {
        return m_terms.rbegin()->first;
    }
    Int coeff(long e) const
    {
        auto it = m_terms.find(e);
        return it == m_terms.end() ? Int(0) : it->second;
    }

    void add_term(long e, const Int &c)
    {
        if (c == 0) {
            return;
        }
        auto [it, inserted] = m_terms.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                m_terms.erase(it);
            }
        }
    }

    LPoly &operator+=(const LPoly &o)
    {
        for (const auto &[e, c] : o.m_terms) {
            add_term(e, c);
        }
        return *this;
    }
    LPoly &operator-=(const LPoly &o)
    {
        for (const auto &[e, c] : o.m_terms) {
            add_term(e, -c);
        }
        return *this;
    }
    friend LPoly operator+(LPoly a, const LPoly &b)
    {
        return a += b;
    }
    friend LPoly operator-(LPoly a, const LPoly &b)
    {
        return a -= b;
    }
    friend LPoly operator-(const LPoly &a)
    {
        return LPoly() - a;
    }
    friend LPoly operator*(const LPoly &a, const LPoly &b)
    {
        LPoly r;
        for (const auto &[ea, ca] : a.m_terms) {
            for (const auto &[eb, cb] : b.m_terms) {
                r.add_term(ea + eb, ca * cb);
            }
        }
        return r;
    }
    LPoly &operator*=(const LPoly &o)
    {
        return *this = *this * o;
    }
    LPoly shifted(long by) const
    {
        LPoly r;
        for (const auto &[e, c] : m_terms) {
            r.m_terms.emplace(e + by, c);
        }
        return r;
    }

    /// Exact division by (1 - L^a), a != 0. Returns false when the quotient
    /// is not a Laurent polynomial.
    bool divide_one_minus(long a, LPoly &quotient) const
    {
        quotient = LPoly();
        if (is_zero()) {
            return true;
        }
        if (a == 0) {
            return false;
        }
        // (1 - L^a) q = p: peel off the lowest term of p (highest when a < 0).
        const long lo = min_exp();
        const long hi = max_exp();
        LPoly rest = *this;
        while (!rest.is_zero()) {
            const long e = a > 0 ? rest.min_exp() : rest.max_exp();
            if ((a > 0 && e > hi - a) || (a < 0 && e < lo - a)) {
                return false;
            }
            const Int c = rest.coeff(e);
            quotient.add_term(e, c);
            rest.add_term(e, -c);
            rest.add_term(e + a, c);
        }
        return true;
    }

    bool operator==(const LPoly &o) const
    {
        return m_terms == o.m_terms;
    }
    bool operator!=(const LPoly &o) const
    {
        return !(*this == o);
    }

    /// L-descending rendering, e.g. "L^2 - 2*L + 1".
    std::string to_string() const
    {
        if (m_terms.empty()) {
            return "0";
        }
        std::string out;
        for (auto it = m_terms.rbegin(); it != m_terms.rend(); ++it) {
            out += render_term(it->first, it->second, out.empty());
        }
        return out;
    }

    static std::string render_term(long exp, const Int &c, bool first, const std::string &var = "L")
    {
        std::string out;
        Int mag = abs(c);
        if (first) {
            out += c < 0 ? "-" : "";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        if (exp == 0) {
            return out + mag.get_str();
        }
        if (mag != 1) {
            out += mag.get_str() + "*";
        }
        out += var;
        if (exp != 1) {
            out += "^" + (exp < 0 ? "(" + std::to_string(exp) + ")" : std::to_string(exp));
        }
        return out;
    }

private:
    std::map<long, Int> m_terms;
};

inline LPoly L_pow(long e)
{
    return LPoly::monomial(e);
}

inline LPoly L_minus_1_pow(int k)
{
    LPoly r(1);
    for (int i = 0; i < k; ++i) {
        r *= LPoly::monomial(1) - LPoly(1);
    }
    return r;
}

/// Polynomial in (L, T): Laurent in L, T-exponents >= 0. Keys are (t, l).
class LTPoly
{
public:
    using Key = std::pair<long, long>;

    LTPoly() = default;
    LTPoly(const LPoly &c) // NOLINT
    {
        for (const auto &[l, x] : c.terms()) {
            m_terms[{0, l}] = x;
        }
    }
    LTPoly(long c) : LTPoly(LPoly(c)) {}

    static LTPoly monomial(long l, long t, const Int &coeff = 1)
    {
        LTPoly p;
        p.add_term(t, l, coeff);
        return p;
    }

    const std::map<Key, Int> &terms() const
    {
        return m_terms;
    }
    bool is_zero() const
    {
        return m_terms.empty();
    }
    long max_t() const
    {
        long m = 0;
        for (const auto &kv : m_terms) {
            m = std::max(m, kv.first.first);
        }
        return m;
    }

    void add_term(long t, long l, const Int &c)
    {
        if (c == 0) {
            return;
        }
        auto [it, inserted] = m_terms.emplace(Key{t, l}, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                m_terms.erase(it);
            }
        }
    }

    /// Coefficient of T^t as an L-polynomial.
    LPoly t_coeff(long t) const
    {
        LPoly r;
        for (auto it = m_terms.lower_bound({t, std::numeric_limits<long>::min()});
             it != m_terms.end() && it->first.first == t; ++it) {
            r.add_term(it->first.second, it->second);
        }
        return r;
    }

    LTPoly &operator+=(const LTPoly &o)
    {
        for (const auto &[k, c] : o.m_terms) {
            add_term(k.first, k.second, c);
        }
        return *this;
    }
    LTPoly &operator-=(const LTPoly &o)
    {
        for (const auto &[k, c] : o.m_terms) {
            add_term(k.first, k.second, -c);
        }
        return *this;
    }
    friend LTPoly operator+(LTPoly a, const LTPoly &b)
    {
        return a += b;
    }
    friend LTPoly operator-(LTPoly a, const LTPoly &b)
    {
        return a -= b;
    }
    friend LTPoly operator-(const LTPoly &a)
    {
        return LTPoly() - a;
    }
    friend LTPoly operator*(const LTPoly &a, const LTPoly &b)
    {
        LTPoly r;
        for (const auto &[ka, ca] : a.m_terms) {
            for (const auto &[kb, cb] : b.m_terms) {
                r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
            }
        }
        return r;
    }
    LTPoly &operator*=(const LTPoly &o)
    {
        return *this = *this * o;
    }

    /// Multiply by (1 - L^a T^b).
    LTPoly times_one_minus(long a, long b) const
    {
        LTPoly r = *this;
        for (const auto &[k, c] : m_terms) {
            r.add_term(k.first + b, k.second + a, -c);
        }
        return r;
    }

    /// Exact division by (1 - L^a T^b) with b >= 1; false if not divisible.
    bool divide_one_minus(long a, long b, LTPoly &quotient) const
    {
        quotient = LTPoly();
        if (is_zero()) {
            return true;
        }
        const long top = max_t();
        if (top < b) {
            return false;
        }
        // q_t = p_t + L^a q_{t-b}, for t = 0..top-b; then check p == (1-m) q.
        std::vector<LPoly> q(static_cast<std::size_t>(top - b + 1));
        for (long t = 0; t <= top - b; ++t) {
            LPoly v = t_coeff(t);
            if (t >= b) {
                v += q[static_cast<std::size_t>(t - b)].shifted(a);
            }
            q[static_cast<std::size_t>(t)] = v;
        }
        for (long t = 0; t <= top - b; ++t) {
            for (const auto &[l, c] : q[static_cast<std::size_t>(t)].terms()) {
                quotient.add_term(t, l, c);
            }
        }
        return quotient.times_one_minus(a, b) == *this;
    }

    bool operator==(const LTPoly &o) const
    {
        return m_terms == o.m_terms;
    }
    bool operator!=(const LTPoly &o) const
    {
        return !(*this == o);
    }

    /// T-ascending, L-descending within each T power.
    std::string to_string() const
    {
        if (m_terms.empty()) {
            return "0";
        }
        std::vector<std::pair<Key, Int>> order(m_terms.begin(), m_terms.end());
        std::stable_sort(order.begin(), order.end(), [](const auto &x, const auto &y) {
            if (x.first.first != y.first.first) {
                return x.first.first < y.first.first;
            }
            return x.first.second > y.first.second;
        });
        std::string out;
        for (const auto &[k, c] : order) {
            const bool first = out.empty();
            std::string piece;
            Int mag = abs(c);
            piece += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
            std::string mono;
            if (k.second != 0) {
                mono += "L";
                if (k.second != 1) {
                    mono += "^" + (k.second < 0 ? "(" + std::to_string(k.second) + ")" : std::to_string(k.second));
                }
            }
            if (k.first != 0) {
                mono += mono.empty() ? "" : "*";
                mono += "T";
                if (k.first != 1) {
                    mono += "^" + std::to_string(k.first);
                }
            }
            if (mono.empty()) {
                piece += mag.get_str();
            } else if (mag != 1) {
                piece += mag.get_str() + "*" + mono;
            } else {
                piece += mono;
            }
            out += piece;
        }
        return out;
    }

private:
    std::map<Key, Int> m_terms;
};

/// A denominator factor (1 - L^a T^b). Ordered by (b, a).
struct LTFactor {
    long a = 0;
    long b = 0;
    bool operator<(const LTFactor &o) const
    {
        return b != o.b ? b < o.b : a < o.a;
    }
    bool operator==(const LTFactor &o) const
    {
        return a == o.a && b == o.b;
    }
    std::string to_string() const
    {
        LTPoly p = LTPoly(1) - LTPoly::monomial(a, b);
        return "(" + p.to_string() + ")";
    }
};

using FactorMultiset = std::map<LTFactor, int>;

inline LTPoly expand_factors(const FactorMultiset &f)
{
    LTPoly r(1);
    for (const auto &[fac, mult] : f) {
        for (int i = 0; i < mult; ++i) {
            r = r.times_one_minus(fac.a, fac.b);
        }
    }
    return r;
}

/// Rational function num / prod (1 - L^a T^b)^mult. Denominator factors are
/// never cancelled implicitly, so they keep their origin.
class BivRat
{
public:
    BivRat() = default;
    BivRat(const LTPoly &num) : m_num(num) {} // NOLINT
    BivRat(LTPoly num, FactorMultiset den) : m_num(std::move(num)), m_den(std::move(den))
    {
        for (auto it = m_den.begin(); it != m_den.end();) {
            if (it->first.a == 0 && it->first.b == 0) {
                throw Error(ErrorCode::InvalidSubstitution, "denominator factor (1 - 1)");
            }
            if (it->second <= 0) {
                it = m_den.erase(it);
            } else {
                ++it;
            }
        }
    }

    /// num / prod of the listed factors.
    static BivRat with_factors(const LTPoly &num, const std::vector<LTFactor> &factors)
    {
        FactorMultiset den;
        for (const auto &f : factors) {
            ++den[f];
        }
        return BivRat(num, den);
    }

    const LTPoly &numerator() const
    {
        return m_num;
    }
    const FactorMultiset &denominator() const
    {
        return m_den;
    }
    bool is_zero() const
    {
        return m_num.is_zero();
    }

    /// Rewrite over a larger denominator.
    LTPoly numerator_over(const FactorMultiset &den) const
    {
        LTPoly n = m_num;
        for (const auto &[f, mult] : den) {
            auto it = m_den.find(f);
            const int have = it == m_den.end() ? 0 : it->second;
            if (have > mult) {
                throw Error(ErrorCode::InternalInconsistency, "target denominator does not contain " + f.to_string());
            }
            for (int i = have; i < mult; ++i) {
                n = n.times_one_minus(f.a, f.b);
            }
        }
        for (const auto &[f, mult] : m_den) {
            if (!den.count(f)) {
                throw Error(ErrorCode::InternalInconsistency, "target denominator misses " + f.to_string());
            }
        }
        return n;
    }

    static FactorMultiset union_of(const FactorMultiset &x, const FactorMultiset &y)
    {
        FactorMultiset r = x;
        for (const auto &[f, m] : y) {
            r[f] = std::max(r[f], m);
        }
        return r;
    }

    friend BivRat operator+(const BivRat &x, const BivRat &y)
    {
        FactorMultiset den = union_of(x.m_den, y.m_den);
        return BivRat(x.numerator_over(den) + y.numerator_over(den), den);
    }
    friend BivRat operator-(const BivRat &x)
    {
        return BivRat(-x.m_num, x.m_den);
    }
    friend BivRat operator-(const BivRat &x, const BivRat &y)
    {
        return x + (-y);
    }
    friend BivRat operator*(const BivRat &x, const BivRat &y)
    {
        FactorMultiset den = x.m_den;
        for (const auto &[f, m] : y.m_den) {
            den[f] += m;
        }
        return BivRat(x.m_num * y.m_num, den);
    }
    BivRat &operator+=(const BivRat &o)
    {
        return *this = *this + o;
    }

    /// Cross-multiplied polynomial identity.
    bool equals(const BivRat &o) const
    {
        FactorMultiset den = union_of(m_den, o.m_den);
        return numerator_over(den) == o.numerator_over(den);
    }

    /// Cancel one copy of a denominator factor against the numerator if it
    /// divides exactly. Returns false (and leaves *this unchanged) otherwise.
    bool try_cancel(const LTFactor &f)
    {
        auto it = m_den.find(f);
        if (it == m_den.end()) {
            return false;
        }
        LTPoly q;
        if (f.b >= 1) {
            if (!m_num.divide_one_minus(f.a, f.b, q)) {
                return false;
            }
        } else {
            // Constant factor: divide every T-coefficient.
            for (long t = 0; t <= m_num.max_t(); ++t) {
                LPoly c = m_num.t_coeff(t);
                LPoly qc;
                if (!c.divide_one_minus(f.a, qc)) {
                    return false;
                }
                for (const auto &[l, x] : qc.terms()) {
                    q.add_term(t, l, x);
                }
            }
        }
        m_num = q;
        if (--it->second == 0) {
            m_den.erase(it);
        }
        return true;
    }

    /// Coefficients of T^0..T^order.
    std::vector<LPoly> expand(long order) const
    {
        std::vector<LPoly> c(static_cast<std::size_t>(order + 1));
        for (const auto &[k, x] : m_num.terms()) {
            if (k.first < 0) {
                throw Error(ErrorCode::InternalInconsistency, "negative T exponent in numerator");
            }
            if (k.first <= order) {
                c[static_cast<std::size_t>(k.first)].add_term(k.second, x);
            }
        }
        std::vector<std::pair<LTFactor, int>> constants;
        for (const auto &[f, mult] : m_den) {
            if (f.b == 0) {
                constants.emplace_back(f, mult);
                continue;
            }
            if (f.b < 0) {
                throw Error(ErrorCode::InternalInconsistency, "negative T exponent in denominator");
            }
            for (int i = 0; i < mult; ++i) {
                for (long s = f.b; s <= order; ++s) {
                    c[static_cast<std::size_t>(s)] += c[static_cast<std::size_t>(s - f.b)].shifted(f.a);
                }
            }
        }
        for (const auto &[f, mult] : constants) {
            for (int i = 0; i < mult; ++i) {
                for (long s = 0; s <= order; ++s) {
                    LPoly q;
                    if (!c[static_cast<std::size_t>(s)].divide_one_minus(f.a, q)) {
                        throw Error(ErrorCode::NonPolynomialCoefficient,
                                    "coefficient of T^" + std::to_string(s) + " is not divisible by " + f.to_string());
                    }
                    c[static_cast<std::size_t>(s)] = q;
                }
            }
        }
        return c;
    }

    long max_den_b() const
    {
        long m = 0;
        for (const auto &kv : m_den) {
            m = std::max(m, kv.first.b);
        }
        return m;
    }

    std::string to_string() const
    {
        std::string out = "(" + m_num.to_string() + ")";
        if (m_den.empty()) {
            return out;
        }
        out += " / (";
        bool first = true;
        for (const auto &[f, mult] : m_den) {
            out += first ? "" : "*";
            first = false;
            out += f.to_string();
            if (mult > 1) {
                out += "^" + std::to_string(mult);
            }
        }
        return out + ")";
    }

private:
    LTPoly m_num;
    FactorMultiset m_den;
};

inline BivRat one_over(long a, long b)
{
    return BivRat::with_factors(LTPoly(1), {{a, b}});
}

/// Numerator Q with sum_s coeffs[s] T^s = Q / prod(1 - L^a T^b), checked on
/// a guard window of the top `guard` T-degrees.
inline LTPoly reconstruct_numerator(const std::vector<LPoly> &coeffs, const FactorMultiset &den, long guard)
{
    const long order = static_cast<long>(coeffs.size()) - 1;
    std::vector<LPoly> q(coeffs.begin(), coeffs.end());
    for (const auto &[f, mult] : den) {
        for (int i = 0; i < mult; ++i) {
            for (long s = order; s >= 0; --s) {
                if (s - f.b >= 0) {
                    q[static_cast<std::size_t>(s)] -= q[static_cast<std::size_t>(s - f.b)].shifted(f.a);
                }
            }
            if (f.b == 0) {
                throw Error(ErrorCode::InvalidSubstitution, "constant factor in reconstruction denominator");
            }
        }
    }
    const long cut = order - guard;
    if (cut < 0) {
        throw Error(ErrorCode::NotStabilized, "order " + std::to_string(order) + " is below the guard window");
    }
    for (long s = cut + 1; s <= order; ++s) {
        if (!q[static_cast<std::size_t>(s)].is_zero()) {
            throw Error(ErrorCode::NotStabilized,
                        "numerator has a nonzero T^" + std::to_string(s) + " term inside the guard window");
        }
    }
    LTPoly out;
    for (long s = 0; s <= cut; ++s) {
        for (const auto &[l, c] : q[static_cast<std::size_t>(s)].terms()) {
            out.add_term(s, l, c);
        }
    }
    return out;
}

/// Rational function in L: num / prod (1 - L^{-c}), c >= 1.
class LVolRat
{
public:
    LVolRat() = default;
    LVolRat(LPoly num, std::map<long, int> den) : m_num(std::move(num)), m_den(std::move(den))
    {
        for (const auto &[c, m] : m_den) {
            if (c < 1) {
                throw Error(ErrorCode::InvalidSubstitution, "volume factor exponent must be positive");
            }
        }
    }

    /// num / prod (1 - L^{c}) with c >= 1, via 1/(1-L^c) = -L^{-c}/(1-L^{-c}).
    static LVolRat from_positive_factors(const LPoly &num, const std::vector<long> &cs)
    {
        LPoly n = num;
        std::map<long, int> den;
        for (long c : cs) {
            n = -n.shifted(-c);
            ++den[c];
        }
        return LVolRat(n, den);
    }

    const LPoly &numerator() const
    {
        return m_num;
    }
    const std::map<long, int> &denominator() const
    {
        return m_den;
    }

    LPoly numerator_over(const std::map<long, int> &den) const
    {
        LPoly n = m_num;
        for (const auto &[c, mult] : den) {
            auto it = m_den.find(c);
            const int have = it == m_den.end() ? 0 : it->second;
            for (int i = have; i < mult; ++i) {
                n = n - n.shifted(-c);
            }
        }
        return n;
    }

    static std::map<long, int> union_of(const std::map<long, int> &x, const std::map<long, int> &y)
    {
        auto r = x;
        for (const auto &[c, m] : y) {
            r[c] = std::max(r[c], m);
        }
        return r;
    }

    friend LVolRat operator+(const LVolRat &x, const LVolRat &y)
    {
        auto den = union_of(x.m_den, y.m_den);
        return LVolRat(x.numerator_over(den) + y.numerator_over(den), den);
    }
    friend LVolRat operator*(const LPoly &p, const LVolRat &x)
    {
        return LVolRat(p * x.m_num, x.m_den);
    }

    /// Coefficients of L^{-m} for m <= max_u (keys are m).
    std::map<long, Int> expand_inverse(long max_u) const
    {
        if (m_num.is_zero()) {
            return {};
        }
        const long lo = -m_num.max_exp();
        if (max_u < lo) {
            return {};
        }
        std::vector<Int> a(static_cast<std::size_t>(max_u - lo + 1), Int(0));
        for (const auto &[e, c] : m_num.terms()) {
            if (-e <= max_u) {
                a[static_cast<std::size_t>(-e - lo)] += c;
            }
        }
        for (const auto &[c, mult] : m_den) {
            for (int r = 0; r < mult; ++r) {
                for (std::size_t i = static_cast<std::size_t>(c); i < a.size(); ++i) {
                    a[i] += a[i - static_cast<std::size_t>(c)];
                }
            }
        }
        std::map<long, Int> out;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] != 0) {
                out[lo + static_cast<long>(i)] = a[i];
            }
        }
        return out;
    }

    bool equals(const LVolRat &o) const
    {
        auto den = union_of(m_den, o.m_den);
        return numerator_over(den) == o.numerator_over(den);
    }

    std::string to_string() const
    {
        std::string out = "(" + m_num.to_string() + ")";
        if (m_den.empty()) {
            return out;
        }
        out += " / (";
        bool first = true;
        for (const auto &[c, mult] : m_den) {
            out += first ? "" : "*";
            first = false;
            out += "(1 - L^(-" + std::to_string(c) + "))";
            if (mult > 1) {
                out += "^" + std::to_string(mult);
            }
        }
        return out + ")";
    }

private:
    LPoly m_num;
    std::map<long, int> m_den;
};

} // namespace qomp

#endif
