#ifndef QOMP_GENFUN_HPP
#define QOMP_GENFUN_HPP

#include <map>
#include <vector>

#include "lattice.hpp"
#include "ltseries.hpp"
#include "polyhedra.hpp"

namespace qomp
{

using MonomialSum = std::map<RatVec, Int>;

inline void add_monomial(MonomialSum &s, const RatVec &u, const Int &c)
{
    if (c == 0) {
        return;
    }
    auto [it, inserted] = s.emplace(u, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) {
            s.erase(it);
        }
    }
}

/// sum * (1 - x^v)
inline MonomialSum times_one_minus(const MonomialSum &s, const RatVec &v)
{
    MonomialSum out = s;
    for (const auto &[u, c] : s) {
        add_monomial(out, u + v, -c);
    }
    return out;
}

/// numerator / prod over rays (1 - x^ray); rays are primitive points of N.
struct ConeSeries {
    MonomialSum numerator;
    std::vector<RatVec> rays;
};

/// Lattice points of the half-open fundamental parallelepiped of a simplicial
/// piece, divided by its rays.
inline ConeSeries closed_cone_series(const SimplicialPiece &piece, const Lattice &n)
{
    const Cone &c = piece.cone;
    if (!c.is_simplicial()) {
        throw Error(ErrorCode::NotSimplicial, c.to_string() + " is not simplicial");
    }
    ConeSeries out;
    const std::size_t k = c.rays().size();
    const std::size_t d = c.ambient_dim();
    if (k == 0) {
        out.numerator[RatVec(d, Rat(0))] = 1;
        return out;
    }
    for (const auto &r : c.rays()) {
        out.rays.push_back(primitive_in(r, n));
    }
    // Ray coordinates in the basis of N.
    IntMat v(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (const auto &x : n.coordinates(out.rays[i])) {
            v[i].push_back(x.get_num());
        }
    }
    // Basis of N ∩ span(rays), in N-coordinates.
    IntMat kernel = right_kernel(v, d);
    IntMat sat = kernel.empty() ? detail::identity(d) : left_kernel(transpose(kernel));
    std::vector<std::size_t> piv;
    for (const auto &row : sat) {
        std::size_t j = 0;
        while (row[j] == 0) {
            ++j;
        }
        piv.push_back(j);
    }
    // v = coeff * sat
    IntMat coeff(k, IntVec(k, Int(0)));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            Int acc = v[i][piv[j]];
            for (std::size_t l = 0; l < j; ++l) {
                acc -= coeff[i][l] * sat[l][piv[j]];
            }
            if (acc % sat[j][piv[j]] != 0) {
                throw Error(ErrorCode::InternalInconsistency, "ray outside its saturated span");
            }
            coeff[i][j] = acc / sat[j][piv[j]];
        }
    }
    const IntMat h = row_hermite(coeff).h;
    RatMat coeff_q(k);
    for (std::size_t i = 0; i < k; ++i) {
        coeff_q[i] = to_rat(coeff[i]);
    }
    const RatMat inv = inverse(coeff_q);
    IntVec y(k, Int(0));
    while (true) {
        RatVec t = mul(to_rat(y), inv);
        RatVec point(d, Rat(0));
        for (std::size_t i = 0; i < k; ++i) {
            Rat frac = t[i] - Rat(floor_rat(t[i]));
            if (frac == 0 && piece.open[i]) {
                frac = 1;
            }
            if (frac != 0) {
                point = point + frac * out.rays[i];
            }
        }
        add_monomial(out.numerator, point, 1);
        std::size_t j = 0;
        while (j < k) {
            if (++y[j] < h[j][j]) {
                break;
            }
            y[j] = 0;
            ++j;
        }
        if (j == k) {
            break;
        }
    }
    return out;
}

/// Closed cone series over all half-open pieces, normalized onto the rays of c.
inline MonomialSum closed_numerator_over(const Cone &face, const Cone &c, const Lattice &n)
{
    MonomialSum total;
    for (const auto &piece : triangulate(face)) {
        ConeSeries cs = closed_cone_series(piece, n);
        MonomialSum num = cs.numerator;
        for (const auto &r : c.rays()) {
            if (!std::binary_search(piece.cone.rays().begin(), piece.cone.rays().end(), r)) {
                num = times_one_minus(num, primitive_in(r, n));
            }
        }
        for (const auto &[u, x] : num) {
            add_monomial(total, u, x);
        }
    }
    return total;
}

inline ConeSeries closed_cone_series(const Cone &c, const Lattice &n)
{
    ConeSeries out;
    for (const auto &r : c.rays()) {
        out.rays.push_back(primitive_in(r, n));
    }
    out.numerator = closed_numerator_over(c, c, n);
    return out;
}

/// Sum over relint(c) ∩ N via inclusion-exclusion over the faces of c.
inline ConeSeries relint_cone_series(const Cone &c, const Lattice &n)
{
    ConeSeries out;
    for (const auto &r : c.rays()) {
        out.rays.push_back(primitive_in(r, n));
    }
    for (const auto &face : c.faces()) {
        const bool negative = (c.dim() - face.dim()) % 2 == 1;
        for (const auto &[u, x] : closed_numerator_over(face, c, n)) {
            add_monomial(out.numerator, u, negative ? Int(-x) : x);
        }
    }
    return out;
}

/// x^u -> L^{<u,a>} T^{<u,b>}.
inline BivRat substitute_LT(const ConeSeries &cs, const RatVec &a, const RatVec &b)
{
    LTPoly num;
    for (const auto &[u, c] : cs.numerator) {
        const long ta = to_long(dot(u, a));
        const long tb = to_long(dot(u, b));
        if (tb < 0) {
            throw Error(ErrorCode::InvalidSubstitution, "negative T exponent at " + to_string(u));
        }
        num.add_term(tb, ta, c);
    }
    std::vector<LTFactor> den;
    for (const auto &r : cs.rays) {
        const long fa = to_long(dot(r, a));
        const long fb = to_long(dot(r, b));
        if (fb < 0 || (fa == 0 && fb == 0)) {
            throw Error(ErrorCode::InvalidSubstitution,
                        "ray " + to_string(r) + " maps to (" + std::to_string(fa) + "," + std::to_string(fb) + ")");
        }
        den.push_back({fa, fb});
    }
    return BivRat::with_factors(num, den);
}

/// x^u -> L^{<u,a>}; every ray must map to a negative exponent.
inline LVolRat substitute_L(const ConeSeries &cs, const RatVec &a)
{
    LPoly num;
    for (const auto &[u, c] : cs.numerator) {
        num.add_term(to_long(dot(u, a)), c);
    }
    std::map<long, int> den;
    for (const auto &r : cs.rays) {
        const long e = to_long(dot(r, a));
        if (e >= 0) {
            throw Error(ErrorCode::InvalidSubstitution, "ray " + to_string(r) + " maps to L^" + std::to_string(e));
        }
        ++den[-e];
    }
    return LVolRat(num, den);
}

/// Coefficients of the expansion of a cone series restricted to the box
/// 0 <= x_i <= bound (all rays have nonnegative coordinates).
inline MonomialSum expand_in_box(const ConeSeries &cs, const Rat &bound)
{
    MonomialSum out;
    auto inside = [&](const RatVec &p) {
        for (const auto &x : p) {
            if (x > bound) {
                return false;
            }
        }
        return true;
    };
    for (const auto &[u, c] : cs.numerator) {
        std::function<void(std::size_t, const RatVec &)> walk = [&](std::size_t i, const RatVec &p) {
            if (!inside(p)) {
                return;
            }
            if (i == cs.rays.size()) {
                add_monomial(out, p, c);
                return;
            }
            RatVec q = p;
            while (inside(q)) {
                walk(i + 1, q);
                q = q + cs.rays[i];
            }
        };
        walk(0, u);
    }
    return out;
}

} // namespace qomp

#endif
