#ifndef QOMP_POLYHEDRA_HPP
#define QOMP_POLYHEDRA_HPP

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "arith.hpp"
#include "lattice.hpp"

namespace qomp
{

namespace detail
{

/// Calls f on every k-subset of {0..n-1} (as a sorted index vector).
inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t> &)> &f)
{
    if (k > n) {
        return;
    }
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) {
        idx[i] = i;
    }
    while (true) {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) {
            --i;
        }
        if (i == 0) {
            return;
        }
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

inline IntMat identity(std::size_t d)
{
    IntMat id(d, IntVec(d, Int(0)));
    for (std::size_t i = 0; i < d; ++i) {
        id[i][i] = 1;
    }
    return id;
}

} // namespace detail

/// Strictly convex rational cone inside σ = R^d_{>=0}. Rays are primitive
/// integer directions in lexicographic order; `eqs` cut out the linear span
/// and `facets` are inward normals lying in that span.
class Cone
{
public:
    Cone() = default;

    static Cone from_rays(std::size_t d, IntMat rays)
    {
        Cone c;
        c.m_d = d;
        for (auto &r : rays) {
            if (r.size() != d) {
                throw Error(ErrorCode::InvalidInput, "ray of wrong length");
            }
            if (is_zero(r)) {
                continue;
            }
            r = primitive_integer(r);
        }
        rays.erase(std::remove_if(rays.begin(), rays.end(), [](const IntVec &r) { return is_zero(r); }), rays.end());
        std::sort(rays.begin(), rays.end());
        rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
        c.m_rays = std::move(rays);
        c.compute_hrep();
        c.drop_redundant_rays();
        return c;
    }

    /// {x : ineqs x >= 0, eqs x = 0}; the caller is responsible for pointedness.
    static Cone from_inequalities(std::size_t d, const IntMat &ineqs, const IntMat &eqs)
    {
        IntMat e = eqs.empty() ? IntMat{} : row_hermite(eqs).h;
        const std::size_t r = e.size();
        IntMat rays;
        if (r < d) {
            const std::size_t need = d - 1 - r;
            detail::for_each_subset(ineqs.size(), need, [&](const std::vector<std::size_t> &sub) {
                IntMat m = e;
                for (auto i : sub) {
                    m.push_back(ineqs[i]);
                }
                IntMat ker = right_kernel(m, d);
                if (ker.size() != 1) {
                    return;
                }
                IntVec v = ker[0];
                int sign = 0;
                for (const auto &a : ineqs) {
                    const Int p = dot_int(a, v);
                    if (p == 0) {
                        continue;
                    }
                    const int s = p > 0 ? 1 : -1;
                    if (sign == 0) {
                        sign = s;
                    } else if (sign != s) {
                        return;
                    }
                }
                if (sign < 0) {
                    for (auto &x : v) {
                        x = -x;
                    }
                }
                if (sign == 0) {
                    // Lineality inside the constraints: only possible for non-pointed input.
                    throw Error(ErrorCode::InternalInconsistency, "cone is not pointed");
                }
                rays.push_back(v);
            });
        }
        return from_rays(d, rays);
    }

    std::size_t ambient_dim() const
    {
        return m_d;
    }
    std::size_t dim() const
    {
        return m_dim;
    }
    const IntMat &rays() const
    {
        return m_rays;
    }
    const IntMat &equations() const
    {
        return m_eqs;
    }
    const IntMat &facet_normals() const
    {
        return m_facets;
    }
    const std::vector<std::vector<std::size_t>> &facet_rays() const
    {
        return m_facet_rays;
    }
    bool is_simplicial() const
    {
        return m_rays.size() == m_dim;
    }

    bool contains(const RatVec &v) const
    {
        for (const auto &e : m_eqs) {
            if (dot(e, v) != 0) {
                return false;
            }
        }
        for (const auto &n : m_facets) {
            if (dot(n, v) < 0) {
                return false;
            }
        }
        return true;
    }

    bool relint_contains(const RatVec &v) const
    {
        for (const auto &e : m_eqs) {
            if (dot(e, v) != 0) {
                return false;
            }
        }
        for (const auto &n : m_facets) {
            if (dot(n, v) <= 0) {
                return false;
            }
        }
        return true;
    }

    /// Sum of the rays: a relative-interior point.
    IntVec relint_point() const
    {
        IntVec s(m_d, Int(0));
        for (const auto &r : m_rays) {
            for (std::size_t i = 0; i < m_d; ++i) {
                s[i] += r[i];
            }
        }
        return s;
    }

    bool relint_in_interior() const
    {
        if (m_rays.empty()) {
            return false;
        }
        const IntVec p = relint_point();
        return std::all_of(p.begin(), p.end(), [](const Int &x) { return x > 0; });
    }

    /// Whether `other` is a subset of this cone.
    bool contains(const Cone &other) const
    {
        for (const auto &r : other.rays()) {
            if (!contains(to_rat(r))) {
                return false;
            }
        }
        return true;
    }

    Cone intersect(const Cone &o) const
    {
        IntMat ineqs = m_facets;
        ineqs.insert(ineqs.end(), o.m_facets.begin(), o.m_facets.end());
        for (const auto &row : detail::identity(m_d)) {
            ineqs.push_back(row);
        }
        IntMat eqs = m_eqs;
        eqs.insert(eqs.end(), o.m_eqs.begin(), o.m_eqs.end());
        std::sort(ineqs.begin(), ineqs.end());
        ineqs.erase(std::unique(ineqs.begin(), ineqs.end()), ineqs.end());
        return from_inequalities(m_d, ineqs, eqs);
    }

    Cone face(const std::vector<std::size_t> &ray_indices) const
    {
        IntMat r;
        for (auto i : ray_indices) {
            r.push_back(m_rays[i]);
        }
        return from_rays(m_d, r);
    }

    /// All faces, the cone itself and the zero cone included.
    std::vector<Cone> faces() const
    {
        std::set<std::vector<std::size_t>> seen;
        std::vector<std::size_t> all(m_rays.size());
        for (std::size_t i = 0; i < all.size(); ++i) {
            all[i] = i;
        }
        std::deque<std::vector<std::size_t>> queue{all};
        seen.insert(all);
        while (!queue.empty()) {
            auto f = queue.front();
            queue.pop_front();
            for (const auto &fr : m_facet_rays) {
                std::vector<std::size_t> g;
                std::set_intersection(f.begin(), f.end(), fr.begin(), fr.end(), std::back_inserter(g));
                if (seen.insert(g).second) {
                    queue.push_back(g);
                }
            }
        }
        std::vector<Cone> out;
        for (const auto &s : seen) {
            out.push_back(face(s));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    bool operator==(const Cone &o) const
    {
        return m_d == o.m_d && m_rays == o.m_rays;
    }
    bool operator<(const Cone &o) const
    {
        if (m_dim != o.m_dim) {
            return m_dim < o.m_dim;
        }
        return m_rays < o.m_rays;
    }

    std::string to_string() const
    {
        std::string out = "cone{";
        for (std::size_t i = 0; i < m_rays.size(); ++i) {
            out += (i ? "," : "") + qomp::to_string(m_rays[i]);
        }
        return out + "}";
    }

private:
    void compute_hrep()
    {
        m_eqs = m_rays.empty() ? detail::identity(m_d) : right_kernel(m_rays, m_d);
        m_dim = m_d - m_eqs.size();
        m_facets.clear();
        m_facet_rays.clear();
        if (m_dim == 0) {
            return;
        }
        std::map<std::vector<std::size_t>, IntVec> found;
        detail::for_each_subset(m_rays.size(), m_dim - 1, [&](const std::vector<std::size_t> &sub) {
            IntMat m = m_eqs;
            for (auto i : sub) {
                m.push_back(m_rays[i]);
            }
            IntMat ker = right_kernel(m, m_d);
            if (ker.size() != 1) {
                return;
            }
            IntVec n = ker[0];
            int sign = 0;
            std::vector<std::size_t> zeros;
            for (std::size_t i = 0; i < m_rays.size(); ++i) {
                const Int p = dot_int(n, m_rays[i]);
                if (p == 0) {
                    zeros.push_back(i);
                    continue;
                }
                const int s = p > 0 ? 1 : -1;
                if (sign == 0) {
                    sign = s;
                } else if (sign != s) {
                    return;
                }
            }
            if (sign < 0) {
                for (auto &x : n) {
                    x = -x;
                }
            }
            found.emplace(zeros, n);
        });
        for (auto &[zeros, n] : found) {
            m_facet_rays.push_back(zeros);
            m_facets.push_back(n);
        }
    }

    void drop_redundant_rays()
    {
        if (m_dim <= 1) {
            if (m_dim == 1 && m_rays.size() > 1) {
                m_rays.resize(1);
                compute_hrep();
            }
            return;
        }
        IntMat keep;
        for (std::size_t i = 0; i < m_rays.size(); ++i) {
            IntMat tight = m_eqs;
            for (std::size_t f = 0; f < m_facets.size(); ++f) {
                const auto &fr = m_facet_rays[f];
                if (std::binary_search(fr.begin(), fr.end(), i)) {
                    tight.push_back(m_facets[f]);
                }
            }
            if (rank(tight) == m_d - 1) {
                keep.push_back(m_rays[i]);
            }
        }
        if (keep.size() != m_rays.size()) {
            m_rays = keep;
            compute_hrep();
        }
    }

    std::size_t m_d = 0;
    std::size_t m_dim = 0;
    IntMat m_rays;
    IntMat m_eqs;
    IntMat m_facets;
    std::vector<std::vector<std::size_t>> m_facet_rays;
};

inline Cone orthant(std::size_t d)
{
    return Cone::from_rays(d, detail::identity(d));
}

/// A fan on σ stored with every face of every cone.
class Fan
{
public:
    Fan() = default;

    static Fan from_maximal(std::size_t d, const std::vector<Cone> &maximal)
    {
        Fan f;
        f.m_d = d;
        std::set<Cone> all;
        std::set<Cone> maxset(maximal.begin(), maximal.end());
        for (const auto &c : maxset) {
            for (auto &face : c.faces()) {
                all.insert(face);
            }
        }
        f.m_cones.assign(all.begin(), all.end());
        f.m_maximal.assign(maxset.begin(), maxset.end());
        return f;
    }

    std::size_t ambient_dim() const
    {
        return m_d;
    }
    const std::vector<Cone> &cones() const
    {
        return m_cones;
    }
    const std::vector<Cone> &maximal() const
    {
        return m_maximal;
    }

    std::vector<Cone> cones_of_dim(std::size_t k) const
    {
        std::vector<Cone> out;
        for (const auto &c : m_cones) {
            if (c.dim() == k) {
                out.push_back(c);
            }
        }
        return out;
    }

    IntMat rays() const
    {
        IntMat out;
        for (const auto &c : m_cones) {
            if (c.dim() == 1) {
                out.push_back(c.rays()[0]);
            }
        }
        return out;
    }

    /// The cone whose relative interior contains v (v in σ).
    const Cone &locate(const RatVec &v) const
    {
        for (const auto &c : m_cones) {
            if (c.relint_contains(v)) {
                return c;
            }
        }
        throw Error(ErrorCode::InternalInconsistency, "point " + to_string(v) + " is not covered by the fan");
    }

    bool operator==(const Fan &o) const
    {
        return m_d == o.m_d && m_cones == o.m_cones;
    }

private:
    std::size_t m_d = 0;
    std::vector<Cone> m_cones;
    std::vector<Cone> m_maximal;
};

/// Generators of a monomial ideal, i.e. the vertices-and-more of its Newton
/// polyhedron conv(gens) + σ^∨.
struct NewtonData {
    std::vector<RatVec> generators;

    NewtonData() = default;
    explicit NewtonData(std::vector<RatVec> gens) : generators(std::move(gens))
    {
        std::sort(generators.begin(), generators.end());
        generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    }
};

inline Rat support_value(const NewtonData &nd, const RatVec &nu)
{
    if (nd.generators.empty()) {
        throw Error(ErrorCode::EmptyGenerators, "support function of an empty generator set");
    }
    Rat best = dot(nu, nd.generators[0]);
    for (std::size_t i = 1; i < nd.generators.size(); ++i) {
        best = std::min(best, dot(nu, nd.generators[i]));
    }
    return best;
}

/// Indices of the generators attaining the minimum.
inline std::vector<std::size_t> min_generators(const NewtonData &nd, const RatVec &nu)
{
    const Rat v = support_value(nd, nu);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nd.generators.size(); ++i) {
        if (dot(nu, nd.generators[i]) == v) {
            out.push_back(i);
        }
    }
    return out;
}

inline Fan dual_fan(const NewtonData &nd, std::size_t d)
{
    if (nd.generators.empty()) {
        throw Error(ErrorCode::EmptyGenerators, "dual fan of an empty generator set");
    }
    std::vector<Cone> maximal;
    for (std::size_t g = 0; g < nd.generators.size(); ++g) {
        IntMat ineqs = detail::identity(d);
        for (std::size_t h = 0; h < nd.generators.size(); ++h) {
            if (h != g) {
                IntVec diff = primitive_integer(nd.generators[h] - nd.generators[g]);
                if (!is_zero(diff)) {
                    ineqs.push_back(diff);
                }
            }
        }
        std::sort(ineqs.begin(), ineqs.end());
        ineqs.erase(std::unique(ineqs.begin(), ineqs.end()), ineqs.end());
        Cone c = Cone::from_inequalities(d, ineqs, {});
        if (c.dim() == d) {
            maximal.push_back(c);
        }
    }
    return Fan::from_maximal(d, maximal);
}

inline Fan refine(const std::vector<Fan> &fans)
{
    if (fans.empty()) {
        throw Error(ErrorCode::InvalidInput, "refine of an empty list");
    }
    const std::size_t d = fans[0].ambient_dim();
    std::vector<Cone> current = fans[0].maximal();
    for (std::size_t i = 1; i < fans.size(); ++i) {
        std::set<Cone> next;
        for (const auto &a : current) {
            for (const auto &b : fans[i].maximal()) {
                Cone c = a.intersect(b);
                if (c.dim() == d) {
                    next.insert(c);
                }
            }
        }
        current.assign(next.begin(), next.end());
    }
    return Fan::from_maximal(d, current);
}

/// Shortest nonzero point of N on the ray through `dir`.
inline RatVec primitive_in(const RatVec &dir, const Lattice &n)
{
    if (is_zero(dir)) {
        throw Error(ErrorCode::InvalidInput, "zero ray direction");
    }
    const RatVec x = n.coordinates(dir);
    const IntVec y = primitive_integer(x);
    return mul(to_rat(y), n.basis());
}

inline RatVec primitive_in(const IntVec &dir, const Lattice &n)
{
    return primitive_in(to_rat(dir), n);
}

inline bool relint_contains(const Cone &c, const RatVec &v)
{
    return c.relint_contains(v);
}

inline bool relint_in_interior(const Cone &c)
{
    return c.relint_in_interior();
}

/// A simplicial piece of a half-open decomposition. open[i] marks the facet
/// opposite rays[i] as excluded.
struct SimplicialPiece {
    Cone cone;
    std::vector<bool> open;
};

namespace detail
{

inline std::vector<IntMat> pulling(const Cone &c)
{
    if (c.is_simplicial()) {
        return {c.rays()};
    }
    const IntVec &apex = c.rays().front();
    std::vector<IntMat> out;
    for (std::size_t f = 0; f < c.facet_rays().size(); ++f) {
        const auto &fr = c.facet_rays()[f];
        if (std::binary_search(fr.begin(), fr.end(), std::size_t{0})) {
            continue;
        }
        for (auto simplex : pulling(c.face(fr))) {
            simplex.push_back(apex);
            out.push_back(simplex);
        }
    }
    return out;
}

/// Normal, inside the span of the cone, of the facet opposite ray i;
/// oriented to be positive on ray i.
inline IntVec opposite_normal(const Cone &simplex, std::size_t i)
{
    IntMat m = simplex.equations();
    for (std::size_t j = 0; j < simplex.rays().size(); ++j) {
        if (j != i) {
            m.push_back(simplex.rays()[j]);
        }
    }
    IntMat ker = right_kernel(m, simplex.ambient_dim());
    if (ker.size() != 1) {
        throw Error(ErrorCode::NotSimplicial, "degenerate simplicial cone");
    }
    IntVec n = ker[0];
    if (dot_int(n, simplex.rays()[i]) < 0) {
        for (auto &x : n) {
            x = -x;
        }
    }
    return n;
}

} // namespace detail

/// Pulling triangulation from the lexicographically least ray, made half-open
/// with respect to a generic interior point so pieces are disjoint.
inline std::vector<SimplicialPiece> triangulate(const Cone &c)
{
    std::vector<Cone> simplices;
    for (const auto &rays : detail::pulling(c)) {
        simplices.push_back(Cone::from_rays(c.ambient_dim(), rays));
    }
    if (simplices.size() == 1) {
        return {{simplices[0], std::vector<bool>(simplices[0].rays().size(), false)}};
    }
    for (long attempt = 0;; ++attempt) {
        IntVec q(c.ambient_dim(), Int(0));
        for (std::size_t i = 0; i < c.rays().size(); ++i) {
            const long w = attempt == 0 ? 1 + static_cast<long>(i) : 1 + (static_cast<long>(i) * 7919 + attempt * 104729) % 101;
            for (std::size_t j = 0; j < q.size(); ++j) {
                q[j] += w * c.rays()[i][j];
            }
        }
        std::vector<SimplicialPiece> out;
        bool generic = true;
        for (const auto &s : simplices) {
            SimplicialPiece p{s, std::vector<bool>(s.rays().size(), false)};
            for (std::size_t i = 0; i < s.rays().size() && generic; ++i) {
                const Int v = dot_int(detail::opposite_normal(s, i), q);
                if (v == 0) {
                    generic = false;
                }
                p.open[i] = v < 0;
            }
            if (!generic) {
                break;
            }
            out.push_back(std::move(p));
        }
        if (generic) {
            return out;
        }
        if (attempt > 1000) {
            throw Error(ErrorCode::InternalInconsistency, "no generic point for half-open decomposition");
        }
    }
}

} // namespace qomp

#endif
