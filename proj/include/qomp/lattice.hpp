#ifndef QOMP_LATTICE_HPP
#define QOMP_LATTICE_HPP

#include <string>
#include <vector>

#include "arith.hpp"

namespace qomp
{

/// A full-rank subgroup of Q^d, stored as (1/scale) * H with H an integer
/// matrix in row Hermite normal form and gcd(scale, entries of H) = 1.
/// Structural equality is lattice equality.
class Lattice
{
public:
    Lattice() = default;

    static Lattice from_generators(const std::vector<RatVec> &gens, std::size_t dim)
    {
        RatMat m;
        for (const auto &g : gens) {
            if (g.size() != dim) {
                throw Error(ErrorCode::InvalidInput, "generator of length " + std::to_string(g.size()) +
                                                         " in dimension " + std::to_string(dim));
            }
            m.push_back(g);
        }
        auto [ints, den] = clear_denominators(m);
        auto h = ints.empty() ? IntMat{} : row_hermite(ints).h;
        if (h.size() < dim) {
            throw Error(ErrorCode::RankDeficient,
                        "generators span rank " + std::to_string(h.size()) + " < " + std::to_string(dim));
        }
        return Lattice(dim, std::move(h), den);
    }

    static Lattice standard(std::size_t dim)
    {
        std::vector<RatVec> gens;
        for (std::size_t i = 0; i < dim; ++i) {
            gens.push_back(unit_vector(dim, i));
        }
        return from_generators(gens, dim);
    }

    std::size_t dim() const
    {
        return m_dim;
    }
    const Int &scale() const
    {
        return m_scale;
    }
    const IntMat &hermite() const
    {
        return m_h;
    }

    RatMat basis() const
    {
        RatMat b(m_dim, RatVec(m_dim));
        for (std::size_t i = 0; i < m_dim; ++i) {
            for (std::size_t j = 0; j < m_dim; ++j) {
                b[i][j] = make_rat(m_h[i][j], m_scale);
            }
        }
        return b;
    }

    /// Covolume |det(basis)|.
    Rat covolume() const
    {
        Int p = 1;
        for (std::size_t i = 0; i < m_dim; ++i) {
            p *= m_h[i][i];
        }
        Int s = 1;
        for (std::size_t i = 0; i < m_dim; ++i) {
            s *= m_scale;
        }
        return make_rat(p, s);
    }

    /// Coordinates x with x * basis = v (rational in general).
    RatVec coordinates(const RatVec &v) const
    {
        RatVec x(m_dim);
        RatVec rest = v;
        for (std::size_t i = 0; i < m_dim; ++i) {
            const Rat piv = make_rat(m_h[i][i], m_scale);
            x[i] = rest[i] / piv;
            if (x[i] != 0) {
                for (std::size_t j = i; j < m_dim; ++j) {
                    rest[j] -= x[i] * make_rat(m_h[i][j], m_scale);
                }
            }
        }
        return x;
    }

    bool contains(const RatVec &v) const
    {
        if (v.size() != m_dim) {
            return false;
        }
        for (const auto &c : coordinates(v)) {
            if (!is_integer(c)) {
                return false;
            }
        }
        return true;
    }

    bool contains(const Lattice &sub) const
    {
        for (const auto &row : sub.basis()) {
            if (!contains(row)) {
                return false;
            }
        }
        return true;
    }

    Lattice dual() const
    {
        const RatMat inv_t = transpose(inverse(basis()));
        return from_generators(inv_t, m_dim);
    }

    Lattice operator+(const Lattice &o) const
    {
        RatMat gens = basis();
        for (const auto &r : o.basis()) {
            gens.push_back(r);
        }
        return from_generators(gens, m_dim);
    }

    /// L ∩ span{e_i : i in keep}, expressed in the |keep|-dimensional frame.
    Lattice intersect_coordinate_subspace(const std::vector<std::size_t> &keep) const
    {
        std::vector<bool> kept(m_dim, false);
        for (auto i : keep) {
            kept.at(i) = true;
        }
        IntMat restricted(m_dim);
        for (std::size_t i = 0; i < m_dim; ++i) {
            for (std::size_t j = 0; j < m_dim; ++j) {
                if (!kept[j]) {
                    restricted[i].push_back(m_h[i][j]);
                }
            }
        }
        IntMat combos;
        if (restricted.empty() || restricted[0].empty()) {
            for (std::size_t i = 0; i < m_dim; ++i) {
                IntVec e(m_dim, Int(0));
                e[i] = 1;
                combos.push_back(e);
            }
        } else {
            combos = left_kernel(restricted);
        }
        std::vector<RatVec> gens;
        for (const auto &x : combos) {
            RatVec v(keep.size(), Rat(0));
            for (std::size_t a = 0; a < keep.size(); ++a) {
                Int acc = 0;
                for (std::size_t i = 0; i < m_dim; ++i) {
                    acc += x[i] * m_h[i][keep[a]];
                }
                v[a] = make_rat(acc, m_scale);
            }
            gens.push_back(v);
        }
        return from_generators(gens, keep.size());
    }

    bool operator==(const Lattice &o) const
    {
        return m_dim == o.m_dim && m_scale == o.m_scale && m_h == o.m_h;
    }
    bool operator!=(const Lattice &o) const
    {
        return !(*this == o);
    }

    std::string to_string() const
    {
        std::string out = "[";
        for (const auto &row : basis()) {
            out += (out.size() > 1 ? "; " : "") + qomp::to_string(row);
        }
        return out + "]";
    }

private:
    Lattice(std::size_t dim, IntMat h, Int scale) : m_dim(dim), m_h(std::move(h)), m_scale(std::move(scale))
    {
        Int g = m_scale;
        for (const auto &row : m_h) {
            for (const auto &x : row) {
                g = gcd(g, x);
            }
        }
        if (g > 1) {
            m_scale /= g;
            for (auto &row : m_h) {
                for (auto &x : row) {
                    x /= g;
                }
            }
        }
    }

    std::size_t m_dim = 0;
    IntMat m_h;
    Int m_scale = 1;
};

inline Lattice lattice_from_generators(const std::vector<RatVec> &gens, std::size_t dim)
{
    return Lattice::from_generators(gens, dim);
}

inline Lattice dual_lattice(const Lattice &l)
{
    return l.dual();
}

inline bool member(const Lattice &l, const RatVec &v)
{
    return l.contains(v);
}

/// [super : sub].
inline Int lattice_index(const Lattice &sub, const Lattice &super)
{
    if (sub.dim() != super.dim() || !super.contains(sub)) {
        throw Error(ErrorCode::NotSublattice, "lattice " + sub.to_string() + " is not contained in " +
                                                  super.to_string());
    }
    const Rat r = sub.covolume() / super.covolume();
    return r.get_num();
}

inline Lattice intersect_coordinate_subspace(const Lattice &l, const std::vector<std::size_t> &keep)
{
    return l.intersect_coordinate_subspace(keep);
}

} // namespace qomp

#endif
