#ifndef QOMP_QOCORE_HPP
#define QOMP_QOCORE_HPP

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lattice.hpp"
#include "polyhedra.hpp"

namespace qomp
{

enum class Mode { qo, toric };
enum class SectionLattice { ambient, branch };

/// Combinatorial input. In qo mode `exponents` are the characteristic
/// exponents; in toric mode they are semigroup generators.
struct CharData {
    Mode mode = Mode::qo;
    std::size_t d = 0;
    std::vector<RatVec> exponents;
    std::optional<Lattice> lattice_M;
};

struct LatticeChain {
    std::vector<Lattice> chain; // M_0 .. M_g (qo), or just M (toric)
    std::vector<Int> indices;   // n_1 .. n_g
    Lattice M;
    Lattice N;
};

struct Validated {
    CharData data;                     // coordinates permuted, lattice_M set
    std::vector<std::size_t> permutation; // coordinate i here is input coordinate permutation[i]
    LatticeChain lattices;
    std::vector<std::string> warnings;
};

namespace detail
{

inline bool leq_componentwise(const RatVec &a, const RatVec &b)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) {
            return false;
        }
    }
    return true;
}

inline std::vector<RatVec> unit_vectors(std::size_t d)
{
    std::vector<RatVec> out;
    for (std::size_t i = 0; i < d; ++i) {
        out.push_back(unit_vector(d, i));
    }
    return out;
}

inline Lattice adjoin(const Lattice &l, const RatVec &v)
{
    RatMat gens = l.basis();
    gens.push_back(v);
    return Lattice::from_generators(gens, l.dim());
}

inline bool independent(const std::vector<RatVec> &vs)
{
    return rank(RatMat(vs.begin(), vs.end())) == vs.size();
}

} // namespace detail

/// Checks the input and builds the lattice chain. `derived` marks data coming
/// from a coordinate section, where a non-normalized branch is only a warning.
inline Validated validate(const CharData &cd, bool derived = false)
{
    if (cd.d < 1) {
        throw Error(ErrorCode::InvalidInput, "dimension must be at least 1");
    }
    for (std::size_t j = 0; j < cd.exponents.size(); ++j) {
        const auto &v = cd.exponents[j];
        if (v.size() != cd.d) {
            throw Error(ErrorCode::InvalidInput, "vector " + std::to_string(j + 1) + " has length " +
                                                     std::to_string(v.size()) + ", expected " + std::to_string(cd.d));
        }
        for (const auto &x : v) {
            if (x < 0) {
                throw Error(ErrorCode::InvalidInput, "vector " + std::to_string(j + 1) + " = " + to_string(v) +
                                                         " has a negative entry");
            }
        }
    }
    Validated out;
    out.data = cd;
    out.permutation.resize(cd.d);
    std::iota(out.permutation.begin(), out.permutation.end(), 0);
    const std::size_t d = cd.d;

    if (cd.mode == Mode::toric) {
        std::vector<RatVec> gens;
        for (const auto &v : cd.exponents) {
            if (is_zero(v)) {
                throw Error(ErrorCode::InvalidInput, "zero semigroup generator");
            }
            gens.push_back(v);
        }
        std::sort(gens.begin(), gens.end());
        gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
        for (std::size_t i = 0; i < d; ++i) {
            bool found = false;
            for (const auto &v : gens) {
                bool on_axis = v[i] > 0;
                for (std::size_t j = 0; j < d && on_axis; ++j) {
                    on_axis = j == i || v[j] == 0;
                }
                found = found || on_axis;
            }
            if (!found) {
                throw Error(ErrorCode::InvalidInput, "no generator on coordinate axis " + std::to_string(i + 1));
            }
        }
        out.data.exponents = gens;
        const Lattice zg = Lattice::from_generators(gens, d);
        Lattice m = cd.lattice_M ? *cd.lattice_M : zg;
        if (!m.contains(zg)) {
            throw Error(ErrorCode::NotSublattice, "generators do not lie in the supplied lattice");
        }
        out.data.lattice_M = m;
        out.lattices.chain = {m};
        out.lattices.M = m;
        out.lattices.N = m.dual();
        return out;
    }

    // Relabel coordinates so that the columns are lexicographically decreasing.
    const auto &lam = cd.exponents;
    std::stable_sort(out.permutation.begin(), out.permutation.end(), [&](std::size_t a, std::size_t b) {
        for (const auto &l : lam) {
            if (l[a] != l[b]) {
                return l[a] > l[b];
            }
        }
        return false;
    });
    std::vector<RatVec> perm;
    for (const auto &l : lam) {
        RatVec p(d);
        for (std::size_t i = 0; i < d; ++i) {
            p[i] = l[out.permutation[i]];
        }
        perm.push_back(p);
    }
    if (cd.lattice_M) {
        std::vector<RatVec> rows;
        for (const auto &r : cd.lattice_M->basis()) {
            RatVec p(d);
            for (std::size_t i = 0; i < d; ++i) {
                p[i] = r[out.permutation[i]];
            }
            rows.push_back(p);
        }
        out.data.lattice_M = Lattice::from_generators(rows, d);
    }
    out.data.exponents = perm;

    for (std::size_t j = 0; j + 1 < perm.size(); ++j) {
        if (!detail::leq_componentwise(perm[j], perm[j + 1]) || perm[j] == perm[j + 1]) {
            throw Error(ErrorCode::NotMonotone, "exponent " + std::to_string(j + 1) + " = " + to_string(perm[j]) +
                                                    " is not strictly below exponent " + std::to_string(j + 2) +
                                                    " = " + to_string(perm[j + 1]));
        }
    }
    Lattice cur = Lattice::standard(d);
    out.lattices.chain.push_back(cur);
    for (std::size_t j = 0; j < perm.size(); ++j) {
        if (cur.contains(perm[j])) {
            throw Error(ErrorCode::NotCharacteristic, "exponent " + std::to_string(j + 1) + " = " +
                                                          to_string(perm[j]) + " lies in the lattice M_" +
                                                          std::to_string(j));
        }
        Lattice next = detail::adjoin(cur, perm[j]);
        out.lattices.indices.push_back(lattice_index(cur, next));
        out.lattices.chain.push_back(next);
        cur = next;
    }
    if (!perm.empty()) {
        bool shape = perm[0][0] < 1;
        for (std::size_t i = 1; i < d && shape; ++i) {
            shape = perm[0][i] == 0;
        }
        if (shape) {
            const std::string msg = "branch is not normalized: first exponent " + to_string(perm[0]);
            if (!derived) {
                throw Error(ErrorCode::NotNormalized, msg);
            }
            out.warnings.push_back(msg);
        }
    }
    Lattice m = cur;
    if (out.data.lattice_M) {
        if (!out.data.lattice_M->contains(cur)) {
            throw Error(ErrorCode::NotSublattice, "exponents do not lie in the supplied lattice");
        }
        m = *out.data.lattice_M;
    }
    out.data.lattice_M = m;
    out.lattices.M = m;
    out.lattices.N = m.dual();
    return out;
}

/// e_1..e_d followed by λ_1..λ_g (qo), or the semigroup generators (toric).
inline std::vector<RatVec> elements(const CharData &cd)
{
    if (cd.mode == Mode::toric) {
        return cd.exponents;
    }
    std::vector<RatVec> out = detail::unit_vectors(cd.d);
    out.insert(out.end(), cd.exponents.begin(), cd.exponents.end());
    return out;
}

inline NewtonData jacobian_generators(const CharData &cd, std::size_t k)
{
    if (k < 1 || k > cd.d) {
        throw Error(ErrorCode::InvalidInput, "ideal index " + std::to_string(k) + " out of range");
    }
    const auto elems = elements(cd);
    std::vector<RatVec> gens;
    if (cd.mode == Mode::toric) {
        detail::for_each_subset(elems.size(), k, [&](const std::vector<std::size_t> &idx) {
            std::vector<RatVec> vs;
            for (auto i : idx) {
                vs.push_back(elems[i]);
            }
            if (detail::independent(vs)) {
                RatVec s(cd.d, Rat(0));
                for (const auto &v : vs) {
                    s = s + v;
                }
                gens.push_back(s);
            }
        });
        return NewtonData(gens);
    }
    const std::size_t d = cd.d;
    auto add = [&](const std::vector<std::size_t> &idx) {
        std::vector<RatVec> vs;
        for (auto i : idx) {
            vs.push_back(elems[i]);
        }
        if (detail::independent(vs)) {
            RatVec s(d, Rat(0));
            for (const auto &v : vs) {
                s = s + v;
            }
            gens.push_back(s);
        }
    };
    detail::for_each_subset(d, k, add);
    detail::for_each_subset(d, k - 1, [&](const std::vector<std::size_t> &idx) {
        for (std::size_t j = 0; j < cd.exponents.size(); ++j) {
            auto with = idx;
            with.push_back(d + j);
            add(with);
        }
    });
    return NewtonData(gens);
}

/// Jacobian ideals, their dual fans and cumulative refinements.
class LogJacSystem
{
public:
    explicit LogJacSystem(Validated v) : m_v(std::move(v))
    {
        const std::size_t d = m_v.data.d;
        m_elems = elements(m_v.data);
        for (std::size_t k = 1; k <= d; ++k) {
            m_j.push_back(jacobian_generators(m_v.data, k));
            m_sigma.push_back(dual_fan(m_j.back(), d));
            m_cum.push_back(k == 1 ? m_sigma.back() : refine({m_cum.back(), m_sigma.back()}));
        }
    }

    const Validated &validated() const
    {
        return m_v;
    }
    const CharData &data() const
    {
        return m_v.data;
    }
    std::size_t d() const
    {
        return m_v.data.d;
    }
    std::size_t g() const
    {
        return m_v.data.mode == Mode::qo ? m_v.data.exponents.size() : 0;
    }
    const Lattice &M() const
    {
        return m_v.lattices.M;
    }
    const Lattice &N() const
    {
        return m_v.lattices.N;
    }
    const std::vector<RatVec> &elems() const
    {
        return m_elems;
    }
    /// 1-based.
    const NewtonData &J(std::size_t k) const
    {
        return m_j.at(k - 1);
    }
    const Fan &sigma(std::size_t k) const
    {
        return m_sigma.at(k - 1);
    }
    /// ∩_{i<=k} Σ_i
    const Fan &cumulative(std::size_t k) const
    {
        return m_cum.at(k - 1);
    }

    Int ord(std::size_t k, const RatVec &nu) const
    {
        if (k == 0) {
            return 0;
        }
        const Rat v = support_value(J(k), nu);
        if (!is_integer(v)) {
            throw Error(ErrorCode::InternalInconsistency, "non-integral order at " + to_string(nu));
        }
        return v.get_num();
    }
    /// φ_k for 0 <= k <= d; φ_{d+1} is infinite and handled by callers.
    Int phi(std::size_t k, const RatVec &nu) const
    {
        return k == 0 ? Int(0) : Int(ord(k, nu) - ord(k - 1, nu));
    }
    Int psi(std::size_t k, const RatVec &nu) const
    {
        if (k == 0) {
            return 0;
        }
        return Int(k - 1) * ord(k, nu) - Int(k) * ord(k - 1, nu);
    }
    /// All ords 0..d in one pass.
    std::vector<Int> ords(const RatVec &nu) const
    {
        std::vector<Int> out{0};
        for (std::size_t k = 1; k <= d(); ++k) {
            out.push_back(ord(k, nu));
        }
        return out;
    }
    /// The k with φ_k(ν) <= s < φ_{k+1}(ν).
    std::size_t level(const RatVec &nu, const Int &s) const
    {
        const auto o = ords(nu);
        std::size_t k = 0;
        for (std::size_t j = 1; j <= d(); ++j) {
            if (o[j] - o[j - 1] <= s) {
                k = j;
            }
        }
        return k;
    }

private:
    Validated m_v;
    std::vector<RatVec> m_elems;
    std::vector<NewtonData> m_j;
    std::vector<Fan> m_sigma;
    std::vector<Fan> m_cum;
};

/// One step of the minimization algorithm. Index ranges:
/// n in 0..g, m in 0..d, t in 1..g+1, i in 1..d+g (0 if unset).
struct WkStep {
    std::vector<std::size_t> summands; // 0-based element indices, sorted
    RatVec w;
    RatMat ell; // rref basis
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t t = 0;
    std::size_t i = 0;
    char branch = '1'; // how w was reached: '1' first step, 'a' or 'b'
};

struct WkResult {
    std::vector<WkStep> steps;
    const WkStep &at(std::size_t k) const
    {
        return steps.at(k - 1);
    }
};

namespace detail
{

inline RatMat span_of(const std::vector<RatVec> &elems, const std::vector<std::size_t> &idx, std::size_t d)
{
    RatMat m;
    for (auto i : idx) {
        m.push_back(elems[i]);
    }
    if (m.empty()) {
        return {};
    }
    (void)d;
    return rref(m);
}

inline bool in_span(const RatMat &basis, const RatVec &v)
{
    RatMat m = basis;
    m.push_back(v);
    return rank(m) == basis.size();
}

/// Element indices sorted by <ν,.>, coordinates before exponents, then index.
inline std::vector<std::size_t> nu_order(const std::vector<RatVec> &elems, std::size_t d, const RatVec &nu)
{
    std::vector<Rat> val;
    for (const auto &e : elems) {
        val.push_back(dot(nu, e));
    }
    std::vector<std::size_t> idx(elems.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (val[a] != val[b]) {
            return val[a] < val[b];
        }
        if ((a >= d) != (b >= d)) {
            return a < d;
        }
        return a < b;
    });
    return idx;
}

} // namespace detail

inline WkResult wk_algorithm(const LogJacSystem &sys, const RatVec &nu, std::size_t k)
{
    const CharData &cd = sys.data();
    if (cd.mode != Mode::qo) {
        throw Error(ErrorCode::InvalidInput, "the minimization algorithm needs characteristic exponents");
    }
    const std::size_t d = cd.d;
    const std::size_t g = cd.exponents.size();
    if (k < 1 || k > d) {
        throw Error(ErrorCode::InvalidInput, "step " + std::to_string(k) + " out of range");
    }
    for (const auto &x : nu) {
        if (x <= 0) {
            throw Error(ErrorCode::InvalidInput, "weight " + to_string(nu) + " is not interior");
        }
    }
    const auto &elems = sys.elems();
    const auto order = detail::nu_order(elems, d, nu);
    auto value = [&](const std::vector<std::size_t> &s) {
        Rat v = 0;
        for (auto i : s) {
            v += dot(nu, elems[i]);
        }
        return v;
    };
    auto admissible = [&](const std::vector<std::size_t> &s) {
        std::size_t lam = 0;
        std::vector<RatVec> vs;
        for (auto i : s) {
            lam += i >= d ? 1 : 0;
            vs.push_back(elems[i]);
        }
        return lam <= 1 && detail::independent(vs);
    };

    WkResult res;
    std::vector<std::size_t> cur{order[0]};
    char branch = '1';
    for (std::size_t step = 1; step <= k; ++step) {
        WkStep st;
        std::sort(cur.begin(), cur.end());
        st.summands = cur;
        st.branch = branch;
        st.w = RatVec(d, Rat(0));
        for (auto i : cur) {
            st.w = st.w + elems[i];
        }
        if (Rat(sys.ord(step, nu)) != dot(nu, st.w)) {
            throw Error(ErrorCode::InternalInconsistency, "minimization algorithm disagrees with ord_J" +
                                                              std::to_string(step) + " at " + to_string(nu));
        }
        st.ell = detail::span_of(elems, cur, d);
        for (auto i : cur) {
            if (i >= d) {
                st.n = i - d + 1;
            }
        }
        st.t = g + 1;
        for (std::size_t j = 0; j < g; ++j) {
            if (!detail::in_span(st.ell, elems[d + j])) {
                st.t = j + 1;
                break;
            }
        }
        for (std::size_t i = 0; i < d; ++i) {
            if (!std::binary_search(cur.begin(), cur.end(), i) && detail::in_span(st.ell, elems[i])) {
                if (st.m != 0) {
                    throw Error(ErrorCode::InternalInconsistency, "two extra coordinate vectors in the span");
                }
                st.m = i + 1;
            }
        }
        if (step < d) {
            for (auto e : order) {
                if (std::binary_search(cur.begin(), cur.end(), e)) {
                    continue;
                }
                auto with = cur;
                with.push_back(e);
                if (admissible(with)) {
                    st.i = e + 1;
                    break;
                }
            }
            if (st.i == 0) {
                throw Error(ErrorCode::InternalInconsistency, "no admissible extension at step " + std::to_string(step));
            }
        }
        res.steps.push_back(st);
        if (step == k) {
            break;
        }
        std::vector<std::size_t> a = cur;
        a.push_back(st.i - 1);
        branch = 'a';
        if (st.m != 0 && st.n != 0 && st.t <= g) {
            std::vector<std::size_t> b;
            for (auto i : cur) {
                if (i != d + st.n - 1) {
                    b.push_back(i);
                }
            }
            b.push_back(d + st.t - 1);
            b.push_back(st.m - 1);
            if (value(b) < value(a)) {
                a = b;
                branch = 'b';
            }
        }
        cur = a;
    }
    return res;
}

struct EllResult {
    std::size_t k = 0;
    RatMat basis; // rref
};

/// ℓ_ν^s together with the level k of (ν,s).
inline EllResult ell_nu_s(const LogJacSystem &sys, const RatVec &nu, const Int &s)
{
    const std::size_t d = sys.d();
    const std::size_t g = sys.g();
    EllResult out;
    out.k = sys.level(nu, s);
    std::size_t t = 1;
    if (out.k > 0) {
        t = wk_algorithm(sys, nu, out.k).at(out.k).t;
    }
    const auto &elems = sys.elems();
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < d + std::min(t - 1, g); ++j) {
        if (dot(nu, elems[j]) <= Rat(s)) {
            idx.push_back(j);
        }
    }
    out.basis = detail::span_of(elems, idx, d);
    return out;
}

/// p(k) for (ν,s) in A_k; -1 when k = 0.
inline long p_index(const LogJacSystem &sys, const RatVec &nu, const Int &s)
{
    const std::size_t k = sys.level(nu, s);
    if (k == 0) {
        return -1;
    }
    const std::size_t d = sys.d();
    const auto &elems = sys.elems();
    const WkStep st = wk_algorithm(sys, nu, k).at(k);
    if (st.n == 0) {
        long p = 0;
        for (std::size_t j = 1; j <= sys.g(); ++j) {
            if (dot(nu, elems[d + j - 1]) <= Rat(s)) {
                p = static_cast<long>(j);
            }
        }
        return p;
    }
    long p = static_cast<long>(st.n);
    if (st.m != 0) {
        for (std::size_t j = st.n + 1; j < st.t; ++j) {
            if (dot(nu, elems[st.m - 1] - elems[d + st.n - 1] + elems[d + j - 1]) <= Rat(s)) {
                p = static_cast<long>(j);
            }
        }
    }
    return p;
}

struct DkCone {
    Cone cone;
    bool interior = false; // relint(cone) ⊆ int σ
};

inline std::vector<DkCone> dk_cones(const LogJacSystem &sys, std::size_t k)
{
    const std::size_t d = sys.d();
    std::vector<DkCone> out;
    for (const auto &c : sys.cumulative(k).cones()) {
        if (c.dim() == 0) {
            continue;
        }
        bool keep = true;
        if (k < d) {
            const RatVec p = to_rat(c.relint_point());
            const auto &nd = sys.J(k);
            for (auto gi : min_generators(nd, p)) {
                for (const auto &x : nd.generators[gi]) {
                    keep = keep && x > 0;
                }
            }
        }
        if (keep) {
            out.push_back({c, c.relint_in_interior()});
        }
    }
    return out;
}

using PoleSet = std::set<std::pair<long, long>>;

namespace detail
{

inline bool interior_ray(const IntVec &r)
{
    for (const auto &x : r) {
        if (x <= 0) {
            return false;
        }
    }
    return true;
}

inline void add_ray_poles(const LogJacSystem &sys, std::size_t k, const IntMat &rays, PoleSet &out)
{
    for (const auto &r : rays) {
        if (k < sys.d() && !interior_ray(r)) {
            continue;
        }
        const RatVec nu = primitive_in(r, sys.N());
        out.insert({to_long(sys.psi(k, nu)), to_long(sys.phi(k, nu))});
    }
}

} // namespace detail

/// B(S): (d,1) plus (Ψ_k, φ_k) at the rays of Σ_1..Σ_k.
inline PoleSet b_set(const LogJacSystem &sys)
{
    const std::size_t d = sys.d();
    PoleSet out{{static_cast<long>(d), 1L}};
    for (std::size_t k = 1; k <= d; ++k) {
        for (std::size_t i = 1; i <= k; ++i) {
            detail::add_ray_poles(sys, k, sys.sigma(i).rays(), out);
        }
    }
    return out;
}

/// Same construction over the rays of the cumulative refinements.
inline PoleSet b_set_refined(const LogJacSystem &sys)
{
    const std::size_t d = sys.d();
    PoleSet out{{static_cast<long>(d), 1L}};
    for (std::size_t k = 1; k <= d; ++k) {
        detail::add_ray_poles(sys, k, sys.cumulative(k).rays(), out);
    }
    return out;
}

/// Coordinate section: the coordinates outside `keep` vanish.
struct SectionData {
    std::vector<std::size_t> keep; // surviving coordinates (0-based, validated frame)
    std::vector<RatVec> exponents; // in the |keep|-dimensional frame
    std::optional<Lattice> M_theta;  // M ∩ θ^⊥
    std::optional<Lattice> M_branch; // generated by Z^keep and the surviving exponents (toric: generators)
    Int index = 1;                   // [M(θ) : M(θ,ζ)]
    std::optional<Validated> section; // absent for the 0-dimensional section
};

inline std::vector<SectionData> sections(const Validated &v, SectionLattice choice = SectionLattice::ambient)
{
    const CharData &cd = v.data;
    const std::size_t d = cd.d;
    std::vector<SectionData> out;
    for (std::size_t size = 0; size <= d; ++size) {
        detail::for_each_subset(d, size, [&](const std::vector<std::size_t> &keep) {
            SectionData sd;
            sd.keep = keep;
            if (keep.empty()) {
                out.push_back(sd);
                return;
            }
            std::vector<bool> kept(d, false);
            for (auto i : keep) {
                kept[i] = true;
            }
            auto project = [&](const RatVec &x) {
                RatVec p;
                for (auto i : keep) {
                    p.push_back(x[i]);
                }
                return p;
            };
            std::vector<RatVec> base;
            if (cd.mode == Mode::qo) {
                base = detail::unit_vectors(keep.size());
            }
            Lattice gen = Lattice::standard(keep.size());
            for (const auto &x : cd.exponents) {
                bool supported = true;
                for (std::size_t i = 0; i < d; ++i) {
                    supported = supported && (kept[i] || x[i] == 0);
                }
                if (!supported) {
                    continue;
                }
                const RatVec p = project(x);
                if (cd.mode == Mode::qo) {
                    if (gen.contains(p)) {
                        continue;
                    }
                    gen = detail::adjoin(gen, p);
                }
                sd.exponents.push_back(p);
            }
            if (cd.mode == Mode::toric) {
                gen = Lattice::from_generators(sd.exponents, keep.size());
            }
            sd.M_theta = v.lattices.M.intersect_coordinate_subspace(keep);
            sd.M_branch = gen;
            sd.index = lattice_index(*sd.M_branch, *sd.M_theta);
            CharData sub;
            sub.mode = cd.mode;
            sub.d = keep.size();
            sub.exponents = sd.exponents;
            sub.lattice_M = choice == SectionLattice::ambient ? *sd.M_theta : *sd.M_branch;
            if (size == d) {
                sd.section = v;
            } else {
                sd.section = validate(sub, true);
            }
            out.push_back(sd);
        });
    }
    return out;
}

} // namespace qomp

#endif
