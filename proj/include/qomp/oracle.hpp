#ifndef QOMP_ORACLE_HPP
#define QOMP_ORACLE_HPP

#include <climits>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "genfun.hpp"
#include "ltseries.hpp"
#include "qocore.hpp"

namespace qomp
{

struct OracleOptions {
    std::uint64_t box_limit = std::uint64_t(1) << 20; // lattice points per enumeration
};

using FaceBits = std::vector<std::uint64_t>;

/// Equivalence class of jets: the level k, the faces of N(J_1)..N(J_k)
/// selected by ν (i.e. the cone of ∩Σ_i) and the values ord_{J_1..k}(ν).
struct JetClassKey {
    std::size_t k = 0;
    std::vector<FaceBits> faces;
    std::vector<long> ords;

    bool operator<(const JetClassKey &o) const
    {
        return std::tie(k, faces, ords) < std::tie(o.k, o.faces, o.ords);
    }
    bool operator==(const JetClassKey &o) const
    {
        return k == o.k && faces == o.faces && ords == o.ords;
    }
};

struct JetClassInfo {
    long phi_k = 0;
    long phi_next_max = 0; // LONG_MAX when k = d
    long ord_k = 0;
    RatVec witness;

    bool operator==(const JetClassInfo &o) const
    {
        return phi_k == o.phi_k && phi_next_max == o.phi_next_max && ord_k == o.ord_k;
    }
};

struct OracleResult {
    long s_max = 0;
    std::map<JetClassKey, JetClassInfo> classes;
    std::vector<LPoly> coefficients; // T^0..T^s_max
    bool certified = false;          // enumeration box covered the exact bound
    std::vector<std::size_t> round_counts;
    std::uint64_t points = 0;

    /// Classes alive at level s.
    std::vector<std::pair<JetClassKey, JetClassInfo>> at_level(long s) const
    {
        std::vector<std::pair<JetClassKey, JetClassInfo>> out;
        for (const auto &[key, info] : classes) {
            if (info.phi_k <= s && s < info.phi_next_max) {
                out.emplace_back(key, info);
            }
        }
        return out;
    }
};

namespace detail
{

inline long checked_long(const Int &z, const char *what)
{
    if (!z.fits_slong_p()) {
        throw Error(ErrorCode::BudgetExceeded, std::string(what) + " exceeds the 64-bit range");
    }
    return z.get_si();
}

/// Integer pairings of the N basis with the J_k generators.
class PairingTable
{
public:
    explicit PairingTable(const LogJacSystem &sys) : m_d(sys.d())
    {
        const RatMat basis = sys.N().basis();
        for (std::size_t k = 1; k <= m_d; ++k) {
            const auto &gens = sys.J(k).generators;
            std::vector<std::vector<long>> table;
            std::vector<bool> positive;
            for (const auto &g : gens) {
                std::vector<long> row;
                for (const auto &b : basis) {
                    const Rat v = dot(b, g);
                    if (!is_integer(v)) {
                        throw Error(ErrorCode::InternalInconsistency, "generator " + to_string(g) + " is not in M");
                    }
                    row.push_back(checked_long(v.get_num(), "pairing"));
                }
                table.push_back(row);
                bool pos = true;
                for (const auto &x : g) {
                    pos = pos && x > 0;
                }
                positive.push_back(pos);
            }
            m_table.push_back(table);
            m_positive.push_back(positive);
        }
    }

    std::size_t generators(std::size_t k) const
    {
        return m_table[k - 1].size();
    }
    bool positive(std::size_t k, std::size_t i) const
    {
        return m_positive[k - 1][i];
    }

    /// ord_{J_k} and the bitset of minimizers at ν given in N-coordinates.
    long evaluate(std::size_t k, const std::vector<long> &c, FaceBits &face) const
    {
        const auto &t = m_table[k - 1];
        long best = LONG_MAX;
        face.assign((t.size() + 63) / 64, 0);
        for (std::size_t i = 0; i < t.size(); ++i) {
            long v = 0;
            for (std::size_t j = 0; j < c.size(); ++j) {
                long p;
                if (__builtin_mul_overflow(t[i][j], c[j], &p) || __builtin_add_overflow(v, p, &v)) {
                    throw Error(ErrorCode::BudgetExceeded, "pairing overflow in the oracle");
                }
            }
            if (v < best) {
                best = v;
                std::fill(face.begin(), face.end(), 0);
            }
            if (v == best) {
                face[i / 64] |= std::uint64_t(1) << (i % 64);
            }
        }
        return best;
    }

    bool face_positive(std::size_t k, const FaceBits &face) const
    {
        for (std::size_t i = 0; i < generators(k); ++i) {
            if ((face[i / 64] >> (i % 64) & 1) && !positive(k, i)) {
                return false;
            }
        }
        return true;
    }

private:
    std::size_t m_d;
    std::vector<std::vector<std::vector<long>>> m_table;
    std::vector<std::vector<bool>> m_positive;
};

inline RatVec from_coords(const std::vector<long> &c, const RatMat &basis)
{
    RatVec v(basis[0].size(), Rat(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] != 0) {
            v = v + Rat(c[i]) * basis[i];
        }
    }
    return v;
}

/// Records the classes of ν (N-coordinates c) for every level up to s_max.
/// `only_k`/`only_faces` restrict to one cone of one level.
inline void classify(const LogJacSystem &sys, const PairingTable &pt, const std::vector<long> &c, long s_max,
                     const RatMat &basis, std::map<JetClassKey, JetClassInfo> &out, std::size_t only_k = 0,
                     const std::vector<FaceBits> *only_faces = nullptr)
{
    const std::size_t d = sys.d();
    std::vector<long> ords{0};
    std::vector<FaceBits> faces;
    const std::size_t top = only_k == 0 ? d : std::min(d, only_k + 1);
    for (std::size_t k = 1; k <= top; ++k) {
        FaceBits f;
        ords.push_back(pt.evaluate(k, c, f));
        faces.push_back(f);
    }
    const std::size_t lo = only_k == 0 ? 1 : only_k;
    const std::size_t hi = only_k == 0 ? d : only_k;
    for (std::size_t k = lo; k <= hi; ++k) {
        const long phi = ords[k] - ords[k - 1];
        if (phi > s_max) {
            break;
        }
        const long next = k == d ? LONG_MAX : ords[k + 1] - ords[k];
        if (next <= phi) {
            continue;
        }
        if (k < d && !pt.face_positive(k, faces[k - 1])) {
            continue;
        }
        JetClassKey key;
        key.k = k;
        key.faces.assign(faces.begin(), faces.begin() + static_cast<long>(k));
        if (only_faces && key.faces != *only_faces) {
            continue;
        }
        key.ords.assign(ords.begin() + 1, ords.begin() + static_cast<long>(k) + 1);
        auto [it, inserted] = out.try_emplace(key);
        if (inserted) {
            it->second.phi_k = phi;
            it->second.ord_k = ords[k];
            it->second.phi_next_max = next;
            it->second.witness = from_coords(c, basis);
        } else {
            it->second.phi_next_max = std::max(it->second.phi_next_max, next);
        }
    }
}

inline std::vector<LPoly> class_coefficients(const std::map<JetClassKey, JetClassInfo> &classes, long s_max)
{
    std::vector<LPoly> out(static_cast<std::size_t>(s_max + 1));
    for (const auto &[key, info] : classes) {
        const LPoly base = L_minus_1_pow(static_cast<int>(key.k));
        const long k = static_cast<long>(key.k);
        const long stop = std::min(s_max, info.phi_next_max == LONG_MAX ? s_max : info.phi_next_max - 1);
        for (long s = std::max(info.phi_k, 1L); s <= stop; ++s) {
            out[static_cast<std::size_t>(s)] += base.shifted(s * k - info.ord_k);
        }
    }
    return out;
}

/// Calls f on every ν ∈ N with 0 < ν_j <= cap_j, in N-coordinates.
inline std::uint64_t for_each_in_box(const Lattice &n, const RatVec &cap,
                                     const std::function<void(const std::vector<long> &)> &f)
{
    const std::size_t d = n.dim();
    const IntMat &h = n.hermite();
    const Int &scale = n.scale();
    std::vector<long> c(d, 0);
    std::vector<Int> partial(d, Int(0)); // scale * ν_j contributed by c_0..c_{j-1}
    std::uint64_t count = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t j) {
        if (j == d) {
            ++count;
            f(c);
            return;
        }
        Int acc = 0;
        for (std::size_t i = 0; i < j; ++i) {
            acc += Int(c[i]) * h[i][j];
        }
        // 0 < acc + c_j h_jj <= cap_j * scale
        const Int upper = floor_rat(cap[j] * Rat(scale)) - acc;
        const Int lo = floor_div(-acc, h[j][j]) + 1;
        const Int hi = floor_div(upper, h[j][j]);
        for (Int x = lo; x <= hi; ++x) {
            c[j] = checked_long(x, "lattice coordinate");
            rec(j + 1);
        }
        c[j] = 0;
    };
    rec(0);
    return count;
}

inline double box_size_estimate(const Lattice &n, const RatVec &cap)
{
    double total = 1;
    for (std::size_t j = 0; j < n.dim(); ++j) {
        total *= Rat(cap[j] * Rat(n.scale())).get_d() / n.hermite()[j][j].get_d() + 1;
    }
    return total;
}

/// Box such that every ν with φ_k(ν) <= s_max on a contributing cone lies in it:
/// ord_{J_k}(ν) <= k s_max and the minimizer is strictly positive.
inline RatVec exact_cap(const LogJacSystem &sys, long s_max)
{
    const std::size_t d = sys.d();
    RatVec cap(d, Rat(0));
    for (std::size_t k = 1; k <= d; ++k) {
        for (std::size_t i = 0; i < d; ++i) {
            std::optional<Rat> least;
            for (const auto &g : sys.J(k).generators) {
                bool pos = true;
                for (const auto &x : g) {
                    pos = pos && x > 0;
                }
                if (pos && (!least || g[i] < *least)) {
                    least = g[i];
                }
            }
            if (least) {
                cap[i] = std::max(cap[i], Rat(Rat(static_cast<long>(k) * s_max) / *least));
            }
        }
    }
    return cap;
}

} // namespace detail

/// Brute-force jet classes with φ_k <= s <= s_max over all levels and cones.
inline OracleResult enumerate_classes(const LogJacSystem &sys, long s_max, const OracleOptions &opt = {})
{
    if (s_max < 1) {
        throw Error(ErrorCode::InvalidInput, "oracle order must be at least 1");
    }
    const detail::PairingTable pt(sys);
    const RatMat basis = sys.N().basis();
    const RatVec cap = detail::exact_cap(sys, s_max);
    OracleResult res;
    res.s_max = s_max;

    auto run = [&](const RatVec &box) {
        std::map<JetClassKey, JetClassInfo> classes;
        res.points += detail::for_each_in_box(sys.N(), box, [&](const std::vector<long> &c) {
            detail::classify(sys, pt, c, s_max, basis, classes);
        });
        res.round_counts.push_back(classes.size());
        return classes;
    };

    // Doubling rounds that end at the exact cap when it fits the budget.
    const bool fits = detail::box_size_estimate(sys.N(), cap) <= static_cast<double>(opt.box_limit);
    const int rounds = 4;
    if (fits) {
        for (int r = rounds; r >= 0; --r) {
            RatVec box = cap;
            for (auto &x : box) {
                x /= Rat(1L << r);
            }
            res.classes = run(box);
        }
        res.certified = true;
    } else {
        // Cap too large: grow until three equal rounds plus one safety round.
        RatVec box = cap;
        for (auto &x : box) {
            x /= Rat(1L << 20);
        }
        std::vector<std::map<JetClassKey, JetClassInfo>> history;
        while (true) {
            if (detail::box_size_estimate(sys.N(), box) > static_cast<double>(opt.box_limit)) {
                throw Error(ErrorCode::BudgetExceeded, "oracle box exceeded " + std::to_string(opt.box_limit) +
                                                           " points before the class sets stabilized");
            }
            history.push_back(run(box));
            const std::size_t h = history.size();
            if (h >= 4 && !history[h - 1].empty() && history[h - 1] == history[h - 2] &&
                history[h - 2] == history[h - 3] && history[h - 3] == history[h - 4]) {
                break;
            }
            for (auto &x : box) {
                x *= 2;
            }
        }
        res.classes = history.back();
    }
    res.coefficients = detail::class_coefficients(res.classes, s_max);
    return res;
}

inline std::vector<LPoly> series_coefficients(const LogJacSystem &sys, long s_max, const OracleOptions &opt = {})
{
    return enumerate_classes(sys, s_max, opt).coefficients;
}

/// Coefficients of P_{k,τ} up to T^{s_max}: classes of one cone τ of
/// ∩_{i<=k}Σ_i, enumerated from a half-open decomposition of τ.
inline std::vector<LPoly> cone_class_coefficients(const LogJacSystem &sys, std::size_t k, const Cone &tau, long s_max,
                                                  const OracleOptions &opt = {})
{
    const detail::PairingTable pt(sys);
    const RatMat basis = sys.N().basis();
    const Lattice &n = sys.N();
    std::vector<long> rel;
    std::vector<FaceBits> faces;
    {
        const RatVec p = to_rat(tau.relint_point());
        const RatVec pc = n.coordinates(p);
        // relint point may not be in N; scale it into N
        Int den = 1;
        for (const auto &x : pc) {
            den = lcm(den, x.get_den());
        }
        for (const auto &x : pc) {
            rel.push_back(detail::checked_long(Rat(x * Rat(den)).get_num(), "relint point"));
        }
        for (std::size_t i = 1; i <= k; ++i) {
            FaceBits f;
            pt.evaluate(i, rel, f);
            faces.push_back(f);
        }
    }
    // Minimizer of J_k on τ: bounds ord_k <= k s_max.
    const auto mins = min_generators(sys.J(k), to_rat(tau.relint_point()));
    const RatVec gk = sys.J(k).generators[mins.at(0)];
    const long bound = static_cast<long>(k) * s_max;

    std::map<JetClassKey, JetClassInfo> classes;
    std::uint64_t points = 0;
    for (const auto &piece : triangulate(tau)) {
        const ConeSeries cs = closed_cone_series(piece, n);
        std::vector<std::vector<long>> rays;
        std::vector<Rat> ray_val;
        for (const auto &r : cs.rays) {
            std::vector<long> rc;
            for (const auto &x : n.coordinates(r)) {
                rc.push_back(detail::checked_long(x.get_num(), "ray coordinate"));
            }
            rays.push_back(rc);
            ray_val.push_back(dot(r, gk));
            if (ray_val.back() <= 0) {
                throw Error(ErrorCode::InternalInconsistency, "non-positive pairing on a ray of " + tau.to_string());
            }
        }
        for (const auto &[u, mult] : cs.numerator) {
            std::vector<long> c;
            for (const auto &x : n.coordinates(u)) {
                c.push_back(detail::checked_long(x.get_num(), "lattice coordinate"));
            }
            std::function<void(std::size_t, std::vector<long> &, Rat)> rec = [&](std::size_t i, std::vector<long> &cur,
                                                                                  Rat val) {
                if (val > bound) {
                    return;
                }
                if (i == rays.size()) {
                    if (++points > opt.box_limit * 16) {
                        throw Error(ErrorCode::BudgetExceeded, "cone enumeration exceeded its budget");
                    }
                    // lower faces of τ can share its face pattern
                    if (tau.relint_contains(detail::from_coords(cur, basis))) {
                        detail::classify(sys, pt, cur, s_max, basis, classes, k, &faces);
                    }
                    return;
                }
                std::vector<long> next = cur;
                Rat v = val;
                while (v <= bound) {
                    rec(i + 1, next, v);
                    for (std::size_t j = 0; j < next.size(); ++j) {
                        next[j] += rays[i][j];
                    }
                    v += ray_val[i];
                }
            };
            rec(0, c, dot(u, gk));
        }
    }
    return detail::class_coefficients(classes, s_max);
}

/// counts[n] = #{ν ∈ int σ ∩ N : ord_{J_d}(ν) = n}, n <= n_max.
inline std::vector<Int> volume_counts(const LogJacSystem &sys, long n_max, const OracleOptions &opt = {})
{
    const std::size_t d = sys.d();
    RatVec cap(d, Rat(0));
    for (std::size_t i = 0; i < d; ++i) {
        std::optional<Rat> least;
        for (const auto &g : sys.J(d).generators) {
            if (g[i] > 0 && (!least || g[i] < *least)) {
                least = g[i];
            }
        }
        if (!least) {
            throw Error(ErrorCode::InternalInconsistency, "top ideal has no generator along a coordinate");
        }
        cap[i] = Rat(Rat(n_max) / *least);
    }
    if (detail::box_size_estimate(sys.N(), cap) > static_cast<double>(opt.box_limit)) {
        throw Error(ErrorCode::BudgetExceeded, "volume box exceeds the enumeration budget");
    }
    const RatMat basis = sys.N().basis();
    std::vector<Int> counts(static_cast<std::size_t>(n_max + 1), Int(0));
    detail::for_each_in_box(sys.N(), cap, [&](const std::vector<long> &c) {
        const RatVec nu = detail::from_coords(c, basis);
        for (const auto &v : sys.elems()) {
            if (dot(nu, v) <= 0) {
                return;
            }
        }
        const Rat o = support_value(sys.J(d), nu);
        if (o <= n_max) {
            counts[static_cast<std::size_t>(to_long(o))] += 1;
        }
    });
    return counts;
}

struct CrosscheckReport {
    bool agree = true;
    long first_mismatch = -1;
    std::vector<LPoly> closed;
    std::vector<LPoly> oracle;
    std::vector<std::pair<JetClassKey, JetClassInfo>> mismatch_classes;
    bool certified = false;
};

inline CrosscheckReport crosscheck(const std::vector<LPoly> &closed, const OracleResult &o)
{
    CrosscheckReport r;
    r.closed = closed;
    r.oracle = o.coefficients;
    r.certified = o.certified;
    for (std::size_t s = 0; s < std::min(closed.size(), o.coefficients.size()); ++s) {
        if (closed[s] != o.coefficients[s]) {
            r.agree = false;
            r.first_mismatch = static_cast<long>(s);
            r.mismatch_classes = o.at_level(static_cast<long>(s));
            break;
        }
    }
    return r;
}

} // namespace qomp

#endif
