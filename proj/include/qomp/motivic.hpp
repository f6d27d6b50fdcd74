#ifndef QOMP_MOTIVIC_HPP
#define QOMP_MOTIVIC_HPP

#include <string>
#include <vector>

#include "genfun.hpp"
#include "ltseries.hpp"
#include "oracle.hpp"
#include "qocore.hpp"

namespace qomp
{

inline BivRat p_point()
{
    return one_over(0, 1);
}

/// (L-1)/(1-LT) * T^m/(1-T^m)
inline BivRat p_curve(long m)
{
    if (m < 1) {
        throw Error(ErrorCode::InvalidInput, "curve multiplicity must be positive");
    }
    LTPoly num = LTPoly::monomial(1, m) - LTPoly::monomial(0, m);
    return BivRat::with_factors(num, {{1, 1}, {0, m}});
}

struct AssemblyOptions {
    SectionLattice section_lattice = SectionLattice::ambient;
    OracleOptions oracle;
    long guard = 0; // 0: twice the largest T-degree of the denominator
    bool force_reconstruction = false;
};

/// How one P_{k,τ} was obtained.
struct KTauEntry {
    std::size_t k = 0;
    Cone tau;
    bool closed = true;
    long order = 0; // expansion order used by reconstruction
    bool extra_factor = false; // reconstruction needed (1 - L^k T) on top of the prescribed set
    BivRat value;
};

namespace detail
{

/// A minimizer of J_k on relint(τ) (ord_{J_k} is linear on τ).
inline RatVec minimizer_on(const LogJacSystem &sys, std::size_t k, const Cone &tau)
{
    if (k == 0) {
        return RatVec(sys.d(), Rat(0));
    }
    const auto &nd = sys.J(k);
    return nd.generators[min_generators(nd, to_rat(tau.relint_point())).at(0)];
}

/// Is ν ↦ (ord_{J_1}(ν),…,ord_{J_k}(ν)) injective on lin(τ)?
inline bool ords_injective(const LogJacSystem &sys, std::size_t k, const Cone &tau)
{
    RatMat m;
    for (std::size_t i = 1; i <= k; ++i) {
        const RatVec g = minimizer_on(sys, i, tau);
        RatVec row;
        for (const auto &r : tau.rays()) {
            row.push_back(dot(r, g));
        }
        m.push_back(row);
    }
    return rank(m) == tau.dim();
}

inline RatVec phi_form(const LogJacSystem &sys, std::size_t k, const Cone &c)
{
    return minimizer_on(sys, k, c) - minimizer_on(sys, k - 1, c);
}

inline RatVec psi_form(const LogJacSystem &sys, std::size_t k, const Cone &c)
{
    return Rat(static_cast<long>(k) - 1) * minimizer_on(sys, k, c) -
           Rat(static_cast<long>(k)) * minimizer_on(sys, k - 1, c);
}

inline BivRat times_L_minus_1_pow(const BivRat &x, std::size_t k)
{
    const LPoly p = L_minus_1_pow(static_cast<int>(k));
    LTPoly q;
    for (const auto &[e, c] : p.terms()) {
        q.add_term(0, e, c);
    }
    return BivRat(q, {}) * x;
}

/// Denominator prescribed for P_{k,τ} by the rays of τ and of the refinement by Σ_{k+1}.
inline FactorMultiset prescribed_denominator(const LogJacSystem &sys, std::size_t k, const Cone &tau)
{
    FactorMultiset den;
    for (const auto &r : tau.rays()) {
        const RatVec nu = primitive_in(r, sys.N());
        const long a = to_long(sys.psi(k, nu));
        const long b = to_long(sys.phi(k, nu));
        if (b >= 1) {
            ++den[{a, b}];
        }
    }
    if (k < sys.d()) {
        // walls of Σ_{k+1} can cut τ along rays that are not rays of Σ_{k+1}
        for (const auto &r : sys.cumulative(k + 1).rays()) {
            if (!tau.contains(to_rat(r))) {
                continue;
            }
            const RatVec nu = primitive_in(r, sys.N());
            if (sys.phi(k + 1, nu) == sys.phi(k, nu)) {
                continue;
            }
            ++den[{to_long(sys.psi(k + 1, nu)), to_long(sys.phi(k + 1, nu))}];
        }
    } else {
        ++den[{static_cast<long>(k), 1}];
    }
    return den;
}

} // namespace detail

/// P_{k,τ} for τ ∈ D_k with relint(τ) ⊆ int σ.
inline KTauEntry p_ktau(const LogJacSystem &sys, std::size_t k, const Cone &tau, const AssemblyOptions &opt = {})
{
    const std::size_t d = sys.d();
    KTauEntry e;
    e.k = k;
    e.tau = tau;
    const long kk = static_cast<long>(k);
    if (!opt.force_reconstruction && (k == d || detail::ords_injective(sys, k, tau))) {
        BivRat sum;
        std::vector<Cone> parts;
        if (k == d) {
            parts.push_back(tau);
        } else {
            for (const auto &c : sys.cumulative(k + 1).cones()) {
                if (c.dim() > 0 && tau.contains(c) && tau.relint_contains(to_rat(c.relint_point()))) {
                    parts.push_back(c);
                }
            }
        }
        for (const auto &c : parts) {
            const ConeSeries cs = relint_cone_series(c, sys.N());
            sum += substitute_LT(cs, detail::psi_form(sys, k, c), detail::phi_form(sys, k, c));
            if (k < d) {
                sum = sum - substitute_LT(cs, detail::psi_form(sys, k + 1, c), detail::phi_form(sys, k + 1, c));
            }
        }
        BivRat v = detail::times_L_minus_1_pow(sum, k) * one_over(kk, 1);
        if (k < d) {
            v.try_cancel({kk, 1});
        }
        e.value = v;
        return e;
    }

    // Classes collapse: expand by enumeration and rebuild the numerator.
    e.closed = false;
    FactorMultiset den = detail::prescribed_denominator(sys, k, tau);
    long deg = 0;
    for (const auto &[f, m] : den) {
        deg += f.b * m;
    }
    long guard = opt.guard > 0 ? opt.guard : 2 * std::max(1L, BivRat(LTPoly(1), den).max_den_b());
    for (int attempt = 0; attempt < 2; ++attempt) {
        long order = 2 * deg + guard;
        for (int tries = 0; tries < 3; ++tries, order *= 2) {
            const auto coeffs = cone_class_coefficients(sys, k, tau, order, opt.oracle);
            try {
                LTPoly q = reconstruct_numerator(coeffs, den, guard);
                e.order = order;
                e.value = BivRat(q, den);
                return e;
            } catch (const Error &err) {
                if (err.code() != ErrorCode::NotStabilized) {
                    throw;
                }
            }
        }
        ++den[{kk, 1}];
        deg += 1;
        e.extra_factor = true;
    }
    throw Error(ErrorCode::NotStabilized, "no rational form found for P_{" + std::to_string(k) + "," +
                                              tau.to_string() + "}");
}

struct InteriorResult {
    BivRat value;
    std::vector<KTauEntry> entries;
};

inline InteriorResult p_interior_detailed(const LogJacSystem &sys, const AssemblyOptions &opt = {})
{
    InteriorResult r;
    for (std::size_t k = 1; k <= sys.d(); ++k) {
        for (const auto &c : dk_cones(sys, k)) {
            if (!c.interior) {
                continue;
            }
            KTauEntry e = p_ktau(sys, k, c.cone, opt);
            if (k == 1 && sys.d() > 1 && e.value.denominator().count({static_cast<long>(sys.d()), 1})) {
                throw Error(ErrorCode::InternalInconsistency, "level-one term carries the factor (1 - L^d T)");
            }
            r.value += e.value;
            r.entries.push_back(std::move(e));
        }
    }
    return r;
}

inline BivRat p_interior(const LogJacSystem &sys, const AssemblyOptions &opt = {})
{
    return p_interior_detailed(sys, opt).value;
}

struct SectionSeries {
    SectionData section;
    BivRat value;
    PoleSet poles;
};

struct GeomResult {
    BivRat value;
    std::vector<SectionSeries> parts;
    PoleSet poles;
};

inline GeomResult p_geom_detailed(const Validated &v, const AssemblyOptions &opt = {})
{
    GeomResult r;
    for (auto &s : sections(v, opt.section_lattice)) {
        SectionSeries ss;
        if (!s.section) {
            ss.value = p_point();
            ss.poles = {{0, 1}};
        } else {
            const LogJacSystem sys(*s.section);
            ss.value = p_interior(sys, opt);
            ss.poles = b_set(sys);
        }
        ss.section = std::move(s);
        r.value += ss.value;
        r.poles.insert(ss.poles.begin(), ss.poles.end());
        r.parts.push_back(std::move(ss));
    }
    return r;
}

inline BivRat p_geom(const Validated &v, const AssemblyOptions &opt = {})
{
    return p_geom_detailed(v, opt).value;
}

inline PoleSet candidate_poles(const Validated &v, SectionLattice choice = SectionLattice::ambient)
{
    PoleSet out{{0, 1}};
    for (const auto &s : sections(v, choice)) {
        if (s.section) {
            const LogJacSystem sys(*s.section);
            const PoleSet b = b_set(sys);
            out.insert(b.begin(), b.end());
        }
    }
    return out;
}

/// (L-1)^d Σ_τ η_τ(relint series of τ), τ ∈ Σ_d meeting int σ, x^ν ↦ L^{-ord_{J_d}(ν)}.
inline LVolRat motivic_volume(const LogJacSystem &sys)
{
    const std::size_t d = sys.d();
    LVolRat total;
    for (const auto &c : sys.sigma(d).cones()) {
        if (c.dim() == 0 || !c.relint_in_interior()) {
            continue;
        }
        const ConeSeries cs = relint_cone_series(c, sys.N());
        total = total + substitute_L(cs, Rat(-1) * detail::minimizer_on(sys, d, c));
    }
    return L_minus_1_pow(static_cast<int>(d)) * total;
}

} // namespace qomp

#endif
