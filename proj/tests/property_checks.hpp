#ifndef QOMP_TEST_PROPERTY_CHECKS_HPP
#define QOMP_TEST_PROPERTY_CHECKS_HPP

#include <optional>
#include <random>
#include <utility>

#include <qomp/qocore.hpp>

#include "random_data.hpp"

namespace qomp::test
{

/// Fresh branch every few points, so that many branches are covered.
class Sampler
{
public:
    explicit Sampler(unsigned seed) : m_rng(seed) {}

    const LogJacSystem &next_system()
    {
        if (!m_sys || m_used == 4) {
            m_sys.emplace(test::random_branch(m_rng));
            m_used = 0;
        }
        ++m_used;
        return *m_sys;
    }
    RatVec interior(const LogJacSystem &sys)
    {
        return test::random_interior(sys.N(), m_rng);
    }
    std::mt19937 &rng()
    {
        return m_rng;
    }

private:
    std::mt19937 m_rng;
    std::optional<LogJacSystem> m_sys;
    int m_used = 0;
};

Rat brute_min(const NewtonData &nd, const RatVec &nu)
{
    Rat best = dot(nu, nd.generators.at(0));
    for (const auto &g : nd.generators) {
        best = std::min(best, dot(nu, g));
    }
    return best;
}

/// A level s with (ν,s) ∈ A_k for a random k having a non-empty range.
std::pair<std::size_t, Int> random_level(const LogJacSystem &sys, const RatVec &nu, std::mt19937 &rng)
{
    const std::size_t d = sys.d();
    std::vector<std::size_t> ks;
    for (std::size_t k = 1; k <= d; ++k) {
        if (k == d || sys.phi(k, nu) < sys.phi(k + 1, nu)) {
            ks.push_back(k);
        }
    }
    const std::size_t k = ks[rng() % ks.size()];
    const Int lo = sys.phi(k, nu);
    const Int hi = k == d ? Int(lo + 6) : Int(sys.phi(k + 1, nu) - 1);
    std::uniform_int_distribution<long> pick(to_long(lo), to_long(hi));
    return std::make_pair(k, Int(pick(rng)));
}

struct PropertyOutcome {
    int failures = 0;
    int samples = 0;   // points drawn that satisfied the preconditions
    int exercised = 0; // individual inequalities tested
};

inline PropertyOutcome check_minimizer(int samples, unsigned seed = 101)
{
    Sampler smp(seed);
    int failures = 0;
    for (int i = 0; i < samples; ++i) {
        const LogJacSystem &sys = smp.next_system();
        const RatVec nu = smp.interior(sys);
        const WkResult r = wk_algorithm(sys, nu, sys.d());
        for (std::size_t k = 1; k <= sys.d(); ++k) {
            failures += dot(nu, r.at(k).w) == brute_min(sys.J(k), nu) ? 0 : 1;
        }
    }
    return {failures, samples, samples};
}

inline PropertyOutcome check_phi_monotone(int samples, unsigned seed = 202)
{
    Sampler smp(seed);
    int failures = 0;
    for (int i = 0; i < samples; ++i) {
        const LogJacSystem &sys = smp.next_system();
        const RatVec nu = smp.interior(sys);
        for (std::size_t k = 2; k <= sys.d(); ++k) {
            failures += sys.phi(k - 1, nu) <= sys.phi(k, nu) ? 0 : 1;
        }
    }
    return {failures, samples, samples};
}

inline PropertyOutcome check_psi_nonnegative(int samples, unsigned seed = 303)
{
    Sampler smp(seed);
    int failures = 0;
    for (int i = 0; i < samples; ++i) {
        const LogJacSystem &sys = smp.next_system();
        const RatVec nu = smp.interior(sys);
        for (std::size_t k = 1; k <= sys.d(); ++k) {
            failures += sys.psi(k, nu) >= 0 ? 0 : 1;
        }
    }
    return {failures, samples, samples};
}

inline PropertyOutcome check_level_subspace(int samples, unsigned seed = 404)
{
    Sampler smp(seed);
    int failures = 0;
    for (int i = 0; i < samples; ++i) {
        const LogJacSystem &sys = smp.next_system();
        const RatVec nu = smp.interior(sys);
        const auto [k, s] = random_level(sys, nu, smp.rng());
        const EllResult e = ell_nu_s(sys, nu, s);
        const WkResult r = wk_algorithm(sys, nu, k);
        if (e.k != k || e.basis != r.at(k).ell) {
            ++failures;
        }
    }
    return {failures, samples, samples};
}

inline PropertyOutcome check_gap_bounds(int samples, unsigned seed = 505)
{
    Sampler smp(seed);
    int failures = 0;
    int exercised = 0;
    int usable = 0;
    for (int i = 0; usable < samples && i < 50 * samples; ++i) {
        const LogJacSystem &sys = smp.next_system();
        const RatVec nu = smp.interior(sys);
        const auto [k, s] = random_level(sys, nu, smp.rng());
        const WkResult r = wk_algorithm(sys, nu, k);
        const WkStep &st = r.at(k);
        const std::size_t d = sys.d();
        const std::size_t g = sys.g();
        if (st.t > g) {
            continue; // λ_{g+1} = ∞
        }
        ++usable;
        const auto &el = sys.elems();
        const RatVec &lam_t = el[d + st.t - 1];
        const Rat sv(s);
        if (st.n == 0 || (st.m != 0 && dot(nu, el[st.m - 1]) <= sv)) {
            ++exercised;
            failures += sv < dot(nu, lam_t) ? 0 : 1;
        }
        if (st.n != 0 && st.m != 0) {
            ++exercised;
            const RatVec bound = el[st.m - 1] + lam_t - el[d + st.n - 1];
            failures += sv < dot(nu, bound) ? 0 : 1;
        }
    }
    return {failures, usable, exercised};
}

} // namespace qomp::test

#endif
