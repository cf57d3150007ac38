#pragma once

// Fidelity-based lower bounds on genuine multipartite entanglement measures.
//
// A chosen pure state |phi> is summarized by its profile: s1' (largest
// squared Schmidt coefficient over all bipartitions) and m' (dimension
// parameter). Given the fidelity F = <phi|rho|phi>, every bound is a
// non-decreasing function of S = max{F / s1', 1}, so a lower bound on F also
// yields valid bounds.

#include "fidbound/tensor_core.hpp"

#include <cmath>
#include <optional>
#include <thread>

namespace fidbound {

enum class MPrimeMode {
    /// max over bipartitions of min(d_alpha, d_alphabar). Default.
    Dimension,
    /// max over bipartitions of the Schmidt rank of |phi>. Diagnostic only:
    /// the bound proofs need a value that dominates the Schmidt ranks of the
    /// states in an optimal decomposition of rho, which this one does not.
    Rank,
};

template <std::floating_point Real>
struct BasicPhiProfile {
    Real s1_prime = 0;
    int m_prime = 0;
    int m_prime_rank = 0;
    std::vector<std::pair<Bipartition, BasicSchmidtSpectrum<Real>>> spectra;

    int m_prime_for(MPrimeMode mode) const { return mode == MPrimeMode::Dimension ? m_prime : m_prime_rank; }
};

using PhiProfile = BasicPhiProfile<double>;

struct ProfileOptions {
    /// 0 picks std::thread::hardware_concurrency().
    unsigned workers = 1;
};

/// Scans every canonical bipartition of |phi>. Results are identical for any
/// worker count: each bipartition writes its own slot and the reduction runs
/// sequentially afterwards.
template <std::floating_point Real>
BasicPhiProfile<Real> profile_phi(const BasicPureState<Real> &phi, ProfileOptions options = {}) {
    if (phi.parties() < 2) throw ValidationError(ErrorKind::InvalidBipartition, "profile needs at least two parties");
    const auto cuts = enumerate_bipartitions(phi.dims());
    std::vector<BasicSchmidtSpectrum<Real>> slots(cuts.size());

    unsigned workers = options.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.workers;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(cuts.size()));
    auto run = [&](unsigned worker) {
        for (std::size_t i = worker; i < cuts.size(); i += workers) slots[i] = schmidt_spectrum(phi, cuts[i]);
    };
    if (workers <= 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    }

    BasicPhiProfile<Real> profile;
    profile.spectra.reserve(cuts.size());
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        profile.s1_prime = std::max(profile.s1_prime, slots[i].largest());
        profile.m_prime = std::max(profile.m_prime, static_cast<int>(std::min(cuts[i].d_alpha(), cuts[i].d_alphabar())));
        profile.m_prime_rank = std::max(profile.m_prime_rank, slots[i].rank);
        profile.spectra.emplace_back(cuts[i], std::move(slots[i]));
    }
    return profile;
}

/// max{numerator / denominator, 1}, kept strictly above 1 whenever
/// numerator > denominator so the witness sign and S > 1 never disagree
/// after rounding.
template <std::floating_point Real>
Real ratio_above_one(Real numerator, Real denominator) {
    if (!(numerator > denominator)) return Real(1);
    return std::max(numerator / denominator, std::nextafter(Real(1), Real(2)));
}

/// max{fidelity / s1', 1}.
template <std::floating_point Real>
Real s_value(Real fidelity, Real s1_prime) {
    if (!(fidelity >= 0 && fidelity <= 1)) throw ValidationError(ErrorKind::OutOfDomain, "fidelity outside [0,1]");
    if (!(s1_prime > 0 && s1_prime <= 1)) throw ValidationError(ErrorKind::OutOfDomain, "s1' outside (0,1]");
    return ratio_above_one(fidelity, s1_prime);
}

template <std::floating_point Real>
Real cren_lb(Real s) {
    return s - Real(1);
}

template <std::floating_point Real>
Real concurrence_lb(Real s, int m_prime) {
    if (m_prime < 2) throw ValidationError(ErrorKind::OutOfDomain, "m' must be at least 2");
    const Real m = m_prime;
    return std::sqrt(Real(2) / (m * (m - 1))) * (s - Real(1));
}

/// 1 - m' + S, unclamped. Negative whenever S < m' - 1.
template <std::floating_point Real>
Real gconcurrence_lb_raw(Real s, int m_prime) {
    if (m_prime < 2) throw ValidationError(ErrorKind::OutOfDomain, "m' must be at least 2");
    return Real(1) - Real(m_prime) + s;
}

template <std::floating_point Real>
Real gconcurrence_lb(Real s, int m_prime) {
    return std::max(Real(0), gconcurrence_lb_raw(s, m_prime));
}

/// [sqrt(S) + sqrt((m-1)(m-S))]^2 / m^2 on 1 <= S <= m.
///
/// Evaluated in expanded form S + (m-1)(m-S) + 2 sqrt(S (m-1)(m-S)) so that
/// gamma(1, m) = 1 and gamma(m, m) = 1/m hold exactly in floating point.
template <std::floating_point Real>
Real gamma(Real s, Real m) {
    if (!(m >= 1)) throw ValidationError(ErrorKind::OutOfDomain, "gamma needs m >= 1");
    constexpr Real slack = Real(1e-12);
    if (!(s >= Real(1) - slack && s <= m * (Real(1) + slack)))
        throw ValidationError(ErrorKind::OutOfDomain, "gamma argument " + std::to_string(s) + " outside [1, " +
                                                          std::to_string(m) + "]");
    s = std::clamp(s, Real(1), m);
    const Real tail = (m - Real(1)) * (m - s);
    return (s + tail + Real(2) * std::sqrt(s * tail)) / (m * m);
}

template <std::floating_point Real>
Real gamma(Real s, int m) {
    return gamma(s, static_cast<Real>(m));
}

template <std::floating_point Real>
Real geometric_lb(Real s, int m_prime) {
    return std::max(Real(0), Real(1) - gamma(s, m_prime));
}

/// s1' - <phi|rho|phi>; negative iff S > 1.
template <std::floating_point Real>
Real gme_witness_value(const BasicDensityOperator<Real> &rho, const BasicPureState<Real> &phi,
                       const BasicPhiProfile<Real> &profile) {
    return profile.s1_prime - fidelity_pure(rho, phi);
}

template <std::floating_point Real>
struct BasicBoundValue {
    Real raw = 0;
    Real value = 0;
    bool clamped = false;

    static BasicBoundValue from_raw(Real raw) { return {raw, std::max(raw, Real(0)), raw < 0}; }
};

template <std::floating_point Real>
struct BasicInterval {
    Real low = 0;
    Real high = 0;
};

template <std::floating_point Real>
struct BasicGmeBoundReport {
    Real fidelity = 0;
    Real s1_prime = 0;
    int m_prime = 0;
    MPrimeMode m_prime_mode = MPrimeMode::Dimension;
    Real s = 1;
    std::optional<BasicInterval<Real>> s_interval;
    BasicBoundValue<Real> cren, concurrence, gconcurrence, geometric;
    Real witness_value = 0;
};

using BoundValue = BasicBoundValue<double>;
using GmeBoundReport = BasicGmeBoundReport<double>;

struct GmeOptions {
    MPrimeMode m_prime_mode = MPrimeMode::Dimension;
    /// One standard deviation of the fidelity; propagates linearly to S.
    std::optional<double> fidelity_sigma;
};

/// Bounds from a fidelity (or any lower bound on it); no density operator needed.
template <std::floating_point Real>
BasicGmeBoundReport<Real> bounds_from_fidelity(Real fidelity, const BasicPhiProfile<Real> &profile,
                                               const GmeOptions &options = {}) {
    BasicGmeBoundReport<Real> r;
    r.fidelity = fidelity;
    r.s1_prime = profile.s1_prime;
    r.m_prime_mode = options.m_prime_mode;
    // A rank-1 |phi> is a product state: s1' = 1, S = 1 and every bound is 0
    // for any m' >= 2.
    r.m_prime = std::max(2, profile.m_prime_for(options.m_prime_mode));
    r.s = s_value(fidelity, profile.s1_prime);
    if (options.fidelity_sigma) {
        const Real sigma = static_cast<Real>(*options.fidelity_sigma);
        if (!(sigma >= 0)) throw ValidationError(ErrorKind::OutOfDomain, "negative fidelity sigma");
        r.s_interval = BasicInterval<Real>{s_value(std::max(fidelity - sigma, Real(0)), profile.s1_prime),
                                           s_value(std::min(fidelity + sigma, Real(1)), profile.s1_prime)};
    }
    r.cren = BasicBoundValue<Real>::from_raw(cren_lb(r.s));
    r.concurrence = BasicBoundValue<Real>::from_raw(concurrence_lb(r.s, r.m_prime));
    r.gconcurrence = BasicBoundValue<Real>::from_raw(gconcurrence_lb_raw(r.s, r.m_prime));
    r.geometric = BasicBoundValue<Real>::from_raw(Real(1) - gamma(r.s, r.m_prime));
    r.witness_value = profile.s1_prime - fidelity;
    return r;
}

template <std::floating_point Real>
BasicGmeBoundReport<Real> gme_bounds(const BasicDensityOperator<Real> &rho, const BasicPureState<Real> &phi,
                                     const BasicPhiProfile<Real> &profile, const GmeOptions &options = {}) {
    return bounds_from_fidelity(fidelity_pure(rho, phi), profile, options);
}

} // namespace fidbound
