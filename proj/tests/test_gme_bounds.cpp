#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace fidbound;
using fidbound::testing::gamma_reference;

TEST(ProfilePhi, Examples) {
    const auto ghz6 = profile_phi(states::ghz(6));
    EXPECT_NEAR(ghz6.s1_prime, 0.5, 1e-12);
    EXPECT_EQ(ghz6.m_prime, 8);
    EXPECT_EQ(ghz6.m_prime_rank, 2);
    EXPECT_EQ(ghz6.spectra.size(), 31u);

    EXPECT_NEAR(profile_phi(states::w_state(3)).s1_prime, 2.0 / 3.0, 1e-12);

    const auto product = profile_phi(states::basis_state({2, 2, 2}, 0));
    EXPECT_NEAR(product.s1_prime, 1.0, 1e-12);
    EXPECT_EQ(product.m_prime_rank, 1);
    EXPECT_EQ(product.m_prime, 2);

    EXPECT_THROW(profile_phi(states::basis_state({2}, 0)), ValidationError);
}

TEST(ProfilePhi, InvariantsHold) {
    std::mt19937_64 rng(21);
    for (const Dims &dims : {Dims{2, 2, 2}, Dims{2, 3, 2}, Dims{2, 2, 2, 2}}) {
        const auto profile = profile_phi(sampling::haar_pure_state(dims, rng));
        double best = 0;
        for (const auto &[cut, spec] : profile.spectra) best = std::max(best, spec.coeffs_sq[0]);
        EXPECT_EQ(profile.s1_prime, best);
        EXPECT_LE(profile.m_prime_rank, profile.m_prime);
    }
}

TEST(ProfilePhi, QuditDimensionBasedMPrime) {
    std::mt19937_64 rng(2);
    // Cuts of {2,3,4}: 2|12, 6|4, 8|3 -> min dims 2, 4, 3.
    EXPECT_EQ(profile_phi(sampling::haar_pure_state({2, 3, 4}, rng)).m_prime, 4);
}

TEST(ProfilePhi, WorkerCountDoesNotChangeResult) {
    std::mt19937_64 rng(4);
    for (const auto &phi : {states::linear_cluster(8), states::w_state(7), sampling::haar_pure_state({2, 3, 2, 2}, rng)}) {
        const auto serial = profile_phi(phi, {1});
        for (unsigned workers : {2u, 3u, 8u}) {
            const auto parallel = profile_phi(phi, {workers});
            EXPECT_EQ(parallel.s1_prime, serial.s1_prime);
            EXPECT_EQ(parallel.m_prime, serial.m_prime);
            EXPECT_EQ(parallel.m_prime_rank, serial.m_prime_rank);
            ASSERT_EQ(parallel.spectra.size(), serial.spectra.size());
            for (std::size_t i = 0; i < serial.spectra.size(); ++i) {
                EXPECT_EQ(parallel.spectra[i].first, serial.spectra[i].first);
                EXPECT_EQ(parallel.spectra[i].second.coeffs_sq, serial.spectra[i].second.coeffs_sq);
            }
        }
    }
}

TEST(SValue, Examples) {
    EXPECT_NEAR(s_value(0.710, 0.5), 1.42, 1e-15);
    EXPECT_EQ(s_value(0.3, 0.5), 1.0);
    EXPECT_EQ(s_value(0.625, 2.0 / 3.0), 1.0);
    EXPECT_NEAR(s_value(0.6667, 2.0 / 3.0), 1.00005, 1e-12);
    EXPECT_THROW(s_value(1.2, 0.5), ValidationError);
    EXPECT_THROW(s_value(0.5, 0.0), ValidationError);
    EXPECT_THROW(s_value(0.5, 1.5), ValidationError);
}

TEST(CrenLb, Examples) {
    EXPECT_NEAR(cren_lb(1.42), 0.420, 5e-4);
    EXPECT_EQ(cren_lb(1.0), 0.0);
    // GHZ-diagonal shortcut: with s1' = 1/2 the bound is 2F - 1.
    for (double f : {0.55, 0.7, 0.93}) EXPECT_NEAR(cren_lb(s_value(f, 0.5)), 2 * f - 1, 1e-15);
}

TEST(ConcurrenceLb, PublishedValues) {
    EXPECT_NEAR(concurrence_lb(1.42, 8), 0.0794, 5e-5);
    EXPECT_NEAR(concurrence_lb(1.146, 32), 0.0066, 5e-5);
    EXPECT_EQ(concurrence_lb(1.0, 5), 0.0);
    EXPECT_THROW(concurrence_lb(1.2, 1), ValidationError);
}

TEST(GConcurrenceLb, ClampsAndMatchesOracleOnNearBellState) {
    EXPECT_EQ(gconcurrence_lb(1.42, 8), 0.0);
    EXPECT_NEAR(gconcurrence_lb_raw(1.42, 8), -5.58, 1e-12);
    EXPECT_EQ(gconcurrence_lb(1.0, 2), 0.0);
    EXPECT_NEAR(gconcurrence_lb(1.9, 2), 0.9, 1e-15);

    // cos t|00> + sin t|11> with sin 2t = 0.9 and phi = Bell gives S = 1.9; the
    // bound is tight there.
    const double t = 0.5 * std::asin(0.9);
    CVector<double> amp = CVector<double>::Zero(4);
    amp(0) = std::cos(t);
    amp(3) = std::sin(t);
    const PureState psi({2, 2}, amp);
    const auto bell = states::ghz(2);
    const auto profile = profile_phi(bell);
    const double s = s_value(fidelity_pure(DensityOperator::pure(psi), bell), profile.s1_prime);
    EXPECT_NEAR(s, 1.9, 1e-12);
    EXPECT_NEAR(gconcurrence_lb(s, profile.m_prime), oracle::gme_measure_pure(psi, oracle::Measure::GConcurrence), 1e-12);
}

TEST(Gamma, EndpointsAreExact) {
    for (int m = 2; m <= 2048; m = m < 16 ? m + 1 : m * 2) {
        EXPECT_EQ(gamma(1.0, m), 1.0) << m;
        EXPECT_EQ(gamma(static_cast<double>(m), m), 1.0 / m) << m;
    }
}

TEST(Gamma, MatchesTextbookForm) {
    EXPECT_NEAR(gamma(1.42, 8), 0.99460, 5e-6);
    for (int m : {2, 3, 8, 64, 1024})
        for (double s = 1.0; s <= m; s += (m - 1) / 37.0) EXPECT_NEAR(gamma(s, m), gamma_reference(s, m), 1e-13);
    EXPECT_THROW(gamma(0.5, 4), ValidationError);
    EXPECT_THROW(gamma(4.1, 4), ValidationError);
}

TEST(GeometricLb, PublishedValues) {
    EXPECT_NEAR(geometric_lb(1.42, 8), 0.00540, 1e-5);
    EXPECT_NEAR(geometric_lb(1.146, 32), 0.00016, 1e-5);
    EXPECT_EQ(geometric_lb(1.0, 8), 0.0);
}

TEST(Witness, Examples) {
    const auto ghz3 = states::ghz(3);
    const auto profile = profile_phi(ghz3);
    EXPECT_NEAR(gme_witness_value(DensityOperator::pure(states::basis_state({2, 2, 2}, 0)), ghz3, profile), 0.0, 1e-15);
    EXPECT_NEAR(gme_witness_value(DensityOperator::pure(ghz3), ghz3, profile), -0.5, 1e-15);
    const DensityOperator mixed({2, 2, 2}, CMatrix<double>::Identity(8, 8) / 8.0);
    EXPECT_NEAR(gme_witness_value(mixed, ghz3, profile), 0.375, 1e-15);
}

TEST(Witness, NegativeExactlyWhenSExceedsOne) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    PhiProfile profile;
    profile.m_prime = 4;
    profile.m_prime_rank = 4;
    for (int i = 0; i < 20000; ++i) {
        profile.s1_prime = 0.25 + 0.75 * unit(rng);
        // Half the draws sit on the detection threshold or one ulp from it.
        double f = unit(rng);
        if (i % 2 == 0) {
            f = profile.s1_prime;
            if (i % 4 == 0) f = std::nextafter(f, 2.0);
            if (i % 8 == 0) f = std::nextafter(profile.s1_prime, 0.0);
            f = std::min(f, 1.0);
        }
        const auto r = bounds_from_fidelity(f, profile);
        const bool witness = r.witness_value < 0;
        EXPECT_EQ(witness, r.s > 1) << f << " " << profile.s1_prime;
        EXPECT_EQ(r.s > 1, r.cren.value > 0);
    }
}

TEST(BoundsFromFidelity, ClusterExamples) {
    const auto profile = profile_phi(states::linear_cluster(4));
    EXPECT_NEAR(profile.s1_prime, 0.5, 1e-12);
    EXPECT_NEAR(bounds_from_fidelity(0.9176, profile).cren.value, 0.8352, 1e-12);

    PhiProfile half;
    half.s1_prime = 0.5;
    half.m_prime = 64;
    half.m_prime_rank = 64;
    EXPECT_NEAR(bounds_from_fidelity(0.5544, half).cren.value, 0.1088, 1e-12);

    const auto none = bounds_from_fidelity(0.4, half);
    EXPECT_EQ(none.s, 1.0);
    EXPECT_EQ(none.cren.value, 0.0);
    EXPECT_EQ(none.concurrence.value, 0.0);
    EXPECT_EQ(none.gconcurrence.value, 0.0);
    EXPECT_EQ(none.geometric.value, 0.0);
    EXPECT_TRUE(none.gconcurrence.clamped);
}

TEST(BoundsFromFidelity, ReportsInvariantsAndSigmaInterval) {
    const auto profile = profile_phi(states::ghz(6));
    GmeOptions options;
    options.fidelity_sigma = 0.016;
    const auto r = bounds_from_fidelity(0.710, profile, options);
    EXPECT_EQ(r.s, std::max(0.710 / profile.s1_prime, 1.0));
    ASSERT_TRUE(r.s_interval.has_value());
    EXPECT_NEAR(r.s_interval->low, 1.388, 1e-12);
    EXPECT_NEAR(r.s_interval->high, 1.452, 1e-12);
    EXPECT_TRUE(r.gconcurrence.clamped);
    EXPECT_NEAR(r.gconcurrence.raw, 1 - 8 + 1.42, 1e-12);
    EXPECT_FALSE(r.cren.clamped);
}

TEST(BoundsFromFidelity, RankModeUsesSchmidtRank) {
    const auto profile = profile_phi(states::ghz(6));
    const auto r = bounds_from_fidelity(0.710, profile, {MPrimeMode::Rank, std::nullopt});
    EXPECT_EQ(r.m_prime, 2);
    EXPECT_NEAR(r.concurrence.value, 0.42, 1e-12);
}

TEST(Monotonicity, AllBoundsNonDecreasingInS) {
    for (int m : {2, 3, 4, 8, 16, 64}) {
        double prev[4] = {0, 0, 0, 0};
        for (double s = 1.0; s <= m; s += 1e-3) {
            const double now[4] = {cren_lb(s), concurrence_lb(s, m), gconcurrence_lb(s, m), geometric_lb(s, m)};
            for (int k = 0; k < 4; ++k) {
                EXPECT_GE(now[k], prev[k] - 1e-12) << "bound " << k << " m=" << m << " S=" << s;
                prev[k] = now[k];
            }
        }
    }
}

TEST(Monotonicity, GammaInMPrimeAndS1Prime) {
    // Non-decreasing in m' at fixed S > 1.
    for (double s : {1.01, 1.2, 1.5, 1.9}) {
        double prev = 0;
        for (int m = 2; m <= 64; ++m) {
            const double g = gamma(s, m);
            EXPECT_GE(g, prev - 1e-12) << "S=" << s << " m=" << m;
            prev = g;
        }
    }
    // Non-decreasing in s1' at fixed F, s1' in [F, 1].
    for (double f : {0.3, 0.5, 0.7, 0.9})
        for (int m : {2, 4, 16, 64}) {
            double prev = 0;
            for (double s1 = std::max(f, 1.0 / m); s1 <= 1.0; s1 += 1e-3) {
                const double g = gamma(s_value(f, s1), m);
                EXPECT_GE(g, prev - 1e-12);
                prev = g;
            }
        }
}

TEST(Validity, BoundsBelowExactPureMeasures) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        const Dims dims(static_cast<std::size_t>(3 + trial % 2), 2);
        const auto psi = sampling::haar_pure_state(dims, rng);
        const auto r = gme_bounds(DensityOperator::pure(psi), psi, profile_phi(psi));
        EXPECT_LE(r.cren.value, oracle::gme_measure_pure(psi, oracle::Measure::Cren) + 1e-9);
        EXPECT_LE(r.concurrence.value, oracle::gme_measure_pure(psi, oracle::Measure::Concurrence) + 1e-9);
        EXPECT_LE(r.gconcurrence.value, oracle::gme_measure_pure(psi, oracle::Measure::GConcurrence) + 1e-9);
        EXPECT_LE(r.geometric.value, oracle::gme_measure_pure(psi, oracle::Measure::GeometricEntanglement) + 1e-9);
    }
}
