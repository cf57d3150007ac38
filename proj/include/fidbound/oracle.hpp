#pragma once

// Brute-force reference values, independent of the bound formulas: exact
// pure-state measures and sampled convex-roof upper bounds.

#include "fidbound/coherence_bounds.hpp"
#include "fidbound/sampling.hpp"

#include <span>
#include <string_view>

namespace fidbound::oracle {

enum class Measure {
    Cren,
    Concurrence,
    GConcurrence,
    GeometricEntanglement,
    L1Coherence,
    GeometricCoherence,
    CoherenceOfFormation,
};

inline constexpr Measure all_measures[] = {Measure::Cren,
                                           Measure::Concurrence,
                                           Measure::GConcurrence,
                                           Measure::GeometricEntanglement,
                                           Measure::L1Coherence,
                                           Measure::GeometricCoherence,
                                           Measure::CoherenceOfFormation};

std::string_view to_string(Measure measure);
bool is_entanglement(Measure measure);

/// ||(|psi><psi|)^{T_alpha}||_1 - 1.
double negativity_pure_trace_norm(const PureState &psi, const Bipartition &alpha);
/// (sum_i sqrt(mu_i))^2 - 1 over the Schmidt weights.
double negativity_pure_schmidt_sum(const PureState &psi, const Bipartition &alpha);
/// Both routes; throws NumericalError if they differ by more than 1e-8.
double negativity_pure(const PureState &psi, const Bipartition &alpha);

/// sqrt(2 (1 - Tr rho_A^2)).
double concurrence_pure(const PureState &psi, const Bipartition &alpha);
/// m det(rho_A)^{1/m} with m the smaller side's dimension; 0 if rho_A on that
/// side is rank-deficient.
double gconcurrence_pure(const PureState &psi, const Bipartition &alpha);
/// 1 - largest eigenvalue of the reduced state.
double geometric_pure(const PureState &psi, const Bipartition &alpha);

/// min over canonical bipartitions of an entanglement measure.
double gme_measure_pure(const PureState &psi, Measure measure);

double coherence_pure(const PureState &psi, Measure measure, const ReferenceBasis &basis);
double coherence_pure(const PureState &psi, Measure measure);

/// Any measure on a pure state (basis used only for coherence measures).
double measure_pure(const PureState &psi, Measure measure, const ReferenceBasis &basis);

struct RoofOptions {
    int trials = 200;
    std::uint64_t seed = 0;
    int refine_steps = 50;
    double initial_step = 0.5;
    double eigen_cutoff = 1e-10;
    unsigned workers = 1;
    std::optional<ReferenceBasis> basis;
};

struct RoofResult {
    double value = 0;
    int rank = 0;
    /// -1 for the spectral decomposition itself, otherwise the trial index.
    int best_trial = -1;
};

/// Minimum of sum_j p_j E(psi_j) over the spectral decomposition and `trials`
/// random-isometry decompositions, the best of which is then refined by
/// coordinate descent. Any decomposition certifies an upper bound on the
/// convex roof.
RoofResult convex_roof_upper_detail(const DensityOperator &rho, Measure measure, const RoofOptions &options = {});
double convex_roof_upper(const DensityOperator &rho, Measure measure, const RoofOptions &options = {});

/// max_i {2 p_i - 1, 0} for a GHZ-diagonal state with weights p.
double ghz_diagonal_analytic(std::span<const double> probs);

} // namespace fidbound::oracle
