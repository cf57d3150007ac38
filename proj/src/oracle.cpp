#include "fidbound/oracle.hpp"

#include <limits>
#include <thread>

namespace fidbound::oracle {

std::string_view to_string(Measure measure) {
    switch (measure) {
    case Measure::Cren: return "cren";
    case Measure::Concurrence: return "concurrence";
    case Measure::GConcurrence: return "gconcurrence";
    case Measure::GeometricEntanglement: return "geometric";
    case Measure::L1Coherence: return "l1";
    case Measure::GeometricCoherence: return "geometric_coherence";
    case Measure::CoherenceOfFormation: return "formation";
    }
    return "unknown";
}

bool is_entanglement(Measure measure) {
    return measure == Measure::Cren || measure == Measure::Concurrence || measure == Measure::GConcurrence ||
           measure == Measure::GeometricEntanglement;
}

namespace {

// Reduced state on the side of the cut with the smaller dimension (alpha on ties).
CMatrix<double> smaller_side_reduced(const PureState &psi, const Bipartition &alpha) {
    const CMatrix<double> m = reshape_by_bipartition(psi, alpha);
    if (alpha.d_alpha() <= alpha.d_alphabar()) return m * m.adjoint();
    return m.transpose() * m.conjugate();
}

RVector<double> reduced_eigenvalues(const PureState &psi, const Bipartition &alpha) {
    Eigen::SelfAdjointEigenSolver<CMatrix<double>> es(smaller_side_reduced(psi, alpha), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseMax(0.0);
}

double shannon_entropy_bits(const RVector<double> &p) {
    double h = 0;
    for (double x : p)
        if (x > 0) h -= x * std::log2(x);
    return h;
}

} // namespace

double negativity_pure_trace_norm(const PureState &psi, const Bipartition &alpha) {
    return trace_norm(partial_transpose(psi.projector(), psi.dims(), alpha)) - 1.0;
}

double negativity_pure_schmidt_sum(const PureState &psi, const Bipartition &alpha) {
    const auto spec = schmidt_spectrum(psi, alpha);
    double sum = 0;
    for (double c : spec.coeffs_sq) sum += std::sqrt(c);
    return sum * sum - 1.0;
}

double negativity_pure(const PureState &psi, const Bipartition &alpha) {
    const double via_trace = negativity_pure_trace_norm(psi, alpha);
    const double via_schmidt = negativity_pure_schmidt_sum(psi, alpha);
    if (std::abs(via_trace - via_schmidt) > 1e-8)
        throw NumericalError("negativity routes disagree: " + std::to_string(via_trace) + " vs " + std::to_string(via_schmidt));
    return via_schmidt;
}

double concurrence_pure(const PureState &psi, const Bipartition &alpha) {
    const CMatrix<double> reduced = smaller_side_reduced(psi, alpha);
    const double purity = (reduced * reduced).trace().real();
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
}

double gconcurrence_pure(const PureState &psi, const Bipartition &alpha) {
    const RVector<double> ev = reduced_eigenvalues(psi, alpha);
    const auto m = static_cast<double>(ev.size());
    double log_det = 0;
    for (double x : ev) {
        if (x <= tolerance::rank_eps) return 0.0;
        log_det += std::log(x);
    }
    return m * std::exp(log_det / m);
}

double geometric_pure(const PureState &psi, const Bipartition &alpha) {
    return std::max(0.0, 1.0 - reduced_eigenvalues(psi, alpha).maxCoeff());
}

double gme_measure_pure(const PureState &psi, Measure measure) {
    if (!is_entanglement(measure)) throw ValidationError(ErrorKind::OutOfDomain, "not an entanglement measure");
    double best = std::numeric_limits<double>::infinity();
    for (const auto &cut : enumerate_bipartitions(psi.dims())) {
        double value = 0;
        switch (measure) {
        case Measure::Cren: {
            // Schmidt-sum route via reduced eigenvalues; the trace-norm route is
            // checked separately in negativity_pure.
            double sum = 0;
            for (double x : reduced_eigenvalues(psi, cut)) sum += std::sqrt(x);
            value = sum * sum - 1.0;
            break;
        }
        case Measure::Concurrence: value = concurrence_pure(psi, cut); break;
        case Measure::GConcurrence: value = gconcurrence_pure(psi, cut); break;
        default: value = geometric_pure(psi, cut); break;
        }
        best = std::min(best, value);
    }
    return best;
}

double coherence_pure(const PureState &psi, Measure measure, const ReferenceBasis &basis) {
    if (is_entanglement(measure)) throw ValidationError(ErrorKind::OutOfDomain, "not a coherence measure");
    const CVector<double> d = basis.coordinates(psi.amplitudes());
    switch (measure) {
    case Measure::L1Coherence: {
        const CMatrix<double> rho = d * d.adjoint();
        const double all = rho.cwiseAbs().sum();
        return all - rho.diagonal().cwiseAbs().sum();
    }
    case Measure::GeometricCoherence: return std::max(0.0, 1.0 - d.cwiseAbs2().maxCoeff());
    default: return shannon_entropy_bits(d.cwiseAbs2());
    }
}

double coherence_pure(const PureState &psi, Measure measure) {
    return coherence_pure(psi, measure, ReferenceBasis::computational(psi.dimension()));
}

double measure_pure(const PureState &psi, Measure measure, const ReferenceBasis &basis) {
    return is_entanglement(measure) ? gme_measure_pure(psi, measure) : coherence_pure(psi, measure, basis);
}

namespace {

struct Spectral {
    CMatrix<double> weighted; // dim x rank, columns sqrt(lambda_k) |v_k>
};

Spectral weighted_eigenvectors(const DensityOperator &rho, double cutoff) {
    Eigen::SelfAdjointEigenSolver<CMatrix<double>> es(rho.matrix());
    const auto &values = es.eigenvalues();
    if (values.minCoeff() < -tolerance::psd) throw ValidationError(ErrorKind::NotPositive, "density operator is not PSD");
    std::vector<long> kept;
    double total = 0;
    for (long k = values.size() - 1; k >= 0; --k)
        if (values(k) > cutoff) {
            kept.push_back(k);
            total += values(k);
        }
    Spectral s;
    s.weighted.resize(rho.dimension(), static_cast<long>(kept.size()));
    for (std::size_t j = 0; j < kept.size(); ++j)
        s.weighted.col(static_cast<long>(j)) = std::sqrt(values(kept[j]) / total) * es.eigenvectors().col(kept[j]);
    return s;
}

// Average measure of the ensemble with unnormalized members weighted * U^T.
double ensemble_value(const DensityOperator &rho, const CMatrix<double> &weighted, const CMatrix<double> &isometry,
                      Measure measure, const ReferenceBasis &basis) {
    const CMatrix<double> members = weighted * isometry.transpose();
    double total = 0;
    for (long j = 0; j < members.cols(); ++j) {
        const double p = members.col(j).squaredNorm();
        if (p < 1e-14) continue;
        const PureState psi(rho.dims(), members.col(j) / std::sqrt(p));
        total += p * measure_pure(psi, measure, basis);
    }
    return total;
}

} // namespace

RoofResult convex_roof_upper_detail(const DensityOperator &rho, Measure measure, const RoofOptions &options) {
    if (options.trials < 0) throw ValidationError(ErrorKind::OutOfDomain, "negative trial count");
    const auto basis = options.basis.value_or(ReferenceBasis::computational(rho.dimension()));
    const auto spectral = weighted_eigenvectors(rho, options.eigen_cutoff);
    const long rank = spectral.weighted.cols();

    RoofResult result;
    result.rank = static_cast<int>(rank);
    result.value = ensemble_value(rho, spectral.weighted, CMatrix<double>::Identity(rank, rank), measure, basis);
    if (rank == 1) return result;

    struct Trial {
        double value = std::numeric_limits<double>::infinity();
        CMatrix<double> params;
    };
    std::vector<Trial> trials(static_cast<std::size_t>(options.trials));
    auto run_trial = [&](std::size_t t) {
        auto rng = sampling::stream(options.seed, t);
        std::uniform_int_distribution<long> members(rank, 2 * rank);
        const long k = members(rng);
        trials[t].params = sampling::gaussian_matrix(k, rank, rng);
        trials[t].value =
            ensemble_value(rho, spectral.weighted, sampling::isometry_from(trials[t].params), measure, basis);
    };
    const unsigned workers =
        std::max(1u, std::min<unsigned>(options.workers == 0 ? std::thread::hardware_concurrency() : options.workers,
                                        static_cast<unsigned>(std::max(options.trials, 1))));
    if (workers == 1) {
        for (std::size_t t = 0; t < trials.size(); ++t) run_trial(t);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t t = w; t < trials.size(); t += workers) run_trial(t);
            });
    }

    // Lowest value wins; ties go to the lowest trial index.
    std::size_t best = trials.size();
    for (std::size_t t = 0; t < trials.size(); ++t)
        if (best == trials.size() || trials[t].value < trials[best].value) best = t;
    if (best == trials.size()) return result;

    // Coordinate descent over the real and imaginary parts of the Gaussian
    // parameters of the best trial.
    CMatrix<double> params = trials[best].params;
    double value = trials[best].value;
    double step = options.initial_step;
    const long coords = 2 * params.size();
    for (int s = 0; s < options.refine_steps; ++s) {
        const long c = s % coords;
        const long entry = c / 2;
        const std::complex<double> delta = (c % 2 == 0) ? std::complex<double>(step, 0) : std::complex<double>(0, step);
        bool improved = false;
        for (double sign : {1.0, -1.0}) {
            CMatrix<double> trial = params;
            trial(entry % params.rows(), entry / params.rows()) += sign * delta;
            const double v = ensemble_value(rho, spectral.weighted, sampling::isometry_from(trial), measure, basis);
            if (v < value) {
                value = v;
                params = std::move(trial);
                improved = true;
                break;
            }
        }
        if (!improved) step *= 0.5;
    }
    if (value < result.value) {
        result.value = value;
        result.best_trial = static_cast<int>(best);
    }
    return result;
}

double convex_roof_upper(const DensityOperator &rho, Measure measure, const RoofOptions &options) {
    return convex_roof_upper_detail(rho, measure, options).value;
}

double ghz_diagonal_analytic(std::span<const double> probs) {
    double best = 0;
    for (double p : probs) best = std::max(best, 2.0 * p - 1.0);
    return best;
}

} // namespace fidbound::oracle
