#pragma once

// Fidelity-based lower bounds on coherence measures relative to a reference
// basis. D = max{F / |d_max|^2, 1} plays the role S plays for entanglement.

#include "fidbound/gme_bounds.hpp"

namespace fidbound {

/// Orthonormal reference basis; column i is |i>.
template <std::floating_point Real>
class BasicReferenceBasis {
  public:
    static BasicReferenceBasis computational(long dimension) {
        BasicReferenceBasis b;
        b.dimension_ = dimension;
        return b;
    }

    explicit BasicReferenceBasis(CMatrix<Real> columns) : dimension_(columns.rows()), columns_(std::move(columns)) {
        if (columns_->rows() != columns_->cols() || dimension_ == 0)
            throw ValidationError(ErrorKind::DimensionMismatch, "basis matrix must be square");
        const Real deviation =
            (columns_->adjoint() * *columns_ - CMatrix<Real>::Identity(dimension_, dimension_)).cwiseAbs().maxCoeff();
        if (deviation > Real(tolerance::norm))
            throw ValidationError(ErrorKind::NotNormalized, "basis is not orthonormal (deviation " + std::to_string(deviation) + ")");
    }

    long dimension() const { return dimension_; }
    bool is_computational() const { return !columns_.has_value(); }

    /// Coordinates <i|psi>.
    CVector<Real> coordinates(const CVector<Real> &psi) const {
        if (psi.size() != dimension_) throw ValidationError(ErrorKind::DimensionMismatch, "basis and state dimension differ");
        if (!columns_) return psi;
        return columns_->adjoint() * psi;
    }

    /// rho in this basis, <i|rho|j>.
    CMatrix<Real> in_basis(const CMatrix<Real> &rho) const {
        if (rho.rows() != dimension_) throw ValidationError(ErrorKind::DimensionMismatch, "basis and state dimension differ");
        if (!columns_) return rho;
        return columns_->adjoint() * rho * *columns_;
    }

  private:
    BasicReferenceBasis() = default;

    long dimension_ = 0;
    std::optional<CMatrix<Real>> columns_;
};

using ReferenceBasis = BasicReferenceBasis<double>;

template <std::floating_point Real>
struct BasicCoherenceProfile {
    Real d_max_sq = 0;
    long m = 0;
};

using CoherenceProfile = BasicCoherenceProfile<double>;

template <std::floating_point Real>
BasicCoherenceProfile<Real> coherence_profile(const BasicPureState<Real> &phi, const BasicReferenceBasis<Real> &basis) {
    const CVector<Real> d = basis.coordinates(phi.amplitudes());
    return {d.cwiseAbs2().maxCoeff(), d.size()};
}

template <std::floating_point Real>
BasicCoherenceProfile<Real> coherence_profile(const BasicPureState<Real> &phi) {
    return coherence_profile(phi, BasicReferenceBasis<Real>::computational(phi.dimension()));
}

/// max{fidelity / d_max_sq, 1}.
template <std::floating_point Real>
Real d_value(Real fidelity, Real d_max_sq) {
    if (!(fidelity >= 0 && fidelity <= 1)) throw ValidationError(ErrorKind::OutOfDomain, "fidelity outside [0,1]");
    if (!(d_max_sq > 0 && d_max_sq <= 1)) throw ValidationError(ErrorKind::OutOfDomain, "|d_max|^2 outside (0,1]");
    return ratio_above_one(fidelity, d_max_sq);
}

template <std::floating_point Real>
Real l1_lb(Real d) {
    return d - Real(1);
}

template <std::floating_point Real>
Real geom_coherence_lb(Real d, long m) {
    return std::max(Real(0), Real(1) - gamma(d, static_cast<Real>(m)));
}

/// -x log2 x - (1-x) log2(1-x), with H2(0) = H2(1) = 0.
template <std::floating_point Real>
Real binary_entropy(Real x) {
    if (!(x >= 0 && x <= 1)) throw ValidationError(ErrorKind::OutOfDomain, "binary entropy argument outside [0,1]");
    auto term = [](Real p) { return p > 0 ? -p * std::log2(p) : Real(0); };
    return term(x) + term(Real(1) - x);
}

enum class FormationBranch { Entropic, Linear };

template <std::floating_point Real>
struct BasicFormationBound {
    Real value = 0;
    FormationBranch branch = FormationBranch::Entropic;
};

/// Piecewise bound on the coherence of formation: entropic branch on
/// [1, 4(m-1)/m], linear branch on [4(m-1)/m, m]. For m = 2 the linear branch
/// degenerates to the point D = 2 and the entropic branch is used.
template <std::floating_point Real>
BasicFormationBound<Real> formation_lb_detail(Real d, long m) {
    if (m < 2) throw ValidationError(ErrorKind::OutOfDomain, "formation bound needs m >= 2");
    const Real mr = static_cast<Real>(m);
    if (!(d >= 1) || d > mr * (Real(1) + Real(1e-12)))
        throw ValidationError(ErrorKind::OutOfDomain, "D = " + std::to_string(d) + " outside [1, " + std::to_string(m) +
                                                          "]; fidelity inconsistent with |d_max|^2");
    d = std::min(d, mr);
    const Real branch_point = Real(4) * (mr - Real(1)) / mr;
    if (m == 2 || d <= branch_point) {
        const Real g = gamma(d, mr);
        return {binary_entropy(g) + (Real(1) - g) * std::log2(mr - Real(1)), FormationBranch::Entropic};
    }
    return {(d - mr) * std::log2(mr - Real(1)) / (mr - Real(2)) + std::log2(mr), FormationBranch::Linear};
}

template <std::floating_point Real>
Real formation_lb(Real d, long m) {
    return formation_lb_detail(d, m).value;
}

/// |d_max|^2 - <phi|rho|phi>; negative certifies coherence.
template <std::floating_point Real>
Real coherence_witness_value(const BasicDensityOperator<Real> &rho, const BasicPureState<Real> &phi,
                             const BasicCoherenceProfile<Real> &profile) {
    return profile.d_max_sq - fidelity_pure(rho, phi);
}

template <std::floating_point Real>
struct BasicCoherenceBoundReport {
    Real fidelity = 0;
    Real d_max_sq = 0;
    long m = 0;
    Real d = 1;
    std::optional<BasicInterval<Real>> d_interval;
    BasicBoundValue<Real> l1, geometric, formation;
    FormationBranch formation_branch = FormationBranch::Entropic;
    Real witness_value = 0;
};

using CoherenceBoundReport = BasicCoherenceBoundReport<double>;

template <std::floating_point Real>
BasicCoherenceBoundReport<Real> coherence_bounds_from_fidelity(Real fidelity, const BasicCoherenceProfile<Real> &profile,
                                                               std::optional<double> fidelity_sigma = {}) {
    BasicCoherenceBoundReport<Real> r;
    r.fidelity = fidelity;
    r.d_max_sq = profile.d_max_sq;
    r.m = profile.m;
    r.d = d_value(fidelity, profile.d_max_sq);
    if (fidelity_sigma) {
        const Real sigma = static_cast<Real>(*fidelity_sigma);
        if (!(sigma >= 0)) throw ValidationError(ErrorKind::OutOfDomain, "negative fidelity sigma");
        r.d_interval = BasicInterval<Real>{d_value(std::max(fidelity - sigma, Real(0)), profile.d_max_sq),
                                           d_value(std::min(fidelity + sigma, Real(1)), profile.d_max_sq)};
    }
    r.l1 = BasicBoundValue<Real>::from_raw(l1_lb(r.d));
    r.geometric = BasicBoundValue<Real>::from_raw(Real(1) - gamma(r.d, static_cast<Real>(r.m)));
    const auto formation = formation_lb_detail(r.d, r.m);
    r.formation = BasicBoundValue<Real>::from_raw(formation.value);
    r.formation_branch = formation.branch;
    r.witness_value = profile.d_max_sq - fidelity;
    return r;
}

template <std::floating_point Real>
BasicCoherenceBoundReport<Real> coherence_bounds(const BasicDensityOperator<Real> &rho, const BasicPureState<Real> &phi,
                                                 const BasicReferenceBasis<Real> &basis) {
    return coherence_bounds_from_fidelity(fidelity_pure(rho, phi), coherence_profile(phi, basis));
}

} // namespace fidbound
