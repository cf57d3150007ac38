#pragma once

// Dense complex linear algebra over multipartite registers.
//
// Index convention: a basis index of an N-party register is the big-endian
// mixed-radix number (i_1 i_2 ... i_N) with party 1 most significant. When a
// register is split by a bipartition, each side keeps ascending party order
// and is again read big-endian.

#include "fidbound/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace fidbound {

template <std::floating_point Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <std::floating_point Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <std::floating_point Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using Dims = std::vector<int>;
using PartyMask = std::uint64_t;

namespace tolerance {
inline constexpr double norm = 1e-9;
inline constexpr double hermitian = 1e-9;
inline constexpr double trace = 1e-9;
inline constexpr double psd = 1e-9;
inline constexpr double imaginary = 1e-9;
inline constexpr double rank_eps = 1e-12;

/// `tol` widened to a few ulps of Real for single-precision instantiations.
template <std::floating_point Real>
constexpr Real scaled(double tol) {
    return std::max(static_cast<Real>(tol), Real(64) * std::numeric_limits<Real>::epsilon());
}
} // namespace tolerance

inline long total_dimension(const Dims &dims) {
    long total = 1;
    for (int d : dims) total *= d;
    return total;
}

inline void check_dims(const Dims &dims) {
    if (dims.empty()) throw ValidationError(ErrorKind::DimensionMismatch, "register has no parties");
    if (dims.size() > 63) throw ValidationError(ErrorKind::DimensionMismatch, "more than 63 parties");
    for (int d : dims)
        if (d < 2) throw ValidationError(ErrorKind::DimensionMismatch, "local dimension below 2");
}

/// Split of the parties into alpha (bits set in `mask`, bit k = party k+1)
/// and its complement.
class Bipartition {
  public:
    static Bipartition make(const Dims &dims, PartyMask mask) {
        check_dims(dims);
        const auto n = static_cast<int>(dims.size());
        const PartyMask full = (PartyMask{1} << n) - 1;
        if (mask == 0 || (mask & ~full) != 0 || mask == full)
            throw ValidationError(ErrorKind::InvalidBipartition,
                                  "mask " + std::to_string(mask) + " is not a proper nonempty subset of " +
                                      std::to_string(n) + " parties");
        Bipartition b;
        b.mask_ = mask;
        b.parties_ = n;
        for (int k = 0; k < n; ++k) (contains(mask, k) ? b.d_alpha_ : b.d_alphabar_) *= dims[k];
        return b;
    }

    /// From 1-based party indices.
    static Bipartition from_parties(const Dims &dims, const std::vector<int> &parties) {
        PartyMask mask = 0;
        for (int p : parties) {
            if (p < 1 || p > static_cast<int>(dims.size()))
                throw ValidationError(ErrorKind::InvalidBipartition, "party index " + std::to_string(p) + " out of range");
            mask |= PartyMask{1} << (p - 1);
        }
        return make(dims, mask);
    }

    PartyMask mask() const { return mask_; }
    int parties() const { return parties_; }
    long d_alpha() const { return d_alpha_; }
    long d_alphabar() const { return d_alphabar_; }
    bool in_alpha(int party) const { return contains(mask_, party); }

    Bipartition complement(const Dims &dims) const { return make(dims, ~mask_ & ((PartyMask{1} << parties_) - 1)); }
    bool canonical() const { return (mask_ & 1u) != 0; }
    Bipartition canonicalized(const Dims &dims) const { return canonical() ? *this : complement(dims); }

    /// 1-based party list of alpha.
    std::vector<int> alpha_parties() const {
        std::vector<int> out;
        for (int k = 0; k < parties_; ++k)
            if (in_alpha(k)) out.push_back(k + 1);
        return out;
    }

    friend bool operator==(const Bipartition &, const Bipartition &) = default;

  private:
    static bool contains(PartyMask mask, int k) { return ((mask >> k) & 1u) != 0; }

    PartyMask mask_ = 0;
    int parties_ = 0;
    long d_alpha_ = 1;
    long d_alphabar_ = 1;
};

/// Canonical bipartitions (party 1 in alpha), ascending by mask value.
inline std::vector<Bipartition> enumerate_bipartitions(const Dims &dims) {
    check_dims(dims);
    if (dims.size() < 2) throw ValidationError(ErrorKind::InvalidBipartition, "need at least two parties");
    const auto n = dims.size();
    const PartyMask count = (PartyMask{1} << (n - 1)) - 1;
    std::vector<Bipartition> out;
    out.reserve(count);
    for (PartyMask rest = 0; rest < count; ++rest) out.push_back(Bipartition::make(dims, 1u | (rest << 1)));
    return out;
}

namespace detail {

// For every full basis index, its joint index on the alpha side and on the
// complement side (both big-endian in ascending party order).
struct SplitTable {
    std::vector<long> alpha;
    std::vector<long> rest;
};

inline SplitTable split_table(const Dims &dims, const Bipartition &bp) {
    const long total = total_dimension(dims);
    SplitTable t;
    t.alpha.resize(total);
    t.rest.resize(total);
    std::vector<int> digits(dims.size(), 0);
    for (long index = 0; index < total; ++index) {
        long a = 0, r = 0;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            if (bp.in_alpha(static_cast<int>(k)))
                a = a * dims[k] + digits[k];
            else
                r = r * dims[k] + digits[k];
        }
        t.alpha[index] = a;
        t.rest[index] = r;
        for (auto k = static_cast<long>(dims.size()) - 1; k >= 0; --k) {
            if (++digits[k] < dims[k]) break;
            digits[k] = 0;
        }
    }
    return t;
}

// Inverse of split_table: full index from (alpha index, rest index).
inline std::vector<long> compose_table(const Bipartition &bp, const SplitTable &t) {
    std::vector<long> full(static_cast<std::size_t>(bp.d_alpha() * bp.d_alphabar()));
    for (std::size_t index = 0; index < t.alpha.size(); ++index)
        full[static_cast<std::size_t>(t.alpha[index] * bp.d_alphabar() + t.rest[index])] = static_cast<long>(index);
    return full;
}

} // namespace detail

template <std::floating_point Real>
class BasicPureState {
  public:
    BasicPureState(Dims dims, CVector<Real> amplitudes) : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
        check_dims(dims_);
        if (amplitudes_.size() != total_dimension(dims_))
            throw ValidationError(ErrorKind::DimensionMismatch,
                                  "amplitude count " + std::to_string(amplitudes_.size()) + " != product of dims " +
                                      std::to_string(total_dimension(dims_)));
        const Real norm_sq = amplitudes_.squaredNorm();
        if (!(std::abs(norm_sq - Real(1)) <= tolerance::scaled<Real>(tolerance::norm)))
            throw ValidationError(ErrorKind::NotNormalized, "squared norm " + std::to_string(norm_sq));
        amplitudes_ /= std::sqrt(norm_sq);
    }

    const Dims &dims() const { return dims_; }
    int parties() const { return static_cast<int>(dims_.size()); }
    long dimension() const { return amplitudes_.size(); }
    const CVector<Real> &amplitudes() const { return amplitudes_; }

    CMatrix<Real> projector() const { return amplitudes_ * amplitudes_.adjoint(); }

  private:
    Dims dims_;
    CVector<Real> amplitudes_;
};

struct DensityIssue {
    ErrorKind kind;
    double magnitude;
};

struct DensityDiagnostic {
    std::vector<DensityIssue> issues;
    double hermitian_deviation = 0;
    double trace_deviation = 0;
    double min_eigenvalue = 0;

    bool ok() const { return issues.empty(); }
};

/// Checks Hermiticity, unit trace and positivity within the package tolerances.
template <typename Derived>
DensityDiagnostic validate_density(const Eigen::MatrixBase<Derived> &matrix) {
    using Scalar = typename Derived::Scalar;
    using Real = typename Eigen::NumTraits<Scalar>::Real;
    DensityDiagnostic diag;
    if (matrix.rows() != matrix.cols() || matrix.rows() == 0) {
        diag.issues.push_back({ErrorKind::DimensionMismatch, static_cast<double>(matrix.rows() - matrix.cols())});
        return diag;
    }
    const CMatrix<Real> m = matrix.template cast<std::complex<Real>>();
    diag.hermitian_deviation = static_cast<double>((m - m.adjoint()).cwiseAbs().maxCoeff());
    diag.trace_deviation = static_cast<double>(std::abs(m.trace() - std::complex<Real>(1)));
    const CMatrix<Real> sym = (m + m.adjoint()) / Real(2);
    Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(sym, Eigen::EigenvaluesOnly);
    diag.min_eigenvalue = static_cast<double>(es.eigenvalues().minCoeff());
    if (diag.hermitian_deviation > tolerance::scaled<Real>(tolerance::hermitian))
        diag.issues.push_back({ErrorKind::NotHermitian, diag.hermitian_deviation});
    if (diag.trace_deviation > tolerance::scaled<Real>(tolerance::trace))
        diag.issues.push_back({ErrorKind::TraceMismatch, diag.trace_deviation});
    if (diag.min_eigenvalue < -tolerance::scaled<Real>(tolerance::psd))
        diag.issues.push_back({ErrorKind::NotPositive, diag.min_eigenvalue});
    return diag;
}

template <std::floating_point Real>
class BasicDensityOperator {
  public:
    /// Symmetrizes (M + M^dagger)/2 when the input passes validation; throws otherwise.
    BasicDensityOperator(Dims dims, const CMatrix<Real> &matrix) : dims_(std::move(dims)) {
        check_dims(dims_);
        const long total = total_dimension(dims_);
        if (matrix.rows() != total || matrix.cols() != total)
            throw ValidationError(ErrorKind::DimensionMismatch, "matrix side " + std::to_string(matrix.rows()) + "x" +
                                                                    std::to_string(matrix.cols()) + " != " +
                                                                    std::to_string(total));
        const auto diag = validate_density(matrix);
        if (!diag.ok()) {
            const auto &issue = diag.issues.front();
            throw ValidationError(issue.kind, "density operator rejected (deviation " + std::to_string(issue.magnitude) + ")");
        }
        matrix_ = (matrix + matrix.adjoint()) / Real(2);
    }

    static BasicDensityOperator pure(const BasicPureState<Real> &psi) { return {psi.dims(), psi.projector()}; }

    const Dims &dims() const { return dims_; }
    long dimension() const { return matrix_.rows(); }
    const CMatrix<Real> &matrix() const { return matrix_; }

  private:
    Dims dims_;
    CMatrix<Real> matrix_;
};

template <std::floating_point Real>
struct BasicSchmidtSpectrum {
    std::vector<Real> coeffs_sq;
    int rank = 0;

    Real largest() const { return coeffs_sq.front(); }
};

using PureState = BasicPureState<double>;
using DensityOperator = BasicDensityOperator<double>;
using SchmidtSpectrum = BasicSchmidtSpectrum<double>;

namespace detail {
inline void check_bipartition(const Dims &dims, const Bipartition &bp) {
    if (bp.parties() != static_cast<int>(dims.size()))
        throw ValidationError(ErrorKind::InvalidBipartition, "bipartition built for " + std::to_string(bp.parties()) +
                                                                 " parties, state has " + std::to_string(dims.size()));
    // Re-validate the dimensions carried by bp against these dims.
    const auto fresh = Bipartition::make(dims, bp.mask());
    if (fresh.d_alpha() != bp.d_alpha()) throw ValidationError(ErrorKind::InvalidBipartition, "bipartition dims mismatch");
}
} // namespace detail

/// Amplitudes as a d_alpha x d_alphabar matrix.
template <std::floating_point Real>
CMatrix<Real> reshape_by_bipartition(const BasicPureState<Real> &psi, const Bipartition &alpha) {
    detail::check_bipartition(psi.dims(), alpha);
    const auto table = detail::split_table(psi.dims(), alpha);
    CMatrix<Real> out(alpha.d_alpha(), alpha.d_alphabar());
    for (long index = 0; index < psi.dimension(); ++index) out(table.alpha[index], table.rest[index]) = psi.amplitudes()(index);
    return out;
}

/// Squared Schmidt coefficients in non-increasing order.
template <std::floating_point Real>
BasicSchmidtSpectrum<Real> schmidt_spectrum(const BasicPureState<Real> &psi, const Bipartition &alpha) {
    const CMatrix<Real> m = reshape_by_bipartition(psi, alpha);
    // Eigenvalues of the reduced state on the smaller side. BDCSVD in Eigen 3.4
    // loses weight on the heavily degenerate spectra of stabilizer states.
    const CMatrix<Real> gram = m.rows() <= m.cols() ? CMatrix<Real>(m * m.adjoint()) : CMatrix<Real>(m.adjoint() * m);
    Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(gram, Eigen::EigenvaluesOnly);
    const RVector<Real> ev = es.eigenvalues();
    BasicSchmidtSpectrum<Real> spec;
    spec.coeffs_sq.resize(static_cast<std::size_t>(ev.size()));
    for (Eigen::Index i = 0; i < ev.size(); ++i) spec.coeffs_sq[static_cast<std::size_t>(i)] = std::max(ev(i), Real(0));
    std::sort(spec.coeffs_sq.begin(), spec.coeffs_sq.end(), std::greater<>());
    const Real sum = std::accumulate(spec.coeffs_sq.begin(), spec.coeffs_sq.end(), Real(0));
    if (std::abs(sum - Real(1)) > tolerance::scaled<Real>(tolerance::norm))
        throw ValidationError(ErrorKind::NotNormalized, "Schmidt weights sum to " + std::to_string(sum));
    for (auto &c : spec.coeffs_sq) c /= sum;
    spec.rank = static_cast<int>(std::count_if(spec.coeffs_sq.begin(), spec.coeffs_sq.end(),
                                               [](Real c) { return c > Real(tolerance::rank_eps); }));
    return spec;
}

/// <phi|rho|phi>, clamped into [0, 1] after the imaginary-part check.
template <std::floating_point Real>
Real fidelity_pure(const BasicDensityOperator<Real> &rho, const BasicPureState<Real> &phi) {
    if (rho.dims() != phi.dims()) throw ValidationError(ErrorKind::DimensionMismatch, "state and target dims differ");
    const std::complex<Real> value = phi.amplitudes().dot(rho.matrix() * phi.amplitudes());
    if (std::abs(value.imag()) > tolerance::scaled<Real>(tolerance::imaginary))
        throw NumericalError("fidelity has imaginary part " + std::to_string(value.imag()));
    return std::clamp(value.real(), Real(0), Real(1));
}

/// Reduced operator on the parties in `keep`.
template <std::floating_point Real>
BasicDensityOperator<Real> partial_trace(const BasicDensityOperator<Real> &rho, const Bipartition &keep) {
    detail::check_bipartition(rho.dims(), keep);
    const auto table = detail::split_table(rho.dims(), keep);
    const auto full = detail::compose_table(keep, table);
    const long dk = keep.d_alpha(), dr = keep.d_alphabar();
    CMatrix<Real> out = CMatrix<Real>::Zero(dk, dk);
    const auto &m = rho.matrix();
    for (long i = 0; i < dk; ++i)
        for (long j = 0; j < dk; ++j) {
            std::complex<Real> acc{0};
            for (long r = 0; r < dr; ++r) acc += m(full[i * dr + r], full[j * dr + r]);
            out(i, j) = acc;
        }
    Dims kept;
    for (std::size_t k = 0; k < rho.dims().size(); ++k)
        if (keep.in_alpha(static_cast<int>(k))) kept.push_back(rho.dims()[k]);
    return {kept, out};
}

/// Transposes the indices of the parties in alpha. Accepts any square matrix
/// over the register (not only valid density operators).
template <typename Derived>
auto partial_transpose(const Eigen::MatrixBase<Derived> &matrix, const Dims &dims, const Bipartition &alpha) {
    using Scalar = typename Derived::Scalar;
    detail::check_bipartition(dims, alpha);
    const long total = total_dimension(dims);
    if (matrix.rows() != total || matrix.cols() != total)
        throw ValidationError(ErrorKind::DimensionMismatch, "matrix does not match register");
    const auto table = detail::split_table(dims, alpha);
    const auto full = detail::compose_table(alpha, table);
    const long dr = alpha.d_alphabar();
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(total, total);
    for (long a = 0; a < total; ++a)
        for (long b = 0; b < total; ++b) {
            const long src_row = full[table.alpha[b] * dr + table.rest[a]];
            const long src_col = full[table.alpha[a] * dr + table.rest[b]];
            out(a, b) = matrix(src_row, src_col);
        }
    return out;
}

template <std::floating_point Real>
CMatrix<Real> partial_transpose(const BasicDensityOperator<Real> &rho, const Bipartition &alpha) {
    return partial_transpose(rho.matrix(), rho.dims(), alpha);
}

/// Sum of singular values.
template <typename Derived>
auto trace_norm(const Eigen::MatrixBase<Derived> &matrix) {
    using Plain = typename Derived::PlainObject;
    Eigen::JacobiSVD<Plain> svd(matrix.eval());
    return svd.singularValues().sum();
}

} // namespace fidbound
