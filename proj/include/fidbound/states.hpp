#pragma once

// Factories for the state families used throughout the package. All states
// are qubit registers except those built with from_amplitudes.

#include "fidbound/tensor_core.hpp"

#include <numbers>
#include <span>

namespace fidbound::states {

namespace detail {
inline void require_parties(int n, int minimum) {
    if (n < minimum) throw ValidationError(ErrorKind::DimensionMismatch, "need at least " + std::to_string(minimum) + " parties");
    if (n > 30) throw ValidationError(ErrorKind::DimensionMismatch, "explicit qubit registers limited to 30 parties");
}
} // namespace detail

template <std::floating_point Real = double>
BasicPureState<Real> from_amplitudes(Dims dims, CVector<Real> amplitudes) {
    return {std::move(dims), std::move(amplitudes)};
}

/// (|x> + e^{i theta}|~x>)/sqrt(2). Bit k of `flip` (k = 0 is party 1) sets x_k.
template <std::floating_point Real = double>
BasicPureState<Real> ghz(int n, Real relative_phase = 0, std::uint64_t flip = 0) {
    detail::require_parties(n, 2);
    const long dim = long{1} << n;
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    // Party k is bit (n-1-k) of the big-endian basis index.
    std::uint64_t x = 0;
    for (int k = 0; k < n; ++k)
        if ((flip >> k) & 1u) x |= std::uint64_t{1} << (n - 1 - k);
    CVector<Real> amp = CVector<Real>::Zero(dim);
    const Real s = Real(1) / std::sqrt(Real(2));
    amp(static_cast<long>(x)) += s;
    amp(static_cast<long>(x ^ full)) += std::polar(s, relative_phase);
    return {Dims(static_cast<std::size_t>(n), 2), amp};
}

/// The 2^n GHZ-basis states: flip patterns with party 1 unflipped in
/// ascending order, phase + before - for each pattern.
template <std::floating_point Real = double>
std::vector<BasicPureState<Real>> ghz_basis(int n) {
    detail::require_parties(n, 2);
    std::vector<BasicPureState<Real>> out;
    const std::uint64_t patterns = std::uint64_t{1} << (n - 1);
    for (std::uint64_t p = 0; p < patterns; ++p) {
        // Pattern bits index parties 2..n, big-endian so that ascending p is
        // ascending binary order of (x_2 ... x_n).
        std::uint64_t flip = 0;
        for (int k = 1; k < n; ++k)
            if ((p >> (n - 1 - k)) & 1u) flip |= std::uint64_t{1} << k;
        out.push_back(ghz<Real>(n, 0, flip));
        out.push_back(ghz<Real>(n, std::numbers::pi_v<Real>, flip));
    }
    return out;
}

template <std::floating_point Real = double>
BasicPureState<Real> w_state(int n) {
    detail::require_parties(n, 2);
    CVector<Real> amp = CVector<Real>::Zero(long{1} << n);
    const Real a = Real(1) / std::sqrt(Real(n));
    for (int k = 0; k < n; ++k) amp(long{1} << k) = a;
    return {Dims(static_cast<std::size_t>(n), 2), amp};
}

/// |+>^n followed by controlled-phase gates on (i, i+1), i = 1..n-1.
template <std::floating_point Real = double>
BasicPureState<Real> linear_cluster(int n) {
    detail::require_parties(n, 2);
    const long dim = long{1} << n;
    CVector<Real> amp = CVector<Real>::Constant(dim, std::complex<Real>(std::pow(Real(2), Real(-n) / 2)));
    for (int i = 0; i + 1 < n; ++i) {
        const int bit_a = n - 1 - i, bit_b = n - 2 - i;
        for (long index = 0; index < dim; ++index)
            if (((index >> bit_a) & 1) && ((index >> bit_b) & 1)) amp(index) = -amp(index);
    }
    return {Dims(static_cast<std::size_t>(n), 2), amp};
}

/// Basis state |index> of an arbitrary register.
template <std::floating_point Real = double>
BasicPureState<Real> basis_state(Dims dims, long index) {
    check_dims(dims);
    const long dim = total_dimension(dims);
    if (index < 0 || index >= dim) throw ValidationError(ErrorKind::DimensionMismatch, "basis index out of range");
    CVector<Real> amp = CVector<Real>::Zero(dim);
    amp(index) = 1;
    return {std::move(dims), amp};
}

/// sum_i probs_i |psi_i><psi_i| over ghz_basis(n), n = log2(probs.size()).
template <std::floating_point Real = double>
BasicDensityOperator<Real> ghz_diagonal(std::span<const Real> probs) {
    const auto count = probs.size();
    if (count < 4 || !std::has_single_bit(count))
        throw ValidationError(ErrorKind::DimensionMismatch, "GHZ-diagonal weights must number 2^n, n >= 2");
    const int n = std::countr_zero(count);
    Real total = 0;
    for (Real p : probs) {
        if (!(p >= Real(-tolerance::norm))) throw ValidationError(ErrorKind::NotPositive, "negative GHZ-diagonal weight");
        total += p;
    }
    if (std::abs(total - Real(1)) > Real(tolerance::norm))
        throw ValidationError(ErrorKind::TraceMismatch, "GHZ-diagonal weights sum to " + std::to_string(total));
    const auto basis = ghz_basis<Real>(n);
    CMatrix<Real> m = CMatrix<Real>::Zero(long{1} << n, long{1} << n);
    for (std::size_t i = 0; i < count; ++i)
        if (probs[i] != 0) m += std::max(probs[i], Real(0)) * basis[i].projector();
    return {Dims(static_cast<std::size_t>(n), 2), m};
}

template <std::floating_point Real = double>
BasicDensityOperator<Real> ghz_diagonal(const std::vector<Real> &probs) {
    return ghz_diagonal<Real>(std::span<const Real>(probs));
}

/// p |psi><psi| + (1 - p) identity / dim.
template <std::floating_point Real = double>
BasicDensityOperator<Real> white_noise_mix(const BasicPureState<Real> &psi, Real p) {
    if (!(p >= 0 && p <= 1)) throw ValidationError(ErrorKind::OutOfDomain, "mixing weight outside [0,1]");
    const long dim = psi.dimension();
    CMatrix<Real> m = p * psi.projector();
    m.diagonal().array() += (Real(1) - p) / Real(dim);
    return {psi.dims(), m};
}

} // namespace fidbound::states
