#include "fidbound/sampling.hpp"

namespace fidbound::sampling {

Rng stream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

CMatrix<double> gaussian_matrix(long rows, long cols, Rng &rng) {
    std::normal_distribution<double> normal;
    CMatrix<double> g(rows, cols);
    for (long j = 0; j < cols; ++j)
        for (long i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = {re, im};
        }
    return g;
}

CMatrix<double> isometry_from(const CMatrix<double> &g) {
    Eigen::HouseholderQR<CMatrix<double>> qr(g);
    CMatrix<double> q = qr.householderQ() * CMatrix<double>::Identity(g.rows(), g.cols());
    // Fix the column phases against diag(R) so the map g -> q is Haar-covariant.
    const auto &r = qr.matrixQR();
    for (long j = 0; j < g.cols(); ++j) {
        const auto d = r(j, j);
        if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

CMatrix<double> random_isometry(long rows, long cols, Rng &rng) {
    if (rows < cols) throw ValidationError(ErrorKind::DimensionMismatch, "isometry needs rows >= cols");
    return isometry_from(gaussian_matrix(rows, cols, rng));
}

PureState haar_pure_state(const Dims &dims, Rng &rng) {
    CVector<double> v = gaussian_matrix(total_dimension(dims), 1, rng).col(0);
    v.normalize();
    return {dims, v};
}

DensityOperator random_density(const Dims &dims, int rank, Rng &rng) {
    const long dim = total_dimension(dims);
    if (rank < 1 || rank > dim) throw ValidationError(ErrorKind::OutOfDomain, "rank outside [1, dim]");
    const CMatrix<double> w = gaussian_matrix(dim, rank, rng);
    CMatrix<double> m = w * w.adjoint();
    m /= m.trace().real();
    return {dims, m};
}

std::vector<double> random_probabilities(std::size_t count, Rng &rng) {
    std::exponential_distribution<double> exp_dist(1.0);
    std::vector<double> p(count);
    double total = 0;
    for (auto &x : p) total += (x = exp_dist(rng));
    for (auto &x : p) x /= total;
    return p;
}

} // namespace fidbound::sampling
