#include "numrange/block_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace numrange {

BlockMatrix::BlockMatrix(Complex alpha, Complex beta, DenseMatrix c_block, DenseMatrix d_block)
    : alpha_(alpha), beta_(beta), c_(std::move(c_block)), d_(std::move(d_block)) {
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()) ||
        !std::isfinite(beta.real()) || !std::isfinite(beta.imag()))
        throw NonFiniteEntry("non-finite scalar block");
    k_ = c_.cols();
    n_ = c_.rows() + k_;
    if (k_ < 1 || c_.rows() < 1)
        throw DimensionMismatch("block sizes must satisfy 1 <= k <= n-1");
    if (d_.rows() != k_ || d_.cols() != n_ - k_)
        throw DimensionMismatch("D block must be k x (n-k) matching C");
}

DenseMatrix BlockMatrix::assemble() const {
    DenseMatrix out(n_, n_);
    const int m = n_ - k_;
    for (int i = 0; i < m; ++i) out(i, i) = alpha_;
    for (int i = 0; i < k_; ++i) out(m + i, m + i) = beta_;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < k_; ++j) out(i, m + j) = c_(i, j);
    for (int i = 0; i < k_; ++i)
        for (int j = 0; j < m; ++j) out(m + i, j) = d_(i, j);
    return out;
}

BlockMatrix normalize_orientation(const BlockMatrix& a) {
    if (2 * a.k() <= a.n()) return a;
    return BlockMatrix(a.beta(), a.alpha(), a.d_block(), a.c_block());
}

StructuralPair structural_matrices(const BlockMatrix& a) {
    const DenseMatrix& c = a.c_block();
    const DenseMatrix& d = a.d_block();
    return {adjoint(c) * c + d * adjoint(d), d * c};
}

DenseMatrix m_theta(const StructuralPair& p, double theta) {
    const int k = p.h.rows();
    const Complex w = std::polar(1.0, -2.0 * theta);
    DenseMatrix out(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            out(i, j) = p.h(i, j) - (w * p.z(i, j) + std::conj(w * p.z(j, i)));
    return out;
}

SpectrumAtAngle spectrum_at_angle(const BlockMatrix& a, double theta) {
    if (2 * a.k() > a.n())
        throw std::invalid_argument("spectrum_at_angle: orientation not normalized (k > n/2)");
    const Complex w = std::polar(1.0, -theta);
    const double sum_im = std::imag(w * (a.alpha() + a.beta()));
    const double diff_im = std::imag(w * (a.alpha() - a.beta()));

    const StructuralPair p = structural_matrices(a);
    const EigenSystem mu = hermitian_eigensystem(m_theta(p, theta));

    SpectrumAtAngle out;
    out.theta = theta;
    out.scalar_eigenvalue = std::imag(w * a.alpha());
    out.scalar_multiplicity = a.n() - 2 * a.k();
    out.paired_eigenvalues.reserve(2 * a.k());
    const double scale = std::max(1.0, frobenius_norm(p.h));
    for (double m : mu.values) {
        double disc = diff_im * diff_im + m;
        if (disc < -1e-9 * scale)
            throw NegativeDiscriminant("spectrum_at_angle: negative discriminant");
        disc = std::sqrt(std::max(0.0, disc));
        out.paired_eigenvalues.push_back(0.5 * (sum_im + disc));
        out.paired_eigenvalues.push_back(0.5 * (sum_im - disc));
    }
    return out;
}

double support_value(const BlockMatrix& a, double theta) {
    const SpectrumAtAngle s = spectrum_at_angle(normalize_orientation(a), theta);
    double best = s.scalar_multiplicity > 0 ? s.scalar_eigenvalue
                                            : -std::numeric_limits<double>::infinity();
    for (double v : s.paired_eigenvalues) best = std::max(best, v);
    return best;
}

namespace {

DenseMatrix imaginary_part_at_angle(const BlockMatrix& a, double theta) {
    return hermitian_components(std::polar(1.0, -theta) * a.assemble()).second;
}

} // namespace

double support_value_oracle(const BlockMatrix& a, double theta) {
    return hermitian_eigensystem(imaginary_part_at_angle(a, theta)).values.front();
}

std::vector<double> spectrum_direct(const BlockMatrix& a, double theta) {
    return hermitian_eigensystem(imaginary_part_at_angle(a, theta)).values;
}

std::vector<BoundarySample> sample_boundary(const BlockMatrix& a, int samples) {
    if (samples < 4) throw InsufficientSamples("sample_boundary: need at least 4 samples");
    const Complex shift = a.center();
    const BlockMatrix a0 = a.centered();
    const DenseMatrix full0 = a0.assemble();
    const int n = a.n();

    std::vector<BoundarySample> out;
    out.reserve(samples + 2);
    for (int i = 0; i < samples; ++i) {
        const double theta = 2.0 * M_PI * i / samples;
        const EigenSystem es = hermitian_eigensystem(imaginary_part_at_angle(a0, theta));
        // Rayleigh point of the top eigenvector; on a flat portion this is
        // the solver's first ordered eigenvector, deterministic but
        // arbitrary within the segment.
        Complex point{};
        for (int r = 0; r < n; ++r) {
            Complex row{};
            for (int c = 0; c < n; ++c) row += full0(r, c) * es.vectors(c, 0);
            point += std::conj(es.vectors(r, 0)) * row;
        }
        const double support = es.values.front() + std::imag(std::polar(1.0, -theta) * shift);
        out.push_back({theta, support, point + shift});
    }
    out.push_back({0.0, std::imag(a.alpha()), a.alpha()});
    out.push_back({0.0, std::imag(a.beta()), a.beta()});
    return out;
}

} // namespace numrange
