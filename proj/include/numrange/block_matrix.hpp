#pragma once

#include "numrange/linalg.hpp"

#include <vector>

namespace numrange {

struct NegativeDiscriminant : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientSamples : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Structured matrix [[alpha*I, C],[D, beta*I]] with scalar diagonal
/// blocks: C is (n-k) x k, D is k x (n-k), 1 <= k <= n-1.
class BlockMatrix {
public:
    BlockMatrix(Complex alpha, Complex beta, DenseMatrix c_block, DenseMatrix d_block);

    Complex alpha() const { return alpha_; }
    Complex beta() const { return beta_; }
    const DenseMatrix& c_block() const { return c_; }
    const DenseMatrix& d_block() const { return d_; }
    int n() const { return n_; }
    int k() const { return k_; }

    // half-difference of the scalar blocks, invariant under shifts
    Complex gamma() const { return 0.5 * (alpha_ - beta_); }
    // center of symmetry of W(A)
    Complex center() const { return 0.5 * (alpha_ + beta_); }

    // trace-centered copy: alpha -> gamma, beta -> -gamma
    BlockMatrix centered() const { return BlockMatrix(gamma(), -gamma(), c_, d_); }

    // full n x n matrix
    DenseMatrix assemble() const;

private:
    Complex alpha_;
    Complex beta_;
    DenseMatrix c_;
    DenseMatrix d_;
    int n_;
    int k_;
};

/// H = C*C + DD* (Hermitian PSD) and Z = DC, both k x k. Everything the
/// structure detectors test is a condition on this pair.
struct StructuralPair {
    DenseMatrix h;
    DenseMatrix z;
};

struct BoundarySample {
    double theta;
    double support;
    Complex point;
};

struct SpectrumAtAngle {
    double theta;
    double scalar_eigenvalue;              // Im(e^{-i theta} alpha), multiplicity n-2k
    int scalar_multiplicity;               // n - 2k (may be 0)
    std::vector<double> paired_eigenvalues; // 2k values, one +/- pair per mu_j
};

// Swap the blocks if k > n/2, leaving the numerical range unchanged.
BlockMatrix normalize_orientation(const BlockMatrix& a);

StructuralPair structural_matrices(const BlockMatrix& a);

// M(theta) = H - 2 Re(e^{-2i theta} Z), Hermitian k x k.
DenseMatrix m_theta(const StructuralPair& p, double theta);

/// Spectrum of Im(e^{-i theta} A) through the k x k reduction: the scalar
/// eigenvalue plus pairs
///   1/2 ( Im(e^{-i theta}(alpha+beta))
///         +/- sqrt( Im(e^{-i theta}(alpha-beta))^2 + mu_j(theta) ) ).
/// Requires k <= n/2 (normalize_orientation first).
SpectrumAtAngle spectrum_at_angle(const BlockMatrix& a, double theta);

// lambda_max(Im(e^{-i theta} A)), reduced-formula path.
double support_value(const BlockMatrix& a, double theta);

// Same quantity from a direct eigensolve of the assembled n x n matrix.
double support_value_oracle(const BlockMatrix& a, double theta);

// All eigenvalues of Im(e^{-i theta} A) from the assembled matrix, descending.
std::vector<double> spectrum_direct(const BlockMatrix& a, double theta);

/// Brute-force boundary sweep: uniform theta grid on [0, 2pi); for each
/// angle the support value and the Rayleigh point <A x, x> of the top
/// eigenvector of Im(e^{-i theta} A0), shifted back by (alpha+beta)/2.
/// The points alpha and beta are appended at the end (they always belong
/// to W(A)); appended rows carry theta = 0 and support = Im(point).
std::vector<BoundarySample> sample_boundary(const BlockMatrix& a, int samples);

} // namespace numrange
