#pragma once

#include "numrange/block_matrix.hpp"
#include "numrange/ellipse.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace numrange {

struct WrongBlockSize : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct MissingWitness : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Classification {
    TheoremTri,
    ScalarDC,
    EssentiallyHermitianPair,
    NilpotentInvariant,
    K2CaseI,
    K2CaseII,
    K2CaseIII,
    NoneDetected,
};

enum class Nestedness { Nested, NonNested };

const char* to_string(Classification c);
const char* to_string(Nestedness n);

/// 2x2 reduction data: eigenvalues of H (descending), the orthonormal
/// basis used to express Z (eigenbasis of H; Schur basis of Z when H is a
/// scalar multiple of the identity), Z in that basis, the eigenvalues of
/// Z ordered by modulus, and the real triple (a, b, c) squaring the
/// reduced discriminant when the underlying system is consistent.
struct K2Data {
    double h1 = 0.0;
    double h2 = 0.0;
    DenseMatrix basis;
    DenseMatrix z_entries;
    Complex z1{};
    Complex z2{};
    std::optional<std::array<double, 3>> abc;
};

struct StructureWitnesses {
    std::optional<DenseMatrix> simultaneous_basis;
    std::vector<std::pair<double, Complex>> pairs; // (h_j, z_j), h descending
    std::optional<Complex> scalar_c;
    std::optional<DenseMatrix> invariant_subspace;
    std::optional<DenseMatrix> common_eigenvector; // k x 1
    std::optional<K2Data> k2;
};

struct StructureReport {
    Classification classification = Classification::NoneDetected;
    StructureWitnesses witnesses;
    std::optional<EllipseHull> predicted;
    std::optional<Nestedness> nested;
    std::string note;
};

// default relative tolerance for all structural tests
inline constexpr double kStructureTol = 1e-9;

// ||Z*Z - ZZ*||_F <= tol * max(1, ||Z||_F^2)
bool is_normal(const DenseMatrix& z, double tol = kStructureTol);

// ||XY - YX||_F <= tol * max(1, ||X||_F * ||Y||_F)
bool commutes(const DenseMatrix& x, const DenseMatrix& y, double tol = kStructureTol);

/// One unitary U that diagonalizes every matrix of a commuting Hermitian
/// family, built by eigendecomposing the first matrix and recursing on
/// the compressions of the rest within each eigenvalue cluster.
DenseMatrix simultaneous_diagonalization(const std::vector<DenseMatrix>& mats,
                                         double cluster_tol = 1e-8);

struct TheoremTriResult {
    EllipseHull hull;
    std::vector<std::pair<double, Complex>> pairs;
    DenseMatrix basis;
};

struct ScalarDCResult {
    EllipseHull hull;
    Complex c;
};

struct NilpotentResult {
    EllipseHull hull;
    DenseMatrix subspace;
};

/// Z normal and commuting with H: the boundary decomposes into k
/// co-centered ellipses, one per simultaneous eigenvalue pair (h_j, z_j),
/// with semi-axes sqrt(|g|^2/2 + h_j/4 +- |g^2+z_j|/2) for g = (alpha-beta)/2
/// and major axis at arg(g^2+z_j)/2 mod pi. The scalar point alpha is
/// recorded as an isolated component when 2k < n.
std::optional<TheoremTriResult> detect_theorem_tri(const StructuralPair& p, Complex alpha,
                                                   Complex beta, int n = 0, int k = 0);

/// Z = cI: a single elliptical disk with full axes
/// sqrt(lambda_max(H) + 2|g|^2 +- 2|g^2+c|).
std::optional<ScalarDCResult> detect_scalar_dc(const StructuralPair& p, Complex alpha,
                                               Complex beta, int n = 0, int k = 0);

/// Z^2 = 0 and the smallest H-invariant subspace containing range(Z) lies
/// in ker(Z): a single elliptical disk with full axes sqrt(mu + 4|g|^2)
/// and sqrt(mu), mu = lambda_max(H - 2 Re Z), major axis at arg(g) mod pi.
std::optional<NilpotentResult> detect_nilpotent_invariant(const StructuralPair& p, Complex alpha,
                                                          Complex beta, int n = 0, int k = 0);

/// Reduction data for a 2x2 pair, including the (a, b, c) consistency
/// triple when it exists. Throws WrongBlockSize unless H is 2x2.
K2Data build_k2_data(const StructuralPair& p, double tol = kStructureTol);

/// Full k = 2 classification: (i) Z normal and commuting with H;
/// (ii) eigenvalues of Z coincide and Z shares an eigenvector with H;
/// (iii) the closed-form cross-term identity holds. First case that holds
/// wins; the predicted ellipses come from the two discriminant branches.
StructureReport analyze_k2(const StructuralPair& p, Complex alpha, Complex beta, int n = 0,
                           int k = 0);

/// Nested iff a^2 + b^2 <= c^2 (with tolerance) for the stored (a, b, c)
/// triple. Throws MissingWitness without K2 data carrying the triple.
Nestedness classify_nestedness(const StructureReport& report);

/// Orientation-normalize, compute (H, Z), run the detectors in order
/// scalar DC -> normal/commuting -> nilpotent-invariant -> k=2 criteria;
/// the first hit fills the prediction and nestedness. A prediction whose
/// support disagrees with the reduced-formula boundary by more than
/// 1e-6 * (1 + ||A||_F) is demoted to NoneDetected.
StructureReport predict_numerical_range(const BlockMatrix& a);

} // namespace numrange
