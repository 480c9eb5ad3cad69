#pragma once

#include "numrange/block_matrix.hpp"

#include <random>

namespace numrange {

// entry components independent uniform on [lo, hi]
Complex random_complex(std::mt19937_64& rng, double lo = -1.0, double hi = 1.0);
DenseMatrix random_matrix(int rows, int cols, std::mt19937_64& rng);
DenseMatrix random_hermitian(int n, std::mt19937_64& rng);
DenseMatrix random_unitary(int n, std::mt19937_64& rng);

// random n in [2, max_n], any valid k, random scalar blocks
BlockMatrix random_block_matrix(std::mt19937_64& rng, int max_n = 10);

// n = 4, k = 2, unstructured off-diagonal blocks
BlockMatrix random_k2_block(std::mt19937_64& rng);

/// Instance with DC normal and commuting with C*C + DD*: both are
/// diagonalized by one random unitary, with the diagonal factors chosen
/// so the prescribed (h_j, z_j) pairs are realizable. Margins keep the
/// eigenvalues of H and Z separated and the instance away from the
/// nested/non-nested boundary.
BlockMatrix make_case1_instance(std::mt19937_64& rng);

/// Instance whose DC is a rank-one nilpotent sharing its kernel direction
/// with an eigenvector of H (coincident Z eigenvalues, common eigenvector).
BlockMatrix make_case2_instance(std::mt19937_64& rng);

/// A = [[alpha I, -I+B],[I+B*, beta I]] with B unitary: H = 4I and
/// Z = B - B* skew-Hermitian, resampled until Z is safely non-scalar.
/// Yields two non-nested ellipses with perpendicular major axes.
BlockMatrix make_cor33_instance(std::mt19937_64& rng);

/// Negative-control family: Z has coincident eigenvalues but is not
/// normal, H has distinct eigenvalues, the diagonal of Z in the H basis
/// is non-constant, and both off-diagonal entries are nonzero. No
/// detector may fire and the squared support is not a single trig form.
BlockMatrix make_case3_instance(std::mt19937_64& rng);

// worked examples used as golden data
BlockMatrix worked_diagonal_pair(Complex alpha = {}, Complex beta = {});
BlockMatrix worked_nilpotent_pair(Complex alpha = {}, Complex beta = {});
// two ellipses centered away from the origin; parameter on the unit disk
BlockMatrix offcenter_pair_example(Complex a_param);
BlockMatrix skew_pair_example(Complex alpha = {}, Complex beta = {});

} // namespace numrange
