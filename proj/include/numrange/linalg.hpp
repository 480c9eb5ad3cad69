#pragma once

#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace numrange {

using Complex = std::complex<double>;

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotSquare : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotHermitian : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonFiniteEntry : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Dense complex matrix, row-major storage. Entries are validated to be
/// finite when the matrix is built from data; the zero constructor and
/// element access trust the caller.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }
    DenseMatrix(int rows, int cols, std::vector<Complex> entries);
    DenseMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static DenseMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const Complex& operator()(int i, int j) const {
        return data_[static_cast<size_t>(i) * cols_ + j];
    }

    const std::vector<Complex>& data() const { return data_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Complex> data_;
};

struct EigenSystem {
    std::vector<double> values; // descending
    DenseMatrix vectors;        // columns are unit eigenvectors, same order
};

DenseMatrix adjoint(const DenseMatrix& m);
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(Complex s, const DenseMatrix& m);

double frobenius_norm(const DenseMatrix& m);
Complex trace(const DenseMatrix& m);

// ||X - X*||_F, zero for Hermitian X.
double hermitian_defect(const DenseMatrix& m);

// (Re X, Im X) with Re X = (X+X*)/2, Im X = (X-X*)/(2i); both Hermitian.
std::pair<DenseMatrix, DenseMatrix> hermitian_components(const DenseMatrix& x);

/// Full eigensystem of a Hermitian matrix via cyclic complex Jacobi
/// rotations. Converges when the off-diagonal Frobenius mass drops below
/// 1e-13 * ||M||_F; hard cap of 100 sweeps. Eigenvalues come out in
/// descending order, ties broken by lexicographic comparison of the
/// eigenvector entries so results are deterministic.
EigenSystem hermitian_eigensystem(const DenseMatrix& m);

/// Orthonormal basis of the smallest operator-invariant subspace
/// containing the column span of seed_columns. Built by repeated
/// application of the operator with modified Gram-Schmidt; candidate
/// vectors whose orthogonal residual is below drop_tol (relative to the
/// candidate's norm) are discarded. An empty seed yields a zero-column
/// basis.
DenseMatrix orthonormal_closure(const DenseMatrix& seed_columns, const DenseMatrix& op,
                                double drop_tol = 1e-10);

} // namespace numrange
