#include "numrange/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace numrange {

namespace {

void check_finite(const std::vector<Complex>& entries) {
    for (const Complex& z : entries) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw NonFiniteEntry("non-finite matrix entry");
    }
}

} // namespace

DenseMatrix::DenseMatrix(int rows, int cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    if (data_.size() != static_cast<size_t>(rows) * cols)
        throw DimensionMismatch("entry count does not match rows*cols");
    check_finite(data_);
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
    data_.reserve(static_cast<size_t>(rows_) * cols_);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != cols_)
            throw DimensionMismatch("ragged initializer rows");
        data_.insert(data_.end(), r.begin(), r.end());
    }
    check_finite(data_);
}

DenseMatrix DenseMatrix::identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix adjoint(const DenseMatrix& m) {
    DenseMatrix out(m.cols(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
    return out;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matmul: inner dimensions differ");
    DenseMatrix out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int l = 0; l < a.cols(); ++l) {
            const Complex ail = a(i, l);
            if (ail == Complex{}) continue;
            for (int j = 0; j < b.cols(); ++j) out(i, j) += ail * b(l, j);
        }
    }
    return out;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) { return matmul(a, b); }

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("matrix addition: shapes differ");
    DenseMatrix out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
    return out;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("matrix subtraction: shapes differ");
    DenseMatrix out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
    return out;
}

DenseMatrix operator*(Complex s, const DenseMatrix& m) {
    DenseMatrix out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = s * m(i, j);
    return out;
}

double frobenius_norm(const DenseMatrix& m) {
    double sum = 0.0;
    for (const Complex& z : m.data()) sum += std::norm(z);
    return std::sqrt(sum);
}

Complex trace(const DenseMatrix& m) {
    const int n = std::min(m.rows(), m.cols());
    Complex t{};
    for (int i = 0; i < n; ++i) t += m(i, i);
    return t;
}

double hermitian_defect(const DenseMatrix& m) {
    if (!m.is_square()) throw NotSquare("hermitian_defect: matrix not square");
    double sum = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) sum += std::norm(m(i, j) - std::conj(m(j, i)));
    return std::sqrt(sum);
}

std::pair<DenseMatrix, DenseMatrix> hermitian_components(const DenseMatrix& x) {
    if (!x.is_square()) throw NotSquare("hermitian_components: matrix not square");
    const int n = x.rows();
    DenseMatrix re(n, n), im(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Complex a = x(i, j);
            const Complex b = std::conj(x(j, i));
            re(i, j) = 0.5 * (a + b);
            // (a-b)/(2i) = (a-b) * (-i) / 2, kept componentwise so the
            // result is Hermitian to the bit
            const Complex d = a - b;
            im(i, j) = Complex{0.5 * d.imag(), -0.5 * d.real()};
        }
    }
    return {re, im};
}

namespace {

double offdiag_norm(const DenseMatrix& m) {
    double sum = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (i != j) sum += std::norm(m(i, j));
    return std::sqrt(sum);
}

// Unitary 2x2 parameters (c real, s complex) zeroing the (p,q) entry of
// the Hermitian block [[a, b],[conj(b), d]] under J* B J with
// J = [[c, -conj(s)],[s, c]].
void jacobi_params(double a, double d, Complex b, double& c, Complex& s) {
    const double beta = std::abs(b);
    const Complex phase = b / beta; // caller guarantees beta > 0
    const double tau = (a - d) / (2.0 * beta);
    double t;
    if (tau >= 0.0)
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    else
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    c = 1.0 / std::sqrt(1.0 + t * t);
    const double sigma = t * c;
    s = sigma * std::conj(phase);
}

bool column_lex_greater(const DenseMatrix& q, int a, int b) {
    for (int r = 0; r < q.rows(); ++r) {
        const Complex& x = q(r, a);
        const Complex& y = q(r, b);
        if (x.real() != y.real()) return x.real() > y.real();
        if (x.imag() != y.imag()) return x.imag() > y.imag();
    }
    return false;
}

} // namespace

EigenSystem hermitian_eigensystem(const DenseMatrix& m) {
    if (!m.is_square()) throw NotSquare("hermitian_eigensystem: matrix not square");
    const int n = m.rows();
    const double fro = frobenius_norm(m);
    if (hermitian_defect(m) > 1e-10 * std::max(1.0, fro))
        throw NotHermitian("hermitian_eigensystem: matrix not Hermitian to tolerance");

    // Work on the exactly Hermitian part; rounding in the input defect is
    // below the solver's own noise floor.
    DenseMatrix a = hermitian_components(m).first;
    DenseMatrix q = DenseMatrix::identity(n);

    const double target = 1e-13 * fro;
    const double skip = 1e-15 * std::max(fro, 1e-300);
    constexpr int max_sweeps = 100;

    bool converged = offdiag_norm(a) <= target;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int qq = p + 1; qq < n; ++qq) {
                const Complex b = a(p, qq);
                if (std::abs(b) <= skip) continue;
                double c;
                Complex s;
                jacobi_params(a(p, p).real(), a(qq, qq).real(), b, c, s);
                // rows p,q of a <- J* a
                for (int j = 0; j < n; ++j) {
                    const Complex xp = a(p, j), xq = a(qq, j);
                    a(p, j) = c * xp + std::conj(s) * xq;
                    a(qq, j) = -s * xp + c * xq;
                }
                // cols p,q of a <- a J
                for (int i = 0; i < n; ++i) {
                    const Complex xp = a(i, p), xq = a(i, qq);
                    a(i, p) = c * xp + s * xq;
                    a(i, qq) = -std::conj(s) * xp + c * xq;
                }
                a(p, qq) = 0.0;
                a(qq, p) = 0.0;
                a(p, p) = Complex{a(p, p).real(), 0.0};
                a(qq, qq) = Complex{a(qq, qq).real(), 0.0};
                // eigenvector columns
                for (int i = 0; i < n; ++i) {
                    const Complex xp = q(i, p), xq = q(i, qq);
                    q(i, p) = c * xp + s * xq;
                    q(i, qq) = -std::conj(s) * xp + c * xq;
                }
            }
        }
        converged = offdiag_norm(a) <= target;
    }
    if (!converged) throw NoConvergence("hermitian_eigensystem: sweep limit exceeded");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        const double vi = a(i, i).real(), vj = a(j, j).real();
        if (vi != vj) return vi > vj;
        return column_lex_greater(q, i, j);
    });

    EigenSystem out;
    out.values.resize(n);
    out.vectors = DenseMatrix(n, n);
    for (int k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (int i = 0; i < n; ++i) out.vectors(i, k) = q(i, order[k]);
    }
    return out;
}

DenseMatrix orthonormal_closure(const DenseMatrix& seed_columns, const DenseMatrix& op,
                                double drop_tol) {
    if (!op.is_square()) throw NotSquare("orthonormal_closure: operator not square");
    if (seed_columns.cols() > 0 && seed_columns.rows() != op.rows())
        throw DimensionMismatch("orthonormal_closure: seed rows do not match operator");
    const int n = op.rows();

    std::vector<std::vector<Complex>> basis; // accepted orthonormal columns

    auto try_accept = [&](std::vector<Complex> v) -> bool {
        double scale = 0.0;
        for (const Complex& z : v) scale += std::norm(z);
        scale = std::sqrt(scale);
        if (scale == 0.0) return false;
        // two MGS passes for orthogonality at the drop threshold
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) {
                Complex proj{};
                for (int i = 0; i < n; ++i) proj += std::conj(b[i]) * v[i];
                for (int i = 0; i < n; ++i) v[i] -= proj * b[i];
            }
        }
        double res = 0.0;
        for (const Complex& z : v) res += std::norm(z);
        res = std::sqrt(res);
        if (res <= drop_tol * scale) return false;
        for (Complex& z : v) z /= res;
        basis.push_back(std::move(v));
        return true;
    };

    for (int j = 0; j < seed_columns.cols(); ++j) {
        std::vector<Complex> v(n);
        for (int i = 0; i < n; ++i) v[i] = seed_columns(i, j);
        try_accept(std::move(v));
    }
    // Krylov closure: apply the operator to each accepted vector in FIFO order.
    for (size_t next = 0; next < basis.size() && static_cast<int>(basis.size()) < n; ++next) {
        std::vector<Complex> v(n);
        for (int i = 0; i < n; ++i) {
            Complex acc{};
            for (int l = 0; l < n; ++l) acc += op(i, l) * basis[next][l];
            v[i] = acc;
        }
        try_accept(std::move(v));
    }

    DenseMatrix out(n, static_cast<int>(basis.size()));
    for (int j = 0; j < out.cols(); ++j)
        for (int i = 0; i < n; ++i) out(i, j) = basis[j][i];
    return out;
}

} // namespace numrange
