#include "numrange/generators.hpp"

#include "numrange/structure.hpp"

#include <cmath>

namespace numrange {

Complex random_complex(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    const double re = dist(rng);
    const double im = dist(rng);
    return {re, im};
}

DenseMatrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
    DenseMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = random_complex(rng);
    return m;
}

DenseMatrix random_hermitian(int n, std::mt19937_64& rng) {
    const DenseMatrix m = random_matrix(n, n, rng);
    return hermitian_components(m).first;
}

DenseMatrix random_unitary(int n, std::mt19937_64& rng) {
    // Gram-Schmidt on a random matrix; full rank with probability one
    const DenseMatrix m = random_matrix(n, n, rng);
    DenseMatrix q(n, n);
    for (int j = 0; j < n; ++j) {
        std::vector<Complex> v(n);
        for (int i = 0; i < n; ++i) v[i] = m(i, j);
        for (int pass = 0; pass < 2; ++pass) {
            for (int prev = 0; prev < j; ++prev) {
                Complex proj{};
                for (int i = 0; i < n; ++i) proj += std::conj(q(i, prev)) * v[i];
                for (int i = 0; i < n; ++i) v[i] -= proj * q(i, prev);
            }
        }
        double norm = 0.0;
        for (const Complex& z : v) norm += std::norm(z);
        norm = std::sqrt(norm);
        for (int i = 0; i < n; ++i) q(i, j) = v[i] / norm;
    }
    return q;
}

BlockMatrix random_block_matrix(std::mt19937_64& rng, int max_n) {
    std::uniform_int_distribution<int> nd(2, max_n);
    const int n = nd(rng);
    std::uniform_int_distribution<int> kd(1, n - 1);
    const int k = kd(rng);
    return BlockMatrix(random_complex(rng), random_complex(rng), random_matrix(n - k, k, rng),
                       random_matrix(k, n - k, rng));
}

BlockMatrix random_k2_block(std::mt19937_64& rng) {
    return BlockMatrix(random_complex(rng), random_complex(rng), random_matrix(2, 2, rng),
                       random_matrix(2, 2, rng));
}

namespace {

DenseMatrix conjugate_diag(const DenseMatrix& v, Complex d0, Complex d1) {
    DenseMatrix d(2, 2);
    d(0, 0) = d0;
    d(1, 1) = d1;
    return v * d * adjoint(v);
}

} // namespace

BlockMatrix make_case1_instance(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mag(0.2, 1.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> lift(0.05, 2.0);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const Complex z1 = std::polar(mag(rng), ang(rng));
        const Complex z2 = std::polar(mag(rng), ang(rng));
        const double h1 = 2.0 * std::abs(z1) + lift(rng);
        const double h2 = 2.0 * std::abs(z2) + lift(rng);
        if (std::abs(z1 - z2) < 0.15) continue;
        if (std::abs(h1 - h2) < 0.1) continue;
        // stay away from the nested/non-nested boundary
        if (std::abs(std::abs(h1 - h2) - 2.0 * std::abs(z1 - z2)) < 0.05) continue;

        const auto factor = [](double h, Complex z) {
            const double c = std::sqrt(0.5 * (h + std::sqrt(h * h - 4.0 * std::norm(z))));
            const Complex d = c > 0.0 ? z / c : Complex{};
            return std::make_pair(Complex{c, 0.0}, d);
        };
        const auto [c1, d1] = factor(h1, z1);
        const auto [c2, d2] = factor(h2, z2);
        const DenseMatrix v = random_unitary(2, rng);
        return BlockMatrix(random_complex(rng), random_complex(rng), conjugate_diag(v, c1, c2),
                           conjugate_diag(v, d1, d2));
    }
    throw std::runtime_error("make_case1_instance: sampling failed");
}

BlockMatrix make_case2_instance(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> taud(0.4, 1.5);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> pd(0.3, 2.0);
    const DenseMatrix u = random_unitary(2, rng);
    // v = first column (eigenvector of H), w along the second
    const Complex tau = std::polar(taud(rng), ang(rng));
    const double p1 = pd(rng), p2 = pd(rng);

    DenseMatrix z(2, 2), psqrt(2, 2), pinvs(2, 2);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const Complex vv = u(i, 0) * std::conj(u(j, 0));
            const Complex uu = u(i, 1) * std::conj(u(j, 1));
            z(i, j) = tau * u(i, 0) * std::conj(u(j, 1));
            psqrt(i, j) = std::sqrt(p1) * vv + std::sqrt(p2) * uu;
            pinvs(i, j) = vv / std::sqrt(p1) + uu / std::sqrt(p2);
        }
    }
    return BlockMatrix(random_complex(rng), random_complex(rng), pinvs * z, psqrt);
}

BlockMatrix make_cor33_instance(std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const DenseMatrix b = random_unitary(2, rng);
        const DenseMatrix z = b - adjoint(b);
        DenseMatrix centered = z;
        const Complex mean = 0.5 * trace(z);
        centered(0, 0) -= mean;
        centered(1, 1) -= mean;
        if (frobenius_norm(centered) < 0.3) continue;
        const DenseMatrix id = DenseMatrix::identity(2);
        return BlockMatrix(random_complex(rng), random_complex(rng),
                           DenseMatrix{{-1.0 + b(0, 0), b(0, 1)}, {b(1, 0), -1.0 + b(1, 1)}},
                           id + adjoint(b));
    }
    throw std::runtime_error("make_cor33_instance: sampling failed");
}

BlockMatrix make_case3_instance(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mag(0.3, 1.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> td(0.5, 1.5);
    std::uniform_real_distribution<double> pd(0.4, 2.0);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const Complex z0 = std::polar(mag(rng), ang(rng));
        const DenseMatrix r = random_unitary(2, rng);
        DenseMatrix jordan(2, 2);
        jordan(0, 0) = z0;
        jordan(0, 1) = td(rng);
        jordan(1, 1) = z0;
        const DenseMatrix ztarget = r * jordan * adjoint(r);

        const DenseMatrix w = random_unitary(2, rng);
        const double p1 = pd(rng), p2 = pd(rng);
        const DenseMatrix psqrt = conjugate_diag(w, std::sqrt(p1), std::sqrt(p2));
        const DenseMatrix pinvs = conjugate_diag(w, 1.0 / std::sqrt(p1), 1.0 / std::sqrt(p2));

        BlockMatrix a(random_complex(rng), random_complex(rng), pinvs * ztarget, psqrt);
        const StructuralPair p = structural_matrices(a);
        const K2Data kd = build_k2_data(p);
        const Complex z11 = kd.z_entries(0, 0), z22 = kd.z_entries(1, 1);
        const Complex z12 = kd.z_entries(0, 1), z21 = kd.z_entries(1, 0);
        if (kd.h1 - kd.h2 < 0.1) continue;
        if (std::abs(z11 - z22) < 0.1) continue;
        if (std::abs(z12 * z21) < 0.02) continue;
        // the lone eigendirection of Z must be far from every eigenvector of H
        const Complex lam = 0.5 * trace(p.z);
        DenseMatrix nil = p.z;
        nil(0, 0) -= lam;
        nil(1, 1) -= lam;
        Complex v0, v1;
        const double r1 = std::sqrt(std::norm(nil(0, 0))) + std::sqrt(std::norm(nil(0, 1)));
        const double r2 = std::sqrt(std::norm(nil(1, 0))) + std::sqrt(std::norm(nil(1, 1)));
        if (r1 >= r2) {
            v0 = nil(0, 1);
            v1 = -nil(0, 0);
        } else {
            v0 = nil(1, 1);
            v1 = -nil(1, 0);
        }
        const double nv = std::sqrt(std::norm(v0) + std::norm(v1));
        v0 /= nv;
        v1 /= nv;
        const Complex hv0 = p.h(0, 0) * v0 + p.h(0, 1) * v1;
        const Complex hv1 = p.h(1, 0) * v0 + p.h(1, 1) * v1;
        const Complex ray = std::conj(v0) * hv0 + std::conj(v1) * hv1;
        const double res =
            std::sqrt(std::norm(hv0 - ray * v0) + std::norm(hv1 - ray * v1));
        if (res < 0.05 * frobenius_norm(p.h)) continue;
        return a;
    }
    throw std::runtime_error("make_case3_instance: sampling failed");
}

BlockMatrix worked_diagonal_pair(Complex alpha, Complex beta) {
    return BlockMatrix(alpha, beta, DenseMatrix{{4.0, -0.5}, {-2.0, 0.5}},
                       DenseMatrix{{1.0, 1.0}, {1.0, 2.0}});
}

BlockMatrix worked_nilpotent_pair(Complex alpha, Complex beta) {
    const Complex i{0.0, 1.0};
    return BlockMatrix(alpha, beta, DenseMatrix{{1.0 + i, 1.0 + i}, {1.0, -2.0}},
                       DenseMatrix{{(1.0 - i) / 6.0, -2.0 / 6.0}, {0.0, 0.0}});
}

BlockMatrix offcenter_pair_example(Complex a_param) {
    const double off = 1.0 - std::norm(a_param);
    DenseMatrix b(2, 2);
    b(0, 0) = a_param;
    b(0, 1) = off;
    b(1, 1) = a_param;
    const DenseMatrix id = DenseMatrix::identity(2);
    return BlockMatrix({}, {}, adjoint(b) + id, b - id);
}

BlockMatrix skew_pair_example(Complex alpha, Complex beta) {
    const Complex i{0.0, 1.0};
    return BlockMatrix(alpha, beta, DenseMatrix{{-1.0 - i, 0.0}, {0.0, -1.0 + i}},
                       DenseMatrix{{1.0 + i, 0.0}, {0.0, 1.0 - i}});
}

} // namespace numrange
