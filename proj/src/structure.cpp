#include "numrange/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace numrange {

const char* to_string(Classification c) {
    switch (c) {
        case Classification::TheoremTri: return "TheoremTri";
        case Classification::ScalarDC: return "ScalarDC";
        case Classification::EssentiallyHermitianPair: return "EssentiallyHermitianPair";
        case Classification::NilpotentInvariant: return "NilpotentInvariant";
        case Classification::K2CaseI: return "K2_CaseI";
        case Classification::K2CaseII: return "K2_CaseII";
        case Classification::K2CaseIII: return "K2_CaseIII";
        case Classification::NoneDetected: return "NoneDetected";
    }
    return "NoneDetected";
}

const char* to_string(Nestedness n) {
    return n == Nestedness::Nested ? "Nested" : "NonNested";
}

bool is_normal(const DenseMatrix& z, double tol) {
    if (!z.is_square()) throw NotSquare("is_normal: matrix not square");
    const DenseMatrix zs = adjoint(z);
    const double defect = frobenius_norm(zs * z - z * zs);
    const double f = frobenius_norm(z);
    return defect <= tol * std::max(1.0, f * f);
}

bool commutes(const DenseMatrix& x, const DenseMatrix& y, double tol) {
    if (!x.is_square() || !y.is_square() || x.rows() != y.rows())
        throw DimensionMismatch("commutes: matrices must be square of equal size");
    const double defect = frobenius_norm(x * y - y * x);
    return defect <= tol * std::max(1.0, frobenius_norm(x) * frobenius_norm(y));
}

namespace {

// make the largest-magnitude entry of each column real positive
void canonicalize_column_phases(DenseMatrix& m) {
    for (int j = 0; j < m.cols(); ++j) {
        int imax = 0;
        double best = -1.0;
        for (int i = 0; i < m.rows(); ++i) {
            const double a = std::abs(m(i, j));
            if (a > best) {
                best = a;
                imax = i;
            }
        }
        if (best <= 0.0) continue;
        const Complex phase = m(imax, j) / best;
        for (int i = 0; i < m.rows(); ++i) m(i, j) = m(i, j) * std::conj(phase);
    }
}

DenseMatrix columns(const DenseMatrix& m, int lo, int hi) {
    DenseMatrix out(m.rows(), hi - lo);
    for (int j = lo; j < hi; ++j)
        for (int i = 0; i < m.rows(); ++i) out(i, j - lo) = m(i, j);
    return out;
}

DenseMatrix hermitian_compress(const DenseMatrix& basis, const DenseMatrix& m) {
    DenseMatrix c = adjoint(basis) * m * basis;
    return hermitian_components(c).first;
}

} // namespace

DenseMatrix simultaneous_diagonalization(const std::vector<DenseMatrix>& mats,
                                         double cluster_tol) {
    if (mats.empty()) throw std::invalid_argument("simultaneous_diagonalization: empty family");
    const int n = mats.front().rows();
    const EigenSystem es = hermitian_eigensystem(mats.front());
    const double gap = cluster_tol * std::max(1.0, frobenius_norm(mats.front()));

    if (mats.size() == 1) return es.vectors;

    const std::vector<DenseMatrix> rest(mats.begin() + 1, mats.end());
    DenseMatrix u(n, n);
    int col = 0;
    int lo = 0;
    while (lo < n) {
        int hi = lo + 1;
        while (hi < n && es.values[hi - 1] - es.values[hi] <= gap) ++hi;
        DenseMatrix qc = columns(es.vectors, lo, hi);
        if (hi - lo > 1) {
            std::vector<DenseMatrix> compressed;
            compressed.reserve(rest.size());
            for (const DenseMatrix& m : rest) compressed.push_back(hermitian_compress(qc, m));
            qc = qc * simultaneous_diagonalization(compressed, cluster_tol);
        }
        for (int j = 0; j < qc.cols(); ++j, ++col)
            for (int i = 0; i < n; ++i) u(i, col) = qc(i, j);
        lo = hi;
    }
    return u;
}

namespace {

Ellipse pair_ellipse(double h, Complex z, Complex gamma, Complex center) {
    const Complex w = gamma * gamma + z;
    const double g2 = std::norm(gamma);
    Ellipse e;
    e.center = center;
    e.semi_major = std::sqrt(std::max(0.0, 0.5 * g2 + 0.25 * h + 0.5 * std::abs(w)));
    e.semi_minor = std::sqrt(std::max(0.0, 0.5 * g2 + 0.25 * h - 0.5 * std::abs(w)));
    e.axis_angle = w == Complex{} ? 0.0 : canonical_axis_angle(0.5 * std::arg(w));
    return e;
}

void append_isolated_point(EllipseHull& hull, Complex alpha, int n, int k) {
    if (n > 0 && k > 0 && n - 2 * k > 0) hull.isolated_points.push_back(alpha);
}

void sort_pairs_with_basis(std::vector<std::pair<double, Complex>>& pairs, DenseMatrix& basis) {
    const int k = static_cast<int>(pairs.size());
    std::vector<int> order(k);
    for (int i = 0; i < k; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (pairs[a].first != pairs[b].first) return pairs[a].first > pairs[b].first;
        if (pairs[a].second.real() != pairs[b].second.real())
            return pairs[a].second.real() > pairs[b].second.real();
        return pairs[a].second.imag() > pairs[b].second.imag();
    });
    std::vector<std::pair<double, Complex>> sorted(k);
    DenseMatrix permuted(basis.rows(), k);
    for (int j = 0; j < k; ++j) {
        sorted[j] = pairs[order[j]];
        for (int i = 0; i < basis.rows(); ++i) permuted(i, j) = basis(i, order[j]);
    }
    pairs = std::move(sorted);
    basis = std::move(permuted);
}

} // namespace

std::optional<TheoremTriResult> detect_theorem_tri(const StructuralPair& p, Complex alpha,
                                                   Complex beta, int n, int k) {
    if (!is_normal(p.z) || !commutes(p.z, p.h)) return std::nullopt;

    const auto [re_z, im_z] = hermitian_components(p.z);
    DenseMatrix u = simultaneous_diagonalization({p.h, re_z, im_z});
    const DenseMatrix hd = adjoint(u) * p.h * u;
    const DenseMatrix zd = adjoint(u) * p.z * u;

    std::vector<std::pair<double, Complex>> pairs;
    pairs.reserve(p.h.rows());
    for (int j = 0; j < p.h.rows(); ++j) pairs.emplace_back(hd(j, j).real(), zd(j, j));
    sort_pairs_with_basis(pairs, u);
    canonicalize_column_phases(u);

    const Complex gamma = 0.5 * (alpha - beta);
    const Complex center = 0.5 * (alpha + beta);
    TheoremTriResult res;
    res.pairs = pairs;
    res.basis = std::move(u);
    for (const auto& [h, z] : pairs) res.hull.ellipses.push_back(pair_ellipse(h, z, gamma, center));
    append_isolated_point(res.hull, alpha, n, k);
    return res;
}

std::optional<ScalarDCResult> detect_scalar_dc(const StructuralPair& p, Complex alpha,
                                               Complex beta, int n, int k) {
    const int kk = p.z.rows();
    const Complex c = trace(p.z) / static_cast<double>(kk);
    DenseMatrix diff = p.z;
    for (int i = 0; i < kk; ++i) diff(i, i) -= c;
    if (frobenius_norm(diff) > kStructureTol * std::max(1.0, frobenius_norm(p.z)))
        return std::nullopt;

    const double h_norm = hermitian_eigensystem(p.h).values.front();
    const Complex gamma = 0.5 * (alpha - beta);
    const Complex w = gamma * gamma + c;
    Ellipse e;
    e.center = 0.5 * (alpha + beta);
    e.semi_major = 0.5 * std::sqrt(std::max(0.0, h_norm + 2.0 * std::norm(gamma) + 2.0 * std::abs(w)));
    e.semi_minor = 0.5 * std::sqrt(std::max(0.0, h_norm + 2.0 * std::norm(gamma) - 2.0 * std::abs(w)));
    e.axis_angle = w == Complex{} ? 0.0 : canonical_axis_angle(0.5 * std::arg(w));

    ScalarDCResult res;
    res.hull.ellipses.push_back(e);
    res.c = c;
    append_isolated_point(res.hull, alpha, n, k);
    return res;
}

std::optional<NilpotentResult> detect_nilpotent_invariant(const StructuralPair& p, Complex alpha,
                                                          Complex beta, int n, int k) {
    const double fz = frobenius_norm(p.z);
    if (frobenius_norm(p.z * p.z) > kStructureTol * std::max(1.0, fz * fz)) return std::nullopt;

    // smallest H-invariant subspace containing range(Z)
    const DenseMatrix q = orthonormal_closure(p.z, p.h);
    if (frobenius_norm(p.z * q) > 1e-8 * std::max(1.0, fz)) return std::nullopt;

    // M(0) = H - 2 Re Z has the theta-independent spectrum
    const DenseMatrix m0 = m_theta(p, 0.0);
    const double mu = hermitian_eigensystem(m0).values.front();

    const Complex gamma = 0.5 * (alpha - beta);
    Ellipse e;
    e.center = 0.5 * (alpha + beta);
    e.semi_major = 0.5 * std::sqrt(std::max(0.0, mu + 4.0 * std::norm(gamma)));
    e.semi_minor = 0.5 * std::sqrt(std::max(0.0, mu));
    e.axis_angle = gamma == Complex{} ? 0.0 : canonical_axis_angle(std::arg(gamma));

    NilpotentResult res;
    res.hull.ellipses.push_back(e);
    res.subspace = q;
    append_isolated_point(res.hull, alpha, n, k);
    return res;
}

namespace {

// unitary [v, v_perp] with v a unit eigenvector of z for eigenvalue lambda;
// z expressed in this basis is upper triangular
DenseMatrix schur_basis_2x2(const DenseMatrix& z, Complex lambda) {
    const Complex m11 = z(0, 0) - lambda, m12 = z(0, 1);
    const Complex m21 = z(1, 0), m22 = z(1, 1) - lambda;
    const double r1 = std::sqrt(std::norm(m11) + std::norm(m12));
    const double r2 = std::sqrt(std::norm(m21) + std::norm(m22));
    Complex v0, v1;
    if (std::max(r1, r2) <= 1e-14 * std::max(1.0, frobenius_norm(z))) {
        v0 = 1.0; // z is (numerically) lambda*I, any direction works
        v1 = 0.0;
    } else if (r1 >= r2) {
        v0 = m12;
        v1 = -m11;
    } else {
        v0 = m22;
        v1 = -m21;
    }
    const double nv = std::sqrt(std::norm(v0) + std::norm(v1));
    v0 /= nv;
    v1 /= nv;
    DenseMatrix u(2, 2);
    u(0, 0) = v0;
    u(1, 0) = v1;
    u(0, 1) = -std::conj(v1);
    u(1, 1) = std::conj(v0);
    canonicalize_column_phases(u);
    return u;
}

struct ZEigen {
    Complex z1, z2;    // |z1| >= |z2|
    Complex disc;      // (z1 - z2)^2 = tr^2 - 4 det, computed without the sqrt
    bool coincident;   // |disc| at tolerance zero
};

ZEigen z_eigenvalues(const DenseMatrix& z, double tol) {
    const Complex tr = z(0, 0) + z(1, 1);
    const Complex det = z(0, 0) * z(1, 1) - z(0, 1) * z(1, 0);
    const Complex disc = tr * tr - 4.0 * det;
    const Complex sq = std::sqrt(disc);
    Complex z1 = 0.5 * (tr + sq);
    Complex z2 = 0.5 * (tr - sq);
    if (std::abs(z1) < std::abs(z2) ||
        (std::abs(z1) == std::abs(z2) &&
         (z1.real() < z2.real() || (z1.real() == z2.real() && z1.imag() < z2.imag()))))
        std::swap(z1, z2);
    const double f = std::max(1.0, frobenius_norm(z));
    return {z1, z2, disc, std::abs(disc) <= tol * f * f};
}

// unit eigenvector of a 2x2 with (numerically) coincident eigenvalues
std::optional<std::pair<Complex, Complex>> defective_eigenvector(const DenseMatrix& z) {
    const Complex lambda = 0.5 * (z(0, 0) + z(1, 1));
    const Complex n11 = z(0, 0) - lambda, n12 = z(0, 1);
    const Complex n21 = z(1, 0), n22 = z(1, 1) - lambda;
    const double r1 = std::sqrt(std::norm(n11) + std::norm(n12));
    const double r2 = std::sqrt(std::norm(n21) + std::norm(n22));
    if (std::max(r1, r2) <= 1e-12 * std::max(1.0, frobenius_norm(z)))
        return std::nullopt; // scalar: every vector is an eigenvector
    Complex v0, v1;
    if (r1 >= r2) {
        v0 = n12;
        v1 = -n11;
    } else {
        v0 = n22;
        v1 = -n21;
    }
    const double nv = std::sqrt(std::norm(v0) + std::norm(v1));
    return std::make_pair(v0 / nv, v1 / nv);
}

} // namespace

K2Data build_k2_data(const StructuralPair& p, double tol) {
    if (p.h.rows() != 2 || !p.h.is_square() || p.z.rows() != 2 || !p.z.is_square())
        throw WrongBlockSize("build_k2_data: blocks must be 2x2");

    K2Data kd;
    const EigenSystem eh = hermitian_eigensystem(p.h);
    kd.h1 = eh.values[0];
    kd.h2 = eh.values[1];
    const ZEigen ze = z_eigenvalues(p.z, tol);
    kd.z1 = ze.z1;
    kd.z2 = ze.z2;

    const bool h_scalar = kd.h1 - kd.h2 <= tol * std::max(1.0, frobenius_norm(p.h));
    if (h_scalar) {
        kd.basis = schur_basis_2x2(p.z, ze.z1);
    } else {
        kd.basis = eh.vectors;
        canonicalize_column_phases(kd.basis);
    }
    kd.z_entries = adjoint(kd.basis) * p.z * kd.basis;

    const Complex z11 = kd.z_entries(0, 0), z22 = kd.z_entries(1, 1);
    const Complex z12 = kd.z_entries(0, 1), z21 = kd.z_entries(1, 0);
    const double d = kd.h1 - kd.h2;
    const double rhs3 = d * d + 2.0 * std::norm(z22 - z11) + 4.0 * std::norm(z12) +
                        4.0 * std::norm(z21) - 2.0 * std::norm(ze.z1 - ze.z2);
    const double scale = std::max({1.0, std::abs(rhs3), frobenius_norm(p.h) * frobenius_norm(p.z)});

    if (ze.coincident) {
        // first equation forces a = b = 0; the second then needs
        // (h1-h2)(z22-z11) = 0
        if (std::abs(d * (z22 - z11)) <= 1e-8 * scale)
            kd.abc = {0.0, 0.0, std::sqrt(std::max(0.0, rhs3))};
        return kd;
    }

    Complex dz = ze.z1 - ze.z2;
    Complex c_complex = d == 0.0 ? Complex{} : d * (z22 - z11) / dz;
    double a = 2.0 * dz.real(), b = 2.0 * dz.imag();
    if (c_complex.real() < 0.0) {
        a = -a;
        b = -b;
        c_complex = -c_complex;
    }
    const double c = c_complex.real();
    const double res2 = std::abs(Complex{a, b} * c - 2.0 * d * (z22 - z11));
    const double res3 = std::abs(c * c - rhs3);
    if (std::abs(c_complex.imag()) <= 1e-8 * std::max(1.0, std::abs(c_complex)) &&
        res2 <= 1e-8 * scale && res3 <= 1e-8 * scale)
        kd.abc = {a, b, c};
    return kd;
}

namespace {

std::optional<DenseMatrix> common_eigenvector(const DenseMatrix& z, const DenseMatrix& h) {
    const auto v = defective_eigenvector(z);
    DenseMatrix vec(2, 1);
    if (!v) {
        // scalar Z shares every direction; use the leading eigenvector of H
        const EigenSystem eh = hermitian_eigensystem(h);
        vec(0, 0) = eh.vectors(0, 0);
        vec(1, 0) = eh.vectors(1, 0);
        return vec;
    }
    vec(0, 0) = v->first;
    vec(1, 0) = v->second;
    const DenseMatrix hv = h * vec;
    const Complex rayleigh = std::conj(vec(0, 0)) * hv(0, 0) + std::conj(vec(1, 0)) * hv(1, 0);
    const double res = std::sqrt(std::norm(hv(0, 0) - rayleigh * vec(0, 0)) +
                                 std::norm(hv(1, 0) - rayleigh * vec(1, 0)));
    if (res <= 1e-8 * frobenius_norm(h)) return vec;
    return std::nullopt;
}

EllipseHull k2_predicted_hull(const K2Data& kd, Complex alpha, Complex beta, int n, int k) {
    const Complex gamma = 0.5 * (alpha - beta);
    const Complex center = 0.5 * (alpha + beta);
    const Complex zsum = kd.z_entries(0, 0) + kd.z_entries(1, 1);
    const Complex g2 = gamma * gamma;
    const auto& [a, b, c] = *kd.abc;

    EllipseHull hull;
    for (const double s : {1.0, -1.0}) {
        TrigCoefficients tc;
        tc.a_coef = -0.5 * g2.real() - 0.25 * zsum.real() + s * a / 8.0;
        tc.b_coef = -0.5 * g2.imag() - 0.25 * zsum.imag() + s * b / 8.0;
        tc.c_coef = 0.5 * std::norm(gamma) + 0.125 * (kd.h1 + kd.h2) + s * c / 8.0;
        hull.ellipses.push_back(ellipse_from_trig(tc, center));
    }
    append_isolated_point(hull, alpha, n, k);
    return hull;
}

} // namespace

StructureReport analyze_k2(const StructuralPair& p, Complex alpha, Complex beta, int n, int k) {
    if (p.h.rows() != 2 || p.z.rows() != 2)
        throw WrongBlockSize("analyze_k2: blocks must be 2x2");

    StructureReport report;
    K2Data kd = build_k2_data(p);
    const Complex z12 = kd.z_entries(0, 1), z21 = kd.z_entries(1, 0);
    const double d = kd.h1 - kd.h2;
    const bool coincident =
        std::abs(kd.z1 - kd.z2) * std::abs(kd.z1 - kd.z2) <=
        kStructureTol * std::max(1.0, frobenius_norm(p.z)) * std::max(1.0, frobenius_norm(p.z));

    if (is_normal(p.z) && commutes(p.z, p.h)) {
        report.classification = Classification::K2CaseI;
    } else if (coincident) {
        if (auto v = common_eigenvector(p.z, p.h)) {
            report.classification = Classification::K2CaseII;
            report.witnesses.common_eigenvector = std::move(*v);
        }
    } else {
        const Complex disc = (kd.z1 - kd.z2) * (kd.z1 - kd.z2);
        const Complex lhs = -d * d * z12 * z21 / disc;
        const double rhs = std::pow(std::abs(z12) + std::abs(z21), 2.0);
        if (std::abs(lhs - rhs) <= 1e-8 * std::max({1.0, std::abs(lhs), rhs}))
            report.classification = Classification::K2CaseIII;
    }

    if (report.classification != Classification::NoneDetected) {
        if (kd.abc) {
            try {
                report.predicted = k2_predicted_hull(kd, alpha, beta, n, k);
            } catch (const NotAnEllipse&) {
                report.classification = Classification::NoneDetected;
                report.note = "k2 branch coefficients do not describe ellipses";
            }
        } else {
            report.classification = Classification::NoneDetected;
            report.note = "k2 criteria matched but the (a,b,c) system is inconsistent";
        }
    }
    report.witnesses.k2 = std::move(kd);
    if (report.predicted) report.nested = classify_nestedness(report);
    return report;
}

Nestedness classify_nestedness(const StructureReport& report) {
    if (!report.witnesses.k2 || !report.witnesses.k2->abc)
        throw MissingWitness("classify_nestedness: no (a,b,c) witness");
    const auto& [a, b, c] = *report.witnesses.k2->abc;
    const double scale = std::max(1.0, a * a + b * b + c * c);
    return a * a + b * b <= c * c + 1e-9 * scale ? Nestedness::Nested : Nestedness::NonNested;
}

namespace {

bool h_values_scalar(const std::vector<std::pair<double, Complex>>& pairs, double h_fro) {
    const double tol = kStructureTol * std::max(1.0, h_fro);
    return pairs.front().first - pairs.back().first <= tol;
}

bool z_values_collinear(const std::vector<std::pair<double, Complex>>& pairs, double z_fro) {
    const double tol = kStructureTol * std::max(1.0, z_fro);
    // direction of the widest pair
    Complex dir{};
    double best = 0.0;
    for (size_t i = 0; i < pairs.size(); ++i) {
        for (size_t j = i + 1; j < pairs.size(); ++j) {
            const Complex diff = pairs[i].second - pairs[j].second;
            if (std::abs(diff) > best) {
                best = std::abs(diff);
                dir = diff;
            }
        }
    }
    if (best <= tol) return false; // all equal: scalar, not the two-ellipse case
    dir /= best;
    for (const auto& [h, z] : pairs) {
        (void)h;
        if (std::abs(std::imag((z - pairs.front().second) * std::conj(dir))) > tol) return false;
    }
    return true;
}

} // namespace

StructureReport predict_numerical_range(const BlockMatrix& a) {
    const BlockMatrix an = normalize_orientation(a);
    const StructuralPair p = structural_matrices(an);
    const Complex alpha = an.alpha(), beta = an.beta();
    const int n = an.n(), k = an.k();

    StructureReport report;
    if (auto sdc = detect_scalar_dc(p, alpha, beta, n, k)) {
        report.classification = Classification::ScalarDC;
        report.predicted = std::move(sdc->hull);
        report.witnesses.scalar_c = sdc->c;
    } else if (auto tri = detect_theorem_tri(p, alpha, beta, n, k)) {
        report.classification =
            h_values_scalar(tri->pairs, frobenius_norm(p.h)) &&
                    z_values_collinear(tri->pairs, frobenius_norm(p.z))
                ? Classification::EssentiallyHermitianPair
                : Classification::TheoremTri;
        report.predicted = std::move(tri->hull);
        report.witnesses.pairs = std::move(tri->pairs);
        report.witnesses.simultaneous_basis = std::move(tri->basis);
    } else if (auto nil = detect_nilpotent_invariant(p, alpha, beta, n, k)) {
        report.classification = Classification::NilpotentInvariant;
        report.predicted = std::move(nil->hull);
        report.witnesses.invariant_subspace = std::move(nil->subspace);
    } else if (k == 2) {
        StructureReport k2 = analyze_k2(p, alpha, beta, n, k);
        report.classification = k2.classification;
        report.predicted = std::move(k2.predicted);
        report.witnesses = std::move(k2.witnesses);
        report.note = std::move(k2.note);
    }

    // attach the 2x2 reduction data whenever it applies, so nestedness can
    // always be decided from the (a,b,c) triple
    if (k == 2 && !report.witnesses.k2) report.witnesses.k2 = build_k2_data(p);

    if (report.predicted) {
        // safety net: a closed-form prediction must track the reduced-formula
        // boundary; near-threshold detections that fail this are demoted
        const double norm_a = frobenius_norm(a.assemble());
        double dev = 0.0;
        for (int i = 0; i < 720; ++i) {
            const double theta = 2.0 * M_PI * i / 720;
            dev = std::max(dev,
                           std::abs(hull_support(*report.predicted, theta) - support_value(an, theta)));
        }
        if (dev > 1e-6 * (1.0 + norm_a)) {
            report.classification = Classification::NoneDetected;
            report.predicted.reset();
            report.nested.reset();
            report.note = "prediction demoted: support deviation " + std::to_string(dev) +
                          " exceeds the 1e-6 safety net";
            return report;
        }
    }

    if (report.predicted) {
        if (report.predicted->ellipses.size() == 1) {
            report.nested = Nestedness::Nested;
        } else if (k == 2 && report.witnesses.k2 && report.witnesses.k2->abc) {
            report.nested = classify_nestedness(report);
        } else {
            report.nested = active_partition(*report.predicted, 720).distinct_active() == 1
                                ? Nestedness::Nested
                                : Nestedness::NonNested;
        }
    }
    return report;
}

} // namespace numrange
