#include "numrange/verify.hpp"

#include "numrange/ellipse.hpp"
#include "numrange/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace numrange {

double check_central_symmetry(const BlockMatrix& a, int samples) {
    if (samples % 2 != 0) throw std::invalid_argument("check_central_symmetry: samples must be even");
    const BlockMatrix a0 = a.centered();
    double dev = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double theta = 2.0 * M_PI * i / samples;
        dev = std::max(dev, std::abs(support_value_oracle(a0, theta + M_PI) -
                                     support_value_oracle(a0, theta)));
    }
    return dev;
}

double check_eigenvalue_formula(const BlockMatrix& a, int samples) {
    const BlockMatrix an = normalize_orientation(a);
    double dev = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double theta = 2.0 * M_PI * i / samples;
        const SpectrumAtAngle s = spectrum_at_angle(an, theta);
        std::vector<double> formula = s.paired_eigenvalues;
        for (int m = 0; m < s.scalar_multiplicity; ++m) formula.push_back(s.scalar_eigenvalue);
        std::sort(formula.begin(), formula.end(), std::greater<>());
        const std::vector<double> direct = spectrum_direct(an, theta);
        for (size_t j = 0; j < direct.size(); ++j)
            dev = std::max(dev, std::abs(formula[j] - direct[j]));
    }
    return dev;
}

double check_k2_closed_form(const StructuralPair& p, int samples) {
    if (p.h.rows() != 2 || p.z.rows() != 2)
        throw WrongBlockSize("check_k2_closed_form: blocks must be 2x2");
    const K2Data kd = build_k2_data(p);
    const Complex z11 = kd.z_entries(0, 0), z22 = kd.z_entries(1, 1);
    const Complex z12 = kd.z_entries(0, 1), z21 = kd.z_entries(1, 0);
    const Complex zsum = z11 + z22;
    const Complex zdiff = z22 - z11;
    const Complex dzsq = (kd.z1 - kd.z2) * (kd.z1 - kd.z2);
    const double d = kd.h1 - kd.h2;
    const double const_term =
        d * d + 2.0 * std::norm(zdiff) + 4.0 * std::norm(z12) + 4.0 * std::norm(z21);

    double dev = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double theta = 2.0 * M_PI * i / samples;
        const double c2 = std::cos(2.0 * theta), s2 = std::sin(2.0 * theta);
        const double c4 = std::cos(4.0 * theta), s4 = std::sin(4.0 * theta);
        const double sum = kd.h1 + kd.h2 - 2.0 * zsum.real() * c2 - 2.0 * zsum.imag() * s2;
        const double delta = const_term + 4.0 * d * zdiff.real() * c2 + 4.0 * d * zdiff.imag() * s2 +
                             2.0 * dzsq.real() * c4 + 2.0 * dzsq.imag() * s4;
        const double root = std::sqrt(std::max(0.0, delta));
        const EigenSystem es = hermitian_eigensystem(m_theta(p, theta));
        dev = std::max(dev, std::abs(0.5 * (sum + root) - es.values[0]));
        dev = std::max(dev, std::abs(0.5 * (sum - root) - es.values[1]));
    }
    return dev;
}

bool mu_branches_cross(const StructuralPair& p, int samples) {
    if (p.h.rows() != 2 || p.z.rows() != 2)
        throw WrongBlockSize("mu_branches_cross: blocks must be 2x2");
    const double eps = 1e-7 * std::max(1.0, frobenius_norm(p.h) + 2.0 * frobenius_norm(p.z));

    DenseMatrix prev(2, 2);
    double flip = 1.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const double theta = 2.0 * M_PI * i / samples;
        const EigenSystem es = hermitian_eigensystem(m_theta(p, theta));
        if (i > 0) {
            auto overlap = [&](int cp, int cc) {
                Complex acc{};
                for (int r = 0; r < 2; ++r) acc += std::conj(prev(r, cp)) * es.vectors(r, cc);
                return std::norm(acc);
            };
            const double straight = overlap(0, 0) + overlap(1, 1);
            const double crossed = overlap(0, 1) + overlap(1, 0);
            if (crossed > straight) flip = -flip;
        }
        const double signed_gap = flip * (es.values[0] - es.values[1]);
        lo = std::min(lo, signed_gap);
        hi = std::max(hi, signed_gap);
        prev = es.vectors;
    }
    return lo < -eps && hi > eps;
}

VerificationReport verify_prediction(const BlockMatrix& a, const StructureReport& report,
                                     int samples, double tol) {
    if (!report.predicted) throw NoPrediction("verify_prediction: report carries no prediction");
    const EllipseHull& hull = *report.predicted;
    const double fro = frobenius_norm(a.assemble());
    const BlockMatrix a0 = a.centered();

    VerificationReport vr;
    std::map<int, std::vector<std::pair<double, double>>> arcs;
    for (int i = 0; i < samples; ++i) {
        const double theta = 2.0 * M_PI * i / samples;
        const double brute = support_value_oracle(a, theta);
        const double formula = support_value(a, theta);
        vr.max_support_deviation =
            std::max(vr.max_support_deviation, std::abs(hull_support(hull, theta) - brute));
        vr.formula_vs_direct_deviation =
            std::max(vr.formula_vs_direct_deviation, std::abs(formula - brute));
        const double centered = support_value(a0, theta);
        arcs[active_ellipse_index(hull, theta)].emplace_back(theta, centered * centered);
    }
    vr.symmetry_deviation = check_central_symmetry(a, samples);

    const ArcPartition part = active_partition(hull, samples);
    vr.flat_portion_count = part.flat_portions();

    double residual = 0.0;
    bool fitted = false;
    for (const auto& [index, pts] : arcs) {
        if (pts.size() < 8) continue; // breakpoint slivers carry no signal
        residual = std::max(residual, fit_trig(pts).second);
        fitted = true;
    }
    if (fitted) vr.trig_fit_residual = residual;

    const double support_tol = tol * (1.0 + fro);
    const double trig_tol = 1e-8 * (1.0 + fro) * (1.0 + fro);
    const bool support_ok = vr.max_support_deviation <= support_tol;
    const bool sym_ok = vr.symmetry_deviation <= kCheckTol;
    const bool paths_ok = vr.formula_vs_direct_deviation <= kCheckTol;
    const bool trig_ok = !vr.trig_fit_residual || *vr.trig_fit_residual <= trig_tol;
    vr.passed = support_ok && sym_ok && paths_ok && trig_ok;

    auto note = [&](const char* name, bool ok, double value, double bound) {
        std::ostringstream os;
        os << name << (ok ? " ok" : " FAILED") << " (" << value << " vs " << bound << ")";
        vr.notes.push_back(os.str());
    };
    note("support agreement", support_ok, vr.max_support_deviation, support_tol);
    note("central symmetry", sym_ok, vr.symmetry_deviation, kCheckTol);
    note("formula vs direct", paths_ok, vr.formula_vs_direct_deviation, kCheckTol);
    if (vr.trig_fit_residual) note("trig fit", trig_ok, *vr.trig_fit_residual, trig_tol);
    return vr;
}

namespace {

double foci_mismatch(const Ellipse& e, Complex lambda1, Complex lambda2) {
    const double focal =
        std::sqrt(std::max(0.0, e.semi_major * e.semi_major - e.semi_minor * e.semi_minor));
    const Complex off = focal * std::polar(1.0, e.axis_angle);
    const Complex f1 = e.center + off, f2 = e.center - off;
    const double pairing_a = std::max(std::abs(f1 - lambda1), std::abs(f2 - lambda2));
    const double pairing_b = std::max(std::abs(f1 - lambda2), std::abs(f2 - lambda1));
    return std::min(pairing_a, pairing_b);
}

} // namespace

std::vector<SelftestEntry> run_selftests(std::uint64_t seed) {
    std::vector<SelftestEntry> out;
    const auto record = [&](std::string name, double observed, double tolerance) {
        out.push_back({std::move(name), observed <= tolerance, observed, tolerance});
    };

    {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> sized(2, 12);
        double worst = 0.0;
        for (int t = 0; t < 300; ++t) {
            const DenseMatrix m = random_hermitian(sized(rng), rng);
            const EigenSystem es = hermitian_eigensystem(m);
            DenseMatrix lam(m.rows(), m.rows());
            for (int i = 0; i < m.rows(); ++i) lam(i, i) = es.values[i];
            const double err = frobenius_norm(m - es.vectors * lam * adjoint(es.vectors));
            worst = std::max(worst, err / std::max(1.0, frobenius_norm(m)));
        }
        record("eigensolver reconstruction", worst, 1e-11);
    }
    {
        std::mt19937_64 rng(seed + 1);
        double worst = 0.0;
        for (int t = 0; t < 300; ++t) {
            const DenseMatrix m = random_hermitian(2, rng);
            const double mean = 0.5 * (m(0, 0).real() + m(1, 1).real());
            const double rad = std::hypot(0.5 * (m(0, 0).real() - m(1, 1).real()), std::abs(m(0, 1)));
            const EigenSystem es = hermitian_eigensystem(m);
            worst = std::max({worst, std::abs(es.values[0] - (mean + rad)),
                              std::abs(es.values[1] - (mean - rad))});
        }
        record("2x2 eigenvalues vs characteristic polynomial", worst, 1e-12);
    }
    {
        std::mt19937_64 rng(seed + 2);
        double worst_formula = 0.0, worst_sym = 0.0;
        for (int t = 0; t < 150; ++t) {
            const BlockMatrix a = random_block_matrix(rng);
            worst_formula = std::max(worst_formula, check_eigenvalue_formula(a, 32));
            worst_sym = std::max(worst_sym, check_central_symmetry(a, 32));
        }
        record("support formula vs direct spectra", worst_formula, 1e-10);
        record("central symmetry of the centered boundary", worst_sym, 1e-10);
    }
    {
        std::mt19937_64 rng(seed + 3);
        double worst = 0.0;
        for (int t = 0; t < 300; ++t)
            worst = std::max(worst,
                             check_k2_closed_form(structural_matrices(random_k2_block(rng)), 180));
        record("k2 closed-form branches vs eigensolve", worst, 1e-9);
    }
    {
        std::mt19937_64 rng(seed + 4);
        double worst = 0.0;
        for (int t = 0; t < 400; ++t) {
            DenseMatrix c(1, 1), d(1, 1);
            c(0, 0) = random_complex(rng);
            d(0, 0) = random_complex(rng);
            const BlockMatrix a(random_complex(rng), random_complex(rng), c, d);
            const StructureReport rep = predict_numerical_range(a);
            if (!rep.predicted || rep.predicted->ellipses.size() != 1) {
                worst = std::numeric_limits<double>::infinity();
                break;
            }
            const Complex gamma = a.gamma();
            const Complex root = std::sqrt(gamma * gamma + d(0, 0) * c(0, 0));
            worst = std::max(worst, foci_mismatch(rep.predicted->ellipses.front(),
                                                  a.center() + root, a.center() - root));
        }
        record("elliptical range foci closure", worst, 1e-8);
    }
    {
        std::mt19937_64 rng(seed + 5);
        std::uniform_real_distribution<double> coef(-2.0, 2.0);
        double worst = 0.0;
        for (int t = 0; t < 400; ++t) {
            TrigCoefficients tc;
            tc.a_coef = coef(rng);
            tc.b_coef = coef(rng);
            const double r = std::hypot(tc.a_coef, tc.b_coef);
            tc.c_coef = r + std::uniform_real_distribution<double>(0.0, 2.0)(rng);
            const Ellipse e = ellipse_from_trig(tc, {});
            for (int i = 0; i < 90; ++i) {
                const double theta = 2.0 * M_PI * i / 90;
                const double s = ellipse_support(e, theta);
                const double want = tc.a_coef * std::cos(2 * theta) +
                                    tc.b_coef * std::sin(2 * theta) + tc.c_coef;
                worst = std::max(worst, std::abs(s * s - want));
            }
        }
        record("trig coefficients round trip", worst, 1e-10);
    }
    {
        std::mt19937_64 rng(seed + 6);
        double worst = 0.0;
        bool structure_ok = true;
        const auto exercise = [&](const BlockMatrix& a, Classification want) {
            const StructureReport rep = predict_numerical_range(a);
            if (rep.classification != want || !rep.predicted) {
                structure_ok = false;
                return;
            }
            const double fro = frobenius_norm(a.assemble());
            double dev = 0.0;
            for (int i = 0; i < 360; ++i) {
                const double theta = 2.0 * M_PI * i / 360;
                dev = std::max(dev, std::abs(hull_support(*rep.predicted, theta) -
                                             support_value_oracle(a, theta)));
            }
            worst = std::max(worst, dev / (1.0 + fro));
            const StructuralPair p = structural_matrices(normalize_orientation(a));
            const bool crossed = mu_branches_cross(p, 360);
            if ((rep.nested == Nestedness::NonNested) != crossed) structure_ok = false;
        };
        for (int t = 0; t < 25 && structure_ok; ++t) {
            exercise(make_case1_instance(rng), Classification::TheoremTri);
            exercise(make_case2_instance(rng), Classification::NilpotentInvariant);
            exercise(make_cor33_instance(rng), Classification::EssentiallyHermitianPair);
        }
        if (!structure_ok) worst = std::numeric_limits<double>::infinity();
        record("classified instances: agreement and nestedness", worst, 1e-8);
    }
    {
        std::mt19937_64 rng(seed + 7);
        bool ok = true;
        double min_residual = std::numeric_limits<double>::infinity();
        const auto control = [&](const BlockMatrix& a, bool expect_bad_fit) {
            const StructureReport rep = predict_numerical_range(a);
            if (rep.classification != Classification::NoneDetected) ok = false;
            const BlockMatrix a0 = a.centered();
            std::vector<std::pair<double, double>> pts;
            for (int i = 0; i < 360; ++i) {
                const double theta = 2.0 * M_PI * i / 360;
                const double s = support_value(a0, theta);
                pts.emplace_back(theta, s * s);
            }
            const double res = fit_trig(pts).second;
            if (expect_bad_fit) min_residual = std::min(min_residual, res);
        };
        control(offcenter_pair_example({0.5, 0.25}), false);
        control(offcenter_pair_example({0.0, -0.5}), false);
        for (int t = 0; t < 10; ++t) control(make_case3_instance(rng), true);
        SelftestEntry e;
        e.name = "negative controls reject and fail the trig fit";
        e.observed = min_residual;
        e.tolerance = 1e-4;
        e.passed = ok && min_residual > 1e-4;
        out.push_back(e);
    }
    return out;
}

} // namespace numrange
