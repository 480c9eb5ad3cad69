#pragma once

#include "numrange/block_matrix.hpp"
#include "numrange/structure.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace numrange {

struct NoPrediction : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct VerificationReport {
    double max_support_deviation = 0.0;
    double symmetry_deviation = 0.0;
    double formula_vs_direct_deviation = 0.0;
    std::optional<double> trig_fit_residual;
    std::optional<int> flat_portion_count;
    bool passed = false;
    std::vector<std::string> notes;
};

inline constexpr double kVerifyTol = 1e-8;   // relative to 1 + ||A||_F
inline constexpr double kCheckTol = 1e-10;   // symmetry and formula checks

/// Compare the predicted hull against the brute-force boundary on a
/// uniform grid; also runs the symmetry and formula cross-checks and fits
/// the squared support per active arc. passed requires every populated
/// deviation to sit under its tolerance.
VerificationReport verify_prediction(const BlockMatrix& a, const StructureReport& report,
                                     int samples = 720, double tol = kVerifyTol);

// max over the grid of |support0(theta+pi) - support0(theta)| for the
// trace-centered matrix, via direct eigensolves.
double check_central_symmetry(const BlockMatrix& a, int samples);

// max Hausdorff distance between the reduced-formula spectrum and the
// direct spectrum of Im(e^{-i theta} A) over the grid.
double check_eigenvalue_formula(const BlockMatrix& a, int samples);

// max deviation between the closed-form 2x2 eigenvalue branches of
// M(theta) and a direct eigensolve, both branches, over the grid.
double check_k2_closed_form(const StructuralPair& p, int samples);

/// Whether the two eigenvalue branches of M(theta) cross on the grid,
/// tracked by eigenvector continuation. The nestedness classifier must
/// agree with this for every classified k = 2 instance.
bool mu_branches_cross(const StructuralPair& p, int samples = 720);

struct SelftestEntry {
    std::string name;
    bool passed = false;
    double observed = 0.0;
    double tolerance = 0.0;
};

// randomized property suites, reproducible for a fixed seed
std::vector<SelftestEntry> run_selftests(std::uint64_t seed);

} // namespace numrange
