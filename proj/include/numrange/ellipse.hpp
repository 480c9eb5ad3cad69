#pragma once

#include "numrange/linalg.hpp"

#include <vector>

namespace numrange {

struct NotAnEllipse : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DegenerateFit : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotCocentered : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct EmptyHull : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Ellipse given by center, semi-axes and major-axis angle in [0, pi).
/// semi_minor = 0 encodes a degenerate segment.
struct Ellipse {
    Complex center{};
    double semi_major = 0.0;
    double semi_minor = 0.0;
    double axis_angle = 0.0;
};

/// Coefficients of lambda_max^2(theta) = a*cos(2 theta) + b*sin(2 theta) + c.
/// Admissible as an origin-centered ellipse when c >= sqrt(a^2 + b^2);
/// equality gives a segment.
struct TrigCoefficients {
    double a_coef = 0.0;
    double b_coef = 0.0;
    double c_coef = 0.0;
};

struct EllipseHull {
    std::vector<Ellipse> ellipses;
    std::vector<Complex> isolated_points;
};

/// Which ellipse attains the hull support on each arc of the grid.
/// breakpoints[i] is the first grid angle of the interval where
/// active_index[i] takes over; no breakpoints means a single ellipse is
/// active everywhere.
struct ArcPartition {
    std::vector<double> breakpoints;
    std::vector<int> active_index;

    int distinct_active() const;
    int flat_portions() const { return static_cast<int>(breakpoints.size()); }
};

// reduce an angle to [0, pi)
double canonical_axis_angle(double angle);

/// Recover the ellipse from the trig form of lambda_max^2: semi-axes
/// sqrt(c +/- R) with R = sqrt(a^2+b^2), major axis at
/// atan2(b, a)/2 + pi/2 mod pi.
Ellipse ellipse_from_trig(const TrigCoefficients& coeffs, Complex center);

// Support of the ellipse in direction e^{i(theta+pi/2)} (the sampler's convention).
double ellipse_support(const Ellipse& e, double theta);

// Support of the hull: max over member ellipses and isolated points.
double hull_support(const EllipseHull& h, double theta);

// Index of the ellipse attaining the hull support at theta; ties go to
// the lowest index.
int active_ellipse_index(const EllipseHull& h, double theta);

/// Least-squares fit of lambda^2 samples onto {cos 2theta, sin 2theta, 1}.
/// Returns the coefficients and the max absolute fit error; a residual at
/// rounding level over a full grid certifies an elliptical arc.
std::pair<TrigCoefficients, double> fit_trig(const std::vector<std::pair<double, double>>& samples);

/// Partition of a uniform grid on [0, 2pi) by the index of the ellipse
/// attaining the hull support (ties go to the lowest index). All ellipses
/// must share one center. Each index change corresponds to one flat
/// boundary portion of the hull.
ArcPartition active_partition(const EllipseHull& h, int grid);

} // namespace numrange
