#include "numrange/ellipse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace numrange {

int ArcPartition::distinct_active() const {
    std::set<int> seen(active_index.begin(), active_index.end());
    return static_cast<int>(seen.size());
}

double canonical_axis_angle(double angle) {
    double a = std::fmod(angle, M_PI);
    if (a < 0.0) a += M_PI;
    if (a >= M_PI) a -= M_PI; // fmod can land exactly on pi after the shift
    return a;
}

Ellipse ellipse_from_trig(const TrigCoefficients& coeffs, Complex center) {
    const double r = std::hypot(coeffs.a_coef, coeffs.b_coef);
    if (coeffs.c_coef < r - 1e-9)
        throw NotAnEllipse("trig coefficients violate c >= sqrt(a^2+b^2)");
    Ellipse e;
    e.center = center;
    e.semi_major = std::sqrt(std::max(0.0, coeffs.c_coef + r));
    e.semi_minor = std::sqrt(std::max(0.0, coeffs.c_coef - r));
    if (r == 0.0) {
        e.axis_angle = 0.0; // circle
    } else {
        e.axis_angle =
            canonical_axis_angle(0.5 * std::atan2(coeffs.b_coef, coeffs.a_coef) + M_PI / 2.0);
    }
    return e;
}

double ellipse_support(const Ellipse& e, double theta) {
    const double dir = theta + M_PI / 2.0;
    const double rel = dir - e.axis_angle;
    const double ca = std::cos(rel), sa = std::sin(rel);
    const double radial =
        std::sqrt(e.semi_major * e.semi_major * ca * ca + e.semi_minor * e.semi_minor * sa * sa);
    return std::real(std::conj(e.center) * std::polar(1.0, dir)) + radial;
}

double hull_support(const EllipseHull& h, double theta) {
    if (h.ellipses.empty() && h.isolated_points.empty())
        throw EmptyHull("hull_support: no ellipses or points");
    double best = -std::numeric_limits<double>::infinity();
    for (const Ellipse& e : h.ellipses) best = std::max(best, ellipse_support(e, theta));
    const Complex u = std::polar(1.0, theta + M_PI / 2.0);
    for (const Complex& p : h.isolated_points) best = std::max(best, std::real(std::conj(p) * u));
    return best;
}

std::pair<TrigCoefficients, double> fit_trig(
    const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 3) throw DegenerateFit("fit_trig: need at least 3 samples");

    // 3x3 normal equations for the basis {cos 2t, sin 2t, 1}
    double g[3][3] = {};
    double rhs[3] = {};
    for (const auto& [theta, y] : samples) {
        const double f[3] = {std::cos(2.0 * theta), std::sin(2.0 * theta), 1.0};
        for (int i = 0; i < 3; ++i) {
            rhs[i] += f[i] * y;
            for (int j = 0; j < 3; ++j) g[i][j] += f[i] * f[j];
        }
    }

    // Gaussian elimination with partial pivoting
    int perm[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(g[perm[r]][col]) > std::abs(g[perm[piv]][col])) piv = r;
        std::swap(perm[col], perm[piv]);
        const double d = g[perm[col]][col];
        if (std::abs(d) < 1e-12 * samples.size())
            throw DegenerateFit("fit_trig: rank-deficient normal equations");
        for (int r = col + 1; r < 3; ++r) {
            const double factor = g[perm[r]][col] / d;
            for (int c = col; c < 3; ++c) g[perm[r]][c] -= factor * g[perm[col]][c];
            rhs[perm[r]] -= factor * rhs[perm[col]];
        }
    }
    double x[3];
    for (int col = 2; col >= 0; --col) {
        double acc = rhs[perm[col]];
        for (int c = col + 1; c < 3; ++c) acc -= g[perm[col]][c] * x[c];
        x[col] = acc / g[perm[col]][col];
    }

    TrigCoefficients coeffs{x[0], x[1], x[2]};
    double residual = 0.0;
    for (const auto& [theta, y] : samples) {
        const double fit =
            coeffs.a_coef * std::cos(2.0 * theta) + coeffs.b_coef * std::sin(2.0 * theta) +
            coeffs.c_coef;
        residual = std::max(residual, std::abs(fit - y));
    }
    return {coeffs, residual};
}

int active_ellipse_index(const EllipseHull& h, double theta) {
    if (h.ellipses.empty()) throw EmptyHull("active_ellipse_index: no ellipses");
    double best = -std::numeric_limits<double>::infinity();
    double mag = 0.0;
    int best_j = 0;
    for (int j = 0; j < static_cast<int>(h.ellipses.size()); ++j) {
        const double s = ellipse_support(h.ellipses[j], theta);
        mag = std::max(mag, std::abs(s));
        if (s > best + 1e-12 * std::max(1.0, mag)) {
            best = s;
            best_j = j;
        }
    }
    return best_j;
}

ArcPartition active_partition(const EllipseHull& h, int grid) {
    if (grid < 8) throw std::invalid_argument("active_partition: grid must be >= 8");
    if (h.ellipses.empty()) throw EmptyHull("active_partition: no ellipses");
    double scale = 0.0;
    for (const Ellipse& e : h.ellipses) scale = std::max(scale, std::abs(e.center));
    const Complex c0 = h.ellipses.front().center;
    for (const Ellipse& e : h.ellipses)
        if (std::abs(e.center - c0) > 1e-9 * (1.0 + scale))
            throw NotCocentered("active_partition: ellipses are not co-centered");

    std::vector<int> winner(grid);
    for (int i = 0; i < grid; ++i) winner[i] = active_ellipse_index(h, 2.0 * M_PI * i / grid);

    ArcPartition part;
    for (int i = 0; i < grid; ++i) {
        const int prev = winner[(i + grid - 1) % grid];
        if (winner[i] != prev) {
            part.breakpoints.push_back(2.0 * M_PI * i / grid);
            part.active_index.push_back(winner[i]);
        }
    }
    if (part.breakpoints.empty()) part.active_index.push_back(winner[0]);
    return part;
}

} // namespace numrange
