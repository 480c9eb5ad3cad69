#include "numrange/io.hpp"

#include "numrange/ellipse.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <sstream>

namespace numrange {

using nlohmann::json;

namespace {

double parse_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ValidationError(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ValidationError(path, "non-finite entry");
    return v;
}

Complex parse_complex(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2)
        throw ValidationError(path, "expected a [re, im] pair");
    return {parse_number(j[0], path + "/0"), parse_number(j[1], path + "/1")};
}

DenseMatrix parse_block(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw ValidationError(path, "expected a non-empty 2-D array");
    const int rows = static_cast<int>(j.size());
    int cols = -1;
    std::vector<Complex> entries;
    for (int i = 0; i < rows; ++i) {
        const json& row = j[i];
        const std::string row_path = path + "/" + std::to_string(i);
        if (!row.is_array() || row.empty())
            throw ValidationError(row_path, "expected a non-empty row");
        if (cols < 0)
            cols = static_cast<int>(row.size());
        else if (static_cast<int>(row.size()) != cols)
            throw ValidationError(row_path, "ragged rows");
        for (int c = 0; c < cols; ++c)
            entries.push_back(parse_complex(row[c], row_path + "/" + std::to_string(c)));
    }
    return DenseMatrix(rows, cols, std::move(entries));
}

} // namespace

BlockMatrix MatrixDocument::to_block_matrix() const {
    if (d_block.rows() != c_block.cols() || d_block.cols() != c_block.rows())
        throw ValidationError("/D", "D must be k x (n-k) for C of shape (n-k) x k");
    try {
        return BlockMatrix(alpha, beta, c_block, d_block);
    } catch (const std::invalid_argument& e) {
        throw ValidationError("/", e.what());
    }
}

MatrixDocument parse_matrix_document(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!doc.is_object()) throw ValidationError("/", "expected a JSON object");
    for (const char* key : {"alpha", "beta", "C", "D"})
        if (!doc.contains(key))
            throw ValidationError(std::string("/") + key, "missing required field");

    MatrixDocument out;
    out.alpha = parse_complex(doc["alpha"], "/alpha");
    out.beta = parse_complex(doc["beta"], "/beta");
    out.c_block = parse_block(doc["C"], "/C");
    out.d_block = parse_block(doc["D"], "/D");
    if (doc.contains("label")) {
        if (!doc["label"].is_string()) throw ValidationError("/label", "expected a string");
        out.label = doc["label"].get<std::string>();
    }
    return out;
}

BlockMatrix parse_document(const std::string& text) {
    return parse_matrix_document(text).to_block_matrix();
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string boundary_csv(const std::vector<BoundarySample>& samples) {
    std::string out;
    for (const BoundarySample& s : samples) {
        out += format_double(s.theta);
        out += ',';
        out += format_double(s.support);
        out += ',';
        out += format_double(s.point.real());
        out += ',';
        out += format_double(s.point.imag());
        out += '\n';
    }
    return out;
}

namespace {

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const DenseMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json ellipse_json(const Ellipse& e) {
    return {{"center", complex_json(e.center)},
            {"semi_major", e.semi_major},
            {"semi_minor", e.semi_minor},
            {"axis_angle", e.axis_angle}};
}

json hull_json(const EllipseHull& hull) {
    json ellipses = json::array();
    for (const Ellipse& e : hull.ellipses) ellipses.push_back(ellipse_json(e));
    json points = json::array();
    for (const Complex& p : hull.isolated_points) points.push_back(complex_json(p));
    return {{"ellipses", ellipses}, {"isolated_points", points}};
}

json report_core_json(const StructureReport& report, const std::string& label) {
    json j;
    if (!label.empty()) j["label"] = label;
    j["classification"] = to_string(report.classification);
    j["nested"] = report.nested ? json(to_string(*report.nested)) : json(nullptr);
    if (report.predicted) {
        const json h = hull_json(*report.predicted);
        j["ellipses"] = h["ellipses"];
        j["isolated_points"] = h["isolated_points"];
        if (!report.predicted->ellipses.empty()) {
            const ArcPartition part = active_partition(*report.predicted, 720);
            j["m"] = part.distinct_active();
            j["flat_portions"] = part.flat_portions();
        }
    } else {
        j["ellipses"] = json::array();
        j["isolated_points"] = json::array();
    }
    if (!report.note.empty()) j["note"] = report.note;
    return j;
}

} // namespace

std::string boundary_json(const std::vector<BoundarySample>& samples) {
    json arr = json::array();
    for (const BoundarySample& s : samples)
        arr.push_back({{"theta", s.theta}, {"support", s.support}, {"point", complex_json(s.point)}});
    return arr.dump(2) + "\n";
}

std::string structure_report_json(const StructureReport& report, const std::string& label) {
    json j = report_core_json(report, label);
    json w;
    if (!report.witnesses.pairs.empty()) {
        json pairs = json::array();
        for (const auto& [h, z] : report.witnesses.pairs)
            pairs.push_back({{"h", h}, {"z", complex_json(z)}});
        w["pairs"] = pairs;
    }
    if (report.witnesses.simultaneous_basis)
        w["simultaneous_basis"] = matrix_json(*report.witnesses.simultaneous_basis);
    if (report.witnesses.scalar_c) w["scalar_c"] = complex_json(*report.witnesses.scalar_c);
    if (report.witnesses.invariant_subspace)
        w["invariant_subspace"] = matrix_json(*report.witnesses.invariant_subspace);
    if (report.witnesses.common_eigenvector)
        w["common_eigenvector"] = matrix_json(*report.witnesses.common_eigenvector);
    if (report.witnesses.k2) {
        const K2Data& kd = *report.witnesses.k2;
        json k2 = {{"h1", kd.h1},
                   {"h2", kd.h2},
                   {"z1", complex_json(kd.z1)},
                   {"z2", complex_json(kd.z2)},
                   {"z_entries", matrix_json(kd.z_entries)},
                   {"basis", matrix_json(kd.basis)}};
        k2["abc"] = kd.abc ? json::array({(*kd.abc)[0], (*kd.abc)[1], (*kd.abc)[2]}) : json(nullptr);
        w["k2"] = k2;
    }
    j["witnesses"] = w;
    return j.dump(2) + "\n";
}

std::string prediction_json(const StructureReport& report, const std::string& label) {
    return report_core_json(report, label).dump(2) + "\n";
}

std::string verification_json(const StructureReport& report, const VerificationReport& vr,
                              const std::string& label) {
    json j = report_core_json(report, label);
    j["max_support_deviation"] = vr.max_support_deviation;
    j["symmetry_deviation"] = vr.symmetry_deviation;
    j["formula_vs_direct_deviation"] = vr.formula_vs_direct_deviation;
    j["trig_fit_residual"] = vr.trig_fit_residual ? json(*vr.trig_fit_residual) : json(nullptr);
    j["flat_portion_count"] = vr.flat_portion_count ? json(*vr.flat_portion_count) : json(nullptr);
    j["passed"] = vr.passed;
    j["notes"] = vr.notes;
    return j.dump(2) + "\n";
}

std::string render_svg(const std::vector<BoundarySample>& samples, const EllipseHull* predicted) {
    double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
    bool first = true;
    const auto grow = [&](double x, double y) {
        if (first) {
            min_x = max_x = x;
            min_y = max_y = y;
            first = false;
        } else {
            min_x = std::min(min_x, x);
            max_x = std::max(max_x, x);
            min_y = std::min(min_y, y);
            max_y = std::max(max_y, y);
        }
    };
    for (const BoundarySample& s : samples) grow(s.point.real(), s.point.imag());
    if (predicted) {
        for (const Ellipse& e : predicted->ellipses) {
            grow(e.center.real() - e.semi_major, e.center.imag() - e.semi_major);
            grow(e.center.real() + e.semi_major, e.center.imag() + e.semi_major);
        }
        for (const Complex& p : predicted->isolated_points) grow(p.real(), p.imag());
    }
    if (first) grow(0.0, 0.0);

    constexpr double size = 640.0;
    const double span = std::max({max_x - min_x, max_y - min_y, 1e-6});
    const double margin = 0.05 * span;
    const double scale = size / (span + 2.0 * margin);
    const double x0 = 0.5 * (min_x + max_x) - 0.5 * (span + 2.0 * margin);
    const double y0 = 0.5 * (min_y + max_y) - 0.5 * (span + 2.0 * margin);
    const auto px = [&](double x) { return (x - x0) * scale; };
    const auto py = [&](double y) { return size - (y - y0) * scale; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size
        << "\" height=\"" << size << "\" viewBox=\"0 0 " << size << " " << size << "\">\n"
        << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    if (!samples.empty()) {
        // the sweep rows trace the boundary; appended point rows are drawn separately
        const size_t sweep = samples.size() >= 6 ? samples.size() - 2 : samples.size();
        if (sweep >= 3) {
            svg << "  <polyline fill=\"none\" stroke=\"#1f6fb5\" stroke-width=\"1.5\" points=\"";
            for (size_t i = 0; i <= sweep; ++i) {
                const BoundarySample& s = samples[i % sweep];
                svg << px(s.point.real()) << "," << py(s.point.imag());
                if (i != sweep) svg << " ";
            }
            svg << "\"/>\n";
        }
        for (size_t i = sweep; i < samples.size(); ++i)
            svg << "  <circle cx=\"" << px(samples[i].point.real()) << "\" cy=\""
                << py(samples[i].point.imag()) << "\" r=\"3\" fill=\"#1f6fb5\"/>\n";
    }

    if (predicted) {
        for (const Ellipse& e : predicted->ellipses) {
            const double cx = px(e.center.real());
            const double cy = py(e.center.imag());
            const double rx = e.semi_major * scale;
            const double ry = e.semi_minor * scale;
            const double deg = -e.axis_angle * 180.0 / M_PI; // y axis points down
            if (ry < 0.5) {
                const double dx = e.semi_major * std::cos(e.axis_angle) * scale;
                const double dy = e.semi_major * std::sin(e.axis_angle) * scale;
                svg << "  <line x1=\"" << cx - dx << "\" y1=\"" << cy + dy << "\" x2=\"" << cx + dx
                    << "\" y2=\"" << cy - dy
                    << "\" stroke=\"#c23b22\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
            } else {
                svg << "  <ellipse cx=\"" << cx << "\" cy=\"" << cy << "\" rx=\"" << rx
                    << "\" ry=\"" << ry << "\" transform=\"rotate(" << deg << " " << cx << " " << cy
                    << ")\" fill=\"none\" stroke=\"#c23b22\" stroke-width=\"1.5\" "
                       "stroke-dasharray=\"6 4\"/>\n";
            }
        }
        for (const Complex& p : predicted->isolated_points)
            svg << "  <circle cx=\"" << px(p.real()) << "\" cy=\"" << py(p.imag())
                << "\" r=\"3\" fill=\"#c23b22\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace numrange
