#pragma once

#include "numrange/block_matrix.hpp"
#include "numrange/structure.hpp"
#include "numrange/verify.hpp"

#include <string>
#include <vector>

namespace numrange {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input failed validation; path points at the offending JSON element
/// ("/C/1/0" style).
struct ValidationError : std::runtime_error {
    ValidationError(std::string path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

/// On-disk form of a block matrix: complex numbers as [re, im] pairs,
/// blocks as 2-D arrays, plus an optional label.
struct MatrixDocument {
    Complex alpha{};
    Complex beta{};
    DenseMatrix c_block;
    DenseMatrix d_block;
    std::string label;

    BlockMatrix to_block_matrix() const;
};

MatrixDocument parse_matrix_document(const std::string& text);
BlockMatrix parse_document(const std::string& text);

// 17 significant digits, locale independent
std::string format_double(double v);

// rows "theta,support,re,im", LF endings, no header
std::string boundary_csv(const std::vector<BoundarySample>& samples);
std::string boundary_json(const std::vector<BoundarySample>& samples);

std::string structure_report_json(const StructureReport& report, const std::string& label);
std::string prediction_json(const StructureReport& report, const std::string& label);
std::string verification_json(const StructureReport& report, const VerificationReport& vr,
                              const std::string& label);

// sampled boundary as a polyline, predicted ellipses dashed on top
std::string render_svg(const std::vector<BoundarySample>& samples, const EllipseHull* predicted);

} // namespace numrange
