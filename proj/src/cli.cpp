#include "numrange/cli.hpp"

#include "numrange/generators.hpp"
#include "numrange/io.hpp"
#include "numrange/structure.hpp"
#include "numrange/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

namespace numrange {

namespace {

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoFailure("cannot read " + path);
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open " + path + " for writing");
    out << content;
    if (!out) throw IoFailure("cannot write " + path);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"numerical range analysis for block matrices with scalar diagonal blocks"};
    app.require_subcommand(1);

    std::string file, out_path, format = "csv";
    int samples = 720;
    double tol = kVerifyTol;
    std::uint64_t seed = 0;

    CLI::App* analyze = app.add_subcommand("analyze", "classify a matrix and print the full report");
    analyze->add_option("file", file, "input JSON document")->required();

    CLI::App* boundary = app.add_subcommand("boundary", "sample the boundary of W(A)");
    boundary->add_option("file", file, "input JSON document")->required();
    boundary->add_option("--samples", samples, "grid size")->check(CLI::Range(4, 1 << 20));
    boundary->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI::App* predict = app.add_subcommand("predict", "print the predicted ellipses");
    predict->add_option("file", file, "input JSON document")->required();

    CLI::App* verify = app.add_subcommand("verify", "check the prediction against brute force");
    verify->add_option("file", file, "input JSON document")->required();
    verify->add_option("--samples", samples, "grid size")->check(CLI::Range(8, 1 << 20));
    verify->add_option("--tol", tol, "support tolerance relative to 1+||A||_F");

    CLI::App* render = app.add_subcommand("render", "write an SVG of the boundary and prediction");
    render->add_option("file", file, "input JSON document")->required();
    render->add_option("--out", out_path, "output SVG path")->required();
    render->add_option("--samples", samples, "grid size")->check(CLI::Range(4, 1 << 20));

    CLI::App* selftest = app.add_subcommand("selftest", "run the randomized property suites");
    selftest->add_option("--seed", seed, "random seed");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (selftest->parsed()) {
            const auto entries = run_selftests(seed);
            bool all = true;
            for (const auto& e : entries) {
                all = all && e.passed;
                out << (e.passed ? "PASS" : "FAIL") << " " << e.name
                    << " (observed=" << format_double(e.observed)
                    << ", tolerance=" << format_double(e.tolerance) << ")\n";
            }
            out << (all ? "selftest passed" : "selftest FAILED") << " (seed=" << seed << ")\n";
            return all ? 0 : 1;
        }

        const MatrixDocument doc = parse_matrix_document(read_file(file));
        const BlockMatrix a = doc.to_block_matrix();

        if (analyze->parsed()) {
            out << structure_report_json(predict_numerical_range(a), doc.label);
            return 0;
        }
        if (boundary->parsed()) {
            const auto sweep = sample_boundary(a, samples);
            out << (format == "csv" ? boundary_csv(sweep) : boundary_json(sweep));
            return 0;
        }
        if (predict->parsed()) {
            out << prediction_json(predict_numerical_range(a), doc.label);
            return 0;
        }
        if (verify->parsed()) {
            const StructureReport report = predict_numerical_range(a);
            if (report.predicted) {
                const VerificationReport vr = verify_prediction(a, report, samples, tol);
                out << verification_json(report, vr, doc.label);
                return vr.passed ? 0 : 1;
            }
            // no prediction: the sampler checks still apply
            VerificationReport vr;
            vr.symmetry_deviation = check_central_symmetry(a, samples);
            vr.formula_vs_direct_deviation = check_eigenvalue_formula(a, samples);
            vr.passed = vr.symmetry_deviation <= kCheckTol &&
                        vr.formula_vs_direct_deviation <= kCheckTol;
            vr.notes.push_back("no prediction: only symmetry and formula checks run");
            out << verification_json(report, vr, doc.label);
            return vr.passed ? 0 : 1;
        }
        if (render->parsed()) {
            const StructureReport report = predict_numerical_range(a);
            const auto sweep = sample_boundary(a, samples);
            write_file(out_path,
                       render_svg(sweep, report.predicted ? &*report.predicted : nullptr));
            return 0;
        }
    } catch (const IoFailure& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        err << "error: invalid input: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        err << "error: invalid document: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "no subcommand given\n";
    return 2;
}

} // namespace numrange
