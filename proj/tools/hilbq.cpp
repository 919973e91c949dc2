// hilbq: batch verification and table emission for the exact
// Hilbert-scheme trace engine.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "hilbq/verify.hpp"

namespace {

int write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write '" << path << "'\n";
        return 1;
    }
    out << text;
    return 0;
}

hilbq::CohClass resolve_class(const hilbq::SurfaceModel& X, const std::string& name) {
    if (name == "one" || name == "1") return X.one();
    if (name == "point" || name == "x") return X.point();
    if (name == "K" || name == "canonical") return X.canonical();
    if (name == "euler" || name == "e_X") return X.euler_class();
    if (name.size() > 1 && name[0] == 'e') {
        int idx = std::atoi(name.c_str() + 1);
        if (idx >= 1 && idx <= X.r()) return X.basis_class(idx);
    }
    if (X.line_bundles().count(name)) return X.line_bundle(name);
    throw hilbq::ModelError("unknown class name '" + name + "'");
}

std::string series_csv(const hilbq::ZQSeries& s) {
    std::ostringstream os;
    os << "q,z,c\n";
    for (const auto& [k, c] : s.terms()) {
        os << k.q << ",\"[";
        for (size_t i = 0; i < k.z.size(); ++i) os << (i ? " " : "") << k.z[i];
        os << "]\"," << hilbq::rat_str(c) << "\n";
    }
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact vertex-operator trace engine for Hilbert schemes of points"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "run identity suites and write a JSON report");
    std::string suite = "all";
    int qmax = 6;
    std::string models = "default";
    std::string out_path;
    verify->add_option("--suite", suite, "all|fock|identities|constants|abelian");
    verify->add_option("--qmax", qmax, "q-truncation order (default 6)");
    verify->add_option("--models", models, "preset name or model JSON path (default: built-in set)");
    verify->add_option("--out", out_path, "report output path (default: stdout)");

    // emit
    auto* emit = app.add_subcommand("emit", "emit constants, theta or ch series tables");
    std::string what;
    emit->add_option("what", what, "constants|theta|series")->required();
    int imax = 7, jmax = 6, kk = 0;
    std::string alpha = "point", surface = "minimal", lname = "L1", format = "json";
    int chk = 1;
    bool reduced = false;
    int emit_qmax = 6;
    emit->add_option("--imax", imax, "largest hook head for constants");
    emit->add_option("--jmax", jmax, "largest hook tail for constants");
    emit->add_option("--k", kk, "theta degree");
    emit->add_option("--alpha", alpha, "class name: one|point|K|e<i>|<line bundle>");
    emit->add_option("--surface", surface, "preset name or model JSON path");
    emit->add_option("--chk", chk, "Chern character degree for series");
    emit->add_option("--L", lname, "line bundle name for series");
    emit->add_flag("--reduced", reduced, "divide the ch series by the generating Euler product");
    emit->add_option("--qmax", emit_qmax, "q-truncation order");
    emit->add_option("--format", format, "json|csv");
    emit->add_option("--out", out_path, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*verify) {
            bool known = false;
            for (const auto& s : hilbq::suite_names()) known = known || (s == suite);
            if (!known) {
                std::cerr << "error: unknown suite '" << suite << "' (use all|fock|identities|constants|abelian)\n";
                return 2;
            }
            std::vector<hilbq::SurfaceModel> model_set;
            if (models != "default") model_set.push_back(hilbq::SurfaceModel::load(models));
            auto reports = hilbq::run_suite(suite, qmax, model_set);
            std::string json = hilbq::reports_to_json(reports);
            if (out_path.empty())
                std::cout << json << "\n";
            else if (write_file(out_path, json))
                return 1;
            int passed = 0;
            for (const auto& r : reports) passed += r.pass ? 1 : 0;
            std::cerr << "suite '" << suite << "': " << passed << "/" << reports.size() << " identities pass\n";
            return hilbq::all_pass(reports) ? 0 : 1;
        }

        if (*emit) {
            std::string text;
            if (what == "constants") {
                auto tab = hilbq::b_table(imax, jmax);
                text = (format == "csv") ? tab.to_csv_text() : tab.to_json_text();
            } else if (what == "theta") {
                auto X = hilbq::SurfaceModel::load(surface);
                auto th = hilbq::theta(X, resolve_class(X, alpha), kk, emit_qmax,
                                       hilbq::ThetaRoute::Compositions);
                text = (format == "csv") ? series_csv(th) : (hilbq::series_to_json(th) + "\n");
            } else if (what == "series") {
                auto X = hilbq::SurfaceModel::load(surface);
                hilbq::FockSpace fs(X);
                auto s = hilbq::series_ch(X, fs, {lname}, {chk}, reduced, emit_qmax).coe_z0();
                text = (format == "csv") ? series_csv(s) : (hilbq::series_to_json(s) + "\n");
            } else {
                std::cerr << "error: unknown emit target '" << what << "' (constants|theta|series)\n";
                return 2;
            }
            if (out_path.empty())
                std::cout << text;
            else if (write_file(out_path, text))
                return 1;
            return 0;
        }
    } catch (const hilbq::AdmissibilityError& e) {
        std::cerr << "admissibility error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
