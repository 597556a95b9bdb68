// lgring: exact computation of graded Jacobian rings, Koszul anti-diagonal
// cohomology, hypersurface dimension tables, and model Frobenius algebras
// for one homogeneous input polynomial, with machine-readable reports.
//
// Exit codes: 0 all checks pass, 2 usage/parse/resource error,
// 3 isolated-singularity certificate failed, 4 some verification check
// failed.
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lgring/pipeline.hpp"

namespace {

using lgring::OrderedJson;
using lgring::Report;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << data;
}

int emit(const Report& rep, const std::string& format, const std::string& out_path) {
    if (format == "json") {
        std::string body = lgring::report_to_json(rep).dump(2) + "\n";
        if (out_path.empty())
            std::cout << body;
        else
            write_file(out_path, body);
    } else if (format == "pretty") {
        std::string body = lgring::report_to_pretty(rep);
        if (out_path.empty())
            std::cout << body;
        else
            write_file(out_path, body);
    } else if (format == "csv") {
        auto tables = lgring::report_to_csv(rep);
        if (out_path.empty()) {
            for (const auto& [name, csv] : tables) std::cout << "# " << name << "\n" << csv;
        } else {
            // One file per table: "<out>/<table>.csv" for directories,
            // otherwise "<out>_<table>.csv".
            for (const auto& [name, csv] : tables) {
                std::string path;
                if (!out_path.empty() && out_path.back() == '/') {
                    std::filesystem::create_directories(out_path);
                    path = out_path + name + ".csv";
                } else {
                    path = out_path + "_" + name + ".csv";
                }
                write_file(path, csv);
            }
        }
    } else {
        std::cerr << "unsupported format: " << format << "\n";
        return 2;
    }
    return rep.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Jacobian-ring / Koszul / Frobenius computations"};
    app.set_version_flag("--version", lgring::kToolVersion);
    app.require_subcommand(1);

    std::string poly_text, poly_file, format = "json", out_path, manifest_path;
    lgring::RunConfig cfg;
    std::vector<std::string> c_overrides;
    std::string trace_scale;

    auto add_common = [&](CLI::App* sub, bool needs_poly) {
        if (needs_poly) {
            sub->add_option("--poly", poly_text, "polynomial text, e.g. \"x1^3+x2^3+x3^3\"");
            sub->add_option("--poly-file", poly_file, "file containing the polynomial");
            sub->add_option("--n", cfg.n, "number of variables (>= 3)")->required();
        }
        sub->add_option("--format", format, "json|csv|pretty (default json)");
        sub->add_option("--max-weight", cfg.max_weight, "Koszul weight cap (default n, or 2 for n >= 5)");
        sub->add_option("--threads", cfg.threads, "worker threads (default: hardware)");
        sub->add_option("--out", out_path, "output path (csv: one file per table)");
        sub->add_option("--cell-budget", cfg.cell_budget, "max matrix cells per slice (default 1e8)");
        sub->add_option("--chain-samples", cfg.chain_samples, "random forms per chain-map cell");
        sub->add_option("--seed", cfg.seed, "seed for the sampled checks");
        sub->add_option("--c", c_overrides, "model scalar override q=rational (repeatable)");
        sub->add_option("--trace-scale", trace_scale, "model trace scale (nonzero rational)");
    };

    std::vector<std::string> commands = {"hilbert", "koszul", "cohomology",
                                         "frobenius", "compare", "verify"};
    for (const auto& name : commands) add_common(app.add_subcommand(name), true);
    CLI::App* batch = app.add_subcommand("batch", "run a JSON manifest of inputs");
    batch->add_option("--manifest", manifest_path, "manifest path")->required();
    add_common(batch, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        lgring::ModelConfig user_model;
        for (const auto& s : c_overrides) {
            auto eq = s.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("--c expects q=rational, got: " + s);
            int q = std::stoi(s.substr(0, eq));
            user_model.c[q] = lgring::rat_from_string(s.substr(eq + 1));
        }
        if (!trace_scale.empty()) user_model.trace_scale = lgring::rat_from_string(trace_scale);
        if (sgn(user_model.trace_scale) == 0)
            throw std::invalid_argument("trace scale must be nonzero");

        std::string command = app.get_subcommands().front()->get_name();

        if (command == "batch") {
            OrderedJson manifest = OrderedJson::parse(read_file(manifest_path));
            Report rep = lgring::run_batch(manifest, cfg);
            int check_code = emit(rep, format, out_path);
            return rep.any_check_failed() ? 4 : check_code;
        }

        if (!poly_file.empty()) poly_text = read_file(poly_file);
        if (poly_text.empty())
            throw std::invalid_argument("one of --poly / --poly-file is required");
        cfg.poly_text = poly_text;
        if (command == "compare") {
            cfg.model_b = user_model;  // compare: A = defaults, B = overrides
        } else {
            cfg.model_a = user_model;
        }

        Report rep = lgring::run_command(command, cfg);
        return emit(rep, format, out_path);
    } catch (const lgring::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const lgring::ResourceError& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return 2;
    } catch (const lgring::NotIsolatedError& e) {
        std::cerr << "certificate failure: " << e.what() << "\n";
        return 3;
    } catch (const OrderedJson::exception& e) {
        std::cerr << "manifest error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
