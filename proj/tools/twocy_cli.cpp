#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "twocy/cli.hpp"

using namespace twocy;

namespace {

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

std::vector<Scalar> scalars(const std::string& flag, const std::string& s) {
    std::vector<Scalar> out;
    for (const auto& x : split(s)) {
        try {
            out.push_back(Scalar::parse(x));
        } catch (const std::exception& e) {
            throw std::invalid_argument(flag + ": malformed scalar \"" + x + "\"");
        }
    }
    return out;
}

int emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "cannot write " << out_path << "\n";
        return cli::input_error;
    }
    out << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"twocy: exact A-infinity, preprojective and local-model computations"};
    app.require_subcommand(1);

    cli::Options opts;
    std::string field, dim, zeta, mult, output = "structured", batch, out_path;
    std::vector<std::string> inputs;

    for (const auto& name : cli::kSubcommands) {
        auto* sub = app.add_subcommand(name, "run " + name);
        sub->add_option("inputs", inputs, "input documents");
        sub->add_option("--order-cap", opts.order_cap, "arity / order cap")->capture_default_str();
        sub->add_option("--field", field, "rationals or fp:P (reduces matrix data)");
        sub->add_option("--seed", opts.seed, "seed for randomized steps")->capture_default_str();
        sub->add_option("--weight", opts.weight, "bar-dual truncation weight for dg_algebra input")->capture_default_str();
        sub->add_option("--dim", dim, "dimension vector, comma separated");
        sub->add_option("--zeta", zeta, "stability parameter, comma separated");
        sub->add_option("--multiplicative", mult, "parameters q_i of the multiplicative relation, comma separated");
        sub->add_option("--output", output, "structured or text")->check(CLI::IsMember({"structured", "text"}))->capture_default_str();
        sub->add_option("--batch", batch, "run on every *.json file of a directory");
        sub->add_option("--out", out_path, "write the report to a file instead of stdout");
        sub->add_flag("--timings", opts.timings, "include wall-clock timings (not deterministic)");
    }
    std::string example_name;
    auto* ex = app.add_subcommand("example", "print a built-in example document");
    ex->add_option("name", example_name, "example name (omit to list)");
    ex->add_option("--out", out_path, "write to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::input_error;
    }

    if (ex->parsed()) {
        if (example_name.empty()) {
            for (const auto& n : cli::example_names()) std::cout << n << "\n";
            return 0;
        }
        try {
            return emit(io::dump(cli::example(example_name)), out_path);
        } catch (const std::exception& e) {
            std::cerr << e.what() << "\n";
            return cli::input_error;
        }
    }

    const std::string sub = app.get_subcommands().front()->get_name();
    try {
        if (!field.empty()) opts.field = io::parse_field(field);
        if (!dim.empty())
            for (const auto& x : split(dim)) opts.dim.push_back(std::stol(x));
        if (!zeta.empty()) opts.zeta = scalars("--zeta", zeta);
        if (!mult.empty()) opts.q = scalars("--multiplicative", mult);
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return cli::input_error;
    }

    cli::RunResult r;
    if (!batch.empty()) {
        if (!inputs.empty()) {
            std::cerr << "input error: --batch takes no positional inputs\n";
            return cli::input_error;
        }
        r = cli::run_batch(sub, opts, batch);
    } else {
        r = cli::run(sub, opts, inputs);
    }
    if (r.report.contains("error"))
        std::cerr << "input error at " << r.report["error"]["path"].get<std::string>() << ": " << r.report["error"]["message"].get<std::string>() << "\n";
    std::string text = output == "text" ? cli::render_text(r.report) : io::dump(r.report);
    if (int e = emit(text, out_path)) return e;
    return r.exit;
}
