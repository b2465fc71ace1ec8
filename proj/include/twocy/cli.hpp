#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twocy/io.hpp"

namespace twocy::cli {

enum Exit { pass = 0, property_failure = 1, input_error = 2, truncated = 3 };

struct Options {
    int order_cap = 6;
    std::optional<FieldCtx> field;  // reduce matrix data into this field
    std::uint64_t seed = 0;
    int weight = 3;                 // bar-dual truncation weight for dg input
    std::vector<long> dim;          // --dim
    std::vector<Scalar> zeta;       // --zeta
    std::vector<Scalar> q;          // --multiplicative
    bool timings = false;
};

struct RunResult {
    int exit = 0;
    io::Json report;
};

extern const std::vector<std::string> kSubcommands;

/// Runs one subcommand on input files. Never throws: input problems become
/// exit 2 reports with the offending field path.
RunResult run(const std::string& subcommand, const Options& opts, const std::vector<std::string>& inputs);
/// Same, on already parsed documents.
RunResult run_documents(const std::string& subcommand, const Options& opts, const std::vector<io::Document>& docs);

/// Every *.json file of dir in name order, each run as a single input.
/// Reports are identical to individual runs; exit follows the single-run
/// precedence (input error, failure, truncation, pass).
RunResult run_batch(const std::string& subcommand, const Options& opts, const std::string& dir);

/// Human-readable rendering of a report.
std::string render_text(const io::Json& report);

/// Built-in example documents, by name.
std::vector<std::string> example_names();
io::Json example(const std::string& name);

}  // namespace twocy::cli
