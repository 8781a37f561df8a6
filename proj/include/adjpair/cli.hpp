#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>

#include "adjpair/io.hpp"

namespace adjpair {

enum class Command { Validate, GreenCheck, CheckSubspace, Classify, OracleScan, Report };

std::optional<Command> parse_command(std::string_view name);
std::string_view to_string(Command c);

struct RunOptions {
    /// Overrides the model's inner-product tolerance.
    std::optional<double> tol;
    /// Overrides the model's seed.
    std::optional<std::uint64_t> seed;
    bool assert_verdicts = false;
    /// Adds wall-clock timings, which makes the report non-reproducible.
    bool timings = false;
    std::size_t pairs = 200;
    std::size_t grid = 10000;
    std::size_t truncation = 20000;
    std::size_t verify_to = 100000;
    std::optional<std::filesystem::path> figure;

    /// Throws InvalidArgument for values outside the documented ranges.
    void validate() const;
};

struct RunResult {
    RunReport report;
    /// 0 success, 1 negative verdict under assert_verdicts, 2 input or math error.
    int exit_code = 0;
};

/// Never throws for library errors; they become an "error" report with exit 2.
RunResult run(Command command, const std::filesystem::path& model_file, const RunOptions& options);
RunResult run_model(Command command, const ModelFile& file, const RunOptions& options);

}  // namespace adjpair
