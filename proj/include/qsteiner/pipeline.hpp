#pragma once

// End-to-end runs behind the CLI. Each returns a deterministic JSON report
// (exact values as fraction strings) and whether every check passed.

#include "qsteiner/identities.hpp"
#include "qsteiner/steiner.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace qsteiner {

struct RunResult {
    bool passed = false;
    std::string report;  // JSON text
};

enum class SweepFormat { json, csv };

/// Streams one row per checked or skipped tuple to `rows`; the returned
/// report is the per-identity summary.
RunResult run_identities(const SweepConfig& config, SweepFormat format, std::ostream& rows);

/// Spectrum and closure checks for the Grassmann scheme on Gr_{n,k}(F_q).
RunResult run_scheme(unsigned n, unsigned k, unsigned long q);

struct DimensionOptions {
    unsigned t = 1, k = 2, n = 4;
    unsigned long q = 2;
    bool sample = false;
    std::uint64_t seed = 1;
    std::size_t count = 0;  // 0: grow the sample until the rank saturates
    std::size_t max_designs = 200'000;
    std::uint64_t node_budget = 20'000'000;
};

/// Throws InvalidArgument for inadmissible or degenerate parameters.
RunResult run_dimension(const DimensionOptions& options);

/// Enumerates (or samples) systems and returns them as a design file in
/// `designs_file`; the report summarizes the run.
RunResult run_enumerate(const DimensionOptions& options, std::string& designs_file);

/// Verifies every design in a design file.
RunResult run_verify_design(const std::string& design_file_text);

} // namespace qsteiner
