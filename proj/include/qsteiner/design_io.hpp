#pragma once

// Design files: a JSON object {q, n, k, t, blocks: [k x n matrices]} or an
// array of such objects sharing (q, n, k, t). Matrix entries are field
// elements 0..q-1. An optional "lambda" key defaults to 1.

#include "qsteiner/steiner.hpp"

#include <string>
#include <vector>

namespace qsteiner {

struct DesignFile {
    ParamSet params;
    unsigned long lambda = 1;
    std::vector<std::vector<Subspace>> designs;
};

/// Parses and canonicalizes every block to RREF. Throws ParseError for
/// malformed JSON or missing keys and DimensionMismatch for blocks whose shape
/// or rank is not k x n.
DesignFile parse_design_file(const std::string& text);

/// Inverse of parse_design_file; a single design is written as one object.
std::string write_design_file(const ParamSet& params, const std::vector<std::vector<Subspace>>& designs,
                              unsigned long lambda = 1);

} // namespace qsteiner
