// SPDX-FileCopyrightText: 2026 The pcqa Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PCQA_TOOLS_CLI_HPP
#define PCQA_TOOLS_CLI_HPP

#include "pcqa/error.hpp"
#include "pcqa/metrics.hpp"

#include "json.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace pcqa::cli {

/// Process exit codes. Every failure maps to a nonzero code.
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,           ///< bad flags or flag combinations
  kIo = 3,              ///< file not found / unreadable / unwritable
  kParse = 4,           ///< malformed PLY or manifest
  kZeroPeak = 5,        ///< PSNR normalizer evaluated to zero
  kPrecondition = 6,    ///< input too small, missing normals, degenerate data
};

int exit_code_for(ErrorCategory category) noexcept;

/// Runs the command line `args` (args[0] is the program name). Normal output
/// goes to `out`, diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// JSON-lines record of a compare result, and its inverse.
nlohmann::ordered_json to_json(const MetricResult& result);
MetricResult metric_result_from_json(const nlohmann::json& j);

}  // namespace pcqa::cli

#endif  // PCQA_TOOLS_CLI_HPP
