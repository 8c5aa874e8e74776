// SPDX-FileCopyrightText: 2026 The pcqa Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PCQA_ERROR_HPP
#define PCQA_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace pcqa {

/// Coarse cause of a failure. The CLI maps each category to its own exit code.
enum class ErrorCategory {
  InvalidArgument,
  EmptyCloud,
  CloudTooSmall,
  MissingNormals,
  MissingBitDepth,
  ZeroPeak,
  Parse,
  Io,
  RankDeficient,
  ZeroVariance,
};

std::string_view to_string(ErrorCategory category) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

}  // namespace pcqa

#endif  // PCQA_ERROR_HPP
