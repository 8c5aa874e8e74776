// SPDX-FileCopyrightText: 2026 The pcqa Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PCQA_BENCHMARK_HPP
#define PCQA_BENCHMARK_HPP

#include "pcqa/evaluation.hpp"
#include "pcqa/metrics.hpp"
#include "pcqa/point_cloud.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pcqa {

/// One row of a subjective-score manifest.
struct StimulusRecord {
  std::string stimulus_id;
  std::string group;
  std::filesystem::path reference;
  std::filesystem::path degraded;
  double mos = 0;
};

/// Parses the CSV manifest (header `stimulus_id,group,reference,degraded,mos`,
/// columns in any order, RFC 4180 quoting). Relative paths are resolved
/// against `base_dir`. MOS values outside [mos_min, mos_max] are rejected.
std::vector<StimulusRecord> read_manifest(std::istream& in, const std::filesystem::path& base_dir,
                                          double mos_min = 1.0, double mos_max = 5.0);
/// Reads a manifest file; relative paths resolve against its directory.
std::vector<StimulusRecord> read_manifest(const std::filesystem::path& path,
                                          double mos_min = 1.0, double mos_max = 5.0);

/// A metric configuration evaluated by the harness.
struct MetricVariant {
  ErrorKind error = ErrorKind::Po2Po;
  PeakSpec peak{};

  /// "<peak label>:<error>", e.g. "RA-APDk:po2pl" (k printed separately).
  std::string label() const;
  friend bool operator==(const MetricVariant&, const MetricVariant&) = default;
};

/// Parses "<peak>:<error>" with peak one of p, ld, mnn, ann, annk, apdk,
/// optionally prefixed "ra-" (density adaptive) and suffixed "@k". Case
/// insensitive. Example: "ra-apdk@10:po2pl".
std::optional<MetricVariant> parse_variant(std::string_view text, std::size_t default_k = kDefaultEstimatorK);

/// The 16 standard configurations: PSNR with P and LD
/// peaks, I-PSNR with MNN/ANN/ANNk, RA-PSNR with ANN/ANNk/APDk, each for
/// Po2Po and Po2Pl.
std::vector<MetricVariant> standard_variants(std::size_t k = kDefaultEstimatorK);

struct BenchmarkOptions {
  MetricOptions metric{};
  FitForm fit_form = FitForm::Cubic;
  std::size_t min_group_size = 5;
  std::string pooled_group = "All";
};

/// Objective score of one stimulus under one variant. `score` is nullopt for
/// infinite quality (zero MSE).
struct StimulusScore {
  std::string stimulus_id;
  std::string group;
  double mos = 0;
  std::optional<double> score;
};

struct CorrelationReport {
  std::string group;
  MetricVariant variant;
  std::size_t n = 0;                  ///< stimuli in the fit
  std::size_t excluded_infinite = 0;  ///< dropped for zero MSE
  RegressionFit fit;
  std::vector<std::string> stimulus_ids;
  std::vector<double> objective;
  std::vector<double> mos;
  std::vector<double> predicted_mos;
  double plcc = 0;
  double srocc = 0;
  bool monotone_fit = false;
};

struct BenchmarkRun {
  std::vector<MetricVariant> variants;
  /// scores[v] holds one entry per manifest record, in manifest order.
  std::vector<std::vector<StimulusScore>> scores;
  std::vector<CorrelationReport> reports;
  std::vector<std::string> warnings;
};

using CloudLoader = std::function<PointCloud(const std::filesystem::path&)>;

/// Scores every stimulus under every variant, then fits and correlates each
/// group and the pooled set. Groups keep manifest order; the pooled report
/// comes last. Fails fast (Error(Io), naming the stimulus) when a referenced
/// file is missing. `loader` defaults to read_ply.
BenchmarkRun run_benchmark(std::span<const StimulusRecord> manifest,
                           std::span<const MetricVariant> variants,
                           const BenchmarkOptions& options = {}, CloudLoader loader = {});

/// Regression and correlation stage for one variant's scores.
std::vector<CorrelationReport> correlate_scores(const MetricVariant& variant,
                                                std::span<const StimulusScore> scores,
                                                const BenchmarkOptions& options,
                                                std::vector<std::string>& warnings);

/// CSV with columns group,error_kind,peak_spec,k,n,plcc,srocc,monotone_fit,
/// beta1,beta2,beta3,beta4; reals with 6 significant digits.
void write_report_csv(std::ostream& out, const BenchmarkRun& run);

/// Structured JSON report (variants, reports with per-stimulus values, scores,
/// warnings).
void write_report_json(std::ostream& out, const BenchmarkRun& run);

}  // namespace pcqa

#endif  // PCQA_BENCHMARK_HPP
