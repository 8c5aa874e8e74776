// SPDX-FileCopyrightText: 2026 The pcqa Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcqa/benchmark.hpp"

#include "pcqa/error.hpp"
#include "pcqa/ply_io.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <tuple>

namespace pcqa {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Manifest
// ---------------------------------------------------------------------------

namespace {

struct CsvRow {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

std::vector<CsvRow> parse_csv(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<CsvRow> rows;
  CsvRow row;
  std::string field;
  std::size_t line = 1;
  row.line = line;
  bool quoted = false;
  bool field_started = false;
  auto end_field = [&] {
    row.fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    const bool blank = row.fields.size() == 1 && row.fields[0].empty();
    if (!blank) rows.push_back(std::move(row));
    row = CsvRow{};
    row.line = line;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n') {
      ++line;
      end_row();
    } else if (c == '\r') {
      // tolerated before \n
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (quoted) throw Error(ErrorCategory::Parse, "manifest: unterminated quoted field at line " + std::to_string(line));
  if (field_started || !row.fields.empty() || !field.empty()) end_row();
  return rows;
}

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

}  // namespace

std::vector<StimulusRecord> read_manifest(std::istream& in, const fs::path& base_dir, double mos_min,
                                          double mos_max) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  const auto rows = parse_csv(text);
  if (rows.empty()) throw Error(ErrorCategory::Parse, "manifest: missing header");

  const std::array<std::string_view, 5> columns{"stimulus_id", "group", "reference", "degraded", "mos"};
  std::array<std::size_t, 5> where{};
  for (std::size_t c = 0; c < columns.size(); ++c) {
    auto it = std::find_if(rows[0].fields.begin(), rows[0].fields.end(),
                           [&](const std::string& f) { return trim(f) == columns[c]; });
    if (it == rows[0].fields.end()) {
      throw Error(ErrorCategory::Parse, "manifest: header lacks column '" + std::string(columns[c]) + "'");
    }
    where[c] = static_cast<std::size_t>(it - rows[0].fields.begin());
  }

  std::vector<StimulusRecord> records;
  std::set<std::string> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const CsvRow& row = rows[r];
    auto fail = [&](const std::string& msg) {
      return Error(ErrorCategory::Parse, "manifest line " + std::to_string(row.line) + ": " + msg);
    };
    if (row.fields.size() != rows[0].fields.size()) {
      throw fail("expected " + std::to_string(rows[0].fields.size()) + " fields, got " +
                 std::to_string(row.fields.size()));
    }
    StimulusRecord rec;
    rec.stimulus_id = trim(row.fields[where[0]]);
    rec.group = trim(row.fields[where[1]]);
    const fs::path ref = trim(row.fields[where[2]]);
    const fs::path deg = trim(row.fields[where[3]]);
    const std::string mos_text = trim(row.fields[where[4]]);
    if (rec.stimulus_id.empty()) throw fail("empty stimulus_id");
    if (!seen.insert(rec.stimulus_id).second) throw fail("duplicate stimulus_id '" + rec.stimulus_id + "'");
    if (ref.empty() || deg.empty()) throw fail("empty path");
    rec.reference = ref.is_absolute() ? ref : base_dir / ref;
    rec.degraded = deg.is_absolute() ? deg : base_dir / deg;
    const char* first = mos_text.data();
    const char* last = first + mos_text.size();
    auto [ptr, ec] = std::from_chars(first, last, rec.mos);
    if (ec != std::errc{} || ptr != last || mos_text.empty()) throw fail("invalid mos '" + mos_text + "'");
    if (rec.mos < mos_min || rec.mos > mos_max) throw fail("mos " + mos_text + " outside the rating scale");
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<StimulusRecord> read_manifest(const fs::path& path, double mos_min, double mos_max) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCategory::Io, "cannot open manifest '" + path.string() + "'");
  return read_manifest(in, path.parent_path(), mos_min, mos_max);
}

// ---------------------------------------------------------------------------
// Variants
// ---------------------------------------------------------------------------

std::string MetricVariant::label() const { return to_string(peak) + ":" + std::string(to_string(error)); }

std::optional<MetricVariant> parse_variant(std::string_view text, std::size_t default_k) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  const auto colon = s.find(':');
  if (colon == std::string::npos) return std::nullopt;
  auto error = parse_error_kind(std::string_view(s).substr(colon + 1));
  if (!error) return std::nullopt;

  std::string_view peak = std::string_view(s).substr(0, colon);
  std::optional<std::size_t> k;
  if (const auto at = peak.find('@'); at != std::string_view::npos) {
    std::size_t value = 0;
    const auto digits = peak.substr(at + 1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || value == 0) return std::nullopt;
    k = value;
    peak = peak.substr(0, at);
  }
  bool ra = false;
  if (peak.starts_with("ra-")) {
    ra = true;
    peak.remove_prefix(3);
  } else if (peak.starts_with("i-")) {
    peak.remove_prefix(2);
  }

  MetricVariant v;
  v.error = *error;
  if (peak == "p" || peak == "precision") {
    if (ra || k) return std::nullopt;
    v.peak = PeakSpec::precision();
  } else if (peak == "ld") {
    if (ra || k) return std::nullopt;
    v.peak = PeakSpec::largest_diagonal();
  } else {
    auto est = parse_estimator(peak);
    if (!est || (ra && *est == Estimator::Mnn)) return std::nullopt;
    EstimatorSpec spec{*est, 1};
    if (spec.uses_k()) {
      spec.k = k.value_or(default_k);
    } else if (k) {
      return std::nullopt;
    }
    v.peak = ra ? PeakSpec::resolution_adaptive(spec) : PeakSpec::intrinsic(spec);
  }
  return v;
}

std::vector<MetricVariant> standard_variants(std::size_t k) {
  const std::vector<PeakSpec> peaks{
      PeakSpec::precision(),
      PeakSpec::largest_diagonal(),
      PeakSpec::intrinsic(EstimatorSpec::mnn()),
      PeakSpec::intrinsic(EstimatorSpec::ann()),
      PeakSpec::intrinsic(EstimatorSpec::ann_k(k)),
      PeakSpec::resolution_adaptive(EstimatorSpec::ann()),
      PeakSpec::resolution_adaptive(EstimatorSpec::ann_k(k)),
      PeakSpec::resolution_adaptive(EstimatorSpec::apd_k(k)),
  };
  std::vector<MetricVariant> out;
  for (const PeakSpec& p : peaks) {
    out.push_back({ErrorKind::Po2Po, p});
    out.push_back({ErrorKind::Po2Pl, p});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Harness
// ---------------------------------------------------------------------------

std::vector<CorrelationReport> correlate_scores(const MetricVariant& variant, std::span<const StimulusScore> scores,
                                                const BenchmarkOptions& options, std::vector<std::string>& warnings) {
  std::vector<std::string> groups;
  for (const StimulusScore& s : scores) {
    if (std::find(groups.begin(), groups.end(), s.group) == groups.end()) groups.push_back(s.group);
  }

  std::vector<CorrelationReport> reports;
  auto evaluate = [&](const std::string& name, bool pooled) {
    CorrelationReport rep;
    rep.group = name;
    rep.variant = variant;
    for (const StimulusScore& s : scores) {
      if (!pooled && s.group != name) continue;
      if (!s.score) {
        ++rep.excluded_infinite;
        continue;
      }
      rep.stimulus_ids.push_back(s.stimulus_id);
      rep.objective.push_back(*s.score);
      rep.mos.push_back(s.mos);
    }
    rep.n = rep.objective.size();
    const std::string where = variant.label() + " group '" + name + "'";
    if (rep.n < options.min_group_size) {
      warnings.push_back(where + ": skipped, " + std::to_string(rep.n) + " usable stimuli (need " +
                         std::to_string(options.min_group_size) + ")");
      return;
    }
    try {
      rep.fit = fit_regression(rep.objective, rep.mos, options.fit_form);
      rep.predicted_mos = rep.fit.predict(rep.objective);
      rep.plcc = plcc(rep.predicted_mos, rep.mos);
      rep.srocc = srocc(rep.predicted_mos, rep.mos);
    } catch (const Error& e) {
      warnings.push_back(where + ": skipped, " + e.what());
      return;
    }
    const auto [lo, hi] = std::minmax_element(rep.objective.begin(), rep.objective.end());
    rep.monotone_fit = is_monotone_on(rep.fit, *lo, *hi);
    if (rep.excluded_infinite > 0) {
      warnings.push_back(where + ": " + std::to_string(rep.excluded_infinite) +
                         " infinite-quality stimuli excluded from the fit");
    }
    reports.push_back(std::move(rep));
  };
  for (const std::string& g : groups) evaluate(g, false);
  evaluate(options.pooled_group, true);
  return reports;
}

namespace {

using PeakKey = std::tuple<std::string, std::string, std::size_t>;

PeakKey peak_key(const fs::path& ref, const PeakSpec& peak) {
  return {ref.string(), to_string(peak), peak.kind == PeakKind::Resolution ? peak.estimator.k : 0};
}

}  // namespace

BenchmarkRun run_benchmark(std::span<const StimulusRecord> manifest, std::span<const MetricVariant> variants,
                           const BenchmarkOptions& options, CloudLoader loader) {
  if (variants.empty()) throw Error(ErrorCategory::InvalidArgument, "benchmark needs at least one metric variant");
  for (const MetricVariant& v : variants) validate(v.peak);

  if (!loader) {
    for (const StimulusRecord& rec : manifest) {
      for (const fs::path* p : {&rec.reference, &rec.degraded}) {
        if (!fs::exists(*p)) {
          throw Error(ErrorCategory::Io, "stimulus '" + rec.stimulus_id + "': file not found: " + p->string());
        }
      }
    }
    loader = [](const fs::path& p) { return read_ply(p); };
  }

  BenchmarkRun run;
  run.variants.assign(variants.begin(), variants.end());
  run.scores.assign(variants.size(), {});
  const bool need_po2po = std::any_of(variants.begin(), variants.end(),
                                      [](const MetricVariant& v) { return v.error == ErrorKind::Po2Po; });
  const bool need_po2pl = std::any_of(variants.begin(), variants.end(),
                                      [](const MetricVariant& v) { return v.error == ErrorKind::Po2Pl; });

  std::map<PeakKey, PeakValue> peak_cache;
  std::optional<fs::path> cached_ref_path;
  std::unique_ptr<PreparedCloud> cached_ref;

  for (const StimulusRecord& rec : manifest) {
    try {
      if (!cached_ref_path || *cached_ref_path != rec.reference) {
        PointCloud ref = loader(rec.reference);
        if (!ref.bit_depth && !options.metric.bit_depth) {
          // Precision and RA peaks need b; voxelized references carry it implicitly.
          if (std::all_of(ref.points.begin(), ref.points.end(), [](const Vec3& p) { return p.minCoeff() >= 0.0; }) &&
              !ref.empty()) {
            ref.bit_depth = infer_bit_depth(ref);
          }
        }
        cached_ref = std::make_unique<PreparedCloud>(std::move(ref), options.metric.normal_k);
        cached_ref_path = rec.reference;
      }
      const PreparedCloud& ref = *cached_ref;
      const PreparedCloud deg(loader(rec.degraded), options.metric.normal_k);

      std::map<ErrorKind, std::pair<double, double>> mse;
      if (need_po2po) {
        mse[ErrorKind::Po2Po] = {directional_mse(ref, deg, ErrorKind::Po2Po),
                                 directional_mse(deg, ref, ErrorKind::Po2Po)};
      }
      if (need_po2pl) {
        mse[ErrorKind::Po2Pl] = {directional_mse(ref, deg, ErrorKind::Po2Pl),
                                 directional_mse(deg, ref, ErrorKind::Po2Pl)};
      }
      for (std::size_t v = 0; v < variants.size(); ++v) {
        const MetricVariant& variant = variants[v];
        const PeakKey key = peak_key(rec.reference, variant.peak);
        auto it = peak_cache.find(key);
        if (it == peak_cache.end()) {
          it = peak_cache.emplace(key, compute_peak(ref, variant.peak, options.metric)).first;
        }
        const auto [ab, ba] = mse.at(variant.error);
        const MetricResult result = assemble_result(ab, ba, it->second, variant.error, variant.peak, options.metric);
        run.scores[v].push_back({rec.stimulus_id, rec.group, rec.mos, result.psnr_pooled});
      }
    } catch (const Error& e) {
      throw Error(e.category(), "stimulus '" + rec.stimulus_id + "': " + e.what());
    }
  }

  for (std::size_t v = 0; v < variants.size(); ++v) {
    auto reports = correlate_scores(variants[v], run.scores[v], options, run.warnings);
    std::move(reports.begin(), reports.end(), std::back_inserter(run.reports));
  }
  return run;
}

// ---------------------------------------------------------------------------
// Report files
// ---------------------------------------------------------------------------

namespace {

std::string g6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string k_field(const PeakSpec& peak) {
  if (peak.kind == PeakKind::Resolution && peak.estimator.uses_k()) return std::to_string(peak.estimator.k);
  return "";
}

nlohmann::ordered_json variant_json(const MetricVariant& v) {
  nlohmann::ordered_json j;
  j["label"] = v.label();
  j["error_kind"] = std::string(to_string(v.error));
  j["peak_spec"] = to_string(v.peak);
  j["k"] = k_field(v.peak).empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(v.peak.estimator.k);
  return j;
}

}  // namespace

void write_report_csv(std::ostream& out, const BenchmarkRun& run) {
  out << "group,error_kind,peak_spec,k,n,plcc,srocc,monotone_fit,beta1,beta2,beta3,beta4\n";
  for (const CorrelationReport& r : run.reports) {
    out << csv_field(r.group) << ',' << to_string(r.variant.error) << ',' << to_string(r.variant.peak) << ','
        << k_field(r.variant.peak) << ',' << r.n << ',' << g6(r.plcc) << ',' << g6(r.srocc) << ','
        << (r.monotone_fit ? "true" : "false");
    for (double b : r.fit.beta) out << ',' << g6(b);
    out << '\n';
  }
}

void write_report_json(std::ostream& out, const BenchmarkRun& run) {
  nlohmann::ordered_json doc;
  doc["variants"] = nlohmann::ordered_json::array();
  for (const MetricVariant& v : run.variants) doc["variants"].push_back(variant_json(v));

  doc["reports"] = nlohmann::ordered_json::array();
  for (const CorrelationReport& r : run.reports) {
    nlohmann::ordered_json j = variant_json(r.variant);
    j["group"] = r.group;
    j["n"] = r.n;
    j["excluded_infinite"] = r.excluded_infinite;
    j["fit_form"] = r.fit.form == FitForm::Cubic ? "cubic" : "quartic";
    j["beta"] = r.fit.beta;
    j["plcc"] = r.plcc;
    j["srocc"] = r.srocc;
    j["monotone_fit"] = r.monotone_fit;
    j["stimuli"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < r.n; ++i) {
      j["stimuli"].push_back({{"stimulus_id", r.stimulus_ids[i]},
                              {"objective", r.objective[i]},
                              {"mos", r.mos[i]},
                              {"predicted_mos", r.predicted_mos[i]}});
    }
    doc["reports"].push_back(std::move(j));
  }

  doc["scores"] = nlohmann::ordered_json::array();
  for (std::size_t v = 0; v < run.scores.size(); ++v) {
    nlohmann::ordered_json entry;
    entry["variant"] = run.variants[v].label();
    entry["stimuli"] = nlohmann::ordered_json::array();
    for (const StimulusScore& s : run.scores[v]) {
      entry["stimuli"].push_back({{"stimulus_id", s.stimulus_id},
                                  {"group", s.group},
                                  {"mos", s.mos},
                                  {"score", s.score ? nlohmann::ordered_json(*s.score) : nlohmann::ordered_json(nullptr)},
                                  {"infinite_quality", !s.score.has_value()}});
    }
    doc["scores"].push_back(std::move(entry));
  }
  doc["warnings"] = run.warnings;
  out << doc.dump(2) << '\n';
}

}  // namespace pcqa
