// SPDX-FileCopyrightText: 2026 The pcqa Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcqa_tools/cli.hpp"

#include "pcqa/benchmark.hpp"
#include "pcqa/degradation.hpp"
#include "pcqa/ply_io.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pcqa::cli {

namespace fs = std::filesystem;

int exit_code_for(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::Io: return kIo;
    case ErrorCategory::Parse: return kParse;
    case ErrorCategory::ZeroPeak: return kZeroPeak;
    case ErrorCategory::MissingBitDepth: return kUsage;
    case ErrorCategory::InvalidArgument:
    case ErrorCategory::EmptyCloud:
    case ErrorCategory::CloudTooSmall:
    case ErrorCategory::MissingNormals:
    case ErrorCategory::RankDeficient:
    case ErrorCategory::ZeroVariance: return kPrecondition;
  }
  return kInternal;
}

namespace {

// Flag problems detected by the tool itself (exit kUsage, category "invalid-flags").
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { Human, JsonLines };

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

OutputFormat parse_format(const std::string& s) {
  if (s == "human") return OutputFormat::Human;
  if (s == "jsonl") return OutputFormat::JsonLines;
  throw UsageError("--format must be human or jsonl");
}

// --peak accepts the spelled-out and the short label for precision.
PeakKind parse_peak_kind(const std::string& s, std::optional<Estimator>& estimator) {
  if (s == "precision" || s == "p") return PeakKind::Precision;
  if (s == "ld") return PeakKind::LargestDiagonal;
  estimator = parse_estimator(s);
  if (!estimator) throw UsageError("unknown --peak '" + s + "'");
  return PeakKind::Resolution;
}

EstimatorSpec make_estimator(Estimator kind, std::size_t k) {
  EstimatorSpec e{kind, 1};
  if (e.uses_k()) e.k = k;
  return e;
}

void check_k(std::size_t k, std::size_t normal_k) {
  if (k < 1) throw UsageError("--k must be at least 1");
  if (normal_k < 3) throw UsageError("--normal-k must be at least 3");
}

void check_bitdepth(const std::optional<int>& b) {
  if (b && (*b < 1 || *b > 52)) throw UsageError("--bitdepth must be in [1, 52]");
}

// Resolves the bit depth for peaks that need one: the flag wins, then the
// reference's inferred depth.
std::optional<int> resolve_bit_depth(const PeakSpec& peak, const std::optional<int>& flag, const PointCloud& ref,
                                     const std::string& peak_flag) {
  if (!peak.needs_bit_depth() || flag) return flag;
  const bool inferable = !ref.empty() && std::all_of(ref.points.begin(), ref.points.end(),
                                                     [](const Vec3& p) { return p.minCoeff() >= 0.0; });
  if (!inferable) {
    throw UsageError("--peak " + peak_flag + (peak.density_adaptive ? " --ra" : "") +
                     " needs --bitdepth: the reference has negative coordinates, so its bit depth cannot be inferred");
  }
  return infer_bit_depth(ref);
}

std::string optional_db(const std::optional<double>& v) {
  return v ? fixed(*v, 6) + " dB" : std::string("inf (zero error)");
}

void print_compare_human(std::ostream& out, const std::string& ref_path, std::size_t ref_n,
                         const std::string& deg_path, std::size_t deg_n, const MetricResult& r) {
  out << "reference     " << ref_path << " (" << ref_n << " points)\n";
  out << "degraded      " << deg_path << " (" << deg_n << " points)\n";
  out << "metric        " << to_string(r.peak);
  if (r.peak.kind == PeakKind::Resolution && r.peak.estimator.uses_k()) out << " k=" << r.peak.estimator.k;
  out << ' ' << to_string(r.error_kind) << ", pooling " << to_string(r.pooling) << '\n';
  if (r.bit_depth) out << "bit depth     " << *r.bit_depth << '\n';
  out << "peak          " << sig(r.peak_value, 9) << " (numerator " << sig(r.numerator, 9) << ")\n";
  out << "normals       reference " << to_string(r.reference_normals) << ", degraded "
      << to_string(r.degraded_normals) << " (normal k=" << r.normal_k << ")\n";
  out << "mse ref->deg  " << sig(r.mse_ab, 9) << '\n';
  out << "mse deg->ref  " << sig(r.mse_ba, 9) << '\n';
  out << "psnr ref->deg " << optional_db(r.psnr_ab) << '\n';
  out << "psnr deg->ref " << optional_db(r.psnr_ba) << '\n';
  out << "psnr          " << optional_db(r.psnr_pooled) << '\n';
  if (r.infinite_quality()) out << "infinite-quality: yes\n";
}

PointCloud load(const std::string& path) {
  if (!fs::exists(path)) throw Error(ErrorCategory::Io, "file not found: " + path);
  return read_ply(fs::path(path));
}

// ---------------------------------------------------------------------------

struct CompareFlags {
  std::string ref;
  std::string deg;
  std::string error = "po2pl";
  std::string peak;
  bool ra = false;
  std::size_t k = kDefaultEstimatorK;
  std::size_t normal_k = kDefaultNormalK;
  std::optional<int> bitdepth;
  std::string pooling = "max";
  std::string apd_mode = "rms";
  std::string format = "human";
};

int cmd_compare(const CompareFlags& f, std::ostream& out) {
  const auto error = parse_error_kind(f.error);
  if (!error) throw UsageError("--error must be po2po or po2pl");
  const auto pooling = parse_pooling(f.pooling);
  if (!pooling) throw UsageError("--pooling must be max or min");
  const auto apd_mode = parse_apd_mode(f.apd_mode);
  if (!apd_mode) throw UsageError("--apd-mode must be rms or strict-squared");
  const OutputFormat format = parse_format(f.format);
  check_k(f.k, f.normal_k);
  check_bitdepth(f.bitdepth);

  // Without --peak the tool computes RA-PSNR with APDk.
  PeakSpec peak;
  const std::string peak_flag = f.peak.empty() ? "apdk" : f.peak;
  std::optional<Estimator> estimator;
  peak.kind = parse_peak_kind(peak_flag, estimator);
  peak.density_adaptive = f.peak.empty() || f.ra;
  if (peak.kind == PeakKind::Resolution) {
    peak.estimator = make_estimator(*estimator, f.k);
  } else if (f.ra) {
    throw UsageError("--ra applies only to resolution peaks (mnn, ann, annk, apdk)");
  }

  if (peak.density_adaptive && peak.estimator.kind == Estimator::Mnn) {
    throw UsageError("--ra takes ann, annk or apdk");
  }
  const PointCloud ref = load(f.ref);
  const PointCloud deg = load(f.deg);

  MetricOptions options;
  options.pooling = *pooling;
  options.normal_k = f.normal_k;
  options.apd_mode = *apd_mode;
  options.bit_depth = resolve_bit_depth(peak, f.bitdepth, ref, peak_flag);

  const std::size_t ref_n = ref.size();
  const std::size_t deg_n = deg.size();
  const MetricResult result = psnr(ref, deg, *error, peak, options);

  if (format == OutputFormat::JsonLines) {
    auto j = to_json(result);
    j["reference"] = f.ref;
    j["degraded"] = f.deg;
    out << j.dump() << '\n';
  } else {
    print_compare_human(out, f.ref, ref_n, f.deg, deg_n, result);
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct ResolutionFlags {
  std::string ref;
  std::string peak = "ann";
  std::size_t k = kDefaultEstimatorK;
  std::size_t normal_k = kDefaultNormalK;
  std::string apd_mode = "rms";
  std::string format = "human";
};

int cmd_resolution(const ResolutionFlags& f, std::ostream& out) {
  std::optional<Estimator> estimator;
  if (parse_peak_kind(f.peak, estimator) != PeakKind::Resolution) {
    throw UsageError("resolution takes --peak mnn, ann, annk or apdk");
  }
  const auto apd_mode = parse_apd_mode(f.apd_mode);
  if (!apd_mode) throw UsageError("--apd-mode must be rms or strict-squared");
  const OutputFormat format = parse_format(f.format);
  check_k(f.k, f.normal_k);

  const EstimatorSpec spec = make_estimator(*estimator, f.k);
  const PreparedCloud cloud(load(f.ref), f.normal_k);
  const double value = resolution(cloud, spec, *apd_mode);
  const bool uses_normals = spec.kind == Estimator::ApdK;

  if (format == OutputFormat::JsonLines) {
    nlohmann::ordered_json j;
    j["command"] = "resolution";
    j["reference"] = f.ref;
    j["points"] = cloud.cloud().size();
    j["estimator"] = std::string(to_string(spec.kind));
    j["k"] = spec.uses_k() ? nlohmann::ordered_json(spec.k) : nlohmann::ordered_json(nullptr);
    j["value"] = value;
    j["normals"] = std::string(to_string(uses_normals ? cloud.normal_source() : NormalSource::None));
    j["normal_k"] = f.normal_k;
    j["apd_mode"] = std::string(to_string(*apd_mode));
    out << j.dump() << '\n';
  } else {
    out << to_string(spec.kind) << ' ' << fixed(value, 9) << "  [";
    if (spec.uses_k()) out << "k=" << spec.k << ' ';
    out << "points=" << cloud.cloud().size();
    if (uses_normals) {
      out << " normals=" << to_string(cloud.normal_source()) << " normal_k=" << f.normal_k
          << " apd_mode=" << to_string(*apd_mode);
    }
    out << " source=" << f.ref << "]\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct DegradeFlags {
  std::string ref;
  std::string out;
  std::string kind;
  std::optional<double> sigma;
  std::optional<int> bits_dropped;
  std::uint64_t seed = 1;
  std::optional<int> bitdepth;
  std::string ply = "binary";
  std::string format = "human";
};

int cmd_degrade(const DegradeFlags& f, std::ostream& out) {
  const OutputFormat format = parse_format(f.format);
  check_bitdepth(f.bitdepth);
  PlyFormat ply_format;
  if (f.ply == "binary") {
    ply_format = PlyFormat::BinaryLittleEndian;
  } else if (f.ply == "ascii") {
    ply_format = PlyFormat::Ascii;
  } else {
    throw UsageError("--ply must be binary or ascii");
  }
  const bool gaussian = f.kind == "gaussian";
  if (!gaussian && f.kind != "octree") throw UsageError("--kind must be gaussian or octree");
  if (gaussian) {
    if (!f.sigma) throw UsageError("--kind gaussian needs --sigma");
    if (!(*f.sigma > 0.0)) throw UsageError("--sigma must be positive");
  } else {
    if (!f.bits_dropped) throw UsageError("--kind octree needs --bits-dropped");
    if (*f.bits_dropped < 1) throw UsageError("--bits-dropped must be at least 1");
  }

  PointCloud cloud = load(f.ref);
  PointCloud result;
  if (gaussian) {
    result = add_gaussian_noise(cloud, *f.sigma, f.seed);
  } else {
    if (f.bitdepth) {
      cloud.bit_depth = f.bitdepth;
    } else {
      const bool inferable = std::all_of(cloud.points.begin(), cloud.points.end(),
                                         [](const Vec3& p) { return p.minCoeff() >= 0.0; });
      if (!inferable) throw UsageError("--kind octree needs non-negative coordinates");
      cloud.bit_depth = infer_bit_depth(cloud);
    }
    if (*f.bits_dropped >= *cloud.bit_depth) {
      throw UsageError("--bits-dropped must be below the bit depth (" + std::to_string(*cloud.bit_depth) + ")");
    }
    result = octree_quantize(cloud, *f.bits_dropped);
  }
  write_ply(fs::path(f.out), result, ply_format);

  if (format == OutputFormat::JsonLines) {
    nlohmann::ordered_json j;
    j["command"] = "degrade";
    j["source"] = f.ref;
    j["output"] = f.out;
    j["kind"] = f.kind;
    if (gaussian) {
      j["sigma"] = *f.sigma;
      j["seed"] = f.seed;
    } else {
      j["bits_dropped"] = *f.bits_dropped;
      j["bit_depth"] = *cloud.bit_depth;
    }
    j["points_in"] = cloud.size();
    j["points_out"] = result.size();
    out << j.dump() << '\n';
  } else {
    out << "wrote " << f.out << " (" << result.size() << " points, " << cloud.size() << " in; ";
    if (gaussian) {
      out << "gaussian sigma=" << sig(*f.sigma, 9) << " seed=" << f.seed;
    } else {
      out << "octree bits_dropped=" << *f.bits_dropped << " of " << *cloud.bit_depth;
    }
    out << ")\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct BenchmarkFlags {
  std::string manifest;
  std::string metrics;
  std::string out;
  std::size_t k = kDefaultEstimatorK;
  std::size_t normal_k = kDefaultNormalK;
  std::optional<int> bitdepth;
  std::string pooling = "max";
  std::string apd_mode = "rms";
  std::string fit = "cubic";
  double mos_min = 1.0;
  double mos_max = 5.0;
  std::string format = "human";
};

std::vector<MetricVariant> parse_metric_list(const std::string& text, std::size_t k) {
  std::vector<MetricVariant> variants;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    if (item.empty()) continue;
    if (item == "all") {
      for (const auto& v : standard_variants(k)) variants.push_back(v);
      continue;
    }
    auto v = parse_variant(item, k);
    if (!v) throw UsageError("unknown metric '" + item + "' (expected e.g. ra-apdk:po2pl, p:po2po, all)");
    variants.push_back(*v);
  }
  if (variants.empty()) throw UsageError("--metrics is empty");
  return variants;
}

int cmd_benchmark(const BenchmarkFlags& f, std::ostream& out, std::ostream& err) {
  const auto pooling = parse_pooling(f.pooling);
  if (!pooling) throw UsageError("--pooling must be max or min");
  const auto apd_mode = parse_apd_mode(f.apd_mode);
  if (!apd_mode) throw UsageError("--apd-mode must be rms or strict-squared");
  if (f.fit != "cubic" && f.fit != "quartic") throw UsageError("--fit must be cubic or quartic");
  if (!(f.mos_min < f.mos_max)) throw UsageError("--mos-min must be below --mos-max");
  const OutputFormat format = parse_format(f.format);
  check_k(f.k, f.normal_k);
  check_bitdepth(f.bitdepth);
  const auto variants = parse_metric_list(f.metrics, f.k);

  if (!fs::exists(f.manifest)) throw Error(ErrorCategory::Io, "manifest not found: " + f.manifest);
  const auto manifest = read_manifest(fs::path(f.manifest), f.mos_min, f.mos_max);

  BenchmarkOptions options;
  options.metric.pooling = *pooling;
  options.metric.normal_k = f.normal_k;
  options.metric.apd_mode = *apd_mode;
  options.metric.bit_depth = f.bitdepth;
  options.fit_form = f.fit == "cubic" ? FitForm::Cubic : FitForm::Quartic;

  const BenchmarkRun run = run_benchmark(manifest, variants, options);

  std::error_code ec;
  fs::create_directories(f.out, ec);
  if (ec) throw Error(ErrorCategory::Io, "cannot create output directory '" + f.out + "': " + ec.message());
  const fs::path csv_path = fs::path(f.out) / "benchmark.csv";
  const fs::path json_path = fs::path(f.out) / "benchmark.json";
  {
    std::ofstream csv(csv_path, std::ios::binary | std::ios::trunc);
    write_report_csv(csv, run);
    std::ofstream json(json_path, std::ios::binary | std::ios::trunc);
    write_report_json(json, run);
    if (!csv || !json) throw Error(ErrorCategory::Io, "failed writing reports under '" + f.out + "'");
  }
  for (const std::string& w : run.warnings) err << "pcqa: warning: " << w << '\n';

  if (format == OutputFormat::JsonLines) {
    for (const CorrelationReport& r : run.reports) {
      nlohmann::ordered_json j;
      j["group"] = r.group;
      j["variant"] = r.variant.label();
      j["n"] = r.n;
      j["plcc"] = r.plcc;
      j["srocc"] = r.srocc;
      j["monotone_fit"] = r.monotone_fit;
      out << j.dump() << '\n';
    }
  } else {
    char line[160];
    std::snprintf(line, sizeof line, "%-10s %-16s %5s %9s %9s %s\n", "group", "metric", "n", "plcc", "srocc",
                  "monotone");
    out << line;
    for (const CorrelationReport& r : run.reports) {
      std::string metric = r.variant.label();
      std::snprintf(line, sizeof line, "%-10s %-16s %5zu %9.4f %9.4f %s\n", r.group.c_str(), metric.c_str(), r.n,
                    r.plcc, r.srocc, r.monotone_fit ? "yes" : "no");
      out << line;
    }
    out << "reports: " << csv_path.string() << ", " << json_path.string() << '\n';
  }
  return kOk;
}

void report_error(std::ostream& err, std::string_view category, const std::string& message) {
  err << "pcqa: error [" << category << "]: " << message << '\n';
}

}  // namespace

// ---------------------------------------------------------------------------

nlohmann::ordered_json to_json(const MetricResult& r) {
  auto db = [](const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  nlohmann::ordered_json j;
  j["command"] = "compare";
  j["psnr_ab"] = db(r.psnr_ab);
  j["psnr_ba"] = db(r.psnr_ba);
  j["psnr_pooled"] = db(r.psnr_pooled);
  j["infinite_ab"] = !r.psnr_ab.has_value();
  j["infinite_ba"] = !r.psnr_ba.has_value();
  j["infinite_quality"] = r.infinite_quality();
  j["mse_ab"] = r.mse_ab;
  j["mse_ba"] = r.mse_ba;
  j["peak_value"] = r.peak_value;
  j["numerator"] = r.numerator;
  j["error_kind"] = std::string(to_string(r.error_kind));
  j["peak_spec"] = to_string(r.peak);
  const bool has_k = r.peak.kind == PeakKind::Resolution && r.peak.estimator.uses_k();
  j["k"] = has_k ? nlohmann::ordered_json(r.peak.estimator.k) : nlohmann::ordered_json(nullptr);
  j["pooling"] = std::string(to_string(r.pooling));
  j["apd_mode"] = std::string(to_string(r.apd_mode));
  j["normal_k"] = r.normal_k;
  j["bit_depth"] = r.bit_depth ? nlohmann::ordered_json(*r.bit_depth) : nlohmann::ordered_json(nullptr);
  j["reference_normals"] = std::string(to_string(r.reference_normals));
  j["degraded_normals"] = std::string(to_string(r.degraded_normals));
  return j;
}

MetricResult metric_result_from_json(const nlohmann::json& j) {
  auto db = [&](const char* key) -> std::optional<double> {
    if (j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
  };
  auto need = [](auto opt, const char* what) {
    if (!opt) throw Error(ErrorCategory::Parse, std::string("invalid ") + what + " in result record");
    return *opt;
  };
  MetricResult r;
  r.psnr_ab = db("psnr_ab");
  r.psnr_ba = db("psnr_ba");
  r.psnr_pooled = db("psnr_pooled");
  r.mse_ab = j.at("mse_ab").get<double>();
  r.mse_ba = j.at("mse_ba").get<double>();
  r.peak_value = j.at("peak_value").get<double>();
  r.numerator = j.at("numerator").get<double>();
  r.error_kind = need(parse_error_kind(j.at("error_kind").get<std::string>()), "error_kind");
  r.peak = need(parse_peak_label(j.at("peak_spec").get<std::string>()), "peak_spec");
  if (!j.at("k").is_null()) r.peak.estimator.k = j.at("k").get<std::size_t>();
  r.pooling = need(parse_pooling(j.at("pooling").get<std::string>()), "pooling");
  r.apd_mode = need(parse_apd_mode(j.at("apd_mode").get<std::string>()), "apd_mode");
  r.normal_k = j.at("normal_k").get<std::size_t>();
  if (!j.at("bit_depth").is_null()) r.bit_depth = j.at("bit_depth").get<int>();
  r.reference_normals = need(parse_normal_source(j.at("reference_normals").get<std::string>()), "reference_normals");
  r.degraded_normals = need(parse_normal_source(j.at("degraded_normals").get<std::string>()), "degraded_normals");
  return r;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"pcqa: point cloud geometry quality metrics"};
  app.name(args.empty() ? "pcqa" : fs::path(args[0]).filename().string());
  app.require_subcommand(1);
  app.set_version_flag("--version", "pcqa 0.1.0");

  CompareFlags cf;
  auto* compare = app.add_subcommand("compare", "PSNR of a degraded cloud against its reference");
  compare->add_option("--ref", cf.ref, "reference (original) PLY")->required();
  compare->add_option("--deg", cf.deg, "degraded PLY")->required();
  compare->add_option("--error", cf.error, "po2po | po2pl")->capture_default_str();
  compare->add_option("--peak", cf.peak, "precision | ld | mnn | ann | annk | apdk (default: apdk with --ra)");
  compare->add_flag("--ra", cf.ra, "density-adaptive (RA-PSNR) scaling of a resolution peak");
  compare->add_option("--k", cf.k, "neighbors for annk / apdk")->capture_default_str();
  compare->add_option("--normal-k", cf.normal_k, "neighbors for normal estimation")->capture_default_str();
  compare->add_option("--bitdepth", cf.bitdepth, "coordinate bit depth (inferred from the reference if omitted)");
  compare->add_option("--pooling", cf.pooling, "max | min")->capture_default_str();
  compare->add_option("--apd-mode", cf.apd_mode, "rms | strict-squared")->capture_default_str();
  compare->add_option("--format", cf.format, "human | jsonl")->capture_default_str();

  ResolutionFlags rf;
  auto* res = app.add_subcommand("resolution", "Estimate the intrinsic or rendering resolution of a cloud");
  res->add_option("--ref", rf.ref, "input PLY")->required();
  res->add_option("--peak", rf.peak, "mnn | ann | annk | apdk")->capture_default_str();
  res->add_option("--k", rf.k, "neighbors for annk / apdk")->capture_default_str();
  res->add_option("--normal-k", rf.normal_k, "neighbors for normal estimation")->capture_default_str();
  res->add_option("--apd-mode", rf.apd_mode, "rms | strict-squared")->capture_default_str();
  res->add_option("--format", rf.format, "human | jsonl")->capture_default_str();

  DegradeFlags df;
  auto* deg = app.add_subcommand("degrade", "Write a synthetically degraded copy of a cloud");
  deg->add_option("--ref,--in", df.ref, "source PLY")->required();
  deg->add_option("--out", df.out, "output PLY")->required();
  deg->add_option("--kind", df.kind, "gaussian | octree")->required();
  deg->add_option("--sigma", df.sigma, "gaussian noise standard deviation (source units)");
  deg->add_option("--bits-dropped", df.bits_dropped, "octree levels removed");
  deg->add_option("--seed", df.seed, "random seed")->capture_default_str();
  deg->add_option("--bitdepth", df.bitdepth, "coordinate bit depth for octree (inferred if omitted)");
  deg->add_option("--ply", df.ply, "binary | ascii")->capture_default_str();
  deg->add_option("--format", df.format, "human | jsonl")->capture_default_str();

  BenchmarkFlags bf;
  auto* bench = app.add_subcommand("benchmark", "Correlate metric variants with subjective scores");
  bench->add_option("--manifest", bf.manifest, "CSV: stimulus_id,group,reference,degraded,mos")->required();
  bench->add_option("--metrics", bf.metrics, "comma list, e.g. ra-apdk:po2pl,p:po2po or 'all'")->required();
  bench->add_option("--out", bf.out, "output directory")->required();
  bench->add_option("--k", bf.k, "neighbors for annk / apdk")->capture_default_str();
  bench->add_option("--normal-k", bf.normal_k, "neighbors for normal estimation")->capture_default_str();
  bench->add_option("--bitdepth", bf.bitdepth, "coordinate bit depth (inferred per reference if omitted)");
  bench->add_option("--pooling", bf.pooling, "max | min")->capture_default_str();
  bench->add_option("--apd-mode", bf.apd_mode, "rms | strict-squared")->capture_default_str();
  bench->add_option("--fit", bf.fit, "cubic | quartic")->capture_default_str();
  bench->add_option("--mos-min", bf.mos_min, "lowest rating on the MOS scale")->capture_default_str();
  bench->add_option("--mos-max", bf.mos_max, "highest rating on the MOS scale")->capture_default_str();
  bench->add_option("--format", bf.format, "human | jsonl")->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("pcqa");

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "invalid-flags", e.what());
    return kUsage;
  }

  try {
    if (*compare) return cmd_compare(cf, out);
    if (*res) return cmd_resolution(rf, out);
    if (*deg) return cmd_degrade(df, out);
    if (*bench) return cmd_benchmark(bf, out, err);
  } catch (const UsageError& e) {
    report_error(err, "invalid-flags", e.what());
    return kUsage;
  } catch (const Error& e) {
    report_error(err, to_string(e.category()), e.what());
    return exit_code_for(e.category());
  } catch (const std::exception& e) {
    report_error(err, "internal", e.what());
    return kInternal;
  }
  report_error(err, "invalid-flags", "no subcommand");
  return kUsage;
}

}  // namespace pcqa::cli
