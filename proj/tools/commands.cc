/* Copyright 2026 The MSVD Denoise Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "commands.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string_view>
#include <thread>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"
#include "msvd/denoise.h"
#include "msvd/errors.h"
#include "msvd/image_io.h"
#include "msvd/lowrank.h"
#include "msvd/metrics.h"
#include "msvd/transform.h"
#include "report.h"
#include "version.h"

namespace msvd::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

double MillisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

struct LoadedImage {
  Matrix pixels;
  BitDepth depth;
};

// PGM or raw matrix dump, told apart by magic bytes. Raw dumps carry no
// depth and export as 8-bit.
LoadedImage LoadImage(const fs::path& path) {
  const std::string bytes = read_file(path);
  try {
    if (bytes.rfind("MSVDMAT1", 0) == 0) {
      return {decode_raw_matrix(bytes), BitDepth::k8};
    }
    ImageBuffer buf = parse_pgm(bytes);
    return {to_matrix(buf), buf.depth};
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.byte_offset());
  }
}

void SaveImage(const Matrix& m, BitDepth depth, const fs::path& out,
               const std::string& raw_out) {
  write_pgm(out, from_matrix(m, depth));
  if (!raw_out.empty()) write_raw_matrix(raw_out, m);
}

void SaveReport(const RunReport& report, const std::string& path) {
  if (!path.empty()) write_file(path, report.dump());
}

int DepthBits(BitDepth d) { return d == BitDepth::k8 ? 8 : 16; }

ThresholdSpec ParseThreshold(const std::string& lambda,
                             const std::string& mode) {
  const ShrinkMode m = parse_shrink_mode(mode);
  if (lambda == "universal") return ThresholdSpec::Universal(m);
  double value = 0.0;
  std::size_t used = 0;
  try {
    value = std::stod(lambda, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != lambda.size() || used == 0) {
    throw RangeError("--lambda expects a non-negative number or 'universal', got '" +
                     lambda + "'");
  }
  return ThresholdSpec::Explicit(value, m);
}

json LambdaParam(const ThresholdSpec& spec) {
  if (std::holds_alternative<UniversalThreshold>(spec.rule)) return "universal";
  return std::get<ExplicitThreshold>(spec.rule).lambda;
}

json DenoiseReportJson(const DenoiseReport& rep) {
  json levels = json::array();
  for (std::size_t i = 0; i < rep.levels.size(); ++i) {
    const LevelReport& l = rep.levels[i];
    levels.push_back({{"level", i},
                      {"lambda", l.lambda},
                      {"zeroed", {{"lh", l.zeroed_lh},
                                  {"hl", l.zeroed_hl},
                                  {"hh", l.zeroed_hh}}}});
  }
  return {{"sigma_hat", rep.sigma_hat}, {"levels", levels}};
}

// Runs body(i) for i in [0, n) on up to jobs threads. body must not throw.
void ParallelFor(std::size_t n, unsigned jobs,
                 const std::function<void(std::size_t)>& body) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  workers.reserve(jobs);
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  }
}

std::string Fixed(double v, int digits = 4) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

// ---------------------------------------------------------------- decompose

struct DecomposeOptions {
  std::string input;
  std::size_t levels = 1;
  std::string out_dir;
};

int Decompose(const DecomposeOptions& o, std::ostream& out) {
  const LoadedImage img = LoadImage(o.input);
  check_levels(img.pixels.rows(), img.pixels.cols(), o.levels);
  fs::create_directories(o.out_dir);

  json meta;
  meta["format"] = kPyramidFormat;
  meta["rows"] = img.pixels.rows();
  meta["cols"] = img.pixels.cols();
  meta["depth"] = DepthBits(img.depth);
  meta["levels"] = json::array();

  Matrix ll = img.pixels;
  for (std::size_t i = 0; i < o.levels; ++i) {
    auto [bands, u] = analyze_level(ll);
    const std::string stem = "level" + std::to_string(i) + "_";
    json files;
    const std::pair<const char*, const Matrix*> named[] = {
        {"ll", &bands.ll}, {"lh", &bands.lh}, {"hl", &bands.hl}, {"hh", &bands.hh}};
    for (const auto& [name, band] : named) {
      const std::string raw = stem + name + ".mrx";
      write_raw_matrix(fs::path(o.out_dir) / raw, *band);
      write_pgm(fs::path(o.out_dir) / (stem + name + ".pgm"), visualize(*band));
      files[name] = raw;
    }
    json u_rows = json::array();
    for (std::size_t r = 0; r < 4; ++r) {
      u_rows.push_back(json(std::vector<double>(u.row(r).begin(), u.row(r).end())));
    }
    meta["levels"].push_back({{"index", i},
                              {"rows", bands.ll.rows()},
                              {"cols", bands.ll.cols()},
                              {"u", u_rows},
                              {"bands", files}});
    out << "level " << i << ": 4 bands of " << bands.ll.rows() << "x"
        << bands.ll.cols() << "\n";
    ll = std::move(bands.ll);
  }
  meta["top_ll"] = "level" + std::to_string(o.levels - 1) + "_ll.mrx";
  write_file(fs::path(o.out_dir) / "metadata.json", meta.dump(2) + "\n");
  return kExitOk;
}

// -------------------------------------------------------------- reconstruct

struct ReconstructOptions {
  std::string dir;
  std::string out;
  std::string raw_out;
};

MsvdPyramid LoadPyramid(const fs::path& dir, BitDepth& depth) {
  json meta;
  try {
    meta = json::parse(read_file(dir / "metadata.json"));
    if (meta.at("format").get<std::string>() != kPyramidFormat) {
      throw ParseError("unsupported pyramid format '" +
                           meta.at("format").get<std::string>() + "'",
                       0);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("metadata.json: ") + e.what(), 0);
  }
  try {
    depth = meta.at("depth").get<int>() == 16 ? BitDepth::k16 : BitDepth::k8;
    MsvdPyramid p{{}, Matrix(1, 1), meta.at("rows").get<std::size_t>(),
                  meta.at("cols").get<std::size_t>()};
    for (const json& level : meta.at("levels")) {
      std::vector<double> u;
      for (const json& row : level.at("u")) {
        for (const json& x : row) u.push_back(x.get<double>());
      }
      if (u.size() != 16) throw ValidationError("transform must have 16 entries");
      const json& bands = level.at("bands");
      p.levels.push_back(PyramidLevel{
          read_raw_matrix(dir / bands.at("lh").get<std::string>()),
          read_raw_matrix(dir / bands.at("hl").get<std::string>()),
          read_raw_matrix(dir / bands.at("hh").get<std::string>()),
          Matrix(4, 4, std::move(u))});
    }
    p.top_ll = read_raw_matrix(dir / meta.at("top_ll").get<std::string>());
    return p;
  } catch (const json::exception& e) {
    throw ParseError(std::string("metadata.json: ") + e.what(), 0);
  }
}

int Reconstruct(const ReconstructOptions& o, std::ostream& out) {
  BitDepth depth = BitDepth::k8;
  const MsvdPyramid p = LoadPyramid(o.dir, depth);
  const Matrix img = reconstruct(p);
  SaveImage(img, depth, o.out, o.raw_out);
  out << "reconstructed " << img.rows() << "x" << img.cols() << " from "
      << p.levels.size() << " level(s)\n";
  return kExitOk;
}

// ------------------------------------------------------------------ denoise

struct DenoiseOptions {
  std::string input;
  std::size_t levels = 2;
  std::string mode = "soft";
  std::string lambda = "universal";
  std::string out;
  std::string raw_out;
  std::string report;
  std::string reference;
};

int Denoise(const DenoiseOptions& o, std::ostream& out) {
  const auto start = Clock::now();
  const ThresholdSpec spec = ParseThreshold(o.lambda, o.mode);
  const LoadedImage img = LoadImage(o.input);
  const auto t0 = Clock::now();
  auto [denoised, rep] = denoise_msvd(img.pixels, o.levels, spec);
  const double denoise_ms = MillisSince(t0);
  SaveImage(denoised, img.depth, o.out, o.raw_out);

  RunReport report;
  report.command = "denoise";
  report.parameters = {{"input", o.input},
                       {"levels", o.levels},
                       {"mode", o.mode},
                       {"lambda", LambdaParam(spec)},
                       {"output", o.out}};
  json result = DenoiseReportJson(rep);
  result["id"] = fs::path(o.input).filename().string();
  result["timings_ms"] = {{"denoise", denoise_ms}};
  out << "sigma_hat " << Fixed(rep.sigma_hat) << "  lambda "
      << Fixed(rep.levels.front().lambda) << "\n";
  if (!o.reference.empty()) {
    const LoadedImage ref = LoadImage(o.reference);
    const double before = psnr(img.pixels, ref.pixels);
    const double after = psnr(denoised, ref.pixels);
    result["psnr_input"] = number(before);
    result["psnr_output"] = number(after);
    result["psnr_gain"] = number(after - before);
    report.parameters["reference"] = o.reference;
    out << "PSNR input " << Fixed(before) << " dB  output " << Fixed(after)
        << " dB  gain " << Fixed(after - before) << " dB\n";
  }
  report.results.push_back(result);
  report.total_ms = MillisSince(start);
  SaveReport(report, o.report);
  return kExitOk;
}

// ----------------------------------------------------------------- truncate

struct TruncateOptions {
  std::string input;
  std::size_t k = 0;
  std::string out;
  std::string raw_out;
  std::string report;
};

int Truncate(const TruncateOptions& o, std::ostream& out) {
  const auto start = Clock::now();
  const LoadedImage img = LoadImage(o.input);
  auto [approx, rep] = truncate_image_with_report(img.pixels, o.k);
  SaveImage(approx, img.depth, o.out, o.raw_out);

  RunReport report;
  report.command = "truncate";
  report.parameters = {{"input", o.input}, {"k", o.k}, {"output", o.out}};
  report.results.push_back({{"id", fs::path(o.input).filename().string()},
                            {"k", rep.k},
                            {"kept_energy", rep.kept_energy},
                            {"dropped_energy", rep.dropped_energy},
                            {"frobenius_error", rep.frobenius_error}});
  report.total_ms = MillisSince(start);
  SaveReport(report, o.report);
  out << "k " << rep.k << "  frobenius_error " << Fixed(rep.frobenius_error, 6)
      << "\n";
  return kExitOk;
}

// -------------------------------------------------------------------- noise

struct NoiseOptions {
  std::string input;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string raw_out;
  std::string report;
};

int Noise(const NoiseOptions& o, std::ostream& out) {
  const auto start = Clock::now();
  const LoadedImage img = LoadImage(o.input);
  const Matrix noisy = add_gaussian_noise(img.pixels, {o.sigma, o.seed});
  SaveImage(noisy, img.depth, o.out, o.raw_out);

  RunReport report;
  report.command = "noise";
  report.seed = o.seed;
  report.parameters = {{"input", o.input}, {"sigma", o.sigma}, {"output", o.out}};
  const double p = psnr(noisy, img.pixels);
  report.results.push_back({{"id", fs::path(o.input).filename().string()},
                            {"psnr_noisy", number(p)}});
  report.total_ms = MillisSince(start);
  SaveReport(report, o.report);
  out << "PSNR noisy " << Fixed(p) << " dB\n";
  return kExitOk;
}

// ------------------------------------------------------------------ metrics

struct MetricsOptions {
  std::string manifest;
  std::string pred;
  std::string gt;
  std::string report;
  unsigned jobs = 1;
};

struct EntryOutcome {
  std::string id;
  json result;
  bool ok = false;
};

BinaryMask LoadMask(const fs::path& path) { return mask_from_image(read_pgm(path)); }

void SortById(std::vector<EntryOutcome>& outcomes) {
  std::stable_sort(outcomes.begin(), outcomes.end(),
                   [](const EntryOutcome& a, const EntryOutcome& b) {
                     return a.id < b.id;
                   });
}

int Metrics(const MetricsOptions& o, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  std::vector<ManifestEntry> entries;
  if (!o.manifest.empty()) {
    entries = load_manifest(o.manifest, /*check_files=*/false).entries;
  } else {
    entries.push_back({"pair", o.pred, o.gt});
  }

  std::vector<EntryOutcome> outcomes(entries.size());
  ParallelFor(entries.size(), o.jobs, [&](std::size_t i) {
    const ManifestEntry& e = entries[i];
    EntryOutcome& res = outcomes[i];
    res.id = e.identifier;
    res.result["id"] = e.identifier;
    try {
      const SegmentationScores s = score(LoadMask(e.image_path), LoadMask(e.mask_path));
      res.result["binary_accuracy"] = s.accuracy;
      res.result["iou"] = s.iou;
      res.result["dice"] = s.dice;
      res.result["both_empty"] = s.both_empty;
      res.result["confusion"] = {{"tp", s.counts.tp},
                                 {"tn", s.counts.tn},
                                 {"fp", s.counts.fp},
                                 {"fn", s.counts.fn}};
      res.ok = true;
    } catch (const std::exception& ex) {
      res.result["error"] = ex.what();
    }
  });
  SortById(outcomes);

  RunReport report;
  report.command = "metrics";
  report.parameters = o.manifest.empty()
                          ? json{{"pred", o.pred}, {"gt", o.gt}}
                          : json{{"manifest", o.manifest}};
  double acc = 0.0, iou_sum = 0.0, dice_sum = 0.0;
  std::size_t ok = 0;
  out << std::left << std::setw(16) << "id" << std::setw(18)
      << "Binary accuracy" << std::setw(10) << "IOU" << "Dice-coef\n";
  for (const EntryOutcome& r : outcomes) {
    report.results.push_back(r.result);
    if (!r.ok) {
      err << "error: " << r.id << ": " << r.result["error"].get<std::string>()
          << "\n";
      out << std::setw(16) << r.id << "FAILED\n";
      continue;
    }
    ++ok;
    acc += r.result["binary_accuracy"].get<double>();
    iou_sum += r.result["iou"].get<double>();
    dice_sum += r.result["dice"].get<double>();
    out << std::setw(16) << r.id << std::setw(18)
        << Fixed(r.result["binary_accuracy"].get<double>()) << std::setw(10)
        << Fixed(r.result["iou"].get<double>())
        << Fixed(r.result["dice"].get<double>()) << "\n";
  }
  report.summary = {{"entries", outcomes.size()},
                    {"succeeded", ok},
                    {"failed", outcomes.size() - ok}};
  if (ok > 0) {
    const double n = static_cast<double>(ok);
    report.summary["mean_binary_accuracy"] = acc / n;
    report.summary["mean_iou"] = iou_sum / n;
    report.summary["mean_dice"] = dice_sum / n;
    out << std::setw(16) << "mean" << std::setw(18) << Fixed(acc / n)
        << std::setw(10) << Fixed(iou_sum / n) << Fixed(dice_sum / n) << "\n";
  }
  report.total_ms = MillisSince(start);
  SaveReport(report, o.report);
  return ok == outcomes.size() ? kExitOk : kExitDataError;
}

// -------------------------------------------------------------------- bench

struct BenchOptions {
  std::string manifest;
  double sigma = 20.0;
  std::uint64_t seed = 0;
  std::size_t levels = 2;
  std::string mode = "soft";
  std::string lambda = "universal";
  std::size_t repeat = 1;
  unsigned jobs = 1;
  std::string report;
};

double Gain(double before, double after) {
  if (std::isinf(before) && std::isinf(after)) return 0.0;
  return after - before;
}

int Bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const ThresholdSpec spec = ParseThreshold(o.lambda, o.mode);
  if (o.repeat == 0) throw RangeError("--repeat must be at least 1");
  const auto entries = load_manifest(o.manifest, /*check_files=*/false).entries;

  std::vector<EntryOutcome> outcomes(entries.size());
  ParallelFor(entries.size(), o.jobs, [&](std::size_t i) {
    const ManifestEntry& e = entries[i];
    EntryOutcome& res = outcomes[i];
    res.id = e.identifier;
    res.result["id"] = e.identifier;
    try {
      const Matrix clean = LoadImage(e.image_path).pixels;
      const NoiseSpec noise{o.sigma, entry_seed(o.seed, e.identifier)};
      json noise_ms = json::array();
      json denoise_ms = json::array();
      std::optional<Matrix> first_noisy;
      std::optional<Matrix> first_denoised;
      DenoiseReport first_report;
      bool consistent = true;
      for (std::size_t r = 0; r < o.repeat; ++r) {
        auto t0 = Clock::now();
        Matrix noisy = add_gaussian_noise(clean, noise);
        noise_ms.push_back(MillisSince(t0));
        t0 = Clock::now();
        auto [denoised, rep] = denoise_msvd(noisy, o.levels, spec);
        denoise_ms.push_back(MillisSince(t0));
        if (!first_noisy) {
          first_noisy = std::move(noisy);
          first_denoised = std::move(denoised);
          first_report = std::move(rep);
        } else {
          consistent = consistent && noisy == *first_noisy &&
                       denoised == *first_denoised;
        }
      }
      const double before = psnr(*first_noisy, clean);
      const double after = psnr(*first_denoised, clean);
      res.result["noise_seed"] = noise.seed;
      res.result["psnr_noisy"] = number(before);
      res.result["psnr_denoised"] = number(after);
      res.result["psnr_gain"] = number(Gain(before, after));
      res.result["denoise"] = DenoiseReportJson(first_report);
      res.result["repeat_consistent"] = consistent;
      res.result["timings_ms"] = {{"noise", noise_ms}, {"denoise", denoise_ms}};
      res.ok = true;
    } catch (const std::exception& ex) {
      res.result["error"] = ex.what();
    }
  });
  SortById(outcomes);

  RunReport report;
  report.command = "bench";
  report.seed = o.seed;
  report.parameters = {{"manifest", o.manifest}, {"sigma", o.sigma},
                       {"levels", o.levels},     {"mode", o.mode},
                       {"lambda", LambdaParam(spec)}, {"repeat", o.repeat}};

  double sum_before = 0.0, sum_after = 0.0, sum_gain = 0.0;
  std::size_t ok = 0;
  bool all_consistent = true;
  out << std::left << std::setw(16) << "id" << std::setw(16) << "PSNR noisy"
      << std::setw(18) << "PSNR denoised" << "gain (dB)\n";
  for (const EntryOutcome& r : outcomes) {
    report.results.push_back(r.result);
    if (!r.ok) {
      err << "error: " << r.id << ": " << r.result["error"].get<std::string>()
          << "\n";
      out << std::setw(16) << r.id << "FAILED\n";
      continue;
    }
    ++ok;
    const auto value = [](const json& j) {
      return j.is_string() ? std::numeric_limits<double>::infinity()
                           : j.get<double>();
    };
    const double before = value(r.result["psnr_noisy"]);
    const double after = value(r.result["psnr_denoised"]);
    const double gain = value(r.result["psnr_gain"]);
    sum_before += before;
    sum_after += after;
    sum_gain += gain;
    all_consistent = all_consistent && r.result["repeat_consistent"].get<bool>();
    out << std::setw(16) << r.id << std::setw(16) << Fixed(before)
        << std::setw(18) << Fixed(after) << Fixed(gain) << "\n";
  }
  report.summary = {{"entries", outcomes.size()},
                    {"succeeded", ok},
                    {"failed", outcomes.size() - ok},
                    {"repeat_consistent", all_consistent}};
  if (ok > 0) {
    const double n = static_cast<double>(ok);
    report.summary["mean_psnr_noisy"] = number(sum_before / n);
    report.summary["mean_psnr_denoised"] = number(sum_after / n);
    report.summary["mean_psnr_gain"] = number(sum_gain / n);
    out << std::setw(16) << "mean" << std::setw(16) << Fixed(sum_before / n)
        << std::setw(18) << Fixed(sum_after / n) << Fixed(sum_gain / n) << "\n";
  }
  report.total_ms = MillisSince(start);
  SaveReport(report, o.report);
  return ok == outcomes.size() ? kExitOk : kExitDataError;
}

}  // namespace

std::uint64_t entry_seed(std::uint64_t seed, const std::string& identifier) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : identifier) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::uint64_t z = seed ^ h;
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"SVD and multiresolution-SVD image denoising toolkit", "msvd"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  DecomposeOptions dec;
  auto* c_dec = app.add_subcommand("decompose", "Multi-level MSVD analysis into band files");
  c_dec->add_option("input", dec.input, "PGM image or raw matrix dump")->required();
  c_dec->add_option("--levels", dec.levels, "Decomposition depth")
      ->check(CLI::PositiveNumber);
  c_dec->add_option("--out", dec.out_dir, "Output directory")->required();

  ReconstructOptions rec;
  auto* c_rec = app.add_subcommand("reconstruct", "Inverse MSVD from a decompose directory");
  c_rec->add_option("dir", rec.dir, "Directory written by decompose")->required();
  c_rec->add_option("--out", rec.out, "Output PGM")->required();
  c_rec->add_option("--raw-out", rec.raw_out, "Also write an unquantized raw dump");

  DenoiseOptions den;
  auto* c_den = app.add_subcommand("denoise", "MSVD detail-band shrinkage denoising");
  c_den->add_option("input", den.input, "PGM image or raw matrix dump")->required();
  c_den->add_option("--levels", den.levels, "Decomposition depth")
      ->check(CLI::PositiveNumber);
  c_den->add_option("--mode", den.mode, "Shrinkage mode")
      ->check(CLI::IsMember({"soft", "hard"}));
  c_den->add_option("--lambda", den.lambda, "Threshold value or 'universal'");
  c_den->add_option("--out", den.out, "Output PGM")->required();
  c_den->add_option("--raw-out", den.raw_out, "Also write an unquantized raw dump");
  c_den->add_option("--report", den.report, "Write a JSON run report");
  c_den->add_option("--reference", den.reference, "Clean image for PSNR reporting");

  TruncateOptions tru;
  auto* c_tru = app.add_subcommand("truncate", "Rank-k SVD approximation");
  c_tru->add_option("input", tru.input, "PGM image or raw matrix dump")->required();
  c_tru->add_option("--k", tru.k, "Number of singular triplets kept")->required();
  c_tru->add_option("--out", tru.out, "Output PGM")->required();
  c_tru->add_option("--raw-out", tru.raw_out, "Also write an unquantized raw dump");
  c_tru->add_option("--report", tru.report, "Write a JSON run report");

  NoiseOptions noi;
  auto* c_noi = app.add_subcommand("noise", "Add seeded Gaussian noise");
  c_noi->add_option("input", noi.input, "PGM image or raw matrix dump")->required();
  c_noi->add_option("--sigma", noi.sigma, "Standard deviation (0-255 scale)")
      ->required()
      ->check(CLI::NonNegativeNumber);
  c_noi->add_option("--seed", noi.seed, "Generator seed")->required();
  c_noi->add_option("--out", noi.out, "Output PGM")->required();
  c_noi->add_option("--raw-out", noi.raw_out, "Also write an unquantized raw dump");
  c_noi->add_option("--report", noi.report, "Write a JSON run report");

  MetricsOptions met;
  auto* c_met = app.add_subcommand("metrics", "Binary accuracy, IOU and Dice for mask pairs");
  auto* m_manifest = c_met->add_option("--manifest", met.manifest,
                                       "Manifest of (id, prediction, ground truth)");
  auto* m_pred = c_met->add_option("--pred", met.pred, "Predicted mask PGM");
  auto* m_gt = c_met->add_option("--gt", met.gt, "Ground-truth mask PGM");
  m_pred->needs(m_gt);
  m_gt->needs(m_pred);
  m_manifest->excludes(m_pred)->excludes(m_gt);
  c_met->add_option("--report", met.report, "Write a JSON run report");
  c_met->add_option("--jobs", met.jobs, "Worker threads")->check(CLI::PositiveNumber);

  BenchOptions ben;
  auto* c_ben = app.add_subcommand("bench", "Noise, denoise and score every manifest image");
  c_ben->add_option("--manifest", ben.manifest, "Manifest of clean images")->required();
  c_ben->add_option("--sigma", ben.sigma, "Noise standard deviation")
      ->check(CLI::NonNegativeNumber);
  c_ben->add_option("--seed", ben.seed, "Base seed");
  c_ben->add_option("--levels", ben.levels, "Decomposition depth")
      ->check(CLI::PositiveNumber);
  c_ben->add_option("--mode", ben.mode, "Shrinkage mode")
      ->check(CLI::IsMember({"soft", "hard"}));
  c_ben->add_option("--lambda", ben.lambda, "Threshold value or 'universal'");
  c_ben->add_option("--repeat", ben.repeat, "Repetitions per image")
      ->check(CLI::PositiveNumber);
  c_ben->add_option("--jobs", ben.jobs, "Worker threads")->check(CLI::PositiveNumber);
  c_ben->add_option("--report", ben.report, "Write a JSON run report");

  std::vector<const char*> argv{"msvd"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsageError;
  }

  try {
    if (*c_dec) return Decompose(dec, out);
    if (*c_rec) return Reconstruct(rec, out);
    if (*c_den) return Denoise(den, out);
    if (*c_tru) return Truncate(tru, out);
    if (*c_noi) return Noise(noi, out);
    if (*c_met) {
      if (met.manifest.empty() && met.pred.empty()) {
        err << "error: metrics needs --manifest or --pred/--gt\n";
        return kExitUsageError;
      }
      return Metrics(met, out, err);
    }
    if (*c_ben) return Bench(ben, out, err);
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitUsageError;
}

}  // namespace msvd::cli
