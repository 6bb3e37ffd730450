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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <gtest/gtest.h>
#include "json.hpp"
#include "msvd/image_io.h"
#include "msvd/matrix.h"
#include "report.h"
#include "test_util.h"

namespace msvd::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using msvd::testing::FixtureDir;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    static int counter = 0;
    dir_ = fs::temp_directory_path() /
           ("msvd_cli_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string Fixture(const std::string& name) {
    return (FixtureDir() / name).string();
  }
  json ReadJson(const std::string& name) const {
    return json::parse(read_file(Path(name)));
  }
  std::string WriteConstantImage(const std::string& name, std::uint16_t value) {
    write_pgm(Path(name), ImageBuffer{16, 16, BitDepth::k8,
                                      std::vector<std::uint16_t>(256, value)});
    return Path(name);
  }

  fs::path dir_;
};

TEST_F(CliTest, DecomposeWritesBandsAndMetadata) {
  const Outcome r = Cli({"decompose", Fixture("phantom_a.pgm"), "--levels", "1",
                         "--out", Path("pyr")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const char* band : {"ll", "lh", "hl", "hh"}) {
    const ImageBuffer img = read_pgm(Path(std::string("pyr/level0_") + band + ".pgm"));
    EXPECT_EQ(img.rows, 128u);
    EXPECT_EQ(img.cols, 128u);
    EXPECT_EQ(read_raw_matrix(Path(std::string("pyr/level0_") + band + ".mrx")).rows(),
              128u);
  }
  const json meta = ReadJson("pyr/metadata.json");
  EXPECT_EQ(meta["format"], kPyramidFormat);
  ASSERT_EQ(meta["levels"].size(), 1u);
  EXPECT_EQ(meta["levels"][0]["u"].size(), 4u);
  EXPECT_EQ(meta["levels"][0]["u"][0].size(), 4u);
}

TEST_F(CliTest, DecomposeTooManyLevels) {
  const Outcome r = Cli({"decompose", Fixture("p5_8bit.pgm"), "--levels", "1",
                         "--out", Path("pyr")});
  EXPECT_EQ(r.code, kExitUsageError);  // 5x6 has no even split
  const Outcome deep = Cli({"decompose", Fixture("phantom_a.pgm"), "--levels", "9",
                            "--out", Path("pyr")});
  EXPECT_EQ(deep.code, kExitUsageError);
  EXPECT_NE(deep.err.find("at most 8"), std::string::npos) << deep.err;
}

TEST_F(CliTest, DecomposeReconstructRoundTrip) {
  ASSERT_EQ(Cli({"noise", Fixture("phantom_b.pgm"), "--sigma", "10", "--seed", "4",
                 "--out", Path("noisy.pgm"), "--raw-out", Path("noisy.mrx")})
                .code,
            kExitOk);
  ASSERT_EQ(Cli({"decompose", Path("noisy.mrx"), "--levels", "3", "--out",
                 Path("pyr")})
                .code,
            kExitOk);
  const Outcome r = Cli({"reconstruct", Path("pyr"), "--out", Path("back.pgm"),
                         "--raw-out", Path("back.mrx")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_LE(max_abs_diff(read_raw_matrix(Path("back.mrx")),
                         read_raw_matrix(Path("noisy.mrx"))),
            1e-9);
  EXPECT_EQ(read_file(Path("back.pgm")), read_file(Path("noisy.pgm")));
}

TEST_F(CliTest, ReconstructRejectsTamperedTransform) {
  ASSERT_EQ(Cli({"decompose", Fixture("phantom_a.pgm"), "--levels", "2", "--out",
                 Path("pyr")})
                .code,
            kExitOk);
  json meta = ReadJson("pyr/metadata.json");
  meta["levels"][1]["u"][0][0] = 3.0;
  write_file(Path("pyr/metadata.json"), meta.dump());
  EXPECT_EQ(Cli({"reconstruct", Path("pyr"), "--out", Path("x.pgm")}).code,
            kExitUsageError);
  EXPECT_EQ(Cli({"reconstruct", Path("nowhere"), "--out", Path("x.pgm")}).code,
            kExitDataError);
}

TEST_F(CliTest, DenoiseZeroLambdaIsIdentity) {
  const Outcome r = Cli({"denoise", Fixture("phantom_a.pgm"), "--lambda", "0",
                         "--out", Path("out.pgm")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(read_file(Path("out.pgm")), read_file(Fixture("phantom_a.pgm")));
}

TEST_F(CliTest, DenoiseUniversalOnCleanConstant) {
  const std::string in = WriteConstantImage("flat.pgm", 140);
  ASSERT_EQ(Cli({"denoise", in, "--out", Path("out.pgm"), "--report",
                 Path("r.json")})
                .code,
            kExitOk);
  EXPECT_EQ(read_file(Path("out.pgm")), read_file(in));
  const json rep = ReadJson("r.json");
  EXPECT_EQ(rep["command"], "denoise");
  EXPECT_EQ(rep["parameters"]["lambda"], "universal");
  // Rounding residue in the detail bands keeps sigma_hat a hair above zero.
  EXPECT_LE(rep["results"][0]["levels"][0]["lambda"].get<double>(), 1e-9);
}

TEST_F(CliTest, DenoisePhantomReportsGain) {
  ASSERT_EQ(Cli({"noise", Fixture("phantom_a.pgm"), "--sigma", "20", "--seed", "11",
                 "--out", Path("noisy.pgm"), "--raw-out", Path("noisy.mrx")})
                .code,
            kExitOk);
  const Outcome r = Cli({"denoise", Path("noisy.mrx"), "--levels", "2", "--mode",
                         "soft", "--lambda", "universal", "--out", Path("den.pgm"),
                         "--reference", Fixture("phantom_a.pgm"), "--report",
                         Path("r.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json rep = ReadJson("r.json");
  EXPECT_GE(rep["results"][0]["psnr_gain"].get<double>(), 1.0);
  EXPECT_EQ(rep["results"][0]["levels"].size(), 2u);
}

TEST_F(CliTest, DenoiseRejectsBadThreshold) {
  EXPECT_EQ(Cli({"denoise", Fixture("phantom_a.pgm"), "--lambda", "abc", "--out",
                 Path("o.pgm")})
                .code,
            kExitUsageError);
  EXPECT_EQ(Cli({"denoise", Fixture("phantom_a.pgm"), "--lambda", "-1", "--out",
                 Path("o.pgm")})
                .code,
            kExitUsageError);
  EXPECT_EQ(Cli({"denoise", Fixture("phantom_a.pgm"), "--mode", "medium", "--out",
                 Path("o.pgm")})
                .code,
            kExitUsageError);
}

TEST_F(CliTest, TruncateIdentityCases) {
  const std::string flat = WriteConstantImage("flat.pgm", 77);
  ASSERT_EQ(Cli({"truncate", flat, "--k", "1", "--out", Path("t1.pgm")}).code, kExitOk);
  EXPECT_EQ(read_file(Path("t1.pgm")), read_file(flat));
  ASSERT_EQ(Cli({"truncate", Fixture("p5_16bit.pgm"), "--k", "5", "--out",
                 Path("full.pgm")})
                .code,
            kExitOk);
  EXPECT_EQ(read_file(Path("full.pgm")), read_file(Fixture("p5_16bit.pgm")));
  EXPECT_EQ(Cli({"truncate", flat, "--k", "17", "--out", Path("t.pgm")}).code,
            kExitUsageError);
}

TEST_F(CliTest, TruncateSweepErrorNonIncreasing) {
  double previous = std::numeric_limits<double>::infinity();
  for (const char* k : {"5", "20", "50"}) {
    ASSERT_EQ(Cli({"truncate", Fixture("phantom_c.pgm"), "--k", k, "--out",
                   Path("t.pgm"), "--report", Path("t.json")})
                  .code,
              kExitOk);
    const double err = ReadJson("t.json")["results"][0]["frobenius_error"].get<double>();
    EXPECT_LT(err, previous) << "k = " << k;
    previous = err;
  }
}

TEST_F(CliTest, NoiseIsSeeded) {
  ASSERT_EQ(Cli({"noise", Fixture("phantom_a.pgm"), "--sigma", "0", "--seed", "1",
                 "--out", Path("n0.pgm")})
                .code,
            kExitOk);
  EXPECT_EQ(read_file(Path("n0.pgm")), read_file(Fixture("phantom_a.pgm")));
  for (const char* name : {"a.pgm", "b.pgm"}) {
    ASSERT_EQ(Cli({"noise", Fixture("phantom_a.pgm"), "--sigma", "20", "--seed",
                   "5", "--out", Path(name)})
                  .code,
              kExitOk);
  }
  EXPECT_EQ(read_file(Path("a.pgm")), read_file(Path("b.pgm")));
  ASSERT_EQ(Cli({"noise", Fixture("phantom_a.pgm"), "--sigma", "20", "--seed", "6",
                 "--out", Path("c.pgm")})
                .code,
            kExitOk);
  EXPECT_NE(read_file(Path("a.pgm")), read_file(Path("c.pgm")));
}

TEST_F(CliTest, MetricsManifest) {
  const Outcome r = Cli({"metrics", "--manifest", Fixture("masks.csv"), "--report",
                         Path("m.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("Binary accuracy"), std::string::npos);
  EXPECT_NE(r.out.find("Dice-coef"), std::string::npos);
  const json rep = ReadJson("m.json");
  // Sorted by identifier.
  EXPECT_EQ(rep["results"][0]["id"], "hand4x4");
  EXPECT_EQ(rep["results"][0]["binary_accuracy"], 0.8125);
  EXPECT_EQ(rep["results"][0]["iou"], 0.25);
  EXPECT_EQ(rep["results"][0]["dice"], 0.4);
  EXPECT_EQ(rep["results"][1]["id"], "identical");
  EXPECT_EQ(rep["results"][1]["dice"], 1.0);
}

TEST_F(CliTest, MetricsPairAndFailures) {
  const Outcome pair = Cli({"metrics", "--pred", Fixture("mask_gt_4x4.pgm"), "--gt",
                            Fixture("mask_gt_4x4.pgm")});
  EXPECT_EQ(pair.code, kExitOk);
  write_file(Path("m.csv"), "ok, " + Fixture("mask_gt_4x4.pgm") + ", " +
                                Fixture("mask_gt_4x4.pgm") + "\nbad, " +
                                Fixture("mask_gt_4x4.pgm") + ", missing.pgm\n"
                                "shape, " + Fixture("phantom_a_mask.pgm") + ", " +
                                Fixture("mask_gt_4x4.pgm") + "\n");
  const Outcome r = Cli({"metrics", "--manifest", Path("m.csv"), "--report",
                         Path("r.json")});
  EXPECT_EQ(r.code, kExitDataError);
  const json rep = ReadJson("r.json");
  EXPECT_EQ(rep["summary"]["failed"], 2);
  EXPECT_TRUE(rep["results"][0].contains("error"));  // "bad"
  EXPECT_EQ(rep["results"][1]["dice"], 1.0);         // "ok"
  EXPECT_TRUE(rep["results"][2].contains("error"));  // "shape"
  EXPECT_EQ(Cli({"metrics"}).code, kExitUsageError);
}

TEST_F(CliTest, BenchDeterministicAcrossRunsAndWorkers) {
  const std::vector<std::string> base{"bench", "--manifest", Fixture("phantoms.csv"),
                                      "--sigma", "20", "--seed", "9", "--levels",
                                      "2", "--repeat", "2"};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
  };
  ASSERT_EQ(Cli(with({"--report", Path("a.json")})).code, kExitOk);
  ASSERT_EQ(Cli(with({"--report", Path("b.json"), "--jobs", "3"})).code, kExitOk);
  const json a = ReadJson("a.json");
  EXPECT_EQ(strip_timings(a).dump(), strip_timings(ReadJson("b.json")).dump());
  EXPECT_TRUE(a["summary"]["repeat_consistent"].get<bool>());
  EXPECT_EQ(a["results"][0]["timings_ms"]["denoise"].size(), 2u);
  EXPECT_GE(a["summary"]["mean_psnr_gain"].get<double>(), 1.0);
  EXPECT_EQ(a["seed"], 9);
}

TEST_F(CliTest, BenchZeroSigma) {
  const Outcome r = Cli({"bench", "--manifest", Fixture("phantoms.csv"), "--sigma",
                         "0", "--report", Path("z.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json rep = ReadJson("z.json");
  for (const json& e : rep["results"]) {
    EXPECT_EQ(e["psnr_noisy"], "inf");
    // The adaptive basis is tilted slightly by edges, so flat blocks leak a
    // little energy into HH and the universal threshold is small but nonzero.
    EXPECT_GT(e["denoise"]["levels"][0]["lambda"].get<double>(), 0.0);
    EXPECT_GT(e["psnr_denoised"].get<double>(), 60.0);
  }
}

TEST_F(CliTest, DenoiseCleanPhantomSurvivesQuantization) {
  for (const char* name : {"phantom_a.pgm", "phantom_b.pgm", "phantom_c.pgm"}) {
    const Outcome r = Cli({"denoise", Fixture(name), "--out", Path("q.pgm")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(msvd::read_file(Path("q.pgm")), msvd::read_file(Fixture(name))) << name;
  }
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Cli({}).code, kExitUsageError);
  EXPECT_EQ(Cli({"frobnicate"}).code, kExitUsageError);
  EXPECT_EQ(Cli({"noise", Fixture("phantom_a.pgm"), "--sigma", "-2", "--seed", "1",
                 "--out", Path("x.pgm")})
                .code,
            kExitUsageError);
  EXPECT_EQ(Cli({"--help"}).code, kExitOk);
  EXPECT_EQ(Cli({"noise", Path("absent.pgm"), "--sigma", "1", "--seed", "1", "--out",
                 Path("x.pgm")})
                .code,
            kExitDataError);
}

TEST(EntrySeedTest, DependsOnSeedAndIdentifier) {
  EXPECT_EQ(entry_seed(1, "a"), entry_seed(1, "a"));
  EXPECT_NE(entry_seed(1, "a"), entry_seed(1, "b"));
  EXPECT_NE(entry_seed(1, "a"), entry_seed(2, "a"));
}

TEST(ReportTest, StripTimingsAndInfinity) {
  json doc = {{"a", 1}, {"timings_ms", 5}, {"r", {{{"timings_ms", {1, 2}}, {"x", 2}}}}};
  EXPECT_EQ(strip_timings(doc), (json{{"a", 1}, {"r", {{{"x", 2}}}}}));
  EXPECT_EQ(number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(number(2.5), 2.5);
}

}  // namespace
}  // namespace msvd::cli
