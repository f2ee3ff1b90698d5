#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "fgiqa/cli/batch.hpp"
#include "fgiqa/cli/config.hpp"
#include "fgiqa/cli/csv.hpp"
#include "fgiqa/cli/filter_dump.hpp"
#include "fgiqa/cli/image_io.hpp"
#include "fgiqa/cli/manifest.hpp"
#include "fgiqa/cli/report.hpp"
#include "fgiqa/cli/sweep.hpp"
#include "fgiqa/errors.hpp"
#include "test_support.hpp"

namespace fgiqa::cli {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("fgiqa_cli_test_" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};


TEST(CsvTest, SplitsQuotedFields) {
  EXPECT_EQ(split_csv_line("a,b,,c"), (std::vector<std::string>{"a", "b", "", "c"}));
  EXPECT_EQ(split_csv_line("\"x,y\",\"he said \"\"hi\"\"\",z"),
            (std::vector<std::string>{"x,y", "he said \"hi\"", "z"}));
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(split_csv_line(csv_field("a,\"b\"")), (std::vector<std::string>{"a,\"b\""}));
}

TEST(CsvTest, NumbersRoundTrip) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = d(rng) * std::pow(10.0, i % 20 - 10);
    EXPECT_EQ(*parse_number(format_number(v)), v);
  }
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(*parse_number("inf"), std::numeric_limits<double>::infinity());
  EXPECT_TRUE(std::isnan(*parse_number("nan")));
  EXPECT_FALSE(parse_number("abc").has_value());
  EXPECT_FALSE(parse_number("1.5x").has_value());
  EXPECT_FALSE(parse_number("").has_value());
}

TEST(ManifestTest, HeaderOnlyIsEmpty) {
  std::istringstream in("ref,dist,group,bitrate\n");
  const Manifest m = parse_manifest(in);
  EXPECT_TRUE(m.rows.empty());
}

TEST(ManifestTest, OneRowWithGroundTruth) {
  std::istringstream in("ref,dist,group,bitrate,gt\nr.png,d.png,g1,b1,3.5\n");
  const Manifest m = parse_manifest(in, "/data");
  ASSERT_EQ(m.rows.size(), 1u);
  EXPECT_TRUE(m.has_ground_truth);
  EXPECT_EQ(*m.rows[0].ground_truth, 3.5);
  EXPECT_EQ(m.rows[0].ref_path, fs::path("/data/r.png"));
  EXPECT_EQ(m.rows[0].ref, "r.png");
  EXPECT_EQ(m.rows[0].line, 2u);
}

TEST(ManifestTest, AbsolutePathsAreKept) {
  std::istringstream in("ref,dist,group,bitrate\n/abs/r.png,d.png,g1,b1\n");
  const Manifest m = parse_manifest(in, "/data");
  EXPECT_EQ(m.rows[0].ref_path, fs::path("/abs/r.png"));
  EXPECT_EQ(m.rows[0].dist_path, fs::path("/data/d.png"));
}

void expect_error_mentions(const std::string& text, const std::string& needle) {
  std::istringstream in(text);
  try {
    parse_manifest(in);
    ADD_FAILURE() << "expected an error for: " << text;
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
  }
}

TEST(ManifestTest, Errors) {
  expect_error_mentions("ref,dist,group,bitrate\nr.png,d.png,g1\n", "line 2");
  expect_error_mentions("ref,dist,group\nr.png,d.png,g1\n", "line 1");
  expect_error_mentions("ref,dist,group,bitrate,gt\na,b,g,b1,1\na,b,g,b1,\n", "line 3");
  expect_error_mentions("ref,dist,group,bitrate,gt\na,b,g,b1,x\n", "line 2");
  expect_error_mentions("ref,dist,group,bitrate\n,b,g,b1\n", "line 2");
  expect_error_mentions("ref,dist,group,bitrate\na,b,,b1\n", "line 2");
  expect_error_mentions("", "empty");
}

TEST(ConfigTest, PresetsMapToAblationGroups) {
  for (int i = 1; i <= 9; ++i) {
    MetricConfig cfg;
    const AblationPreset p = parse_preset("G" + std::to_string(i));
    EXPECT_EQ(preset_name(p), "G" + std::to_string(i));
    apply_preset(cfg, p);
    EXPECT_EQ(cfg.use_gradient, i != 1);
    EXPECT_EQ(cfg.use_gradient_region, i != 2);
    EXPECT_EQ(cfg.use_texture, i != 3);
    for (int s = 0; s < 5; ++s) EXPECT_EQ(cfg.scale_toggles[s], i != 4 + s);
  }
  EXPECT_THROW(parse_preset("G10"), InvalidConfig);
}

TEST(ConfigTest, G9EqualsDefaults) {
  MetricConfig cfg;
  cfg.use_texture = false;
  cfg.scale_toggles[2] = false;
  apply_preset(cfg, AblationPreset::kG9);
  EXPECT_EQ(config_to_json(cfg), config_to_json(MetricConfig{}));
}

TEST(ConfigTest, JsonRoundTripAndProvenanceWrapping) {
  MetricConfig cfg;
  cfg.c1 = 42.0;
  cfg.texture.f0 = 0.12;
  cfg.sobel = SobelForm::kVerbatim;
  cfg.scale_toggles[1] = false;
  EXPECT_EQ(config_to_json(config_from_json(config_to_json(cfg))), config_to_json(cfg));

  const auto j = nlohmann::json::parse(R"({
    "provenance": "test",
    "c1": {"value": 7.5, "provenance": "design decision"},
    "texture": {"c2": {"value": 50, "provenance": "design decision"}}
  })");
  const MetricConfig parsed = config_from_json(j);
  EXPECT_EQ(parsed.c1, 7.5);
  EXPECT_EQ(parsed.texture.c2, 50.0);
  EXPECT_EQ(parsed.alpha, 0.1);
}

TEST(ConfigTest, UnknownKeysAreRejected) {
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"c3": 1})")), InvalidConfig);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"texture": {"f1": 1}})")), InvalidConfig);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"sobel": "round"})")), InvalidConfig);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"c1": "big"})")), InvalidConfig);
}

TEST(ConfigTest, ShippedDefaultConfigMatchesBuiltIns) {
  const fs::path shipped = testing::data_dir() / ".." / ".." / "config" / "default_config.json";
  EXPECT_EQ(config_to_json(load_config_file(shipped)), config_to_json(MetricConfig{}));
}

TEST(ConfigTest, FlagBeatsEnvironment) {
  ::setenv("FGIQA_CONFIG", "/from/env.json", 1);
  EXPECT_EQ(*resolve_config_path(fs::path("/from/flag.json")), fs::path("/from/flag.json"));
  EXPECT_EQ(*resolve_config_path(std::nullopt), fs::path("/from/env.json"));
  ::unsetenv("FGIQA_CONFIG");
  EXPECT_FALSE(resolve_config_path(std::nullopt).has_value());
}

TEST(ImageIoTest, PngRoundTripAndFormats) {
  TempDir dir;
  std::mt19937_64 rng(2);
  const RgbImage img = testing::random_rgb(13, 9, rng);
  for (const char* ext : {".png", ".bmp", ".ppm"}) {
    const fs::path p = dir.path() / (std::string("img") + ext);
    save_image(p, img);
    const RgbImage back = load_image(p);
    EXPECT_EQ(back.r, img.r) << ext;
    EXPECT_EQ(back.g, img.g) << ext;
    EXPECT_EQ(back.b, img.b) << ext;
  }
}

TEST(ImageIoTest, GrayIsExpandedAndLossyRejected) {
  const RgbImage gray = load_image(testing::data_dir() / "camera.png");
  EXPECT_EQ(gray.r, gray.g);
  EXPECT_EQ(gray.g, gray.b);
  TempDir dir;
  std::ofstream(dir.path() / "x.jpg") << "not really";
  EXPECT_THROW(load_image(dir.path() / "x.jpg"), InvalidInput);
  EXPECT_THROW(load_image(dir.path() / "missing.png"), InvalidInput);
  std::ofstream(dir.path() / "broken.png") << "garbage";
  EXPECT_THROW(load_image(dir.path() / "broken.png"), InvalidInput);
}

TEST(FilterDumpTest, RoundTripMatchesBank) {
  TextureConfig cfg;
  const LogGaborBank bank(12, 10, cfg);
  std::stringstream buf;
  write_filter_dump(buf, bank);
  EXPECT_EQ(buf.str().size(), 20u * (16u + 12u * 10u * 8u));
  EXPECT_EQ(buf.str().substr(0, 4), "LGBK");
  // Width 12 as little-endian u32.
  EXPECT_EQ(static_cast<unsigned char>(buf.str()[4]), 12u);
  EXPECT_EQ(buf.str()[5], 0);
  const auto recs = read_filter_dump(buf);
  ASSERT_EQ(recs.size(), 20u);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    EXPECT_EQ(recs[i].width, 12u);
    EXPECT_EQ(recs[i].height, 10u);
    EXPECT_EQ(recs[i].scale, i / 4 + 1);
    EXPECT_EQ(recs[i].orientation, i % 4 + 1);
    const auto g = bank.gain(i / 4, i % 4).values();
    EXPECT_EQ(recs[i].gains, std::vector<double>(g.begin(), g.end()));
  }
}

TEST(FilterDumpTest, TruncatedInputIsRejected) {
  std::stringstream buf;
  write_filter_dump(buf, LogGaborBank(8, 8, TextureConfig{}));
  std::string s = buf.str();
  s.resize(s.size() - 3);
  std::istringstream in(s);
  EXPECT_THROW(read_filter_dump(in), InvalidInput);
}

// A small on-disk corpus: references, blurred and noisy versions.
struct Corpus {
  TempDir dir;
  fs::path manifest;
  std::size_t rows = 0;
};

void build_corpus(Corpus& c, std::size_t n_refs, bool with_gt, bool missing_one = false) {
  std::ofstream m(c.dir.path() / "manifest.csv");
  m << "ref,dist,group,bitrate" << (with_gt ? ",gt" : "") << "\n";
  for (std::size_t i = 0; i < n_refs; ++i) {
    std::mt19937_64 rng(100 + i);
    const RgbImage ref = testing::random_rgb(16, 16, rng);
    const std::string rn = "ref" + std::to_string(i) + ".png";
    save_image(c.dir.path() / rn, ref);
    const RgbImage dists[] = {ref, testing::box_blur(ref), testing::add_noise(ref, 8, i),
                              testing::add_noise(ref, 30, i + 1)};
    for (std::size_t k = 0; k < 4; ++k) {
      const std::string dn = "dist" + std::to_string(i) + "_" + std::to_string(k) + ".png";
      if (!(missing_one && i == 0 && k == 2)) save_image(c.dir.path() / dn, dists[k]);
      m << rn << "," << dn << ",g" << i << ",b" << (i % 2 + 1);
      if (with_gt) m << "," << (4 - k);
      m << "\n";
      ++c.rows;
    }
  }
  c.manifest = c.dir.path() / "manifest.csv";
}

std::string scores_csv(const BatchResult& r) {
  std::ostringstream out;
  write_scores_csv(out, r);
  return out.str();
}

TEST(BatchTest, IdenticalPairGivesMaximalScore) {
  Corpus c;
  build_corpus(c, 1, false);
  const Manifest m = load_manifest(c.manifest);
  const BatchResult r = run_batch(m, {});
  ASSERT_EQ(r.records.size(), 4u);
  EXPECT_TRUE(r.failures.empty());
  const RgbImage ref = load_image(c.dir.path() / "ref0.png");
  EXPECT_EQ(r.records[0].score.q, score_pair(ref, ref, MetricConfig{}).q);
  for (const auto& rec : r.records) EXPECT_LE(rec.score.q, r.records[0].score.q);
  EXPECT_EQ(r.records[0].psnr_db, std::numeric_limits<double>::infinity());
}

TEST(BatchTest, WorkerCountDoesNotChangeOutput) {
  Corpus c;
  build_corpus(c, 5, true);
  const Manifest m = load_manifest(c.manifest);
  RunConfig one;
  RunConfig many;
  many.workers = 8;
  const BatchResult a = run_batch(m, one);
  const BatchResult b = run_batch(m, many);
  EXPECT_EQ(a.records, b.records);
  EXPECT_EQ(scores_csv(a), scores_csv(b));
}

TEST(BatchTest, MissingFileIsAPerRowFailure) {
  Corpus c;
  build_corpus(c, 3, false, true);
  const BatchResult r = run_batch(load_manifest(c.manifest), {});
  EXPECT_EQ(r.records.size(), c.rows - 1);
  ASSERT_EQ(r.failures.size(), 1u);
  EXPECT_EQ(r.failures[0].line, 4u);
  EXPECT_EQ(r.failures[0].dist, "dist0_2.png");
  EXPECT_NE(scores_csv(r).find("# "), std::string::npos);
}

TEST(ReportTest, ScoresCsvRoundTrip) {
  Corpus c;
  build_corpus(c, 2, true);
  const BatchResult r = run_batch(load_manifest(c.manifest), {});
  std::istringstream in(scores_csv(r));
  EXPECT_EQ(read_scores_csv(in), r.records);

  std::ostringstream js;
  write_scores_json(js, r);
  const auto j = nlohmann::json::parse(js.str());
  ASSERT_EQ(j.at("records").size(), r.records.size());
  EXPECT_EQ(j.at("records")[0].at("psnr_db"), "inf");
  for (const char* key : {"ref", "dist", "q", "e_g", "std_g", "e_t", "std_t", "psnr_db"}) {
    EXPECT_TRUE(j.at("records")[1].contains(key)) << key;
  }
}

TEST(ReportTest, ScoresCsvHeader) {
  auto header = [](const BatchResult& r) {
    std::ostringstream out;
    write_scores_csv(out, r);
    return out.str().substr(0, out.str().find('\n'));
  };
  EXPECT_EQ(header({}), "ref,dist,group,bitrate,q,e_g,std_g,e_t,std_t,psnr_db");
  ScoreRecord with_gt;
  with_gt.ground_truth = 2.0;
  EXPECT_EQ(header({{with_gt}, {}}), "ref,dist,group,bitrate,q,e_g,std_g,e_t,std_t,psnr_db,gt");
}

TEST(ReportTest, CorrelationReportRoundTrip) {
  CorrelationReport r;
  r.per_bitrate["b1"] = {10, 1, {0.9, 0.8, std::nullopt}};
  r.per_bitrate["b2"] = {10, 0, {0.7, 0.6, 0.123456789012345}};
  r.overall = {20, 1, {0.8, 0.7, 0.123456789012345}};
  std::ostringstream out;
  write_report_csv(out, r);
  EXPECT_NE(out.str().find("undefined"), std::string::npos);
  EXPECT_NE(out.str().find("\naverage,"), std::string::npos);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "bitrate_id,n_groups,n_excluded,srcc,krcc,plcc");
  std::istringstream in(out.str());
  EXPECT_EQ(read_report_csv(in), r);
  const auto j = report_to_json(r);
  EXPECT_TRUE(j.dump().find("null") != std::string::npos);
}

TEST(SweepTest, ParseRange) {
  const auto v = parse_range("0.1:1.0:0.1");
  ASSERT_EQ(v.size(), 10u);
  EXPECT_EQ(v.front(), 0.1);
  EXPECT_EQ(v[2], 0.3);
  EXPECT_EQ(v.back(), 1.0);
  EXPECT_THROW(parse_range("1:0:0.1"), InvalidConfig);
  EXPECT_THROW(parse_range("0:1:0"), InvalidConfig);
  EXPECT_THROW(parse_range("0:1"), InvalidConfig);
}

TEST(SweepTest, GridMatchesDirectEvaluation) {
  std::vector<ScoreRecord> recs;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.1, 0.9);
  for (int g = 0; g < 10; ++g) {
    for (int k = 0; k < 4; ++k) {
      ScoreRecord r;
      r.group = "g" + std::to_string(g);
      r.bitrate = "b1";
      r.score = {0, u(rng), u(rng) / 10, u(rng), u(rng) / 10};
      r.ground_truth = u(rng);
      recs.push_back(r);
    }
  }
  const auto alphas = parse_range("0.1:0.3:0.1");
  const auto betas = parse_range("0.5:0.6:0.1");
  const SweepGrid grid = run_sweep(recs, MetricConfig{}, alphas, betas);
  ASSERT_EQ(grid.srcc.size(), 3u);
  ASSERT_EQ(grid.srcc[0].size(), 2u);
  MetricConfig cfg;
  cfg.alpha = alphas[1];
  cfg.beta = betas[1];
  std::vector<EvalRecord> ev;
  for (const auto& r : recs) {
    ev.push_back({r.group, r.bitrate,
                  fuse({r.score.e_g, r.score.std_g}, {r.score.e_t, r.score.std_t}, cfg).q,
                  *r.ground_truth});
  }
  EXPECT_EQ(grid.srcc[1][1], evaluate_groups(ev).overall.mean.srcc);

  std::ostringstream out;
  write_sweep_csv(out, grid);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "alpha\\beta,0.5,0.6");
}

}  // namespace
}  // namespace fgiqa::cli
