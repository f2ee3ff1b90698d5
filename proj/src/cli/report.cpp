#include "fgiqa/cli/report.hpp"

#include <cmath>
#include <string>

#include "fgiqa/cli/csv.hpp"
#include "fgiqa/errors.hpp"

namespace fgiqa::cli {
namespace {

using nlohmann::json;

const std::vector<std::string> kScoreColumns{"ref",   "dist",  "group", "bitrate",
                                             "q",     "e_g",   "std_g", "e_t",
                                             "std_t", "psnr_db"};
const std::vector<std::string> kReportColumns{"bitrate_id", "n_groups", "n_excluded",
                                              "srcc",       "krcc",     "plcc"};

std::string coefficient(const std::optional<double>& v) {
  return v ? format_number(*v) : "undefined";
}

json coefficient_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

double required_number(const std::string& field, std::size_t line, const char* what) {
  const auto v = parse_number(field);
  if (!v) {
    throw InvalidInput("line " + std::to_string(line) + ": " + what + " '" + field +
                       "' is not a number");
  }
  return *v;
}

std::optional<double> read_coefficient(const std::string& field, std::size_t line) {
  if (trim(field) == "undefined") return std::nullopt;
  return required_number(field, line, "coefficient");
}

std::size_t read_count(const std::string& field, std::size_t line) {
  const double v = required_number(field, line, "count");
  if (v < 0 || v != std::floor(v)) {
    throw InvalidInput("line " + std::to_string(line) + ": count must be a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

void write_summary_row(std::ostream& out, const std::string& id, const BitrateSummary& s) {
  out << csv_field(id) << ',' << s.n_groups << ',' << s.n_excluded << ','
      << coefficient(s.mean.srcc) << ',' << coefficient(s.mean.krcc) << ','
      << coefficient(s.mean.plcc) << '\n';
}

json summary_json(const BitrateSummary& s) {
  return {{"n_groups", s.n_groups},
          {"n_excluded", s.n_excluded},
          {"srcc", coefficient_json(s.mean.srcc)},
          {"krcc", coefficient_json(s.mean.krcc)},
          {"plcc", coefficient_json(s.mean.plcc)}};
}

}  // namespace

void write_scores_csv(std::ostream& out, const BatchResult& result) {
  const bool with_gt = !result.records.empty() && result.records.front().ground_truth.has_value();
  for (std::size_t i = 0; i < kScoreColumns.size(); ++i) {
    out << (i ? "," : "") << kScoreColumns[i];
  }
  out << (with_gt ? ",gt\n" : "\n");
  for (const auto& r : result.records) {
    const QualityScore& s = r.score;
    out << csv_field(r.ref) << ',' << csv_field(r.dist) << ',' << csv_field(r.group) << ','
        << csv_field(r.bitrate) << ',' << format_number(s.q) << ',' << format_number(s.e_g) << ','
        << format_number(s.std_g) << ',' << format_number(s.e_t) << ','
        << format_number(s.std_t) << ',' << format_number(r.psnr_db);
    if (with_gt) out << ',' << (r.ground_truth ? format_number(*r.ground_truth) : "");
    out << '\n';
  }
  if (!result.failures.empty()) {
    out << "# failures\n";
    for (const auto& f : result.failures) {
      out << "# line " << f.line << ": " << f.ref << " vs " << f.dist << ": " << f.message
          << '\n';
    }
  }
}

json score_to_json(const ScoreRecord& r) {
  json j{{"ref", r.ref},
         {"dist", r.dist},
         {"group", r.group},
         {"bitrate", r.bitrate},
         {"q", r.score.q},
         {"e_g", r.score.e_g},
         {"std_g", r.score.std_g},
         {"e_t", r.score.e_t},
         {"std_t", r.score.std_t}};
  j["psnr_db"] = std::isinf(r.psnr_db) ? json("inf") : json(r.psnr_db);
  if (r.ground_truth) j["gt"] = *r.ground_truth;
  return j;
}

void write_scores_json(std::ostream& out, const BatchResult& result) {
  json records = json::array();
  for (const auto& r : result.records) records.push_back(score_to_json(r));
  json failures = json::array();
  for (const auto& f : result.failures) {
    failures.push_back({{"line", f.line}, {"ref", f.ref}, {"dist", f.dist}, {"error", f.message}});
  }
  out << json{{"records", records}, {"failures", failures}}.dump(2) << '\n';
}

std::vector<ScoreRecord> read_scores_csv(std::istream& in) {
  std::string text;
  std::size_t line = 0;
  bool header = false;
  bool with_gt = false;
  std::vector<ScoreRecord> out;
  while (std::getline(in, text)) {
    ++line;
    if (trim(text).empty() || text.front() == '#') continue;
    auto f = split_csv_line(text);
    if (!header) {
      header = true;
      for (auto& s : f) s = std::string(trim(s));
      with_gt = f.size() == kScoreColumns.size() + 1 && f.back() == "gt";
      if (!std::equal(kScoreColumns.begin(), kScoreColumns.end(), f.begin(),
                      f.begin() + std::min(f.size(), kScoreColumns.size())) ||
          (f.size() != kScoreColumns.size() && !with_gt)) {
        throw InvalidInput("line " + std::to_string(line) + ": not a scores CSV header");
      }
      continue;
    }
    const std::size_t expected = kScoreColumns.size() + (with_gt ? 1 : 0);
    if (f.size() != expected) {
      throw InvalidInput("line " + std::to_string(line) + ": expected " +
                         std::to_string(expected) + " columns");
    }
    ScoreRecord r;
    r.ref = f[0];
    r.dist = f[1];
    r.group = f[2];
    r.bitrate = f[3];
    r.score.q = required_number(f[4], line, "q");
    r.score.e_g = required_number(f[5], line, "e_g");
    r.score.std_g = required_number(f[6], line, "std_g");
    r.score.e_t = required_number(f[7], line, "e_t");
    r.score.std_t = required_number(f[8], line, "std_t");
    r.psnr_db = required_number(f[9], line, "psnr_db");
    if (with_gt && !trim(f[10]).empty()) r.ground_truth = required_number(f[10], line, "gt");
    out.push_back(std::move(r));
  }
  if (!header) throw InvalidInput("scores CSV is empty");
  return out;
}

void write_report_csv(std::ostream& out, const CorrelationReport& report) {
  for (std::size_t i = 0; i < kReportColumns.size(); ++i) {
    out << (i ? "," : "") << kReportColumns[i];
  }
  out << '\n';
  for (const auto& [id, summary] : report.per_bitrate) write_summary_row(out, id, summary);
  write_summary_row(out, "average", report.overall);
}

json report_to_json(const CorrelationReport& report) {
  json per = json::object();
  for (const auto& [id, summary] : report.per_bitrate) per[id] = summary_json(summary);
  return {{"per_bitrate", per}, {"average", summary_json(report.overall)}};
}

CorrelationReport read_report_csv(std::istream& in) {
  std::string text;
  std::size_t line = 0;
  bool header = false;
  bool average = false;
  CorrelationReport report;
  while (std::getline(in, text)) {
    ++line;
    if (trim(text).empty()) continue;
    auto f = split_csv_line(text);
    if (!header) {
      header = true;
      for (auto& s : f) s = std::string(trim(s));
      if (f != kReportColumns) throw InvalidInput("not a correlation report header");
      continue;
    }
    if (f.size() != kReportColumns.size()) {
      throw InvalidInput("line " + std::to_string(line) + ": expected 6 columns");
    }
    BitrateSummary s{read_count(f[1], line), read_count(f[2], line),
                     {read_coefficient(f[3], line), read_coefficient(f[4], line),
                      read_coefficient(f[5], line)}};
    if (f[0] == "average") {
      report.overall = s;
      average = true;
    } else {
      report.per_bitrate.emplace(f[0], s);
    }
  }
  if (!average) throw InvalidInput("correlation report lacks the average row");
  return report;
}

}  // namespace fgiqa::cli
