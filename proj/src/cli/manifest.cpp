#include "fgiqa/cli/manifest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "fgiqa/cli/csv.hpp"
#include "fgiqa/errors.hpp"

namespace fgiqa::cli {
namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw InvalidInput("manifest line " + std::to_string(line) + ": " + msg);
}

std::filesystem::path resolve(const std::string& p, const std::filesystem::path& base) {
  std::filesystem::path path(p);
  if (path.is_relative() && !base.empty()) return base / path;
  return path;
}

}  // namespace

Manifest parse_manifest(std::istream& in, const std::filesystem::path& base_dir) {
  std::string text;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  Manifest m;
  bool header_seen = false;
  bool gt_seen = false;
  bool gt_missing = false;

  while (std::getline(in, text)) {
    ++line_no;
    if (trim(text).empty()) continue;
    auto fields = split_csv_line(text);
    for (auto& f : fields) f = std::string(trim(f));

    if (!header_seen) {
      header_seen = true;
      const std::vector<std::string> base{"ref", "dist", "group", "bitrate"};
      if (fields.size() < 4 || fields.size() > 5 ||
          !std::equal(base.begin(), base.end(), fields.begin()) ||
          (fields.size() == 5 && fields[4] != "gt")) {
        fail(line_no, "header must be 'ref,dist,group,bitrate[,gt]'");
      }
      columns = fields.size();
      continue;
    }

    if (fields.size() != columns) {
      fail(line_no, "expected " + std::to_string(columns) + " columns, found " +
                        std::to_string(fields.size()));
    }
    ManifestRow row;
    row.ref = fields[0];
    row.dist = fields[1];
    row.group = fields[2];
    row.bitrate = fields[3];
    row.line = line_no;
    if (row.ref.empty() || row.dist.empty()) fail(line_no, "empty image path");
    if (row.group.empty() || row.bitrate.empty()) fail(line_no, "empty group or bitrate id");
    if (columns == 5) {
      if (fields[4].empty()) {
        gt_missing = true;
      } else {
        const auto v = parse_number(fields[4]);
        if (!v || !std::isfinite(*v)) fail(line_no, "ground truth '" + fields[4] + "' is not a number");
        row.ground_truth = v;
        gt_seen = true;
      }
    }
    if (gt_seen && gt_missing) fail(line_no, "ground truth present for some rows but not others");
    row.ref_path = resolve(row.ref, base_dir);
    row.dist_path = resolve(row.dist, base_dir);
    m.rows.push_back(std::move(row));
  }
  if (!header_seen) throw InvalidInput("manifest is empty (missing header)");
  m.has_ground_truth = gt_seen;
  return m;
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput(path.string() + ": cannot open manifest");
  return parse_manifest(in, path.parent_path());
}

}  // namespace fgiqa::cli
