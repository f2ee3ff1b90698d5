#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace fgiqa::cli {

struct ManifestRow {
  std::string ref;   // as written in the manifest
  std::string dist;
  std::filesystem::path ref_path;  // resolved against the manifest directory
  std::filesystem::path dist_path;
  std::string group;
  std::string bitrate;
  std::optional<double> ground_truth;
  std::size_t line = 0;
};

struct Manifest {
  std::vector<ManifestRow> rows;
  bool has_ground_truth = false;
};

// CSV with header "ref,dist,group,bitrate" and an optional trailing "gt".
// Relative paths resolve against `base_dir`. Errors name the 1-based line.
Manifest parse_manifest(std::istream& in, const std::filesystem::path& base_dir = {});
Manifest load_manifest(const std::filesystem::path& path);

}  // namespace fgiqa::cli
