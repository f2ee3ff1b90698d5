#include "fgiqa/cli/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include "fgiqa/errors.hpp"

namespace fgiqa::cli {
namespace {

using nlohmann::json;

template <typename T>
void read_if(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) out = it->get<T>();
}

// Config files may wrap a value as {"value": ..., "provenance": "..."}.
json unwrap(const json& j) {
  if (j.is_object()) {
    json out = json::object();
    for (const auto& [k, v] : j.items()) {
      if (k == "provenance" || k == "comment") continue;
      out[k] = (v.is_object() && v.contains("value")) ? v.at("value") : unwrap(v);
    }
    return out;
  }
  return j;
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [k, v] : j.items()) {
    if (!known.contains(k)) throw InvalidConfig("unknown config key '" + where + k + "'");
  }
}

SobelForm parse_sobel(const std::string& s) {
  if (s == "standard") return SobelForm::kStandard;
  if (s == "verbatim") return SobelForm::kVerbatim;
  throw InvalidConfig("sobel must be 'standard' or 'verbatim'");
}

}  // namespace

AblationPreset parse_preset(std::string_view name) {
  if (name == "custom") return AblationPreset::kCustom;
  if (name.size() == 2 && (name[0] == 'G' || name[0] == 'g') && name[1] >= '1' && name[1] <= '9') {
    return static_cast<AblationPreset>(name[1] - '0');
  }
  throw InvalidConfig("unknown ablation preset '" + std::string(name) + "'");
}

std::string preset_name(AblationPreset preset) {
  if (preset == AblationPreset::kCustom) return "custom";
  return "G" + std::to_string(static_cast<int>(preset));
}

void apply_preset(MetricConfig& cfg, AblationPreset preset) {
  if (preset == AblationPreset::kCustom) return;
  cfg.use_gradient = true;
  cfg.use_gradient_region = true;
  cfg.use_texture = true;
  cfg.scale_toggles = kAllScales;
  switch (preset) {
    case AblationPreset::kG1: cfg.use_gradient = false; break;
    case AblationPreset::kG2: cfg.use_gradient_region = false; break;
    case AblationPreset::kG3: cfg.use_texture = false; break;
    case AblationPreset::kG4:
    case AblationPreset::kG5:
    case AblationPreset::kG6:
    case AblationPreset::kG7:
    case AblationPreset::kG8:
      cfg.scale_toggles[static_cast<std::size_t>(preset) - 4] = false;
      break;
    default: break;
  }
}

MetricConfig config_from_json(const json& raw, MetricConfig cfg) {
  const json j = unwrap(raw);
  try {
    reject_unknown(j,
                   {"c1", "sobel", "alpha", "beta", "std_floor", "use_gradient",
                    "use_gradient_region", "use_texture", "scale_toggles", "preset", "texture"},
                   "");
    read_if(j, "c1", cfg.c1);
    if (j.contains("sobel")) cfg.sobel = parse_sobel(j.at("sobel").get<std::string>());
    read_if(j, "alpha", cfg.alpha);
    read_if(j, "beta", cfg.beta);
    read_if(j, "std_floor", cfg.std_floor);
    read_if(j, "use_gradient", cfg.use_gradient);
    read_if(j, "use_gradient_region", cfg.use_gradient_region);
    read_if(j, "use_texture", cfg.use_texture);
    read_if(j, "scale_toggles", cfg.scale_toggles);
    if (j.contains("preset")) apply_preset(cfg, parse_preset(j.at("preset").get<std::string>()));
    if (j.contains("texture")) {
      const json& t = j.at("texture");
      reject_unknown(t,
                     {"f0", "scale_multipliers", "orientations", "sigma_f_ratio", "sigma_theta",
                      "scale_weights", "w_y", "w_cb", "w_cr", "c2", "normalize"},
                     "texture.");
      TextureConfig& tc = cfg.texture;
      read_if(t, "f0", tc.f0);
      read_if(t, "scale_multipliers", tc.scale_multipliers);
      read_if(t, "orientations", tc.orientations);
      read_if(t, "sigma_f_ratio", tc.sigma_f_ratio);
      read_if(t, "sigma_theta", tc.sigma_theta);
      read_if(t, "scale_weights", tc.scale_weights);
      read_if(t, "w_y", tc.w_y);
      read_if(t, "w_cb", tc.w_cb);
      read_if(t, "w_cr", tc.w_cr);
      read_if(t, "c2", tc.c2);
      read_if(t, "normalize", tc.normalize);
    }
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("malformed config: ") + e.what());
  }
  return cfg;
}

json config_to_json(const MetricConfig& cfg) {
  const TextureConfig& t = cfg.texture;
  return {
      {"c1", cfg.c1},
      {"sobel", cfg.sobel == SobelForm::kStandard ? "standard" : "verbatim"},
      {"alpha", cfg.alpha},
      {"beta", cfg.beta},
      {"std_floor", cfg.std_floor},
      {"use_gradient", cfg.use_gradient},
      {"use_gradient_region", cfg.use_gradient_region},
      {"use_texture", cfg.use_texture},
      {"scale_toggles", cfg.scale_toggles},
      {"texture",
       {{"f0", t.f0},
        {"scale_multipliers", t.scale_multipliers},
        {"orientations", t.orientations},
        {"sigma_f_ratio", t.sigma_f_ratio},
        {"sigma_theta", t.sigma_theta},
        {"scale_weights", t.scale_weights},
        {"w_y", t.w_y},
        {"w_cb", t.w_cb},
        {"w_cr", t.w_cr},
        {"c2", t.c2},
        {"normalize", t.normalize}}},
  };
}

MetricConfig load_config_file(const std::filesystem::path& path, MetricConfig base) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig(path.string() + ": cannot open config file");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidConfig(path.string() + ": " + e.what());
  }
  return config_from_json(j, std::move(base));
}

std::optional<std::filesystem::path> resolve_config_path(
    const std::optional<std::filesystem::path>& flag) {
  if (flag) return flag;
  if (const char* env = std::getenv("FGIQA_CONFIG"); env != nullptr && *env != '\0') {
    return std::filesystem::path(env);
  }
  return std::nullopt;
}

}  // namespace fgiqa::cli
