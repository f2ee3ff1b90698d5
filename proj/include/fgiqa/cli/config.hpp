#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "fgiqa/fusion.hpp"
#include "json.hpp"

namespace fgiqa::cli {

// Feature-removal configurations:
//   G1 no gradient features      G2 gradient pooled without region selection
//   G3 no texture features       G4..G8 texture scale 1..5 removed
//   G9 all features
enum class AblationPreset { kCustom, kG1, kG2, kG3, kG4, kG5, kG6, kG7, kG8, kG9 };

AblationPreset parse_preset(std::string_view name);
std::string preset_name(AblationPreset preset);

// Sets the toggles a preset defines and leaves every other field alone.
void apply_preset(MetricConfig& cfg, AblationPreset preset);

// Overrides fields of `base` present in `j`; unknown keys are rejected.
MetricConfig config_from_json(const nlohmann::json& j, MetricConfig base = {});
nlohmann::json config_to_json(const MetricConfig& cfg);

MetricConfig load_config_file(const std::filesystem::path& path, MetricConfig base = {});

// The --config flag wins; otherwise FGIQA_CONFIG; otherwise nothing.
std::optional<std::filesystem::path> resolve_config_path(
    const std::optional<std::filesystem::path>& flag);

}  // namespace fgiqa::cli
