#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padic_rmt/harness.hpp"

namespace padic {

struct Preset {
  std::string name;
  std::string description;
  ExperimentConfig config;
};

const std::vector<Preset>& presets();

// Accepts aliases; nullopt for an unknown name.
std::optional<ExperimentConfig> find_preset(const std::string& name);

}  // namespace padic
