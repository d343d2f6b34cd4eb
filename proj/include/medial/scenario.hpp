#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "medial/convex.hpp"
#include "medial/distance_field.hpp"
#include "medial/point.hpp"
#include "medial/set_geometry.hpp"

namespace medial {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One self-describing run configuration. See README for the schema.
struct ScenarioConfig {
  std::optional<ClosedSet> set;
  /// Field name; "asplund" refers to `set`.
  std::string field;
  std::size_t dimension = 0;
  Window window;
  std::size_t grid = 64;
  Lattice lattice;
  FieldOptions field_options;
  double coverage_tolerance = 1e-6;
  double localization = 1e-8;

  std::vector<std::size_t> axes;
  std::size_t cap = 100000;
  std::size_t export_cells = 16;

  double radius = 3.0;
  std::size_t samples = 1000;

  std::uint64_t seed = 1;
  double corrupt_graph_offset = 0.0;

  std::filesystem::path base_dir;
  nlohmann::json raw;

  /// Resolves the configured field; "asplund" and "asplund:<path>" read sets.
  ScalarField resolve_field() const;
  /// FNV-1a of the canonical config dump, hex.
  std::string hash() const;
};

ScenarioConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = ".");
/// Throws std::ios_base::failure when the file cannot be read.
ScenarioConfig load_config(const std::filesystem::path& path);

}  // namespace medial
