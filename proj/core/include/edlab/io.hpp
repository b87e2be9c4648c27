#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "edlab/field.hpp"
#include "edlab/grid.hpp"

namespace edlab::io {

nlohmann::json to_json(const Grid& g);
Grid grid_from_json(const nlohmann::json& j);

/// Envelope {grid, time, name, values}; vector fields store one array per component.
nlohmann::json to_json(const ScalarField& f, const std::string& name);
nlohmann::json to_json(const VectorField& f, const std::string& name);
ScalarField scalar_from_json(const nlohmann::json& j);
VectorField vector_from_json(const nlohmann::json& j);

/// One row per grid point: coordinates then values, %.17g.
std::string to_csv(const ScalarField& f, const std::string& name);
std::string to_csv(const VectorField& f, const std::string& name);
ScalarField scalar_from_csv(const std::string& text, const Grid& g, double time = 0.0);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

/// Compact dump with sorted keys and round-trip doubles.
std::string dump(const nlohmann::json& j);

}  // namespace edlab::io
