#include "edlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "edlab/error.hpp"

namespace edlab::io {
namespace {

constexpr const char* kAxisNames[3] = {"x", "y", "z"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_header(const Grid& g) {
  std::string h;
  for (int a = 0; a < g.dim(); ++a) {
    if (a) h += ',';
    h += kAxisNames[a];
  }
  return h;
}

std::string csv_coords(const Grid& g, std::size_t i) {
  std::string row;
  const auto p = g.point(i);
  for (int a = 0; a < g.dim(); ++a) {
    if (a) row += ',';
    row += fmt(p[static_cast<std::size_t>(a)]);
  }
  return row;
}

}  // namespace

nlohmann::json to_json(const Grid& g) {
  nlohmann::json axes = nlohmann::json::array();
  for (const auto& ax : g.axes())
    axes.push_back({{"n", ax.n}, {"min", ax.min}, {"max", ax.max}, {"periodic", ax.periodic}});
  return {{"axes", axes}};
}

Grid grid_from_json(const nlohmann::json& j) {
  require(j.is_object() && j.contains("axes") && j.at("axes").is_array(), "grid: expected {\"axes\": [...]}");
  std::vector<Axis> axes;
  for (const auto& a : j.at("axes")) {
    for (const auto& [key, _] : a.items())
      require(key == "n" || key == "min" || key == "max" || key == "periodic", "grid: unknown axis key '" + key + "'");
    Axis ax;
    ax.n = a.at("n").get<std::size_t>();
    ax.min = a.at("min").get<double>();
    ax.max = a.at("max").get<double>();
    ax.periodic = a.value("periodic", true);
    axes.push_back(ax);
  }
  return Grid(std::move(axes));
}

nlohmann::json to_json(const ScalarField& f, const std::string& name) {
  return {{"grid", to_json(f.grid)}, {"time", f.time}, {"name", name}, {"values", f.values}};
}

nlohmann::json to_json(const VectorField& f, const std::string& name) {
  return {{"grid", to_json(f.grid)}, {"time", f.time}, {"name", name}, {"values", f.components}};
}

ScalarField scalar_from_json(const nlohmann::json& j) {
  Grid g = grid_from_json(j.at("grid"));
  return ScalarField(std::move(g), j.at("values").get<std::vector<double>>(), j.at("time").get<double>());
}

VectorField vector_from_json(const nlohmann::json& j) {
  VectorField v(grid_from_json(j.at("grid")), j.at("time").get<double>());
  v.components = j.at("values").get<std::vector<std::vector<double>>>();
  require(v.dim() == v.grid.dim(), "vector field: component count must equal grid dimension");
  for (const auto& c : v.components) require(c.size() == v.grid.size(), "vector field: component length mismatch");
  return v;
}

std::string to_csv(const ScalarField& f, const std::string& name) {
  std::string out = csv_header(f.grid) + ',' + name + '\n';
  for (std::size_t i = 0; i < f.size(); ++i) out += csv_coords(f.grid, i) + ',' + fmt(f.values[i]) + '\n';
  return out;
}

std::string to_csv(const VectorField& f, const std::string& name) {
  std::string out = csv_header(f.grid);
  for (int a = 0; a < f.dim(); ++a) out += ',' + name + '_' + kAxisNames[a];
  out += '\n';
  for (std::size_t i = 0; i < f.grid.size(); ++i) {
    out += csv_coords(f.grid, i);
    for (const auto& c : f.components) out += ',' + fmt(c[i]);
    out += '\n';
  }
  return out;
}

ScalarField scalar_from_csv(const std::string& text, const Grid& g, double time) {
  std::istringstream in(text);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "csv: missing header");
  std::vector<double> values;
  values.reserve(g.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto pos = line.rfind(',');
    require(pos != std::string::npos, "csv: malformed row");
    values.push_back(std::stod(line.substr(pos + 1)));
  }
  return ScalarField(g, std::move(values), time);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), "cannot open " + path.string() + " for writing");
  out << text;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + '\n'; }

}  // namespace edlab::io
