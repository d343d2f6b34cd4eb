#include "medial/scenario.hpp"

#include <cstdio>
#include <fstream>
#include <set>

#include "medial/fields.hpp"

namespace medial {
namespace {

using nlohmann::json;

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError("field '" + where + "' must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!ok.count(it.key())) {
      throw ConfigError("unknown field '" + (where.empty() ? it.key() : where + "." + it.key()) + "'");
    }
  }
}

double number(const json& obj, const char* key, const std::string& where, double fallback) {
  const json* j = find(obj, key);
  if (!j) return fallback;
  if (!j->is_number()) throw ConfigError("field '" + where + key + "' must be a number");
  return j->get<double>();
}

std::size_t count(const json& obj, const char* key, const std::string& where, std::size_t fallback) {
  const json* j = find(obj, key);
  if (!j) return fallback;
  if (!j->is_number_unsigned()) throw ConfigError("field '" + where + key + "' must be a non-negative integer");
  return j->get<std::size_t>();
}

void positive(double v, const std::string& name) {
  if (!(v > 0.0)) throw ConfigError("field '" + name + "' must be > 0");
}

ClosedSet read_set(const json& j, const std::filesystem::path& base) {
  try {
    if (j.is_string()) return ClosedSet::load(base / j.get<std::string>());
    return ClosedSet::from_json(j);
  } catch (const SetFormatError& e) {
    throw ConfigError(std::string("field 'set': ") + e.what());
  }
}

Point read_corner(const json& w, const char* key, std::size_t n) {
  const json* j = find(w, key);
  if (!j || !j->is_array() || j->size() != n) {
    throw ConfigError(std::string("field 'window.") + key + "' must be an array of " + std::to_string(n) +
                      " numbers");
  }
  Point p(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(*j)[i].is_number()) throw ConfigError(std::string("field 'window.") + key + "' must hold numbers");
    p[i] = (*j)[i].get<double>();
  }
  return p;
}

}  // namespace

ScenarioConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
  check_keys(doc, "",
             {"set", "field", "dimension", "window", "grid", "lattice", "tolerances", "cover", "decompose", "seed",
              "test_hooks", "description"});
  ScenarioConfig c;
  c.raw = doc;
  c.base_dir = base_dir;

  if (const json* s = find(doc, "set")) c.set = read_set(*s, base_dir);
  if (const json* f = find(doc, "field")) {
    if (!f->is_string()) throw ConfigError("field 'field' must be a string");
    c.field = f->get<std::string>();
  } else if (c.set) {
    c.field = "asplund";
  } else {
    throw ConfigError("config needs a 'set' or a 'field'");
  }
  if (c.set) {
    c.dimension = c.set->dimension();
    if (find(doc, "dimension") && count(doc, "dimension", "", 0) != c.dimension) {
      throw ConfigError("field 'dimension' disagrees with the set dimension");
    }
  } else {
    c.dimension = count(doc, "dimension", "", 2);
  }
  if (c.dimension < 1 || c.dimension > 3) throw ConfigError("field 'dimension' must be 1, 2 or 3");

  if (const json* w = find(doc, "window")) {
    check_keys(*w, "window", {"lower", "upper"});
    try {
      c.window = Window(read_corner(*w, "lower", c.dimension), read_corner(*w, "upper", c.dimension));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("field 'window': ") + e.what());
    }
  } else {
    c.window = Window::centered(c.dimension, 2.0);
  }

  c.grid = count(doc, "grid", "", c.grid);
  if (c.grid < 8) throw ConfigError("field 'grid' must be >= 8");

  if (const json* l = find(doc, "lattice")) {
    check_keys(*l, "lattice", {"delta", "bound"});
    c.lattice.delta = number(*l, "delta", "lattice.", c.lattice.delta);
    c.lattice.bound = number(*l, "bound", "lattice.", c.lattice.bound);
  }
  positive(c.lattice.delta, "lattice.delta");
  if (c.lattice.bound < c.lattice.delta) throw ConfigError("field 'lattice.bound' must be >= lattice.delta");

  if (const json* t = find(doc, "tolerances")) {
    check_keys(*t, "tolerances", {"tie", "separation", "coverage", "fd_step", "localization"});
    c.field_options.tie_tolerance = number(*t, "tie", "tolerances.", c.field_options.tie_tolerance);
    c.field_options.separation = number(*t, "separation", "tolerances.", c.field_options.separation);
    c.field_options.step = number(*t, "fd_step", "tolerances.", c.field_options.step);
    c.coverage_tolerance = number(*t, "coverage", "tolerances.", c.coverage_tolerance);
    c.localization = number(*t, "localization", "tolerances.", c.localization);
  }
  positive(c.field_options.tie_tolerance, "tolerances.tie");
  positive(c.field_options.separation, "tolerances.separation");
  positive(c.field_options.step, "tolerances.fd_step");
  positive(c.coverage_tolerance, "tolerances.coverage");
  positive(c.localization, "tolerances.localization");

  if (const json* cv = find(doc, "cover")) {
    check_keys(*cv, "cover", {"axes", "cap", "export_cells"});
    if (const json* ax = find(*cv, "axes")) {
      if (!ax->is_array()) throw ConfigError("field 'cover.axes' must be an array");
      for (const auto& a : *ax) {
        if (!a.is_number_unsigned() || a.get<std::size_t>() >= c.dimension) {
          throw ConfigError("field 'cover.axes' holds an axis outside 0..dimension-1");
        }
        c.axes.push_back(a.get<std::size_t>());
      }
    }
    c.cap = count(*cv, "cap", "cover.", c.cap);
    c.export_cells = count(*cv, "export_cells", "cover.", c.export_cells);
    if (c.export_cells == 0) throw ConfigError("field 'cover.export_cells' must be >= 1");
  }
  if (c.axes.empty()) {
    for (std::size_t i = 0; i < c.dimension; ++i) c.axes.push_back(i);
  }

  if (const json* d = find(doc, "decompose")) {
    check_keys(*d, "decompose", {"radius", "samples"});
    c.radius = number(*d, "radius", "decompose.", c.radius);
    c.samples = count(*d, "samples", "decompose.", c.samples);
  }
  positive(c.radius, "decompose.radius");
  if (c.samples == 0) throw ConfigError("field 'decompose.samples' must be >= 1");

  c.seed = count(doc, "seed", "", c.seed);

  if (const json* h = find(doc, "test_hooks")) {
    check_keys(*h, "test_hooks", {"corrupt_graph_offset"});
    c.corrupt_graph_offset = number(*h, "corrupt_graph_offset", "test_hooks.", 0.0);
  }
  // Fail early on unknown field names.
  if (c.field.rfind("asplund", 0) != 0) (void)c.resolve_field();
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open config " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": malformed JSON: " + e.what());
  }
  return parse_config(doc, path.parent_path());
}

ScalarField ScenarioConfig::resolve_field() const {
  const SetResolver resolver = [this](const std::string& ref) -> ClosedSet {
    if (ref.empty()) {
      if (!set) throw ConfigError("field 'field': asplund needs a 'set' in the config");
      return *set;
    }
    return ClosedSet::load(base_dir / ref);
  };
  try {
    const std::string name = field == "asplund" ? "asplund:" : field;
    return named_field(name, dimension, resolver);
  } catch (const UnknownFieldError& e) {
    throw ConfigError(std::string("field 'field': ") + e.what());
  } catch (const SetFormatError& e) {
    throw ConfigError(std::string("field 'field': ") + e.what());
  }
}

std::string ScenarioConfig::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : raw.dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace medial
