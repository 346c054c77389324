#include "polymer/cosmo/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "polymer/errors.hpp"

namespace polymer::cosmo {

using nlohmann::json;

CoefficientModel::CoefficientModel(double gamma, int n_min, int n_max, Tables tables, std::set<int> decoupled,
                                   std::optional<LatticeFamily> continuum, std::string description)
    : gamma_(gamma),
      n_min_(n_min),
      n_max_(n_max),
      tables_(std::move(tables)),
      decoupled_(std::move(decoupled)),
      continuum_(std::move(continuum)),
      description_(std::move(description)) {
  if (!(gamma_ > 0.0) || !std::isfinite(gamma_)) throw InvalidArgument("model gamma must be positive");
  if (n_min_ >= n_max_) throw InvalidArgument("model needs n_min < n_max");
  const auto size = static_cast<std::size_t>(n_max_ - n_min_ + 1);
  for (const auto* t : {&tables_.c, &tables_.d, &tables_.e, &tables_.f, &tables_.g, &tables_.a_eig, &tables_.b_eig}) {
    if (t->size() != size) throw InvalidArgument("model table length does not match [n_min, n_max]");
  }
  for (int n : decoupled_) {
    if (!contains(n)) throw InvalidArgument("decoupled level " + std::to_string(n) + " outside the model range");
  }
}

std::size_t CoefficientModel::index(int n) const {
  if (!contains(n)) {
    throw InvalidArgument("level " + std::to_string(n) + " outside model range [" + std::to_string(n_min_) + ", " +
                          std::to_string(n_max_) + "]");
  }
  return static_cast<std::size_t>(n - n_min_);
}

Coefficients CoefficientModel::at(int n) const {
  const auto i = index(n);
  return {tables_.c[i], tables_.d[i], tables_.e[i], tables_.f[i], tables_.g[i]};
}

double CoefficientModel::a_eig(int n) const { return tables_.a_eig[index(n)]; }
double CoefficientModel::b_eig(int n) const { return tables_.b_eig[index(n)]; }

CoefficientModel CoefficientModel::scaled(double factor) const {
  Tables t = tables_;
  for (auto* v : {&t.c, &t.d, &t.e, &t.f, &t.g}) {
    for (double& x : *v) x *= factor;
  }
  return CoefficientModel(gamma_, n_min_, n_max_, std::move(t), decoupled_, continuum_, description_);
}

namespace {

const json& require(const json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end()) throw ModelFormatError(std::string("model file is missing field '") + field + "'");
  return *it;
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ModelFormatError("field '" + field + "' must be numeric");
  return v.get<double>();
}

int integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ModelFormatError("field '" + field + "' must be an integer");
  return v.get<int>();
}

std::vector<double> table(const json& j, const char* field, std::size_t size) {
  const json& arr = require(j, field);
  if (!arr.is_array()) throw ModelFormatError(std::string("field '") + field + "' must be an array");
  if (arr.size() != size) {
    throw ModelFormatError(std::string("field '") + field + "' has " + std::to_string(arr.size()) +
                           " entries, expected " + std::to_string(size));
  }
  std::vector<double> out;
  out.reserve(size);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(number(arr[i], std::string(field) + "[" + std::to_string(i) + "]"));
  }
  return out;
}

LatticeFamily parse_family(const json& j) {
  if (!j.is_object()) throw ModelFormatError("field 'continuum_operator' must be an object");
  const json& name = require(j, "family");
  if (!name.is_string()) throw ModelFormatError("field 'family' must be a string");
  const std::string family = name.get<std::string>();
  if (family != "sqrt_lattice") throw ModelFormatError("unknown continuum_operator family '" + family + "'");
  LatticeFamily f;
  f.kappa_per_gamma = number(require(j, "kappa_per_gamma"), "kappa_per_gamma");
  f.reference_gamma = number(require(j, "reference_gamma"), "reference_gamma");
  f.eps_factor = number(require(j, "eps_factor"), "eps_factor");
  f.core_strength = number(require(j, "core_strength"), "core_strength");
  f.potential_width = number(require(j, "potential_width"), "potential_width");
  const json& pot = require(j, "class_potential");
  if (!pot.is_array() || pot.size() != 4) throw ModelFormatError("'class_potential' must list 4 values");
  for (std::size_t r = 0; r < 4; ++r) f.class_potential[r] = number(pot[r], "class_potential");
  const json& win = require(j, "window");
  if (!win.is_array() || win.size() != 2) throw ModelFormatError("'window' must be [lo, hi]");
  f.window_lo = number(win[0], "window");
  f.window_hi = number(win[1], "window");
  return f;
}

}  // namespace

CoefficientModel parse_model(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ModelFormatError(std::string("model file does not parse: ") + e.what());
  }
  if (!j.is_object()) throw ModelFormatError("model file must hold a JSON object");

  const double gamma = number(require(j, "gamma"), "gamma");
  if (!(gamma > 0.0)) throw ModelFormatError("field 'gamma' must be positive");
  const int n_min = integer(require(j, "n_min"), "n_min");
  const int n_max = integer(require(j, "n_max"), "n_max");
  if (n_min >= n_max) throw ModelFormatError("need n_min < n_max");

  auto step = j.find("level_step");
  if (step == j.end()) throw ModelFormatError("model file does not declare its residue-class convention 'level_step'");
  if (integer(*step, "level_step") != 4) throw ModelFormatError("only level_step = 4 is supported");

  const auto size = static_cast<std::size_t>(n_max - n_min + 1);
  CoefficientModel::Tables t;
  t.c = table(j, "c", size);
  t.d = table(j, "d", size);
  t.e = table(j, "e", size);
  t.f = table(j, "f", size);
  t.g = table(j, "g", size);
  t.a_eig = table(j, "a_eig", size);
  t.b_eig = table(j, "b_eig", size);

  std::set<int> decoupled;
  if (auto it = j.find("decoupled_levels"); it != j.end()) {
    if (!it->is_array()) throw ModelFormatError("field 'decoupled_levels' must be an array");
    for (const json& v : *it) {
      const int n = integer(v, "decoupled_levels");
      if (n < n_min || n > n_max) throw ModelFormatError("decoupled level " + std::to_string(n) + " out of range");
      decoupled.insert(n);
    }
  }
  std::optional<LatticeFamily> continuum;
  if (auto it = j.find("continuum_operator"); it != j.end() && !it->is_null()) continuum = parse_family(*it);
  std::string description;
  if (auto it = j.find("description"); it != j.end() && it->is_string()) description = it->get<std::string>();

  return CoefficientModel(gamma, n_min, n_max, std::move(t), std::move(decoupled), continuum, std::move(description));
}

CoefficientModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelFormatError("cannot open model file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

std::string model_to_json(const CoefficientModel& model) {
  json j;
  j["description"] = model.description();
  j["gamma"] = model.gamma();
  j["n_min"] = model.n_min();
  j["n_max"] = model.n_max();
  j["level_step"] = 4;
  const auto& t = model.tables();
  j["c"] = t.c;
  j["d"] = t.d;
  j["e"] = t.e;
  j["f"] = t.f;
  j["g"] = t.g;
  j["a_eig"] = t.a_eig;
  j["b_eig"] = t.b_eig;
  if (!model.decoupled_levels().empty()) j["decoupled_levels"] = model.decoupled_levels();
  if (const auto& f = model.continuum()) {
    j["continuum_operator"] = {
        {"family", "sqrt_lattice"},
        {"operator", "F'' + F'/a"},
        {"kappa_per_gamma", f->kappa_per_gamma},
        {"reference_gamma", f->reference_gamma},
        {"eps_factor", f->eps_factor},
        {"core_strength", f->core_strength},
        {"class_potential", f->class_potential},
        {"potential_width", f->potential_width},
        {"window", {f->window_lo, f->window_hi}},
    };
  }
  return j.dump(1) + "\n";
}

}  // namespace polymer::cosmo
