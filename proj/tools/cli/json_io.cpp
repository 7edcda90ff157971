#include "cli/json_io.hpp"

#include <fstream>
#include <sstream>

namespace symcalc::cli {

namespace {

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(where + ": missing field '" + key + "'");
  return j.at(key);
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw SchemaError(where + ": expected an integer");
  return j.get<int>();
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw SchemaError(where + ": expected a number");
  return j.get<double>();
}

FourierSeries series_from_json(const json& j, int dim, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected a list of [mode, matrix] pairs");
  int band = 0;
  for (const auto& entry : j) {
    if (!entry.is_array() || entry.size() != 2) throw SchemaError(where + ": entries are [mode, matrix]");
    band = std::max(band, std::abs(as_int(entry[0], where + " mode")));
  }
  FourierSeries series(dim, band);
  for (const auto& entry : j) {
    const int k = entry[0].get<int>();
    series.at(k) += matrix_from_json(entry[1], dim, where + " mode " + std::to_string(k));
  }
  return series;
}

json series_to_json(const FourierSeries& s) {
  json out = json::array();
  for (int k = -s.band(); k <= s.band(); ++k) {
    const CMatrix& c = s.at(k);
    if (c.isZero(0.0)) continue;
    out.push_back(json::array({k, matrix_to_json(c)}));
  }
  return out;
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

// Negative zeros are written as 0.
json complex_to_json(Complex z) { return json::array({z.real() + 0.0, z.imag() + 0.0}); }

Complex complex_from_json(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw SchemaError(where + ": complex numbers are [re, im]");
  return {as_number(j[0], where), as_number(j[1], where)};
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j, int dim, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw SchemaError(where + ": expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
  }
  CMatrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != dim) {
      throw SchemaError(where + ": row " + std::to_string(r) + " has the wrong length");
    }
    for (int c = 0; c < dim; ++c) m(r, c) = complex_from_json(j[r][c], where);
  }
  return m;
}

ClassicalSymbol symbol_from_json(const json& j) {
  const std::string where = "symbol";
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  const int d = j.contains("fiber_dim") ? as_int(j.at("fiber_dim"), where + ".fiber_dim") : 1;
  if (d < 1) throw SchemaError(where + ".fiber_dim must be positive");

  if (j.contains("kind")) {
    const std::string kind = j.at("kind").get<std::string>();
    const int depth = j.contains("depth") ? as_int(j.at("depth"), where + ".depth") : 2;
    if (depth < 0) throw SchemaError(where + ".depth must be non-negative");
    if (kind == "identity") return identity_symbol(d, depth);
    if (kind == "weight_power") {
      WeightSpec spec;
      spec.sobolev_exponent = as_number(require(j, "s", where), where + ".s");
      if (j.contains("kernel_rule")) spec.kernel_rule = as_number(j.at("kernel_rule"), where + ".kernel_rule");
      return weight_power_symbol(spec, d, depth);
    }
    if (kind == "multiplication") {
      return multiplication_symbol(series_from_json(require(j, "function", where), d, where + ".function"), depth);
    }
    throw SchemaError(where + ": unknown kind '" + kind + "'");
  }

  const HalfInt order = HalfInt::from_double(as_number(require(j, "order", where), where + ".order"));
  const json& list = require(j, "components", where);
  if (!list.is_array() || list.empty()) throw SchemaError(where + ".components must be a non-empty list");

  std::vector<std::pair<HalfInt, HomogeneousComponent>> parsed;
  HalfInt lowest = order;
  for (const auto& c : list) {
    const HalfInt degree = HalfInt::from_double(as_number(require(c, "degree", where), where + ".degree"));
    const std::string label = where + " component of degree " + degree.to_string();
    if (degree > order) throw SchemaError(label + " lies above the order");
    if ((order - degree).twice() % 2 != 0) throw SchemaError(label + " is off the order's lattice");
    FourierSeries plus = series_from_json(require(c, "plus", label), d, label + ".plus");
    FourierSeries minus = c.contains("minus") ? series_from_json(c.at("minus"), d, label + ".minus") : plus;
    parsed.push_back({degree, {degree, std::move(plus), std::move(minus)}});
    lowest = std::min(lowest, degree);
  }
  const int depth = (order - lowest).twice() / 2;
  std::vector<HomogeneousComponent> components;
  for (int level = 0; level <= depth; ++level) {
    components.push_back({order - level, FourierSeries(d, 0), FourierSeries(d, 0)});
  }
  for (auto& [degree, comp] : parsed) {
    auto& slot = components[(order - degree).twice() / 2];
    slot.plus = slot.plus + comp.plus;
    slot.minus = slot.minus + comp.minus;
  }
  return ClassicalSymbol(order, std::move(components));
}

json symbol_to_json(const ClassicalSymbol& a) {
  json components = json::array();
  for (const auto& c : a.components()) {
    components.push_back({{"degree", c.degree.value()}, {"plus", series_to_json(c.plus)},
                          {"minus", series_to_json(c.minus)}});
  }
  return {{"order", a.order().value()}, {"fiber_dim", a.fiber_dim()}, {"components", components}};
}

LieAlgebra algebra_from_json(const json& j) {
  const std::string where = "lie algebra";
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  if (j.contains("name")) {
    const std::string name = j.at("name").get<std::string>();
    if (name == "su2") return LieAlgebra::su2();
    if (name == "su3") return LieAlgebra::su(3);
    throw SchemaError(where + ": unknown name '" + name + "'");
  }
  const int n = as_int(require(j, "dim", where), where + ".dim");
  const json& c = require(j, "structure_constants", where);
  auto shape_error = [&] { return SchemaError(where + ": structure_constants must be dim x dim x dim"); };
  if (!c.is_array() || static_cast<int>(c.size()) != n) throw shape_error();
  std::vector<std::vector<std::vector<double>>> s(n, std::vector<std::vector<double>>(n, std::vector<double>(n)));
  for (int i = 0; i < n; ++i) {
    if (!c[i].is_array() || static_cast<int>(c[i].size()) != n) throw shape_error();
    for (int jj = 0; jj < n; ++jj) {
      if (!c[i][jj].is_array() || static_cast<int>(c[i][jj].size()) != n) throw shape_error();
      for (int k = 0; k < n; ++k) s[i][jj][k] = as_number(c[i][jj][k], where + ".structure_constants");
    }
  }
  return LieAlgebra::from_structure_constants(s);
}

LoopElement loop_from_json(const json& j, int algebra_dim) {
  const std::string where = "loop";
  const json& modes = require(j, "modes", where);
  if (!modes.is_array()) throw SchemaError(where + ".modes must be a list");
  int cutoff = 0;
  for (const auto& m : modes) cutoff = std::max(cutoff, std::abs(as_int(require(m, "k", where), where + ".k")));
  LoopElement u(algebra_dim, cutoff);
  for (const auto& m : modes) {
    const int k = m.at("k").get<int>();
    const json& v = require(m, "vector", where);
    if (!v.is_array() || static_cast<int>(v.size()) != algebra_dim) {
      throw SchemaError(where + ": mode " + std::to_string(k) + " vector must have " +
                        std::to_string(algebra_dim) + " entries");
    }
    for (int i = 0; i < algebra_dim; ++i) u.at(k)(i) += complex_from_json(v[i], where);
  }
  return u;
}

json loop_to_json(const LoopElement& u) {
  json modes = json::array();
  for (int k = -u.mode_cutoff(); k <= u.mode_cutoff(); ++k) {
    json v = json::array();
    for (int i = 0; i < u.algebra_dim(); ++i) v.push_back(complex_to_json(u.at(k)(i)));
    modes.push_back({{"k", k}, {"vector", v}});
  }
  return {{"modes", modes}};
}

CosphereDistribution distribution_from_name(const std::string& name) {
  if (name == "uniform+") return CosphereDistribution::uniform_plus();
  if (name == "uniform-") return CosphereDistribution::uniform_minus();
  if (name == "uniform") return CosphereDistribution::uniform_both();
  if (name.size() > 3 && name.rfind("d(", 0) == 0 && name.back() == ')') {
    return CosphereDistribution::derivative(distribution_from_name(name.substr(2, name.size() - 3)));
  }
  const auto first = name.find(':');
  const auto last = name.rfind(':');
  if (first != std::string::npos && last != first) {
    const std::string kind = name.substr(0, first);
    const std::string arg = name.substr(first + 1, last - first - 1);
    const std::string sign = name.substr(last + 1);
    if (sign != "+" && sign != "-") throw SchemaError("distribution '" + name + "': sheet must be + or -");
    const Sheet sheet = sign == "+" ? Sheet::Plus : Sheet::Minus;
    std::size_t used = 0;
    try {
      if (kind == "delta") {
        const double x0 = std::stod(arg, &used);
        if (used == arg.size()) return CosphereDistribution::delta(x0, sheet);
      } else if (kind == "mode") {
        const int k = std::stoi(arg, &used);
        if (used == arg.size()) return CosphereDistribution::mode(k, sheet);
      }
    } catch (const std::logic_error&) {
    }
  }
  throw SchemaError("unknown distribution '" + name +
                    "' (expected uniform+, uniform-, uniform, delta:x0:+, mode:k:-, d(...))");
}

}  // namespace symcalc::cli
