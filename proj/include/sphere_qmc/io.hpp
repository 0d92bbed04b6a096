#ifndef SPHERE_QMC_IO_HPP
#define SPHERE_QMC_IO_HPP

#include <cctype>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "discrepancy.hpp"
#include "error.hpp"
#include "points.hpp"

namespace sphere_qmc {

inline std::string format_real(double x, int digits = 17) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

using AnyPointSet = std::variant<SquarePointSet, SpherePointSet>;

// ---------------------------------------------------------------------------
// CSV: header `alpha,tau` or `x,y,z`, one point per row.

inline void write_csv(std::ostream &os, const SquarePointSet &set, int digits = 17) {
  os << "alpha,tau\n";
  for (const auto &p : set) os << format_real(p.alpha, digits) << ',' << format_real(p.tau, digits) << '\n';
}

inline void write_csv(std::ostream &os, const SpherePointSet &set, int digits = 17) {
  os << "x,y,z\n";
  for (const auto &p : set) {
    os << format_real(p.x, digits) << ',' << format_real(p.y, digits) << ',' << format_real(p.z, digits)
       << '\n';
  }
}

namespace detail {

inline std::vector<double> split_reals(const std::string &line, std::size_t line_no) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception &) {
      throw Error(ErrorKind::invalid_input,
                  "csv line " + std::to_string(line_no) + ": bad number '" + cell + "'");
    }
  }
  return out;
}

}  // namespace detail

/// Reads a point CSV; the header selects the domain. Provenance is `custom`.
inline AnyPointSet read_csv(std::istream &is) {
  std::string header;
  if (!std::getline(is, header)) throw Error(ErrorKind::invalid_input, "csv: empty input");
  if (!header.empty() && header.back() == '\r') header.pop_back();
  const bool square = header == "alpha,tau";
  if (!square && header != "x,y,z") {
    throw Error(ErrorKind::invalid_input, "csv: header must be 'alpha,tau' or 'x,y,z', got '" + header + "'");
  }
  std::vector<SquarePoint> sq;
  std::vector<SpherePoint> sp;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto v = detail::split_reals(line, line_no);
    if (v.size() != (square ? 2u : 3u)) {
      throw Error(ErrorKind::invalid_input, "csv line " + std::to_string(line_no) + ": wrong column count");
    }
    if (square) {
      sq.push_back({v[0], v[1]});
    } else {
      sp.push_back({v[0], v[1], v[2]});
    }
  }
  Provenance prov;
  prov.on_sphere = !square;
  if (square) return SquarePointSet(std::move(sq), prov);
  return SpherePointSet(std::move(sp), prov);
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json to_json(const Provenance &p) {
  nlohmann::json j;
  j["kind"] = std::string(to_string(p.kind));
  if (p.base) j["base"] = *p.base;
  if (p.level) j["level"] = *p.level;
  if (p.count) j["count"] = *p.count;
  if (p.seed) j["seed"] = *p.seed;
  j["on_sphere"] = p.on_sphere;
  return j;
}

inline Provenance provenance_from_json(const nlohmann::json &j) {
  Provenance p;
  const auto kind = generator_kind_from_string(j.at("kind").get<std::string>());
  if (!kind) throw Error(ErrorKind::invalid_input, "json: unknown provenance kind");
  p.kind = *kind;
  if (j.contains("base")) p.base = j["base"].get<int>();
  if (j.contains("level")) p.level = j["level"].get<int>();
  if (j.contains("count")) p.count = j["count"].get<std::uint64_t>();
  if (j.contains("seed")) p.seed = j["seed"].get<std::uint64_t>();
  p.on_sphere = j.value("on_sphere", false);
  return p;
}

inline nlohmann::json to_json(const SquarePointSet &set) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto &p : set) pts.push_back({p.alpha, p.tau});
  return {{"columns", {"alpha", "tau"}}, {"provenance", to_json(set.provenance())}, {"points", pts}};
}

inline nlohmann::json to_json(const SpherePointSet &set) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto &p : set) pts.push_back({p.x, p.y, p.z});
  return {{"columns", {"x", "y", "z"}}, {"provenance", to_json(set.provenance())}, {"points", pts}};
}

inline AnyPointSet point_set_from_json(const nlohmann::json &j) {
  try {
    const auto cols = j.at("columns").get<std::vector<std::string>>();
    const Provenance prov = provenance_from_json(j.at("provenance"));
    const auto &pts = j.at("points");
    if (cols == std::vector<std::string>{"alpha", "tau"}) {
      std::vector<SquarePoint> v;
      for (const auto &p : pts) v.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
      return SquarePointSet(std::move(v), prov);
    }
    if (cols == std::vector<std::string>{"x", "y", "z"}) {
      std::vector<SpherePoint> v;
      for (const auto &p : pts) v.push_back({p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>()});
      return SpherePointSet(std::move(v), prov);
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::invalid_input, std::string("json: ") + e.what());
  }
  throw Error(ErrorKind::invalid_input, "json: columns must be [alpha,tau] or [x,y,z]");
}

/// {kind, value, n, params, witness}; provenance goes into params.
inline nlohmann::json to_json(const DiscrepancyReport &r) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto &[k, v] : r.params) params[k] = v;
  params["provenance"] = to_json(r.provenance);
  if (r.kind == ReportKind::exact_cap) params["degenerate"] = r.degenerate;
  nlohmann::json j{{"kind", std::string(to_string(r.kind))}, {"value", r.value}, {"n", r.n}, {"params", params}};
  if (r.witness) {
    const auto &c = r.witness->cap;
    j["witness"] = {{"center", {c.center.x, c.center.y, c.center.z}},
                    {"height", c.height},
                    {"closed", r.witness->closed}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

}  // namespace sphere_qmc

#endif  // SPHERE_QMC_IO_HPP
