#ifndef NEGTYPE_SERIALIZE_HPP
#define NEGTYPE_SERIALIZE_HPP

// JSON views of the library's value types. Non-finite numbers are written as
// null next to an explicit flag, since JSON has no infinity.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "negtype/bounds.hpp"
#include "negtype/checker.hpp"
#include "negtype/error.hpp"
#include "negtype/simplex.hpp"
#include "negtype/simplex_gap.hpp"
#include "negtype/space.hpp"

namespace negtype {

using nlohmann::json;

inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json to_json(const FiniteSemiMetricSpace& x) {
  json dist = json::array();
  for (std::size_t i = 0; i < x.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < x.size(); ++j) row.push_back(x(i, j));
    dist.push_back(std::move(row));
  }
  return json{{"n", x.size()}, {"dist", std::move(dist)}, {"labels", x.labels()}};
}

inline FiniteSemiMetricSpace space_from_json(const json& j) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    const auto rows = j.at("dist").get<std::vector<std::vector<double>>>();
    if (rows.size() != n) throw Error(ErrorKind::ParseError, "\"n\" does not match \"dist\"");
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) throw Error(ErrorKind::ParseError, "distance matrix is not square");
      for (std::size_t k = 0; k < n; ++k) m(i, k) = rows[i][k];
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return FiniteSemiMetricSpace::from_matrix(std::move(m), std::move(labels));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

inline json to_json(const NegTypeVerdict& v) {
  json j{{"q", v.q}, {"status", std::string(to_string(v.status))}, {"critical_value", v.critical_value}};
  j["witness"] = v.witness ? json(*v.witness) : json::array();
  return j;
}

inline json to_json(const SupremalResult& r) {
  json j{{"infinite", r.infinite},
         {"p_sup", r.infinite ? json(nullptr) : json(r.p_sup)},
         {"p_max", r.infinite ? json(r.p_sup) : json(nullptr)},
         {"bracket", json::array({r.lo, r.hi})}};
  j["verdict_at_sup"] = r.verdict_at_sup ? to_json(*r.verdict_at_sup) : json(nullptr);
  return j;
}

inline json to_json(const LoadedSimplex& d) {
  json a = json::array();
  json b = json::array();
  for (std::size_t k = 0; k < d.s(); ++k) a.push_back(json::array({d.side_a[k], d.weights_a[k]}));
  for (std::size_t k = 0; k < d.t(); ++k) b.push_back(json::array({d.side_b[k], d.weights_b[k]}));
  return json{{"side_a", std::move(a)}, {"side_b", std::move(b)}};
}

inline LoadedSimplex simplex_from_json(const json& j) {
  try {
    LoadedSimplex d;
    for (const auto& e : j.at("side_a")) {
      d.side_a.push_back(e.at(0).get<std::size_t>());
      d.weights_a.push_back(e.at(1).get<double>());
    }
    for (const auto& e : j.at("side_b")) {
      d.side_b.push_back(e.at(0).get<std::size_t>());
      d.weights_b.push_back(e.at(1).get<double>());
    }
    return d;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

inline json to_json(const GapResult& g) {
  return json{{"gamma", finite_or_null(g.gamma)},
              {"negative_infinite", g.negative_infinite},
              {"arg_simplex", to_json(g.arg_simplex)},
              {"bipartitions_searched", g.bipartitions_searched},
              {"qp_iterations_total", g.qp_iterations_total},
              {"converged", g.converged},
              {"status", std::string(to_string(g.verdict.status))}};
}

inline json to_json(const ZetaReport& r) {
  return json{{"p", r.p},
              {"n", r.n},
              {"gamma_gap", r.gamma_gap},
              {"diam_p", r.diam_p},
              {"gamma_n", r.gamma_n},
              {"frak_d", r.frak_d},
              {"zeta", finite_or_null(r.zeta)},
              {"zeta_infinite", r.zeta_infinite},
              {"strict_interval", json::array({r.interval_lo(), finite_or_null(r.interval_hi())})}};
}

inline json to_json(const ScanPoint& s) {
  return json{{"q", s.q}, {"status", std::string(to_string(s.status))}, {"critical_value", s.critical_value}};
}

}  // namespace negtype

#endif  // NEGTYPE_SERIALIZE_HPP
