#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "widthlab/ball_model.hpp"
#include "widthlab/certified_lower.hpp"
#include "widthlab/errors.hpp"
#include "widthlab/exponent.hpp"
#include "widthlab/oracle.hpp"
#include "widthlab/order_formulas.hpp"
#include "widthlab/sobolev.hpp"

namespace widthlab {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
}

inline const Json& require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw parse_error(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw parse_error(where + (where.empty() ? "" : ".") + key + ": missing field");
  return *it;
}

inline std::string field_text(const Json& v, const std::string& field) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_real(v.get<double>());
  throw parse_error(field + ": expected a number or a string");
}

inline std::size_t parse_count(const Json& v, const std::string& field) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw parse_error(field + ": expected a nonnegative integer");
  }
  return static_cast<std::size_t>(v.get<long long>());
}

inline Exponent exponent_field(const Json& v, const std::string& field) {
  try {
    return parse_exponent(field_text(v, field));
  } catch (const error& e) {
    throw parse_error(field + ": " + e.what());
  }
}

inline ExactExponent exact_exponent_field(const Json& v, const std::string& field) {
  try {
    return parse_exact_exponent(field_text(v, field));
  } catch (const error& e) {
    throw parse_error(field + ": " + e.what());
  }
}

}  // namespace detail

/// A real rounded to twelve significant digits; infinities and NaN become strings.
inline Json json_real(double v) {
  if (!std::isfinite(v)) return format_real(v);
  return std::stod(format_real(v));
}

namespace detail {

inline void dump_to(const Json& j, int depth, std::string& out) {
  const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
  const std::string close(2 * static_cast<std::size_t>(depth), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(it.key()).dump() + ": ";
      dump_to(it.value(), depth + 1, out);
    }
    out += "\n" + close + "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      dump_to(j[i], depth + 1, out);
    }
    out += "\n" + close + "]";
  } else if (j.is_number_float()) {
    const double v = j.get<double>();
    out += std::isfinite(v) ? format_real(v) : "\"" + format_real(v) + "\"";
  } else {
    out += j.dump();
  }
}

}  // namespace detail

/// Pretty-printed document with every real at twelve significant digits.
inline std::string dump_document(const Json& j) {
  std::string out;
  detail::dump_to(j, 0, out);
  return out + "\n";
}

/// Parses {N, n, q, kind, balls: [{p, nu}, ...]}; exponents may be numbers, "inf" or "a/b".
inline WidthQuery parse_instance(const std::string& text) {
  const Json doc = detail::parse_document(text);
  if (!doc.is_object()) throw parse_error("instance: expected a JSON object");
  const std::size_t N = detail::parse_count(detail::require(doc, "N", ""), "N");
  if (N == 0) throw parse_error("N: must be positive");
  const std::size_t n = detail::parse_count(detail::require(doc, "n", ""), "n");
  if (n > N) throw parse_error("n: must satisfy n <= N");
  const Exponent q = detail::exponent_field(detail::require(doc, "q", ""), "q");
  WidthKind kind = WidthKind::gelfand;
  if (auto it = doc.find("kind"); it != doc.end()) {
    if (!it->is_string()) throw parse_error("kind: expected a string");
    kind = parse_width_kind(it->get<std::string>());
  }
  const Json& balls = detail::require(doc, "balls", "");
  if (!balls.is_array() || balls.empty()) throw parse_error("balls: expected a nonempty array");
  std::vector<Ball> list;
  for (std::size_t j = 0; j < balls.size(); ++j) {
    const std::string where = "balls[" + std::to_string(j) + "]";
    const Exponent p = detail::exponent_field(detail::require(balls[j], "p", where), where + ".p");
    const Json& nu_field = detail::require(balls[j], "nu", where);
    double nu = 0.0;
    try {
      nu = parse_real(detail::field_text(nu_field, where + ".nu"));
    } catch (const error& e) {
      throw parse_error(where + ".nu: " + e.what());
    }
    if (!(nu > 0.0) || !std::isfinite(nu)) throw parse_error(where + ".nu: must be positive and finite");
    list.push_back(Ball{p, nu});
  }
  return WidthQuery(BallIntersection(N, std::move(list)), n, q, kind);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parses {d, q, layers: [{r, p}, ...]} in exact arithmetic; decimals are read as exact decimals.
inline ExactSobolevInstance parse_sobolev_instance(const std::string& text) {
  const Json doc = detail::parse_document(text);
  if (!doc.is_object()) throw parse_error("instance: expected a JSON object");
  ExactSobolevInstance inst;
  const Json& d = detail::require(doc, "d", "");
  if (!d.is_number_integer() || d.get<long long>() < 1) throw parse_error("d: expected a positive integer");
  inst.d = static_cast<int>(d.get<long long>());
  inst.q = detail::exact_exponent_field(detail::require(doc, "q", ""), "q");
  const Json& layers = detail::require(doc, "layers", "");
  if (!layers.is_array()) throw parse_error("layers: expected an array");
  for (std::size_t j = 0; j < layers.size(); ++j) {
    const std::string where = "layers[" + std::to_string(j) + "]";
    const Json& r = detail::require(layers[j], "r", where);
    if (!r.is_number_integer() || r.get<long long>() < 0) {
      throw parse_error(where + ".r: expected a nonnegative integer");
    }
    SobolevLayer<Rational> layer;
    layer.r = static_cast<int>(r.get<long long>());
    layer.p = detail::exact_exponent_field(detail::require(layers[j], "p", where), where + ".p");
    inst.layers.push_back(layer);
  }
  return inst;
}

inline SobolevInstance to_double(const ExactSobolevInstance& inst) {
  SobolevInstance out;
  out.d = inst.d;
  out.q = to_double(inst.q);
  for (const auto& l : inst.layers) out.layers.push_back({l.r, to_double(l.p)});
  return out;
}

inline Json to_json(const WidthQuery& q) {
  Json balls = Json::array();
  for (const Ball& b : q.set().balls()) balls.push_back({{"p", format_exponent(b.p)}, {"nu", json_real(b.nu)}});
  return {{"N", q.dim()}, {"n", q.n()}, {"q", format_exponent(q.q())}, {"kind", std::string(to_string(q.kind()))},
          {"balls", balls}};
}

inline Json to_json(const BoundReport& r) {
  Json trace = Json::array();
  for (const TraceEntry& t : r.trace) trace.push_back({{"branch", t.branch}, {"value", json_real(t.value)}});
  return {{"theorem", regime_name(r.regime)},
          {"order_value", json_real(r.order_value)},
          {"certified_upper", json_real(r.certified_upper)},
          {"linear_applicable", r.linear_applicable},
          {"n_range_ok", r.n_range_ok},
          {"p1", format_exponent(r.p1)},
          {"trace", trace}};
}

inline Json to_json(const GluskinCertificate& c, bool with_per_s = false) {
  Json out = {{"s_star", c.s_star},
              {"A", json_real(c.A)},
              {"K", json_real(c.K)},
              {"c", json_real(c.c)},
              {"embedding_norm", json_real(c.embedding_norm)},
              {"lower_bound", json_real(c.lower_bound)},
              {"exhaustive", c.exhaustive}};
  if (with_per_s) {
    Json rows = Json::array();
    for (const SpikeBound& s : c.per_s) {
      rows.push_back({{"s", s.s}, {"A", json_real(s.A)}, {"K", json_real(s.K)}, {"bound", json_real(s.bound)}});
    }
    out["per_s"] = rows;
  }
  return out;
}

inline Json to_json(const OracleEstimate& e) {
  Json values = Json::array();
  for (double v : e.restart_values) values.push_back(json_real(v));
  return {{"value", json_real(e.value)},
          {"restarts_used", e.restarts_used},
          {"inner_max_exact", e.inner_max_exact},
          {"spread", json_real(e.spread)},
          {"restart_values", values}};
}

template <class T>
Json to_json(const SobolevExponent<T>& s) {
  auto num = [](const T& v) -> Json {
    if constexpr (std::is_floating_point_v<T>) {
      return json_real(v);
    } else {
      return format_rational(v);
    }
  };
  Json out = {{"case", case_tag(s.which)}, {"theta", num(s.theta)}};
  if constexpr (!std::is_floating_point_v<T>) out["theta_value"] = json_real(to_double(s.theta));
  if (s.theta1) out["theta1"] = num(*s.theta1);
  if (s.theta2) out["theta2"] = num(*s.theta2);
  if (s.lambda) out["lambda"] = num(*s.lambda);
  if (s.pair) out["pair"] = {s.pair->first + 1, s.pair->second + 1};
  return out;
}

}  // namespace widthlab
