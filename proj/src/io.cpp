#include "frobeval/io.hpp"

#include <fstream>
#include <stdexcept>

namespace frobeval {

namespace {

u64 require_uint(const nlohmann::json& j, const char* name) {
  if (!j.contains(name))
    throw std::invalid_argument(std::string("missing field '") + name + "'");
  const auto& v = j.at(name);
  if (!v.is_number_unsigned())
    throw std::invalid_argument(std::string("field '") + name +
                                "' must be a nonnegative integer");
  return v.get<u64>();
}

}  // namespace

DensePoly poly_from_json(const nlohmann::json& j) {
  const u64 p = require_uint(j, "p");
  const u64 s = require_uint(j, "s");
  const u64 r = require_uint(j, "r");
  const u64 n = require_uint(j, "n");
  if (!is_prime(static_cast<u32>(p)) || p > 65521)
    throw std::invalid_argument("field 'p' must be a prime below 2^16");
  if (s < 1 || s > 32) throw std::invalid_argument("field 's' out of range");
  if (r < 1 || r > 8) throw std::invalid_argument("field 'r' out of range");
  if (n > 1000000) throw std::invalid_argument("field 'n' out of range");
  if (!j.contains("coeffs") || !j.at("coeffs").is_array())
    throw std::invalid_argument("missing array field 'coeffs'");

  DensePoly poly = make_zero_poly(static_cast<u32>(p), static_cast<u32>(s),
                                  static_cast<u32>(r), static_cast<u32>(n));
  const auto& coeffs = j.at("coeffs");
  const u64 expected = poly.coeff_count();
  if (coeffs.size() != expected)
    throw std::invalid_argument("field 'coeffs' must have exactly " +
                                std::to_string(expected) + " entries, got " +
                                std::to_string(coeffs.size()));
  for (u64 k = 0; k < expected; ++k) {
    const auto& entry = coeffs[k];
    const std::string where = "coeffs[" + std::to_string(k) + "]";
    if (s == 1 && entry.is_number_unsigned()) {
      u64 c = entry.get<u64>();
      if (c >= p) throw std::invalid_argument(where + " out of range for p");
      poly.coeffs[k] = static_cast<u32>(c);
      continue;
    }
    if (!entry.is_array() || entry.size() != s)
      throw std::invalid_argument(where + " must be a length-" + std::to_string(s) +
                                  " residue array");
    for (u64 i = 0; i < s; ++i) {
      if (!entry[i].is_number_unsigned() || entry[i].get<u64>() >= p)
        throw std::invalid_argument(where + "[" + std::to_string(i) +
                                    "] out of range for p");
      poly.coeffs[k * s + i] = entry[i].get<u32>();
    }
  }
  return poly;
}

nlohmann::ordered_json poly_to_json(const DensePoly& poly) {
  nlohmann::ordered_json j;
  j["p"] = poly.p;
  j["s"] = poly.s;
  j["r"] = poly.r;
  j["n"] = poly.n;
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
  const u64 total = poly.coeff_count();
  for (u64 k = 0; k < total; ++k) {
    if (poly.s == 1) {
      coeffs.push_back(poly.coeffs[k]);
    } else {
      nlohmann::ordered_json entry = nlohmann::ordered_json::array();
      for (u32 i = 0; i < poly.s; ++i) entry.push_back(poly.coeffs[k * poly.s + i]);
      coeffs.push_back(std::move(entry));
    }
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

Point point_from_json(const ExtField& field, const nlohmann::json& j) {
  const u64 m = require_uint(j, "m");
  if (m != field.m())
    throw std::invalid_argument("field 'm' does not match the expected extension degree");
  if (!j.contains("coords") || !j.at("coords").is_array())
    throw std::invalid_argument("missing array field 'coords'");
  Point a;
  const auto& coords = j.at("coords");
  for (u64 i = 0; i < coords.size(); ++i) {
    const std::string where = "coords[" + std::to_string(i) + "]";
    const auto& vec = coords[i];
    if (!vec.is_array() || vec.size() != m)
      throw std::invalid_argument(where + " must be a length-" + std::to_string(m) +
                                  " residue vector");
    std::vector<u32> c(m);
    for (u64 k = 0; k < m; ++k) {
      if (!vec[k].is_number_unsigned() || vec[k].get<u64>() >= field.p())
        throw std::invalid_argument(where + "[" + std::to_string(k) +
                                    "] out of range for p");
      c[k] = vec[k].get<u32>();
    }
    a.push_back(field.from_coeffs(std::move(c)));
  }
  return a;
}

nlohmann::ordered_json point_to_json(const ExtField& field, const Point& a) {
  nlohmann::ordered_json j;
  j["m"] = field.m();
  nlohmann::ordered_json coords = nlohmann::ordered_json::array();
  for (const Element& c : a) coords.push_back(c.coeffs);
  j["coords"] = std::move(coords);
  return j;
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path + ": cannot open file");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

}  // namespace frobeval
