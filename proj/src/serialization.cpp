#include "moritoric/serialization.hpp"

#include "moritoric/error.hpp"

namespace moritoric::io {

Json to_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

Json to_json(const Rational& x) { return Json(x.get_str()); }

Json to_json(const LatticeVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const RationalVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const Cone& c) { return Json(c.rays()); }

Rational parse_rational(const std::string& text) {
  Rational q;
  bool ok = !text.empty() && text.find_first_not_of("+-0123456789/") == std::string::npos;
  if (ok) {
    std::string s = text;
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    ok = q.set_str(s, 10) == 0 && q.get_den() != 0;
  }
  if (!ok) throw Error(ErrorKind::InvalidInput, "not a rational number: '" + text + "'");
  q.canonicalize();
  return q;
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<unsigned long>()) : Integer(j.get<long>());
  if (j.is_string()) {
    Rational q = parse_rational(j.get<std::string>());
    if (q.get_den() == 1) return q.get_num();
  }
  throw Error(ErrorKind::InvalidInput, "expected an integer, got " + j.dump());
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(integer_from_json(j));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error(ErrorKind::InvalidInput, "expected a rational (integer or \"p/q\" string), got " + j.dump());
}

Json fan_to_json(const Fan& f) {
  Json rays = Json::array();
  for (const auto& r : f.rays()) rays.push_back(to_json(r));
  Json cones = Json::array();
  for (const auto& c : f.cones()) cones.push_back(to_json(c));
  Json out = {{"dim", f.dim()}, {"rays", rays}, {"cones", cones}};
  if (!f.name().empty()) out["name"] = f.name();
  return out;
}

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::InvalidInput, std::string("missing key '") + key + "'");
  return j.at(key);
}

}  // namespace

Fan fan_from_json(const Json& j) {
  if (j.is_object() && j.contains("fan") && !j.contains("rays")) return fan_from_json(j.at("fan"));
  const Json& dim = require(j, "dim");
  if (!dim.is_number_integer() || dim.get<long>() < 0) throw Error(ErrorKind::InvalidInput, "'dim' must be a nonnegative integer");
  const Json& rays = require(j, "rays");
  const Json& cones = require(j, "cones");
  if (!rays.is_array() || !cones.is_array()) throw Error(ErrorKind::InvalidInput, "'rays' and 'cones' must be arrays");
  std::vector<LatticeVector> ray_list;
  for (const auto& r : rays) {
    if (!r.is_array()) throw Error(ErrorKind::InvalidInput, "each ray must be an array of integers");
    LatticeVector v;
    for (const auto& x : r) v.push_back(integer_from_json(x));
    ray_list.push_back(std::move(v));
  }
  std::vector<Cone> cone_list;
  for (const auto& c : cones) {
    if (!c.is_array()) throw Error(ErrorKind::InvalidInput, "each cone must be an array of ray indices");
    std::vector<std::size_t> idx;
    for (const auto& x : c) {
      if (!x.is_number_integer() || x.get<long>() < 0) throw Error(ErrorKind::InvalidInput, "ray indices must be nonnegative integers");
      idx.push_back(x.get<std::size_t>());
    }
    cone_list.emplace_back(std::move(idx));
  }
  std::string name;
  if (j.contains("name") && j.at("name").is_string()) name = j.at("name").get<std::string>();
  return Fan(dim.get<std::size_t>(), std::move(ray_list), std::move(cone_list), std::move(name));
}

Json divisor_to_json(const ToricDivisor& d) { return {{"coeffs", to_json(d.coeffs)}}; }

ToricDivisor divisor_from_json(const Json& j) {
  const Json& coeffs = j.is_array() ? j : require(j, "coeffs");
  if (!coeffs.is_array()) throw Error(ErrorKind::InvalidInput, "'coeffs' must be an array");
  RationalVector v;
  for (const auto& x : coeffs) v.push_back(rational_from_json(x));
  return ToricDivisor(std::move(v));
}

std::string dump(const Json& j) { return j.dump(); }

}  // namespace moritoric::io
