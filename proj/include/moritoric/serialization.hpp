#pragma once

#include <json.hpp>
#include <string>

#include "moritoric/divisor.hpp"
#include "moritoric/fan.hpp"
#include "moritoric/lattice.hpp"

// JSON documents. Rationals are written as "p/q" strings (integers as "p"),
// lattice coordinates as numbers; readers accept either form and ignore
// unknown keys.
namespace moritoric::io {

using Json = nlohmann::json;

Json to_json(const Integer& x);
Json to_json(const Rational& x);
Json to_json(const LatticeVector& v);
Json to_json(const RationalVector& v);
Json to_json(const Cone& c);

Integer integer_from_json(const Json& j);
Rational rational_from_json(const Json& j);
/// "3", "-1/2", "0.25" is rejected. Throws InvalidInput.
Rational parse_rational(const std::string& text);

/// {"cones", "dim", "name"?, "rays"}
Json fan_to_json(const Fan& f);
/// Accepts a fan document or an object carrying one under "fan". Shape errors
/// throw InvalidInput / InvalidFan; geometric validity is not checked here.
Fan fan_from_json(const Json& j);

/// {"coeffs": [...]}
Json divisor_to_json(const ToricDivisor& d);
/// Accepts {"coeffs": [...]} or a bare array. Throws InvalidInput.
ToricDivisor divisor_from_json(const Json& j);

/// Canonical text: compact, keys sorted.
std::string dump(const Json& j);

}  // namespace moritoric::io
