#ifndef FROBEVAL_IO_HPP
#define FROBEVAL_IO_HPP

#include <string>

#include <json.hpp>

#include "frobeval/evaluator.hpp"
#include "frobeval/mpoly.hpp"

namespace frobeval {

// Canonical polynomial file: {"p", "s", "r", "n", "coeffs"} with coeffs in
// deglex rank order. For s = 1 the entries are plain residues; for s >= 2
// each entry is a length-s array of residues (power-basis coordinates over
// the canonical modulus of F_{p^s}).
DensePoly poly_from_json(const nlohmann::json& j);
nlohmann::ordered_json poly_to_json(const DensePoly& poly);

// Point file: {"m", "coords"} with coords = r residue vectors of length m,
// coordinates over the canonical (lexicographically smallest) modulus of
// F_{p^m}; p is taken from the polynomial the point is paired with.
Point point_from_json(const ExtField& field, const nlohmann::json& j);
nlohmann::ordered_json point_to_json(const ExtField& field, const Point& a);

/// Parses a file, prefixing parse/validation failures with the path.
nlohmann::json load_json_file(const std::string& path);

}  // namespace frobeval

#endif
