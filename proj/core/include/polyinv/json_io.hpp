#pragma once

#include <string>

#include "polyinv/geometry.hpp"
#include "polyinv/intervals.hpp"

namespace polyinv {

/// Parses the set-specification schema into a union of polyhedra. A set is
/// one of
///   {"box": {"lo": [...], "hi": [...]}}        ("inf"/"-inf" sentinels allowed)
///   {"polyhedron": {"C": [[...]], "d": [...]}}
///   {"halfspace": {"c": [...], "d": ...}}
///   {"union": [set, ...]}                      (flattened)
/// expected_dim >= 0 enforces the dimension; otherwise it is inferred, which
/// fails for an empty union.
PolyUnion parse_set_spec(const std::string& text, int expected_dim = -1);

/// Parses {"box": {"lo": [...], "hi": [...]}} only.
Box parse_box_spec(const std::string& text, int expected_dim = -1);

/// Parses the inline box shorthand "[a,b]" or "[a,b]x[c,d]x..."; endpoints
/// may be inf/-inf.
Box parse_box_shorthand(const std::string& text);

/// Shortest of %.17g: lossless and byte-stable across runs.
std::string format_number(double v);

/// Canonical result serialization: {"union": [{"polyhedron": ...}, ...]}.
std::string to_json(const PolyUnion& u);

/// Trace serialization: an array of iterations, each an array of neuron
/// groups {"lo": [...], "hi": [...]} with "inf"/"-inf" sentinels.
std::string to_json(const NeuronTrace& t);

}  // namespace polyinv
