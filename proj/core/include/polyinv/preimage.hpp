#pragma once

#include <cstdint>
#include <optional>

#include "polyinv/geometry.hpp"
#include "polyinv/network.hpp"

namespace polyinv {

/// Preimage of a polyhedron under x -> Wx + b, by constraint substitution:
/// {x : (C W) x <= d - C b}. Works for any W, including singular and
/// non-square ones; no emptiness or redundancy processing is done here.
Polyhedron preimage_affine(const Polyhedron& y, const AffineMap& f);

/// Exact preimage of a union under a componentwise piecewise-affine
/// activation. Per part and per sign piece (P_j, a_j) this computes
/// P_j intersected with the pullback of the part through a_j, refined one
/// coordinate at a time with empty branches pruned; the all-constant Relu
/// piece short-circuits to a membership test of 0. Parts come out grouped by
/// input part, then by sign pattern.
PolyUnion preimage_activation(const PolyUnion& z, const Activation& a);

/// Exact preimage of a union under a piecewise-affine network (alternates
/// activation and affine pullbacks over the layers in reverse, pruning empty
/// parts after every step). Output parts are nonempty, redundancy-free and
/// ordered by the sign-pattern path that produced them. With threads > 1
/// parts are processed concurrently with identical results.
PolyUnion preimage_network(const PolyUnion& z, const Network& n, int threads = 1);

enum class SearchOrder { DepthFirst, BreadthFirst };

/// One nonempty polyhedron contained in the exact preimage, found by
/// committing to a single activation piece per step and backtracking on
/// emptiness (depth-first prefers the all-positive piece). Returns nullopt
/// only when the exact preimage is empty.
std::optional<Polyhedron> preimage_underapprox(const PolyUnion& z, const Network& n,
                                               SearchOrder order = SearchOrder::DepthFirst);

/// Upper bound on the number of parts a single input part can map to (in
/// either direction): the product over layers of (affine pieces per scalar
/// activation) ^ (layer width). Saturates at the uint64 maximum.
std::uint64_t branch_count_bound(const Network& n);

}  // namespace polyinv
