#pragma once

#include "polyinv/geometry.hpp"
#include "polyinv/network.hpp"

namespace polyinv {

/// One affine piece of a componentwise piecewise-affine activation: the
/// closed sign region P_j and the diagonal map applied on it (zero bias).
struct PWAPiece {
    Polyhedron region;
    AffineMap map;
};

/// The 2^n sign-region partition of R^n for Relu/LeakyRelu (one piece for
/// Identity). Piece j takes the nonpositive branch on coordinate i iff bit i
/// of j is set, so the all-positive piece comes first. Regions are closed;
/// the adjoining piece maps agree on shared boundaries. Throws for Sigmoid.
std::vector<PWAPiece> pwa_partitioning(const Activation& a, int n);

/// Exact image of a polyhedron under an affine map. Invertible W (LU pivot
/// threshold 1e-10) uses constraint substitution; otherwise the graph
/// {(x, y) : x in X, y = W x + b} is projected onto y.
Polyhedron affine_image(const Polyhedron& x, const AffineMap& f);

/// The graph-projection route, usable for any W. Exposed so the two routes
/// can be checked against each other.
Polyhedron affine_image_via_projection(const Polyhedron& x, const AffineMap& f);

/// Exact image of X under a piecewise-affine activation: the union of
/// per-piece images, refined one coordinate at a time with empty branches
/// pruned immediately. Parts come out in sign-pattern order.
PolyUnion activation_image(const Polyhedron& x, const Activation& a);

/// Exact forward image through every layer, distributing over unions and
/// pruning empty parts eagerly. All activations must be piecewise affine.
/// With threads > 1 parts are processed concurrently; the result is
/// independent of the thread count.
PolyUnion network_image(const Network& n, const Polyhedron& x, int threads = 1);
PolyUnion network_image(const Network& n, const PolyUnion& x, int threads = 1);

}  // namespace polyinv
