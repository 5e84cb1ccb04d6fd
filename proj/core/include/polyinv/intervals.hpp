#pragma once

#include "polyinv/geometry.hpp"
#include "polyinv/network.hpp"

namespace polyinv {

/// Scalar interval with extended-real endpoints; empty iff lo > hi.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool is_empty() const { return lo > hi; }
    static Interval empty();
};

/// Exact interval-arithmetic image of a box under an affine map; handles
/// infinite endpoints.
Box interval_affine(const Box& b, const AffineMap& f);

/// Componentwise [a(lo), a(hi)]; valid because all supported activations are
/// nondecreasing. Sigmoid maps -inf/+inf to 0/1.
Box interval_activation(const Box& b, const Activation& a);

/// Exact preimage interval of i under the activation:
///   Identity: i unchanged.
///   Relu: empty if hi < 0, [lo, hi] if lo > 0, [-inf, hi] otherwise.
///   LeakyRelu(a > 0): endpoints mapped through y -> y if y > 0 else y / a.
///   Sigmoid: empty if hi <= 0 or lo >= 1; endpoints outside (0, 1) map to
///   -inf/+inf, otherwise through the logit.
Interval activation_inverse_interval(const Activation& a, const Interval& i);
/// Componentwise box version.
Box activation_inverse_interval(const Activation& a, const Box& b);

/// Box hull of {x in X : W x + b in Y}, by 2 * in_dim support LPs over the
/// polyhedron assembled from both boxes; the empty box when infeasible.
/// Tighter than coordinatewise backward substitution.
Box affine_preimage_box(const Box& y, const AffineMap& f, const Box& x);

/// Preimage loop with each activation pullback replaced by the box hull of
/// the part followed by componentwise interval inversion (identity
/// activations pass through exactly). Result is a superset of the exact
/// preimage. Requires injective activations; Relu is rejected. Parts may be
/// unbounded when layer widths differ.
PolyUnion preimage_overapprox_box(const PolyUnion& z, const Network& n);

/// Per-iteration record of every neuron interval: iteration 0 is the initial
/// configuration, and each group holds (input, hidden per layer, output)
/// boxes. Intervals only shrink across iterations; once anything empties,
/// every box of that and later records is empty.
struct NeuronTrace {
    std::vector<std::vector<Box>> iterations;
};

struct ContractResult {
    Box input;
    Box output;
    NeuronTrace trace;
};

/// Iterative forward-backward interval contraction for networks with
/// monotone nondecreasing activations: each iteration pushes the input box
/// through the layers (intersecting every stored box) and pulls the output
/// box back through inverse activations and LP-exact affine preimages, until
/// no endpoint moves by more than 1e-9 or max_iter iterations have run. An
/// empty intersection anywhere empties every box (infeasibility proof).
ContractResult forward_backward_contract(const Network& n, const Box& x, const Box& y,
                                         int max_iter = 20);

}  // namespace polyinv
