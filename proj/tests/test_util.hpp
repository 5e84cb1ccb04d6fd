#pragma once

#include <random>
#include <string>
#include <vector>

#include "polyinv/geometry.hpp"
#include "polyinv/network.hpp"

namespace testutil {

inline std::string fixture(const std::string& name) {
    return std::string(POLYINV_FIXTURE_DIR) + "/" + name;
}

inline Eigen::VectorXd random_vec(std::mt19937_64& rng, int n, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = dist(rng);
    return v;
}

inline Eigen::VectorXd random_point_in(const polyinv::Box& box, std::mt19937_64& rng) {
    Eigen::VectorXd v(box.dim());
    for (int i = 0; i < box.dim(); ++i) {
        std::uniform_real_distribution<double> dist(box.lo(i), box.hi(i));
        v(i) = dist(rng);
    }
    return v;
}

/// A bounded nonempty polyhedron: a random box plus extra half-spaces that
/// all contain a designated anchor point, so membership sampling has a seed.
inline polyinv::Polyhedron random_polytope(std::mt19937_64& rng, int dim, int extra_cuts) {
    std::uniform_real_distribution<double> center_dist(-2.0, 2.0);
    std::uniform_real_distribution<double> radius_dist(0.5, 2.0);
    Eigen::VectorXd lo(dim), hi(dim);
    for (int i = 0; i < dim; ++i) {
        const double c = center_dist(rng);
        const double r = radius_dist(rng);
        lo(i) = c - r;
        hi(i) = c + r;
    }
    polyinv::Polyhedron p = polyinv::to_polyhedron(polyinv::Box(lo, hi));
    const Eigen::VectorXd anchor = 0.5 * (lo + hi);
    std::uniform_real_distribution<double> slack_dist(0.05, 1.0);
    for (int k = 0; k < extra_cuts; ++k) {
        Eigen::VectorXd n = random_vec(rng, dim, -1.0, 1.0);
        if (n.lpNorm<Eigen::Infinity>() < 0.1) n(0) = 1.0;
        p.add({n, n.dot(anchor) + slack_dist(rng)});
    }
    return p;
}

/// Rejection-samples count members of p from the given bounding box.
inline std::vector<Eigen::VectorXd> sample_members(const polyinv::Polyhedron& p,
                                                   const polyinv::Box& box,
                                                   std::mt19937_64& rng, int count,
                                                   int max_tries = 200000) {
    std::vector<Eigen::VectorXd> out;
    for (int t = 0; t < max_tries && static_cast<int>(out.size()) < count; ++t) {
        Eigen::VectorXd x = random_point_in(box, rng);
        if (polyinv::contains(p, x, 0.0)) out.push_back(std::move(x));
    }
    return out;
}

inline polyinv::Activation random_pwa_activation(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, 3);
    switch (pick(rng)) {
        case 0: return polyinv::Activation::identity();
        case 1: return polyinv::Activation::relu();
        case 2: return polyinv::Activation::leaky_relu(0.1);
        default: return polyinv::Activation::leaky_relu(0.0);
    }
}

/// Random piecewise-affine network with widths <= 3, depth <= 3 and weights
/// in [-1, 1]; the last layer is affine only (identity activation).
inline polyinv::Network random_network(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> depth_dist(1, 3);
    std::uniform_int_distribution<int> width_dist(1, 3);
    const int depth = depth_dist(rng);
    std::vector<int> widths(static_cast<std::size_t>(depth) + 1);
    for (int& w : widths) w = width_dist(rng);
    std::vector<polyinv::Layer> layers;
    for (int l = 0; l < depth; ++l) {
        const int rows = widths[static_cast<std::size_t>(l) + 1];
        const int cols = widths[static_cast<std::size_t>(l)];
        Eigen::MatrixXd w(rows, cols);
        for (int i = 0; i < rows; ++i) w.row(i) = random_vec(rng, cols, -1.0, 1.0).transpose();
        Eigen::VectorXd b = random_vec(rng, rows, -1.0, 1.0);
        const polyinv::Activation act = l + 1 == depth
                                            ? polyinv::Activation::identity()
                                            : random_pwa_activation(rng);
        layers.push_back({polyinv::AffineMap(std::move(w), std::move(b)), act});
    }
    return polyinv::Network(std::move(layers));
}

}  // namespace testutil
