#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace polyinv {

/// x -> W x + b.
struct AffineMap {
    Eigen::MatrixXd W;
    Eigen::VectorXd b;

    AffineMap() = default;
    AffineMap(Eigen::MatrixXd weight, Eigen::VectorXd bias);

    int in_dim() const { return static_cast<int>(W.cols()); }
    int out_dim() const { return static_cast<int>(W.rows()); }
    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
};

enum class ActivationKind { Identity, Relu, LeakyRelu, Sigmoid };

/// Componentwise activation function. LeakyRelu carries its nonnegative
/// slope; LeakyRelu(0) behaves exactly like Relu.
struct Activation {
    ActivationKind kind = ActivationKind::Identity;
    double slope = 0.0;  // LeakyRelu only

    static Activation identity() { return {ActivationKind::Identity, 0.0}; }
    static Activation relu() { return {ActivationKind::Relu, 0.0}; }
    static Activation leaky_relu(double a);
    static Activation sigmoid() { return {ActivationKind::Sigmoid, 0.0}; }

    /// True for Identity, Relu and LeakyRelu; the exact polyhedral code paths
    /// require this.
    bool is_piecewise_affine() const { return kind != ActivationKind::Sigmoid; }
    /// Slope of the nonpositive piece (0 for Relu, a for LeakyRelu, 1 for
    /// Identity); meaningless for Sigmoid.
    double negative_slope() const;
    /// Number of affine pieces per scalar coordinate (1 or 2).
    int pieces_per_coordinate() const;
};

double activation_apply(const Activation& a, double x);

struct Layer {
    AffineMap affine;
    Activation activation;
};

/// Sequential feed-forward network; layer i's output dimension must equal
/// layer i+1's input dimension.
struct Network {
    std::vector<Layer> layers;

    Network() = default;
    explicit Network(std::vector<Layer> ls);

    int in_dim() const { return layers.front().affine.in_dim(); }
    int out_dim() const { return layers.back().affine.out_dim(); }
};

/// Exact layer-by-layer evaluation.
Eigen::VectorXd eval(const Network& n, const Eigen::VectorXd& x);

/// Argmax of eval(n, x) as a 0-based index; ties break to the lowest index.
/// Requires output dimension >= 2.
int classify(const Network& n, const Eigen::VectorXd& x);

/// Parses the network JSON format:
///   {"layers": [{"W": [[...]], "b": [...],
///                "activation": "identity"|"relu"|{"leaky_relu": a}|"sigmoid"}, ...]}
/// Throws std::invalid_argument on malformed JSON, dimension mismatches,
/// unknown activation names or a negative leaky slope.
Network parse_network(const std::string& text);
std::string serialize_network(const Network& n);
Network load_network_file(const std::string& path);

}  // namespace polyinv
