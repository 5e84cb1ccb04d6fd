#include "polyinv/network.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace polyinv {

AffineMap::AffineMap(Eigen::MatrixXd weight, Eigen::VectorXd bias)
    : W(std::move(weight)), b(std::move(bias)) {
    if (W.rows() != b.size()) {
        throw std::invalid_argument("AffineMap: W row count must match b length");
    }
}

Eigen::VectorXd AffineMap::apply(const Eigen::VectorXd& x) const {
    if (x.size() != W.cols()) {
        throw std::invalid_argument("AffineMap::apply: input dimension mismatch");
    }
    return W * x + b;
}

Activation Activation::leaky_relu(double a) {
    if (a < 0.0) throw std::invalid_argument("leaky_relu: slope must be nonnegative");
    return {ActivationKind::LeakyRelu, a};
}

double Activation::negative_slope() const {
    switch (kind) {
        case ActivationKind::Identity: return 1.0;
        case ActivationKind::Relu: return 0.0;
        case ActivationKind::LeakyRelu: return slope;
        case ActivationKind::Sigmoid: break;
    }
    throw std::invalid_argument("negative_slope: not piecewise affine");
}

int Activation::pieces_per_coordinate() const {
    switch (kind) {
        case ActivationKind::Identity: return 1;
        case ActivationKind::Relu:
        case ActivationKind::LeakyRelu: return 2;
        case ActivationKind::Sigmoid: break;
    }
    throw std::invalid_argument("pieces_per_coordinate: not piecewise affine");
}

double activation_apply(const Activation& a, double x) {
    switch (a.kind) {
        case ActivationKind::Identity:
            return x;
        case ActivationKind::Relu:
            return x > 0.0 ? x : 0.0;
        case ActivationKind::LeakyRelu:
            if (x > 0.0) return x;
            // 0 * (-inf) would be NaN; the limit of a*x for a = 0 is 0.
            return a.slope == 0.0 ? 0.0 : a.slope * x;
        case ActivationKind::Sigmoid:
            if (x == std::numeric_limits<double>::infinity()) return 1.0;
            if (x == -std::numeric_limits<double>::infinity()) return 0.0;
            return 1.0 / (1.0 + std::exp(-x));
    }
    throw std::logic_error("activation_apply: unknown kind");
}

Network::Network(std::vector<Layer> ls) : layers(std::move(ls)) {
    if (layers.empty()) throw std::invalid_argument("Network: needs at least one layer");
    for (std::size_t i = 1; i < layers.size(); ++i) {
        if (layers[i].affine.in_dim() != layers[i - 1].affine.out_dim()) {
            std::ostringstream os;
            os << "Network: layer " << i << " expects input dimension "
               << layers[i].affine.in_dim() << " but layer " << i - 1 << " outputs "
               << layers[i - 1].affine.out_dim();
            throw std::invalid_argument(os.str());
        }
    }
}

Eigen::VectorXd eval(const Network& n, const Eigen::VectorXd& x) {
    Eigen::VectorXd v = x;
    for (const Layer& layer : n.layers) {
        v = layer.affine.apply(v);
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            v(i) = activation_apply(layer.activation, v(i));
        }
    }
    return v;
}

int classify(const Network& n, const Eigen::VectorXd& x) {
    if (n.out_dim() < 2) {
        throw std::invalid_argument("classify: output dimension must be at least 2");
    }
    const Eigen::VectorXd y = eval(n, x);
    int best = 0;
    for (int i = 1; i < y.size(); ++i) {
        if (y(i) > y(best)) best = i;
    }
    return best;
}

namespace {

using nlohmann::json;

Activation parse_activation(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "identity") return Activation::identity();
        if (s == "relu") return Activation::relu();
        if (s == "sigmoid") return Activation::sigmoid();
        throw std::invalid_argument("parse_network: unknown activation \"" + s + "\"");
    }
    if (j.is_object() && j.contains("leaky_relu") && j.size() == 1) {
        if (!j["leaky_relu"].is_number()) {
            throw std::invalid_argument("parse_network: leaky_relu slope must be a number");
        }
        return Activation::leaky_relu(j["leaky_relu"].get<double>());
    }
    throw std::invalid_argument("parse_network: malformed activation");
}

json activation_to_json(const Activation& a) {
    switch (a.kind) {
        case ActivationKind::Identity: return "identity";
        case ActivationKind::Relu: return "relu";
        case ActivationKind::LeakyRelu: return json{{"leaky_relu", a.slope}};
        case ActivationKind::Sigmoid: return "sigmoid";
    }
    throw std::logic_error("activation_to_json: unknown kind");
}

}  // namespace

Network parse_network(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("parse_network: malformed JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("layers") || !j["layers"].is_array() ||
        j["layers"].empty()) {
        throw std::invalid_argument("parse_network: expected a nonempty \"layers\" array");
    }
    std::vector<Layer> layers;
    for (const json& jl : j["layers"]) {
        if (!jl.is_object() || !jl.contains("W") || !jl.contains("b") ||
            !jl.contains("activation")) {
            throw std::invalid_argument("parse_network: layer needs W, b and activation");
        }
        const json& jw = jl["W"];
        const json& jb = jl["b"];
        if (!jw.is_array() || jw.empty() || !jb.is_array()) {
            throw std::invalid_argument("parse_network: W must be a nonempty matrix");
        }
        const std::size_t rows = jw.size();
        const std::size_t cols = jw[0].is_array() ? jw[0].size() : 0;
        if (cols == 0 || jb.size() != rows) {
            throw std::invalid_argument("parse_network: W/b shapes are inconsistent");
        }
        Eigen::MatrixXd W(rows, cols);
        for (std::size_t r = 0; r < rows; ++r) {
            if (!jw[r].is_array() || jw[r].size() != cols) {
                throw std::invalid_argument("parse_network: ragged weight matrix");
            }
            for (std::size_t c = 0; c < cols; ++c) {
                if (!jw[r][c].is_number()) {
                    throw std::invalid_argument("parse_network: weights must be numbers");
                }
                W(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    jw[r][c].get<double>();
            }
        }
        Eigen::VectorXd b(rows);
        for (std::size_t r = 0; r < rows; ++r) {
            if (!jb[r].is_number()) {
                throw std::invalid_argument("parse_network: biases must be numbers");
            }
            b(static_cast<Eigen::Index>(r)) = jb[r].get<double>();
        }
        layers.push_back({AffineMap(std::move(W), std::move(b)),
                          parse_activation(jl["activation"])});
    }
    return Network(std::move(layers));  // validates dimension chaining
}

std::string serialize_network(const Network& n) {
    json layers = json::array();
    for (const Layer& layer : n.layers) {
        json jw = json::array();
        for (Eigen::Index r = 0; r < layer.affine.W.rows(); ++r) {
            json row = json::array();
            for (Eigen::Index c = 0; c < layer.affine.W.cols(); ++c) {
                row.push_back(layer.affine.W(r, c));
            }
            jw.push_back(std::move(row));
        }
        json jb = json::array();
        for (Eigen::Index r = 0; r < layer.affine.b.size(); ++r) {
            jb.push_back(layer.affine.b(r));
        }
        layers.push_back(json{{"W", std::move(jw)},
                              {"b", std::move(jb)},
                              {"activation", activation_to_json(layer.activation)}});
    }
    return json{{"layers", std::move(layers)}}.dump(2);
}

Network load_network_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open network file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_network(buf.str());
}

}  // namespace polyinv
