#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "polyinv/network.hpp"
#include "test_util.hpp"

using namespace polyinv;

namespace {

Network identity_network(int dim) {
    return Network({{AffineMap(Eigen::MatrixXd::Identity(dim, dim),
                               Eigen::VectorXd::Zero(dim)),
                     Activation::identity()}});
}

Eigen::VectorXd vec2(double a, double b) {
    Eigen::VectorXd v(2);
    v << a, b;
    return v;
}

}  // namespace

TEST_CASE("scalar activations") {
    CHECK(activation_apply(Activation::relu(), -1.0) == 0.0);
    CHECK(activation_apply(Activation::relu(), 2.5) == 2.5);
    CHECK(activation_apply(Activation::leaky_relu(0.01), -1.0) == doctest::Approx(-0.01));
    CHECK(activation_apply(Activation::sigmoid(), 0.0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(Activation::leaky_relu(-0.5), std::invalid_argument);
}

TEST_CASE("eval: identity network reproduces its input") {
    const Network n = identity_network(2);
    Eigen::VectorXd x = vec2(3, -2);
    CHECK(eval(n, x).isApprox(x));
}

TEST_CASE("eval and classify on the 2-D classifier fixture") {
    const Network n = load_network_file(testutil::fixture("classifier2d.json"));
    const Eigen::VectorXd y = eval(n, vec2(0, 0));
    CHECK(y(0) == doctest::Approx(0.187286).epsilon(1e-9));
    CHECK(y(1) == doctest::Approx(0.231100).epsilon(1e-9));
    // y1 <= y2, so the argmax is the second output.
    CHECK(classify(n, vec2(0, 0)) == 1);
}

TEST_CASE("classify breaks ties toward the lowest index") {
    // Two outputs that copy the single input: always tied.
    Eigen::MatrixXd w(2, 1);
    w << 1.0, 1.0;
    const Network n({{AffineMap(w, Eigen::VectorXd::Zero(2)), Activation::identity()}});
    CHECK(classify(n, Eigen::VectorXd::Constant(1, 0.7)) == 0);

    Eigen::MatrixXd w2(2, 2);
    w2 << 1, 0, 0, 1;
    const Network id2({{AffineMap(w2, Eigen::VectorXd::Zero(2)), Activation::identity()}});
    CHECK(classify(id2, vec2(0.2, 0.1)) == 0);
    CHECK(classify(id2, vec2(0.1, 0.2)) == 1);
}

TEST_CASE("parse_network reads the shipped fixtures") {
    const Network classifier = load_network_file(testutil::fixture("classifier2d.json"));
    REQUIRE(classifier.layers.size() == 3);
    CHECK(classifier.layers[0].activation.kind == ActivationKind::Relu);
    CHECK(classifier.layers[1].activation.kind == ActivationKind::Relu);
    CHECK(classifier.layers[2].activation.kind == ActivationKind::Identity);
    CHECK(classifier.in_dim() == 2);
    CHECK(classifier.out_dim() == 2);

    const Network xor_net = load_network_file(testutil::fixture("xor_sigmoid.json"));
    REQUIRE(xor_net.layers.size() == 2);
    CHECK(xor_net.layers[0].activation.kind == ActivationKind::Sigmoid);
    CHECK(xor_net.layers[1].activation.kind == ActivationKind::Sigmoid);

    const Network leaky = load_network_file(testutil::fixture("classifier2d_leaky.json"));
    CHECK(leaky.layers[0].activation.kind == ActivationKind::LeakyRelu);
    CHECK(leaky.layers[0].activation.slope == doctest::Approx(0.01));
    CHECK(leaky.layers[1].activation.slope == doctest::Approx(0.02));
}

TEST_CASE("parse_network rejects malformed inputs") {
    CHECK_THROWS_AS(parse_network("not json"), std::invalid_argument);
    CHECK_THROWS_AS(parse_network(R"({"layers": []})"), std::invalid_argument);
    // chained dimensions must match: 2x2 then 3x3
    CHECK_THROWS_AS(parse_network(R"({"layers": [
        {"W": [[1,0],[0,1]], "b": [0,0], "activation": "relu"},
        {"W": [[1,0,0],[0,1,0],[0,0,1]], "b": [0,0,0], "activation": "identity"}
    ]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_network(R"({"layers": [
        {"W": [[1]], "b": [0], "activation": "softmax"}
    ]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_network(R"({"layers": [
        {"W": [[1]], "b": [0], "activation": {"leaky_relu": -0.1}}
    ]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_network(R"({"layers": [
        {"W": [[1],[2]], "b": [0], "activation": "relu"}
    ]})"),
                    std::invalid_argument);
}

TEST_CASE("serialize/parse round-trip evaluates identically") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 10; ++t) {
        const Network n = testutil::random_network(rng);
        const Network back = parse_network(serialize_network(n));
        for (int i = 0; i < 100; ++i) {
            const Eigen::VectorXd x = testutil::random_vec(rng, n.in_dim(), -3.0, 3.0);
            CHECK(eval(n, x).isApprox(eval(back, x), 1e-15));
        }
    }
}

TEST_CASE("LeakyRelu(0) agrees with Relu pointwise") {
    std::mt19937_64 rng(9);
    const Activation zero_leak = Activation::leaky_relu(0.0);
    const Activation relu = Activation::relu();
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = dist(rng);
        CHECK(activation_apply(zero_leak, x) == activation_apply(relu, x));
    }
}

TEST_CASE("sigmoid stays in (0,1) and is strictly monotone") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> dist(-30.0, 30.0);
    const Activation sig = Activation::sigmoid();
    for (int i = 0; i < 1000; ++i) {
        double a = dist(rng);
        double b = dist(rng);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        const double fa = activation_apply(sig, a);
        const double fb = activation_apply(sig, b);
        CHECK(fa > 0.0);
        CHECK(fb < 1.0);
        CHECK(fa < fb);
    }
}

TEST_CASE("identity-activation networks compose to one affine map") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 10; ++t) {
        std::vector<Layer> layers;
        Eigen::MatrixXd total = Eigen::MatrixXd::Identity(2, 2);
        Eigen::VectorXd shift = Eigen::VectorXd::Zero(2);
        for (int l = 0; l < 3; ++l) {
            Eigen::MatrixXd w(2, 2);
            w << testutil::random_vec(rng, 2, -1, 1).transpose(),
                testutil::random_vec(rng, 2, -1, 1).transpose();
            Eigen::VectorXd b = testutil::random_vec(rng, 2, -1, 1);
            layers.push_back({AffineMap(w, b), Activation::identity()});
            total = w * total;
            shift = w * shift + b;
        }
        const Network n(std::move(layers));
        for (int i = 0; i < 100; ++i) {
            const Eigen::VectorXd x = testutil::random_vec(rng, 2, -3, 3);
            CHECK(eval(n, x).isApprox(total * x + shift, 1e-12));
        }
    }
}
