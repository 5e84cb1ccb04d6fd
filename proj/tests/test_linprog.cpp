#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "polyinv/linprog.hpp"
#include "test_util.hpp"

using namespace polyinv;

namespace {
Eigen::MatrixXd mat(std::initializer_list<std::initializer_list<double>> rows) {
    Eigen::MatrixXd m(rows.size(), rows.begin()->size());
    Eigen::Index i = 0;
    for (const auto& r : rows) {
        Eigen::Index j = 0;
        for (double v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

Eigen::VectorXd vec(std::initializer_list<double> vals) {
    Eigen::VectorXd v(vals.size());
    Eigen::Index i = 0;
    for (double x : vals) v(i++) = x;
    return v;
}
}  // namespace

TEST_CASE("bounded maximization finds the tight corner") {
    // max x1 subject to x1 <= 5, -x1 <= 0
    const LpResult r = lp_maximize(mat({{1}, {-1}}), vec({5, 0}), vec({1}));
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == doctest::Approx(5.0));
    CHECK(r.point(0) == doctest::Approx(5.0));
}

TEST_CASE("unbounded direction is reported") {
    const LpResult r = lp_maximize(mat({{-1}}), vec({0}), vec({1}));
    CHECK(r.status == LpStatus::Unbounded);
}

TEST_CASE("contradictory bounds are infeasible") {
    // x <= 0 and x >= 1
    const LpResult r = lp_maximize(mat({{1}, {-1}}), vec({0, -1}), vec({1}));
    CHECK(r.status == LpStatus::Infeasible);
    CHECK(!lp_feasible_point(mat({{1}, {-1}}), vec({0, -1})).has_value());
}

TEST_CASE("negative right-hand side goes through phase 1") {
    // 1 <= x <= 3; free variable, so the two-phase path is exercised
    const Eigen::MatrixXd C = mat({{1}, {-1}});
    const Eigen::VectorXd d = vec({3, -1});
    SUBCASE("maximize") {
        const LpResult r = lp_maximize(C, d, vec({1}));
        REQUIRE(r.status == LpStatus::Optimal);
        CHECK(r.value == doctest::Approx(3.0));
    }
    SUBCASE("minimize via negated objective") {
        const LpResult r = lp_maximize(C, d, vec({-1}));
        REQUIRE(r.status == LpStatus::Optimal);
        CHECK(r.value == doctest::Approx(-1.0));
        CHECK(r.point(0) == doctest::Approx(1.0));
    }
    SUBCASE("witness") {
        const auto w = lp_feasible_point(C, d);
        REQUIRE(w.has_value());
        CHECK((*w)(0) >= 1.0 - kFeasTol);
        CHECK((*w)(0) <= 3.0 + kFeasTol);
    }
}

TEST_CASE("degenerate duplicated constraints") {
    const LpResult r = lp_maximize(mat({{1}, {1}, {-1}}), vec({0, 0, 0}), vec({1}));
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == doctest::Approx(0.0));
}

TEST_CASE("zero normal rows act as trivial or contradictory constraints") {
    CHECK(lp_feasible_point(mat({{0}}), vec({1})).has_value());
    CHECK(!lp_feasible_point(mat({{0}}), vec({-1})).has_value());
}

TEST_CASE("no constraints: zero objective is optimal, others unbounded") {
    const Eigen::MatrixXd C(0, 2);
    const LpResult zero = lp_maximize(C, Eigen::VectorXd(0), vec({0, 0}));
    CHECK(zero.status == LpStatus::Optimal);
    const LpResult dir = lp_maximize(C, Eigen::VectorXd(0), vec({1, 0}));
    CHECK(dir.status == LpStatus::Unbounded);
}

TEST_CASE("optimum dominates every sampled feasible point") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int dim = 2 + static_cast<int>(rng() % 3);
        const Polyhedron p = testutil::random_polytope(rng, dim, 3);
        const Eigen::MatrixXd C = p.constraint_matrix();
        const Eigen::VectorXd d = p.offsets();
        const Eigen::VectorXd obj = testutil::random_vec(rng, dim, -1.0, 1.0);

        const LpResult r = lp_maximize(C, d, obj);
        REQUIRE(r.status == LpStatus::Optimal);
        for (Eigen::Index i = 0; i < C.rows(); ++i) {
            CHECK(C.row(i).dot(r.point) <= d(i) + 1e-7);
        }
        const Box bounds = box_hull(p);
        for (const auto& x : testutil::sample_members(p, bounds, rng, 20)) {
            CHECK(obj.dot(x) <= r.value + 1e-7);
        }
    }
}
