#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>

namespace polyinv {

/// Feasibility tolerance shared by the LP oracle, redundancy removal and
/// membership tests.
inline constexpr double kFeasTol = 1e-9;

/// Thrown when the simplex method breaks down numerically (e.g. exceeds its
/// iteration budget). Callers must not confuse this with infeasibility.
class LpError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpResult {
    LpStatus status;
    /// Objective value; +inf when unbounded, meaningless when infeasible.
    double value = 0.0;
    /// Maximizer (or feasible point); empty when infeasible.
    Eigen::VectorXd point;
};

/// Maximize objective^T x subject to C x <= d over free (sign-unrestricted) x.
/// C may have zero rows (no constraints). Rows with a zero normal are legal
/// and act as trivial or contradictory constraints depending on the offset.
LpResult lp_maximize(const Eigen::MatrixXd& C, const Eigen::VectorXd& d,
                     const Eigen::VectorXd& objective);

/// Phase-1 only: a point satisfying C x <= d within kFeasTol, or nullopt if
/// the system is infeasible beyond that tolerance.
std::optional<Eigen::VectorXd> lp_feasible_point(const Eigen::MatrixXd& C,
                                                 const Eigen::VectorXd& d);

}  // namespace polyinv
