#include "polyinv/linprog.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace polyinv {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-9;

// Dense two-phase primal simplex with Bland's rule. Free variables are split
// as x = u - v; every row gets a slack, rows with negative rhs additionally
// get an artificial variable. Small and deterministic; the LPs in this
// project have at most a few dozen rows and columns.
class SimplexTableau {
  public:
    SimplexTableau(const Eigen::MatrixXd& C, const Eigen::VectorXd& d, int n_vars)
        : m_(static_cast<int>(C.rows())), n_(n_vars) {
        n_struct_ = 2 * n_;
        n_art_ = 0;
        for (int i = 0; i < m_; ++i) {
            if (d(i) < 0.0) ++n_art_;
        }
        cols_ = n_struct_ + m_ + n_art_;
        a_.setZero(m_, cols_);
        rhs_.resize(m_);
        basis_.resize(m_);

        int art = n_struct_ + m_;
        for (int i = 0; i < m_; ++i) {
            const double sign = d(i) < 0.0 ? -1.0 : 1.0;
            for (int j = 0; j < n_; ++j) {
                a_(i, j) = sign * C(i, j);
                a_(i, n_ + j) = -sign * C(i, j);
            }
            a_(i, n_struct_ + i) = sign;  // slack
            rhs_(i) = sign * d(i);
            if (sign < 0.0) {
                a_(i, art) = 1.0;
                basis_[i] = art++;
            } else {
                basis_[i] = n_struct_ + i;
            }
        }
    }

    // Returns false when the constraints are infeasible (phase-1 residual
    // above kFeasTol).
    bool phase1() {
        if (n_art_ == 0) return true;
        Eigen::VectorXd cost = Eigen::VectorXd::Zero(cols_);
        for (int j = n_struct_ + m_; j < cols_; ++j) cost(j) = -1.0;
        run(cost);
        double infeas = 0.0;
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] >= n_struct_ + m_) infeas += rhs_(i);
        }
        if (infeas > kFeasTol) return false;
        drive_out_artificials();
        return true;
    }

    // Maximizes cost over the feasible region; call after phase1().
    LpStatus phase2(const Eigen::VectorXd& objective) {
        Eigen::VectorXd cost = Eigen::VectorXd::Zero(cols_);
        for (int j = 0; j < n_; ++j) {
            cost(j) = objective(j);
            cost(n_ + j) = -objective(j);
        }
        return run(cost);
    }

    Eigen::VectorXd solution() const {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n_);
        for (int i = 0; i < m_; ++i) {
            const int b = basis_[i];
            if (b < n_) x(b) += rhs_(i);
            else if (b < n_struct_) x(b - n_) -= rhs_(i);
        }
        return x;
    }

  private:
    LpStatus run(const Eigen::VectorXd& cost) {
        const long max_iter = 2000 + 200L * (m_ + cols_);
        for (long iter = 0; iter < max_iter; ++iter) {
            // Reduced costs priced against the current basis.
            Eigen::VectorXd y = Eigen::VectorXd::Zero(m_);
            for (int i = 0; i < m_; ++i) y(i) = cost(basis_[i]);
            int entering = -1;
            for (int j = 0; j < limit_cols(); ++j) {
                if (is_basic(j)) continue;
                const double red = cost(j) - y.dot(a_.col(j));
                if (red > kCostTol) {
                    entering = j;  // Bland: lowest eligible index
                    break;
                }
            }
            if (entering < 0) return LpStatus::Optimal;

            int leaving = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m_; ++i) {
                const double coef = a_(i, entering);
                if (coef > kPivotTol) {
                    const double ratio = rhs_(i) / coef;
                    if (ratio < best_ratio - kPivotTol ||
                        (ratio < best_ratio + kPivotTol &&
                         (leaving < 0 || basis_[i] < basis_[leaving]))) {
                        best_ratio = ratio;
                        leaving = i;
                    }
                }
            }
            if (leaving < 0) return LpStatus::Unbounded;
            pivot(leaving, entering);
        }
        throw LpError("simplex: iteration limit exceeded");
    }

    void pivot(int row, int col) {
        const double p = a_(row, col);
        a_.row(row) /= p;
        rhs_(row) /= p;
        for (int i = 0; i < m_; ++i) {
            if (i == row) continue;
            const double f = a_(i, col);
            if (std::abs(f) > 0.0) {
                a_.row(i) -= f * a_.row(row);
                rhs_(i) -= f * rhs_(row);
            }
        }
        // Clamp the tiny negatives pivoting leaves behind.
        for (int i = 0; i < m_; ++i) {
            if (rhs_(i) < 0.0 && rhs_(i) > -kFeasTol) rhs_(i) = 0.0;
        }
        basis_[row] = col;
    }

    // After phase 1, any artificial still basic sits at value zero; pivot it
    // onto a structural column when possible, otherwise its row is redundant
    // and stays inert with the artificial excluded from future entering.
    void drive_out_artificials() {
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < n_struct_ + m_) continue;
            int col = -1;
            for (int j = 0; j < n_struct_ + m_; ++j) {
                if (std::abs(a_(i, j)) > kPivotTol && !is_basic(j)) {
                    col = j;
                    break;
                }
            }
            if (col >= 0) pivot(i, col);
        }
        exclude_artificials_ = true;
    }

    int limit_cols() const {
        return exclude_artificials_ ? n_struct_ + m_ : cols_;
    }

    bool is_basic(int col) const {
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] == col) return true;
        }
        return false;
    }

    int m_, n_, n_struct_, n_art_, cols_;
    bool exclude_artificials_ = false;
    Eigen::MatrixXd a_;
    Eigen::VectorXd rhs_;
    std::vector<int> basis_;
};

}  // namespace

LpResult lp_maximize(const Eigen::MatrixXd& C, const Eigen::VectorXd& d,
                     const Eigen::VectorXd& objective) {
    const int n = static_cast<int>(objective.size());
    if (C.rows() != d.size() || (C.rows() > 0 && C.cols() != n)) {
        throw std::invalid_argument("lp_maximize: inconsistent dimensions");
    }
    if (C.rows() == 0) {
        // Unconstrained: bounded only for a zero objective.
        if (objective.lpNorm<Eigen::Infinity>() == 0.0) {
            return {LpStatus::Optimal, 0.0, Eigen::VectorXd::Zero(n)};
        }
        return {LpStatus::Unbounded, std::numeric_limits<double>::infinity(),
                Eigen::VectorXd()};
    }

    SimplexTableau tab(C, d, n);
    if (!tab.phase1()) return {LpStatus::Infeasible, 0.0, Eigen::VectorXd()};
    const LpStatus st = tab.phase2(objective);
    if (st == LpStatus::Unbounded) {
        return {LpStatus::Unbounded, std::numeric_limits<double>::infinity(),
                Eigen::VectorXd()};
    }
    Eigen::VectorXd x = tab.solution();
    return {LpStatus::Optimal, objective.dot(x), std::move(x)};
}

std::optional<Eigen::VectorXd> lp_feasible_point(const Eigen::MatrixXd& C,
                                                 const Eigen::VectorXd& d) {
    const int n = static_cast<int>(C.cols());
    if (C.rows() != d.size()) {
        throw std::invalid_argument("lp_feasible_point: inconsistent dimensions");
    }
    if (C.rows() == 0) return Eigen::VectorXd::Zero(n);
    SimplexTableau tab(C, d, n);
    if (!tab.phase1()) return std::nullopt;
    return tab.solution();
}

}  // namespace polyinv
