#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "polyinv/linprog.hpp"

namespace polyinv {

/// One closed linear constraint {x : normal^T x <= offset}. A zero normal is
/// allowed: the constraint is then the universe (offset >= 0) or empty
/// (offset < 0).
struct HalfSpace {
    Eigen::VectorXd normal;
    double offset = 0.0;
};

/// H-representation polyhedron: the intersection of finitely many closed
/// half-spaces of a common dimension. An empty constraint list is all of R^n.
/// Possibly unbounded or (syntactically hidden) empty.
struct Polyhedron {
    int dim = 0;
    std::vector<HalfSpace> constraints;

    Polyhedron() = default;
    explicit Polyhedron(int dimension) : dim(dimension) {}
    Polyhedron(int dimension, std::vector<HalfSpace> cs);

    static Polyhedron universe(int dim) { return Polyhedron(dim); }
    /// Canonical syntactically empty polyhedron (0^T x <= -1).
    static Polyhedron empty(int dim);

    void add(HalfSpace hs);
    /// Constraint rows stacked as C x <= d.
    Eigen::MatrixXd constraint_matrix() const;
    Eigen::VectorXd offsets() const;
};

/// Finite union of polyhedra of equal dimension; zero parts is the empty set.
/// Parts may overlap.
struct PolyUnion {
    int dim = 0;
    std::vector<Polyhedron> parts;

    PolyUnion() = default;
    explicit PolyUnion(int dimension) : dim(dimension) {}
    PolyUnion(int dimension, std::vector<Polyhedron> ps);

    static PolyUnion empty_set(int dim) { return PolyUnion(dim); }
    static PolyUnion single(Polyhedron p);
};

/// Axis-aligned box with extended-real endpoints. Empty iff lo(i) > hi(i) for
/// some i; the canonical empty box has lo = +inf, hi = -inf everywhere.
struct Box {
    Eigen::VectorXd lo, hi;

    Box() = default;
    Box(Eigen::VectorXd lower, Eigen::VectorXd upper);

    int dim() const { return static_cast<int>(lo.size()); }
    bool is_empty() const;
    static Box universe(int dim);
    static Box empty(int dim);
    bool contains(const Eigen::VectorXd& x, double tol) const;
};

/// Conversion uses at most 2*dim constraints, omitting infinite bounds.
Polyhedron to_polyhedron(const Box& b);
Box intersect(const Box& a, const Box& b);

/// Exact intersection: the concatenated constraint lists. Contradictions are
/// retained syntactically.
Polyhedron intersect(const Polyhedron& p, const Polyhedron& q);

/// True iff the constraint system is infeasible (within kFeasTol), decided by
/// a phase-1 LP. Numerical breakdown surfaces as LpError, never as a bool.
bool is_empty(const Polyhedron& p);

/// Feasibility witness: a point satisfying every constraint within kFeasTol,
/// or nullopt when the polyhedron is empty.
std::optional<Eigen::VectorXd> feasible_point(const Polyhedron& p);

/// Feasibility of the mixed system {x in p : normal^T x < offset for every
/// hs in strict}. Decided by maximizing a slack variable on the strict rows;
/// used to prune activation pieces that only touch a region boundary.
bool feasible_with_strict(const Polyhedron& p, std::span<const HalfSpace> strict);

/// sup { direction^T x : x in p }; +inf when unbounded in that direction.
/// Throws std::invalid_argument on an empty polyhedron.
double support(const Polyhedron& p, const Eigen::VectorXd& direction);

/// Smallest box containing p (2*dim support LPs); the canonical empty box for
/// empty p, infinite endpoints where unbounded.
Box box_hull(const Polyhedron& p);

/// Drops every constraint whose LP maximum over the remaining ones is at most
/// offset + kFeasTol. Same set; caller guarantees p is nonempty.
Polyhedron remove_redundant(const Polyhedron& p);

/// Membership within an additive tolerance on every constraint.
bool contains(const Polyhedron& p, const Eigen::VectorXd& x, double tol);
/// Membership in any part.
bool contains(const PolyUnion& u, const Eigen::VectorXd& x, double tol);

/// Exact projection onto the kept coordinate indices (ascending, 0-based) by
/// Fourier-Motzkin elimination; redundant constraints are removed after each
/// eliminated variable to contain the quadratic blowup. Empty in, empty out.
Polyhedron project(const Polyhedron& p, const std::vector<int>& keep);

/// Vertices of a bounded nonempty 2-D polyhedron in counterclockwise order,
/// starting from the bottom-most (then left-most) vertex. Duplicates within
/// kFeasTol are merged; degenerate polygons may have one or two vertices.
/// Throws std::invalid_argument on empty or unbounded input.
std::vector<Eigen::Vector2d> vertices_2d(const Polyhedron& p);

}  // namespace polyinv
