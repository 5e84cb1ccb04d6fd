#include "polyinv/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace polyinv {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCoefZero = 1e-10;

void check_dim(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}
}  // namespace

Polyhedron::Polyhedron(int dimension, std::vector<HalfSpace> cs)
    : dim(dimension), constraints(std::move(cs)) {
    for (const HalfSpace& h : constraints) {
        check_dim(h.normal.size() == dim, "Polyhedron: constraint dimension mismatch");
    }
}

Polyhedron Polyhedron::empty(int dim) {
    Polyhedron p(dim);
    p.add({Eigen::VectorXd::Zero(dim), -1.0});
    return p;
}

void Polyhedron::add(HalfSpace hs) {
    check_dim(hs.normal.size() == dim, "Polyhedron::add: dimension mismatch");
    constraints.push_back(std::move(hs));
}

Eigen::MatrixXd Polyhedron::constraint_matrix() const {
    Eigen::MatrixXd C(constraints.size(), dim);
    for (Eigen::Index i = 0; i < C.rows(); ++i) C.row(i) = constraints[i].normal;
    return C;
}

Eigen::VectorXd Polyhedron::offsets() const {
    Eigen::VectorXd d(constraints.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = constraints[i].offset;
    return d;
}

PolyUnion::PolyUnion(int dimension, std::vector<Polyhedron> ps)
    : dim(dimension), parts(std::move(ps)) {
    for (const Polyhedron& p : parts) {
        check_dim(p.dim == dim, "PolyUnion: part dimension mismatch");
    }
}

PolyUnion PolyUnion::single(Polyhedron p) {
    PolyUnion u(p.dim);
    u.parts.push_back(std::move(p));
    return u;
}

Box::Box(Eigen::VectorXd lower, Eigen::VectorXd upper)
    : lo(std::move(lower)), hi(std::move(upper)) {
    check_dim(lo.size() == hi.size(), "Box: lo/hi length mismatch");
}

bool Box::is_empty() const {
    for (Eigen::Index i = 0; i < lo.size(); ++i) {
        if (lo(i) > hi(i)) return true;
    }
    return false;
}

Box Box::universe(int dim) {
    return {Eigen::VectorXd::Constant(dim, -kInf), Eigen::VectorXd::Constant(dim, kInf)};
}

Box Box::empty(int dim) {
    return {Eigen::VectorXd::Constant(dim, kInf), Eigen::VectorXd::Constant(dim, -kInf)};
}

bool Box::contains(const Eigen::VectorXd& x, double tol) const {
    check_dim(x.size() == lo.size(), "Box::contains: dimension mismatch");
    for (Eigen::Index i = 0; i < lo.size(); ++i) {
        if (x(i) < lo(i) - tol || x(i) > hi(i) + tol) return false;
    }
    return true;
}

Polyhedron to_polyhedron(const Box& b) {
    const int n = b.dim();
    if (b.is_empty()) return Polyhedron::empty(n);
    Polyhedron p(n);
    for (int i = 0; i < n; ++i) {
        if (std::isfinite(b.hi(i))) {
            Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
            e(i) = 1.0;
            p.add({std::move(e), b.hi(i)});
        }
        if (std::isfinite(b.lo(i))) {
            Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
            e(i) = -1.0;
            p.add({std::move(e), -b.lo(i)});
        }
    }
    return p;
}

Box intersect(const Box& a, const Box& b) {
    check_dim(a.dim() == b.dim(), "intersect(Box): dimension mismatch");
    return {a.lo.cwiseMax(b.lo), a.hi.cwiseMin(b.hi)};
}

Polyhedron intersect(const Polyhedron& p, const Polyhedron& q) {
    check_dim(p.dim == q.dim, "intersect: dimension mismatch");
    Polyhedron r = p;
    r.constraints.insert(r.constraints.end(), q.constraints.begin(), q.constraints.end());
    return r;
}

bool is_empty(const Polyhedron& p) {
    return !lp_feasible_point(p.constraint_matrix(), p.offsets()).has_value();
}

std::optional<Eigen::VectorXd> feasible_point(const Polyhedron& p) {
    return lp_feasible_point(p.constraint_matrix(), p.offsets());
}

bool feasible_with_strict(const Polyhedron& p, std::span<const HalfSpace> strict) {
    if (strict.empty()) return !is_empty(p);
    const int n = p.dim;
    const int m = static_cast<int>(p.constraints.size());
    const int s = static_cast<int>(strict.size());
    // Variables (x, t); maximize the margin t on the strict rows.
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(m + s, n + 1);
    Eigen::VectorXd d(m + s);
    for (int i = 0; i < m; ++i) {
        C.row(i).head(n) = p.constraints[i].normal;
        d(i) = p.constraints[i].offset;
    }
    for (int i = 0; i < s; ++i) {
        check_dim(strict[i].normal.size() == n, "feasible_with_strict: dimension mismatch");
        C.row(m + i).head(n) = strict[i].normal;
        C(m + i, n) = 1.0;
        d(m + i) = strict[i].offset;
    }
    Eigen::VectorXd obj = Eigen::VectorXd::Zero(n + 1);
    obj(n) = 1.0;
    const LpResult r = lp_maximize(C, d, obj);
    if (r.status == LpStatus::Infeasible) return false;
    if (r.status == LpStatus::Unbounded) return true;
    return r.value > kFeasTol;
}

double support(const Polyhedron& p, const Eigen::VectorXd& direction) {
    check_dim(direction.size() == p.dim, "support: direction dimension mismatch");
    const LpResult r = lp_maximize(p.constraint_matrix(), p.offsets(), direction);
    switch (r.status) {
        case LpStatus::Optimal:
            return r.value;
        case LpStatus::Unbounded:
            return kInf;
        case LpStatus::Infeasible:
        default:
            throw std::invalid_argument("support: empty polyhedron");
    }
}

Box box_hull(const Polyhedron& p) {
    if (is_empty(p)) return Box::empty(p.dim);
    Eigen::VectorXd lo(p.dim), hi(p.dim);
    Eigen::VectorXd dir = Eigen::VectorXd::Zero(p.dim);
    for (int i = 0; i < p.dim; ++i) {
        dir(i) = 1.0;
        hi(i) = support(p, dir);
        dir(i) = -1.0;
        lo(i) = -support(p, dir);
        dir(i) = 0.0;
    }
    return {std::move(lo), std::move(hi)};
}

Polyhedron remove_redundant(const Polyhedron& p) {
    std::vector<HalfSpace> kept = p.constraints;
    for (std::size_t i = 0; i < kept.size();) {
        Eigen::MatrixXd C(kept.size() - 1, p.dim);
        Eigen::VectorXd d(kept.size() - 1);
        Eigen::Index row = 0;
        for (std::size_t j = 0; j < kept.size(); ++j) {
            if (j == i) continue;
            C.row(row) = kept[j].normal;
            d(row) = kept[j].offset;
            ++row;
        }
        const LpResult r = lp_maximize(C, d, kept[i].normal);
        const bool redundant =
            r.status == LpStatus::Optimal && r.value <= kept[i].offset + kFeasTol;
        if (redundant) kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
        else ++i;
    }
    return {p.dim, std::move(kept)};
}

bool contains(const Polyhedron& p, const Eigen::VectorXd& x, double tol) {
    check_dim(x.size() == p.dim, "contains: dimension mismatch");
    for (const HalfSpace& h : p.constraints) {
        if (h.normal.dot(x) > h.offset + tol) return false;
    }
    return true;
}

bool contains(const PolyUnion& u, const Eigen::VectorXd& x, double tol) {
    return std::any_of(u.parts.begin(), u.parts.end(),
                       [&](const Polyhedron& p) { return contains(p, x, tol); });
}

namespace {

// One Fourier-Motzkin elimination step on raw rows (normals still carry the
// eliminated column, which is erased here).
std::vector<HalfSpace> eliminate_variable(const std::vector<HalfSpace>& rows, int var) {
    std::vector<int> pos, neg, zero;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
        const double c = rows[i].normal(var);
        if (c > kCoefZero) pos.push_back(i);
        else if (c < -kCoefZero) neg.push_back(i);
        else zero.push_back(i);
    }
    auto drop_col = [var](const Eigen::VectorXd& v) {
        Eigen::VectorXd r(v.size() - 1);
        r.head(var) = v.head(var);
        r.tail(v.size() - 1 - var) = v.tail(v.size() - 1 - var);
        return r;
    };
    std::vector<HalfSpace> out;
    out.reserve(zero.size() + pos.size() * neg.size());
    for (int i : zero) out.push_back({drop_col(rows[i].normal), rows[i].offset});
    for (int i : pos) {
        const double ci = rows[i].normal(var);
        for (int j : neg) {
            const double cj = -rows[j].normal(var);
            Eigen::VectorXd combined =
                drop_col(rows[i].normal) / ci + drop_col(rows[j].normal) / cj;
            out.push_back({std::move(combined), rows[i].offset / ci + rows[j].offset / cj});
        }
    }
    return out;
}

}  // namespace

Polyhedron project(const Polyhedron& p, const std::vector<int>& keep) {
    std::vector<int> kept = keep;
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    for (int k : kept) {
        check_dim(k >= 0 && k < p.dim, "project: keep index out of range");
    }
    const int out_dim = static_cast<int>(kept.size());
    if (is_empty(p)) return Polyhedron::empty(out_dim);

    std::vector<int> drop;
    for (int v = p.dim - 1; v >= 0; --v) {
        if (!std::binary_search(kept.begin(), kept.end(), v)) drop.push_back(v);
    }
    std::vector<HalfSpace> rows = p.constraints;
    int cur_dim = p.dim;
    for (int v : drop) {  // descending, so indices stay valid
        rows = eliminate_variable(rows, v);
        --cur_dim;
        rows = remove_redundant(Polyhedron(cur_dim, std::move(rows))).constraints;
    }
    return {out_dim, std::move(rows)};
}

std::vector<Eigen::Vector2d> vertices_2d(const Polyhedron& p) {
    check_dim(p.dim == 2, "vertices_2d: polyhedron must be 2-D");
    if (is_empty(p)) throw std::invalid_argument("vertices_2d: empty polyhedron");
    const Box hull = box_hull(p);
    if (!hull.lo.allFinite() || !hull.hi.allFinite()) {
        throw std::invalid_argument("vertices_2d: unbounded polyhedron");
    }

    // Pairwise constraint intersections, filtered by membership.
    std::vector<Eigen::Vector2d> candidates;
    const int m = static_cast<int>(p.constraints.size());
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            Eigen::Matrix2d A;
            A.row(0) = p.constraints[i].normal;
            A.row(1) = p.constraints[j].normal;
            const double det = A.determinant();
            if (std::abs(det) < 1e-12) continue;
            Eigen::Vector2d rhs(p.constraints[i].offset, p.constraints[j].offset);
            Eigen::Vector2d v = A.inverse() * rhs;
            if (contains(p, v, 1e-7)) candidates.push_back(v);
        }
    }
    // Merge duplicates.
    std::vector<Eigen::Vector2d> verts;
    for (const auto& c : candidates) {
        bool dup = false;
        for (const auto& v : verts) {
            if ((c - v).lpNorm<Eigen::Infinity>() <= kFeasTol) {
                dup = true;
                break;
            }
        }
        if (!dup) verts.push_back(c);
    }
    if (verts.empty()) {
        // Bounded and nonempty but no pairwise corner (e.g. a single point
        // polyhedron written with aligned constraints): fall back to the hull.
        verts.push_back(Eigen::Vector2d(hull.lo(0), hull.lo(1)));
        return verts;
    }

    Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
    for (const auto& v : verts) centroid += v;
    centroid /= static_cast<double>(verts.size());
    std::sort(verts.begin(), verts.end(), [&](const auto& a, const auto& b) {
        return std::atan2(a.y() - centroid.y(), a.x() - centroid.x()) <
               std::atan2(b.y() - centroid.y(), b.x() - centroid.x());
    });
    // Rotate so the bottom-most (then left-most) vertex comes first.
    std::size_t start = 0;
    for (std::size_t i = 1; i < verts.size(); ++i) {
        if (verts[i].y() < verts[start].y() - kFeasTol ||
            (verts[i].y() < verts[start].y() + kFeasTol && verts[i].x() < verts[start].x())) {
            start = i;
        }
    }
    std::rotate(verts.begin(), verts.begin() + static_cast<std::ptrdiff_t>(start), verts.end());
    return verts;
}

}  // namespace polyinv
