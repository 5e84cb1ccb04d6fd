#include "polyinv/propagate.hpp"

#include <algorithm>

#include "internal.hpp"

namespace polyinv {

namespace {

constexpr double kLuPivotTol = 1e-10;

void require_pwa(const Activation& a, const char* who) {
    if (!a.is_piecewise_affine()) {
        throw std::invalid_argument(std::string(who) + ": activation is not piecewise affine");
    }
}

AffineMap diagonal_map(int n, unsigned mask, double neg_slope) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        w(i, i) = (mask >> i) & 1u ? neg_slope : 1.0;
    }
    return {std::move(w), Eigen::VectorXd::Zero(n)};
}

// A partially refined sign branch over X. The closed polyhedron carries X
// plus the closed sign rows; the strict rows mirror the nonnegative-side
// constraints so pruning can discard pieces that only touch X on a region
// boundary (the adjoining piece covers those points).
struct SignBranch {
    Polyhedron closed;
    std::vector<HalfSpace> strict;
    unsigned mask = 0;
};

std::vector<SignBranch> refine_signs(const Polyhedron& x) {
    std::vector<SignBranch> frontier{{x, {}, 0}};
    for (int i = 0; i < x.dim; ++i) {
        std::vector<SignBranch> next;
        next.reserve(frontier.size() * 2);
        for (SignBranch& br : frontier) {
            SignBranch pos = br;
            const HalfSpace nonneg = detail::sign_constraint(x.dim, i, false);
            pos.closed.add(nonneg);
            pos.strict.push_back(nonneg);
            if (feasible_with_strict(pos.closed, pos.strict)) next.push_back(std::move(pos));

            SignBranch neg = std::move(br);
            neg.closed.add(detail::sign_constraint(x.dim, i, true));
            neg.mask |= 1u << i;
            if (feasible_with_strict(neg.closed, neg.strict)) next.push_back(std::move(neg));
        }
        frontier = std::move(next);
    }
    std::sort(frontier.begin(), frontier.end(),
              [](const SignBranch& a, const SignBranch& b) { return a.mask < b.mask; });
    return frontier;
}

}  // namespace

std::vector<PWAPiece> pwa_partitioning(const Activation& a, int n) {
    require_pwa(a, "pwa_partitioning");
    if (n < 1) throw std::invalid_argument("pwa_partitioning: dimension must be positive");
    if (a.kind == ActivationKind::Identity) {
        Eigen::MatrixXd w = Eigen::MatrixXd::Identity(n, n);
        return {{Polyhedron::universe(n), {std::move(w), Eigen::VectorXd::Zero(n)}}};
    }
    if (n > 20) {
        throw std::invalid_argument("pwa_partitioning: 2^n pieces is too large to materialize");
    }
    const double slope = a.negative_slope();
    std::vector<PWAPiece> pieces;
    pieces.reserve(1u << n);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        Polyhedron region(n);
        for (int i = 0; i < n; ++i) {
            region.add(detail::sign_constraint(n, i, (mask >> i) & 1u));
        }
        pieces.push_back({std::move(region), diagonal_map(n, mask, slope)});
    }
    return pieces;
}

Polyhedron affine_image(const Polyhedron& x, const AffineMap& f) {
    if (x.dim != f.in_dim()) {
        throw std::invalid_argument("affine_image: dimension mismatch");
    }
    if (f.W.rows() == f.W.cols()) {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(f.W);
        if (lu.matrixLU().diagonal().cwiseAbs().minCoeff() > kLuPivotTol) {
            // y = Wx + b  =>  C x <= d becomes (C W^-1) y <= d + C W^-1 b.
            const Eigen::MatrixXd inv = lu.inverse();
            Polyhedron img(f.out_dim());
            for (const HalfSpace& h : x.constraints) {
                Eigen::VectorXd n = inv.transpose() * h.normal;
                img.add({std::move(n), h.offset + h.normal.dot(inv * f.b)});
            }
            return img;
        }
    }
    return affine_image_via_projection(x, f);
}

Polyhedron affine_image_via_projection(const Polyhedron& x, const AffineMap& f) {
    if (x.dim != f.in_dim()) {
        throw std::invalid_argument("affine_image_via_projection: dimension mismatch");
    }
    const int m = f.in_dim();
    const int n = f.out_dim();
    Polyhedron graph(m + n);
    for (const HalfSpace& h : x.constraints) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(m + n);
        v.head(m) = h.normal;
        graph.add({std::move(v), h.offset});
    }
    // y - Wx <= b and Wx - y <= -b encode y = Wx + b.
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd up = Eigen::VectorXd::Zero(m + n);
        up.head(m) = -f.W.row(i);
        up(m + i) = 1.0;
        graph.add({std::move(up), f.b(i)});
        Eigen::VectorXd dn = Eigen::VectorXd::Zero(m + n);
        dn.head(m) = f.W.row(i);
        dn(m + i) = -1.0;
        graph.add({std::move(dn), -f.b(i)});
    }
    std::vector<int> keep(n);
    for (int i = 0; i < n; ++i) keep[i] = m + i;
    return project(graph, keep);
}

PolyUnion activation_image(const Polyhedron& x, const Activation& a) {
    require_pwa(a, "activation_image");
    if (a.kind == ActivationKind::Identity) {
        if (is_empty(x)) return PolyUnion::empty_set(x.dim);
        return PolyUnion::single(x);
    }
    const double slope = a.negative_slope();
    PolyUnion out(x.dim);
    for (const SignBranch& br : refine_signs(x)) {
        out.parts.push_back(affine_image(br.closed, diagonal_map(x.dim, br.mask, slope)));
    }
    return out;
}

PolyUnion network_image(const Network& n, const Polyhedron& x, int threads) {
    return network_image(n, PolyUnion::single(x), threads);
}

PolyUnion network_image(const Network& n, const PolyUnion& x, int threads) {
    if (x.dim != n.in_dim()) {
        throw std::invalid_argument("network_image: input dimension mismatch");
    }
    for (const Layer& l : n.layers) require_pwa(l.activation, "network_image");

    std::vector<Polyhedron> parts;
    for (const Polyhedron& p : x.parts) {
        if (!is_empty(p)) parts.push_back(p);
    }
    for (const Layer& layer : n.layers) {
        parts = detail::parallel_flat_map(parts, threads, [&layer](const Polyhedron& p) {
            return activation_image(affine_image(p, layer.affine), layer.activation).parts;
        });
    }
    for (Polyhedron& p : parts) p = remove_redundant(p);
    return {n.out_dim(), std::move(parts)};
}

}  // namespace polyinv
