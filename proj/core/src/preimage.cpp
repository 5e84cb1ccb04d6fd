#include "polyinv/preimage.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "internal.hpp"

namespace polyinv {

namespace {

void require_pwa(const Activation& a, const char* who) {
    if (!a.is_piecewise_affine()) {
        throw std::invalid_argument(std::string(who) + ": activation is not piecewise affine");
    }
}

// Branch state while pulling one polyhedron back through one activation.
// C x <= d holds the pullback rows: column i gets scaled by the negative-side
// slope once coordinate i commits to the nonpositive branch, so at a leaf the
// rows are exactly the preimage of the part under the piece's diagonal map.
struct PullbackBranch {
    Eigen::MatrixXd C;
    Eigen::VectorXd d;
    std::vector<HalfSpace> signs;   // closed sign rows of the region P_j
    std::vector<HalfSpace> strict;  // strict mirrors of the nonnegative rows
    unsigned mask = 0;
};

Polyhedron assemble(int dim, const std::vector<HalfSpace>& signs, const Eigen::MatrixXd& C,
                    const Eigen::VectorXd& d, bool drop_trivial_rows) {
    Polyhedron p(dim, signs);
    for (Eigen::Index i = 0; i < C.rows(); ++i) {
        const bool zero_row = C.row(i).lpNorm<Eigen::Infinity>() == 0.0;
        if (drop_trivial_rows && zero_row && d(i) >= 0.0) continue;
        p.add({C.row(i).transpose(), d(i)});
    }
    return p;
}

// Feasibility of the branch with its strict sign rows. An all-zero row
// matrix is the constant piece: the region orthant is always strictly
// feasible, so only the offsets decide (this is the membership test of the
// piece's constant image point, here always the origin).
bool branch_feasible(const PullbackBranch& br, int dim) {
    if (br.C.rows() == 0 || br.C.cwiseAbs().maxCoeff() == 0.0) {
        return br.C.rows() == 0 || br.d.minCoeff() >= -kFeasTol;
    }
    return feasible_with_strict(assemble(dim, br.signs, br.C, br.d, false), br.strict);
}

// All surviving sign pieces of the pullback of one part, in mask order.
std::vector<Polyhedron> activation_pullback_part(const Polyhedron& part, const Activation& a) {
    const int n = part.dim;
    if (a.kind == ActivationKind::Identity) {
        if (is_empty(part)) return {};
        return {part};
    }
    const double slope = a.negative_slope();
    std::vector<PullbackBranch> frontier{
        {part.constraint_matrix(), part.offsets(), {}, {}, 0}};
    for (int i = 0; i < n; ++i) {
        std::vector<PullbackBranch> next;
        next.reserve(frontier.size() * 2);
        for (PullbackBranch& br : frontier) {
            PullbackBranch pos = br;
            const HalfSpace nonneg = detail::sign_constraint(n, i, false);
            pos.signs.push_back(nonneg);
            pos.strict.push_back(nonneg);
            if (branch_feasible(pos, n)) next.push_back(std::move(pos));

            PullbackBranch neg = std::move(br);
            neg.signs.push_back(detail::sign_constraint(n, i, true));
            neg.C.col(i) *= slope;
            neg.mask |= 1u << i;
            if (branch_feasible(neg, n)) next.push_back(std::move(neg));
        }
        frontier = std::move(next);
    }
    std::sort(frontier.begin(), frontier.end(),
              [](const PullbackBranch& a, const PullbackBranch& b) { return a.mask < b.mask; });
    std::vector<Polyhedron> out;
    out.reserve(frontier.size());
    for (const PullbackBranch& br : frontier) {
        out.push_back(assemble(n, br.signs, br.C, br.d, true));
    }
    return out;
}

}  // namespace

Polyhedron preimage_affine(const Polyhedron& y, const AffineMap& f) {
    if (y.dim != f.out_dim()) {
        throw std::invalid_argument("preimage_affine: dimension mismatch");
    }
    Polyhedron x(f.in_dim());
    for (const HalfSpace& h : y.constraints) {
        x.add({f.W.transpose() * h.normal, h.offset - h.normal.dot(f.b)});
    }
    return x;
}

PolyUnion preimage_activation(const PolyUnion& z, const Activation& a) {
    require_pwa(a, "preimage_activation");
    PolyUnion out(z.dim);
    for (const Polyhedron& part : z.parts) {
        std::vector<Polyhedron> pieces = activation_pullback_part(part, a);
        out.parts.insert(out.parts.end(), std::make_move_iterator(pieces.begin()),
                         std::make_move_iterator(pieces.end()));
    }
    return out;
}

PolyUnion preimage_network(const PolyUnion& z, const Network& n, int threads) {
    if (z.dim != n.out_dim()) {
        throw std::invalid_argument("preimage_network: output dimension mismatch");
    }
    for (const Layer& l : n.layers) require_pwa(l.activation, "preimage_network");

    std::vector<Polyhedron> parts;
    for (const Polyhedron& p : z.parts) {
        if (!is_empty(p)) parts.push_back(p);
    }
    for (auto it = n.layers.rbegin(); it != n.layers.rend(); ++it) {
        const Layer& layer = *it;
        parts = detail::parallel_flat_map(parts, threads, [&layer](const Polyhedron& p) {
            std::vector<Polyhedron> out;
            for (const Polyhedron& piece : activation_pullback_part(p, layer.activation)) {
                Polyhedron back = preimage_affine(piece, layer.affine);
                if (!is_empty(back)) out.push_back(std::move(back));
            }
            return out;
        });
    }
    for (Polyhedron& p : parts) p = remove_redundant(p);
    return {n.in_dim(), std::move(parts)};
}

namespace {

// Node of the single-piece search: the set still to be pulled back through
// layer `layer`, with `coord` coordinates of that layer's activation already
// committed. Using closed sign rows keeps every committed branch an honest
// subset of the preimage, so the first completed branch can be returned.
struct SearchNode {
    int layer;
    int coord;
    Eigen::MatrixXd C;
    Eigen::VectorXd d;
    std::vector<HalfSpace> signs;
};

}  // namespace

std::optional<Polyhedron> preimage_underapprox(const PolyUnion& z, const Network& n,
                                               SearchOrder order) {
    if (z.dim != n.out_dim()) {
        throw std::invalid_argument("preimage_underapprox: output dimension mismatch");
    }
    for (const Layer& l : n.layers) require_pwa(l.activation, "preimage_underapprox");

    const int k = static_cast<int>(n.layers.size());
    std::deque<SearchNode> work;
    auto push_initial = [&](const Polyhedron& part) {
        if (!is_empty(part)) {
            work.push_back({k - 1, 0, part.constraint_matrix(), part.offsets(), {}});
        }
    };
    for (const Polyhedron& part : z.parts) push_initial(part);

    auto push_children = [&](std::vector<SearchNode> children) {
        if (order == SearchOrder::DepthFirst) {
            for (auto it = children.rbegin(); it != children.rend(); ++it) {
                work.push_front(std::move(*it));
            }
        } else {
            for (SearchNode& c : children) work.push_back(std::move(c));
        }
    };

    while (!work.empty()) {
        SearchNode node = std::move(work.front());
        work.pop_front();
        const Layer& layer = n.layers[static_cast<std::size_t>(node.layer)];
        const int width = layer.affine.out_dim();
        const bool identity = layer.activation.kind == ActivationKind::Identity;

        if (identity || node.coord == width) {
            const Polyhedron piece = assemble(width, node.signs, node.C, node.d, true);
            const Polyhedron back = preimage_affine(piece, layer.affine);
            if (is_empty(back)) continue;  // dead end; backtrack
            if (node.layer == 0) return remove_redundant(back);
            SearchNode next{node.layer - 1, 0, back.constraint_matrix(), back.offsets(), {}};
            if (order == SearchOrder::DepthFirst) work.push_front(std::move(next));
            else work.push_back(std::move(next));
            continue;
        }

        SearchNode pos = node;
        pos.signs.push_back(detail::sign_constraint(width, node.coord, false));
        ++pos.coord;
        SearchNode neg = std::move(node);
        neg.signs.push_back(detail::sign_constraint(width, neg.coord, true));
        neg.C.col(neg.coord) *= layer.activation.negative_slope();
        ++neg.coord;

        std::vector<SearchNode> children;
        if (!is_empty(assemble(width, pos.signs, pos.C, pos.d, false))) {
            children.push_back(std::move(pos));
        }
        if (!is_empty(assemble(width, neg.signs, neg.C, neg.d, false))) {
            children.push_back(std::move(neg));
        }
        push_children(std::move(children));
    }
    return std::nullopt;
}

std::uint64_t branch_count_bound(const Network& n) {
    const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t bound = 1;
    for (const Layer& l : n.layers) {
        require_pwa(l.activation, "branch_count_bound");
        const auto b = static_cast<std::uint64_t>(l.activation.pieces_per_coordinate());
        for (int i = 0; i < l.affine.out_dim(); ++i) {
            if (bound > cap / b) return cap;
            bound *= b;
        }
    }
    return bound;
}

}  // namespace polyinv
