#include "polyinv/intervals.hpp"

#include <cmath>
#include <limits>

#include "polyinv/preimage.hpp"

namespace polyinv {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFixpointTol = 1e-9;

double logit(double y) { return std::log(y) - std::log1p(-y); }
}  // namespace

Interval Interval::empty() { return {kInf, -kInf}; }

Box interval_affine(const Box& b, const AffineMap& f) {
    if (b.dim() != f.in_dim()) {
        throw std::invalid_argument("interval_affine: dimension mismatch");
    }
    if (b.is_empty()) return Box::empty(f.out_dim());
    Eigen::VectorXd lo = f.b;
    Eigen::VectorXd hi = f.b;
    for (int i = 0; i < f.out_dim(); ++i) {
        for (int j = 0; j < f.in_dim(); ++j) {
            const double w = f.W(i, j);
            if (w > 0.0) {
                lo(i) += w * b.lo(j);
                hi(i) += w * b.hi(j);
            } else if (w < 0.0) {
                lo(i) += w * b.hi(j);
                hi(i) += w * b.lo(j);
            }
        }
    }
    return {std::move(lo), std::move(hi)};
}

Box interval_activation(const Box& b, const Activation& a) {
    if (b.is_empty()) return Box::empty(b.dim());
    Eigen::VectorXd lo(b.dim()), hi(b.dim());
    for (int i = 0; i < b.dim(); ++i) {
        lo(i) = activation_apply(a, b.lo(i));
        hi(i) = activation_apply(a, b.hi(i));
    }
    return {std::move(lo), std::move(hi)};
}

Interval activation_inverse_interval(const Activation& a, const Interval& i) {
    if (i.is_empty()) return Interval::empty();
    switch (a.kind) {
        case ActivationKind::Identity:
            return i;
        case ActivationKind::Sigmoid: {
            if (i.hi <= 0.0 || i.lo >= 1.0) return Interval::empty();
            const double lo = i.lo <= 0.0 ? -kInf : logit(i.lo);
            const double hi = i.hi >= 1.0 ? kInf : logit(i.hi);
            return {lo, hi};
        }
        case ActivationKind::LeakyRelu:
            if (a.slope > 0.0) {
                auto inv = [&](double y) { return y > 0.0 ? y : y / a.slope; };
                return {inv(i.lo), inv(i.hi)};
            }
            [[fallthrough]];  // slope 0 is exactly Relu
        case ActivationKind::Relu:
            if (i.hi < 0.0) return Interval::empty();
            if (i.lo > 0.0) return i;
            return {-kInf, i.hi};
    }
    throw std::logic_error("activation_inverse_interval: unknown kind");
}

Box activation_inverse_interval(const Activation& a, const Box& b) {
    if (b.is_empty()) return Box::empty(b.dim());
    Eigen::VectorXd lo(b.dim()), hi(b.dim());
    for (int i = 0; i < b.dim(); ++i) {
        const Interval r = activation_inverse_interval(a, {b.lo(i), b.hi(i)});
        lo(i) = r.lo;
        hi(i) = r.hi;
    }
    return {std::move(lo), std::move(hi)};
}

Box affine_preimage_box(const Box& y, const AffineMap& f, const Box& x) {
    if (y.dim() != f.out_dim() || x.dim() != f.in_dim()) {
        throw std::invalid_argument("affine_preimage_box: dimension mismatch");
    }
    if (x.is_empty() || y.is_empty()) return Box::empty(f.in_dim());
    Polyhedron p = to_polyhedron(x);
    for (int i = 0; i < f.out_dim(); ++i) {
        if (std::isfinite(y.hi(i))) {
            p.add({f.W.row(i).transpose(), y.hi(i) - f.b(i)});
        }
        if (std::isfinite(y.lo(i))) {
            p.add({-f.W.row(i).transpose(), f.b(i) - y.lo(i)});
        }
    }
    return box_hull(p);
}

PolyUnion preimage_overapprox_box(const PolyUnion& z, const Network& n) {
    if (z.dim != n.out_dim()) {
        throw std::invalid_argument("preimage_overapprox_box: output dimension mismatch");
    }
    for (const Layer& l : n.layers) {
        const bool injective = l.activation.kind == ActivationKind::Identity ||
                               l.activation.kind == ActivationKind::Sigmoid ||
                               (l.activation.kind == ActivationKind::LeakyRelu &&
                                l.activation.slope > 0.0);
        if (!injective) {
            throw std::invalid_argument(
                "preimage_overapprox_box: activation must be injective");
        }
    }

    std::vector<Polyhedron> parts;
    for (const Polyhedron& p : z.parts) {
        if (!is_empty(p)) parts.push_back(p);
    }
    for (auto it = n.layers.rbegin(); it != n.layers.rend(); ++it) {
        std::vector<Polyhedron> next;
        for (const Polyhedron& part : parts) {
            Polyhedron pulled(it->affine.out_dim());
            if (it->activation.kind == ActivationKind::Identity) {
                pulled = part;  // exact; nothing to invert
            } else {
                const Box hull = box_hull(part);
                pulled = to_polyhedron(activation_inverse_interval(it->activation, hull));
            }
            Polyhedron back = preimage_affine(pulled, it->affine);
            if (!is_empty(back)) next.push_back(std::move(back));
        }
        parts = std::move(next);
    }
    return {n.in_dim(), std::move(parts)};
}

namespace {

Box activation_codomain(const Activation& a, int dim) {
    switch (a.kind) {
        case ActivationKind::Identity:
            return Box::universe(dim);
        case ActivationKind::Relu:
            return {Eigen::VectorXd::Zero(dim), Eigen::VectorXd::Constant(dim, kInf)};
        case ActivationKind::LeakyRelu:
            if (a.slope == 0.0) {
                return {Eigen::VectorXd::Zero(dim), Eigen::VectorXd::Constant(dim, kInf)};
            }
            return Box::universe(dim);
        case ActivationKind::Sigmoid:
            return {Eigen::VectorXd::Zero(dim), Eigen::VectorXd::Ones(dim)};
    }
    throw std::logic_error("activation_codomain: unknown kind");
}

double endpoint_movement(double before, double after) {
    if (before == after) return 0.0;  // covers equal infinities
    if (!std::isfinite(before) || !std::isfinite(after)) return kInf;
    return std::abs(before - after);
}

double box_movement(const Box& before, const Box& after) {
    double m = 0.0;
    for (int i = 0; i < before.dim(); ++i) {
        m = std::max(m, endpoint_movement(before.lo(i), after.lo(i)));
        m = std::max(m, endpoint_movement(before.hi(i), after.hi(i)));
    }
    return m;
}

}  // namespace

ContractResult forward_backward_contract(const Network& n, const Box& x, const Box& y,
                                         int max_iter) {
    if (max_iter < 1) throw std::invalid_argument("forward_backward_contract: max_iter < 1");
    if (x.dim() != n.in_dim() || y.dim() != n.out_dim()) {
        throw std::invalid_argument("forward_backward_contract: dimension mismatch");
    }
    const int k = static_cast<int>(n.layers.size());

    // stored[0] is the input box, stored[i] layer i's post-activation box,
    // stored[k] the output box. Hidden boxes start at the activation codomain.
    std::vector<Box> stored(static_cast<std::size_t>(k) + 1);
    stored[0] = x;
    for (int i = 1; i < k; ++i) {
        stored[static_cast<std::size_t>(i)] = activation_codomain(
            n.layers[static_cast<std::size_t>(i - 1)].activation,
            n.layers[static_cast<std::size_t>(i - 1)].affine.out_dim());
    }
    stored[static_cast<std::size_t>(k)] = y;

    NeuronTrace trace;
    trace.iterations.push_back(stored);

    auto all_empty = [&]() {
        for (std::size_t i = 0; i < stored.size(); ++i) {
            stored[i] = Box::empty(stored[i].dim());
        }
        trace.iterations.push_back(stored);
    };

    for (int iter = 0; iter < max_iter; ++iter) {
        const std::vector<Box> before = stored;
        bool emptied = false;

        for (int i = 1; i <= k && !emptied; ++i) {
            const Layer& layer = n.layers[static_cast<std::size_t>(i - 1)];
            const Box pushed = interval_activation(
                interval_affine(stored[static_cast<std::size_t>(i - 1)], layer.affine),
                layer.activation);
            stored[static_cast<std::size_t>(i)] =
                intersect(stored[static_cast<std::size_t>(i)], pushed);
            emptied = stored[static_cast<std::size_t>(i)].is_empty();
        }
        for (int i = k; i >= 1 && !emptied; --i) {
            const Layer& layer = n.layers[static_cast<std::size_t>(i - 1)];
            const Box pre = activation_inverse_interval(layer.activation,
                                                        stored[static_cast<std::size_t>(i)]);
            const Box pulled =
                affine_preimage_box(pre, layer.affine, stored[static_cast<std::size_t>(i - 1)]);
            stored[static_cast<std::size_t>(i - 1)] =
                intersect(stored[static_cast<std::size_t>(i - 1)], pulled);
            emptied = stored[static_cast<std::size_t>(i - 1)].is_empty();
        }

        if (emptied) {
            all_empty();
            break;
        }
        trace.iterations.push_back(stored);
        double moved = 0.0;
        for (std::size_t i = 0; i < stored.size(); ++i) {
            moved = std::max(moved, box_movement(before[i], stored[i]));
        }
        if (moved <= kFixpointTol) break;
    }

    return {stored.front(), stored.back(), std::move(trace)};
}

}  // namespace polyinv
