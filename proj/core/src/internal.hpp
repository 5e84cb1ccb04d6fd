#pragma once

#include <future>
#include <vector>

#include "polyinv/geometry.hpp"

namespace polyinv::detail {

/// Sign constraint for one coordinate: x_i <= 0 (nonpositive branch) or
/// -x_i <= 0 (nonnegative branch).
inline HalfSpace sign_constraint(int dim, int coord, bool nonpositive) {
    Eigen::VectorXd n = Eigen::VectorXd::Zero(dim);
    n(coord) = nonpositive ? 1.0 : -1.0;
    return {std::move(n), 0.0};
}

/// Applies fn to every item, split across at most `threads` async tasks, and
/// concatenates the results in input order. fn must be pure, so the result is
/// identical to the sequential run.
template <typename T, typename F>
auto parallel_flat_map(const std::vector<T>& items, int threads, F&& fn) {
    using R = decltype(fn(items.front()));
    const auto n = items.size();
    R out;
    if (threads <= 1 || n <= 1) {
        for (const T& item : items) {
            R r = fn(item);
            out.insert(out.end(), std::make_move_iterator(r.begin()),
                       std::make_move_iterator(r.end()));
        }
        return out;
    }
    const std::size_t chunks = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::vector<std::future<R>> futures;
    futures.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t begin = c * n / chunks;
        const std::size_t end = (c + 1) * n / chunks;
        futures.push_back(std::async(std::launch::async, [&, begin, end] {
            R local;
            for (std::size_t i = begin; i < end; ++i) {
                R r = fn(items[i]);
                local.insert(local.end(), std::make_move_iterator(r.begin()),
                             std::make_move_iterator(r.end()));
            }
            return local;
        }));
    }
    for (auto& f : futures) {
        R r = f.get();
        out.insert(out.end(), std::make_move_iterator(r.begin()),
                   std::make_move_iterator(r.end()));
    }
    return out;
}

}  // namespace polyinv::detail
