#include "confnet/union_find.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace confnet {

UnionFind::UnionFind(std::size_t n) { reset(n); }

void UnionFind::reset(std::size_t n) {
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    size_.assign(n, 1);
    components_ = n;
}

std::size_t UnionFind::find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
        const std::size_t next = parent_[x];
        parent_[x] = root;
        x = next;
    }
    return root;
}

bool UnionFind::unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (size_[x] < size_[y]) std::swap(x, y);
    parent_[y] = x;
    size_[x] += size_[y];
    --components_;
    return true;
}

ConnectivityResult connectivity_check(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    UnionFind uf(n);
    for (const auto& [a, b] : edges) {
        if (a >= n || b >= n) {
            throw std::out_of_range("connectivity_check: edge (" + std::to_string(a) + ", " + std::to_string(b) +
                                    ") out of range for " + std::to_string(n) + " nodes");
        }
        uf.unite(a, b);
    }
    return {uf.components() == 1, uf.components()};
}

}  // namespace confnet
