#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace confnet {

/// Disjoint sets over 0..n-1 with path compression and union by size.
class UnionFind {
public:
    explicit UnionFind(std::size_t n = 0);

    void reset(std::size_t n);
    std::size_t find(std::size_t x);
    /// Returns true if x and y were in different sets.
    bool unite(std::size_t x, std::size_t y);
    bool same(std::size_t x, std::size_t y) { return find(x) == find(y); }
    std::size_t size_of(std::size_t x) { return size_[find(x)]; }
    std::size_t components() const { return components_; }
    std::size_t elements() const { return parent_.size(); }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
    std::size_t components_ = 0;
};

struct ConnectivityResult {
    bool connected = false;
    std::size_t components = 0;
};

/// Whether the graph on n nodes with the given undirected edges has exactly
/// one component. Throws std::out_of_range for an edge endpoint >= n.
/// n = 0 reports zero components and is treated as not connected.
ConnectivityResult connectivity_check(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

}  // namespace confnet
