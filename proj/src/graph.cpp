#include "egonet/graph.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace egonet {

void Graph::check_index(NodeIndex i) const {
    if (i >= n_) {
        throw std::out_of_range("node index " + std::to_string(i) + " out of range [0," +
                                std::to_string(n_) + ")");
    }
}

Graph Graph::from_edges(std::size_t n,
                        std::span<const std::tuple<NodeIndex, NodeIndex, EdgeWeight>> edges) {
    Graph g(n);
    // Merge duplicates over unordered pairs.
    std::map<std::pair<NodeIndex, NodeIndex>, EdgeWeight> merged;
    for (const auto& [u, v, w] : edges) {
        g.check_index(u);
        g.check_index(v);
        if (u == v) throw std::invalid_argument("self-loop at node " + std::to_string(u));
        if (w == 0) continue;
        auto key = std::minmax(u, v);
        merged[{key.first, key.second}] += w;
    }

    std::vector<std::size_t> counts(n, 0);
    for (const auto& [pair, w] : merged) {
        ++counts[pair.first];
        ++counts[pair.second];
    }
    g.offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + counts[i];
    g.adjacency_.resize(g.offsets_[n]);
    g.weights_.resize(g.offsets_[n]);

    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [pair, w] : merged) {
        auto [a, b] = pair;
        g.adjacency_[cursor[a]] = b;
        g.weights_[cursor[a]++] = w;
        g.adjacency_[cursor[b]] = a;
        g.weights_[cursor[b]++] = w;
        g.total_weight_ += w;
    }
    g.total_pairs_ = merged.size();
    // map iteration emits pairs in ascending (first, second) order, so each
    // node's neighbor list is already sorted for the 'a' side; the 'b' side
    // needs a sort.
    for (std::size_t i = 0; i < n; ++i) {
        auto begin = g.offsets_[i], end = g.offsets_[i + 1];
        std::vector<std::pair<NodeIndex, EdgeWeight>> row;
        row.reserve(end - begin);
        for (std::size_t k = begin; k < end; ++k) row.emplace_back(g.adjacency_[k], g.weights_[k]);
        std::sort(row.begin(), row.end());
        for (std::size_t k = begin; k < end; ++k) {
            g.adjacency_[k] = row[k - begin].first;
            g.weights_[k] = row[k - begin].second;
        }
    }
    return g;
}

EdgeWeight Graph::degree(NodeIndex i) const {
    check_index(i);
    EdgeWeight d = 0;
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) d += weights_[k];
    return d;
}

std::span<const NodeIndex> Graph::neighborhood(NodeIndex i) const {
    check_index(i);
    return {adjacency_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

std::span<const EdgeWeight> Graph::neighbor_weights(NodeIndex i) const {
    check_index(i);
    return {weights_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

EdgeWeight Graph::egonet_degree(NodeIndex i) const {
    check_index(i);
    // Stamp-based membership test; thread_local so concurrent queries from
    // different workers never share scratch.
    thread_local std::vector<std::uint8_t> member;
    if (member.size() < n_) member.assign(n_, 0);
    auto nbrs = neighborhood(i);
    for (NodeIndex j : nbrs) member[j] = 1;
    EdgeWeight e = 0;
    for (NodeIndex j : nbrs) {
        for (std::size_t k = offsets_[j]; k < offsets_[j + 1]; ++k) {
            NodeIndex q = adjacency_[k];
            if (q > j && member[q]) e += weights_[k];
        }
    }
    for (NodeIndex j : nbrs) member[j] = 0;
    return e;
}

EdgeWeight Graph::edge_weight(NodeIndex i, NodeIndex j) const {
    check_index(i);
    check_index(j);
    auto nbrs = neighborhood(i);
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), j);
    if (it == nbrs.end() || *it != j) return 0;
    return weights_[offsets_[i] + static_cast<std::size_t>(it - nbrs.begin())];
}

Graph Graph::induced_subgraph(std::span<const NodeIndex> s,
                              std::vector<NodeIndex>* original_labels) const {
    std::vector<NodeIndex> nodes(s.begin(), s.end());
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    for (NodeIndex v : nodes) check_index(v);

    std::vector<NodeIndex> new_index(n_, static_cast<NodeIndex>(-1));
    for (std::size_t k = 0; k < nodes.size(); ++k) new_index[nodes[k]] = static_cast<NodeIndex>(k);

    std::vector<std::tuple<NodeIndex, NodeIndex, EdgeWeight>> edges;
    for (NodeIndex v : nodes) {
        auto nbrs = neighborhood(v);
        auto wts = neighbor_weights(v);
        for (std::size_t k = 0; k < nbrs.size(); ++k) {
            NodeIndex u = nbrs[k];
            if (u > v && new_index[u] != static_cast<NodeIndex>(-1)) {
                edges.emplace_back(new_index[v], new_index[u], wts[k]);
            }
        }
    }
    if (original_labels) *original_labels = nodes;
    return from_edges(nodes.size(), edges);
}

}  // namespace egonet
