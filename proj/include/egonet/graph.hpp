#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace egonet {

using NodeIndex = std::uint32_t;
using EdgeWeight = std::uint64_t;

/// Sparse symmetric graph with nonnegative integer edge weights and no
/// self-loops. Immutable after construction; all queries are read-only and
/// safe to call concurrently.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : n_(n), offsets_(n + 1, 0) {}

    /// Build from an unordered-pair edge list. Duplicate pairs are merged by
    /// summing weights; (i,j) and (j,i) name the same pair. Self-loops and
    /// out-of-range endpoints throw.
    static Graph from_edges(std::size_t n,
                            std::span<const std::tuple<NodeIndex, NodeIndex, EdgeWeight>> edges);

    std::size_t node_count() const { return n_; }

    /// Number of stored unordered pairs with positive weight.
    std::size_t pair_edge_count() const { return total_pairs_; }

    /// M = sum of weights over unordered pairs.
    EdgeWeight total_weight() const { return total_weight_; }

    /// d_i: sum of incident edge weights.
    EdgeWeight degree(NodeIndex i) const;

    /// Distinct neighbors with positive weight, sorted ascending.
    std::span<const NodeIndex> neighborhood(NodeIndex i) const;

    std::span<const EdgeWeight> neighbor_weights(NodeIndex i) const;

    /// e_i: sum of A_{jj'} over unordered pairs {j,j'} of neighbors of i.
    EdgeWeight egonet_degree(NodeIndex i) const;

    /// Weight of pair {i,j}; 0 when absent.
    EdgeWeight edge_weight(NodeIndex i, NodeIndex j) const;

    /// Subgraph on the given (sorted or not, deduplicated internally) node
    /// set, relabeled to [0,|s|). original_labels receives the relabeling:
    /// new index -> old index, sorted ascending.
    Graph induced_subgraph(std::span<const NodeIndex> s,
                           std::vector<NodeIndex>* original_labels = nullptr) const;

    template <typename F>
    void for_each_edge(F&& f) const {
        for (NodeIndex i = 0; i < n_; ++i) {
            for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
                NodeIndex j = adjacency_[k];
                if (j > i) f(i, j, weights_[k]);
            }
        }
    }

private:
    void check_index(NodeIndex i) const;

    std::size_t n_ = 0;
    std::size_t total_pairs_ = 0;
    EdgeWeight total_weight_ = 0;
    // CSR over both directions of each pair; adjacency sorted per node.
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeIndex> adjacency_;
    std::vector<EdgeWeight> weights_;
};

/// C(d,2); 0 for d in {0,1}.
inline std::uint64_t pair_count(std::uint64_t d) { return d < 2 ? 0 : d * (d - 1) / 2; }

/// Per-node scan result: the unit of work of the egonet test.
struct EgonetRecord {
    NodeIndex node = 0;
    EdgeWeight degree = 0;        // d_i
    std::uint64_t pair_count = 0; // C(|N_i|, 2)
    EdgeWeight egonet_degree = 0; // e_i
    double p_value = 1.0;
};

}  // namespace egonet
