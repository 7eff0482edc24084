#include "egonet/detect.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "egonet/tail.hpp"

namespace egonet {

namespace {

EgonetRecord node_record(const Graph& g, const FittedModel& fm, NodeIndex i) {
    EgonetRecord rec;
    rec.node = i;
    rec.degree = g.degree(i);
    auto nbrs = g.neighborhood(i);
    rec.pair_count = pair_count(nbrs.size());
    rec.egonet_degree = g.egonet_degree(i);
    if (nbrs.size() < 2) {
        rec.p_value = 1.0;  // cannot host an egonet edge
        return rec;
    }
    if (fm.kind == ModelKind::ErdosRenyi) {
        rec.p_value = tail::binom_sf(rec.egonet_degree, rec.pair_count, fm.er_p);
        return rec;
    }
    // Poisson path: Lambda_i = sum of lambda_hat over unordered neighbor
    // pairs, accumulated with compensated summation in fixed (j, j') order so
    // results do not depend on worker count.
    double lambda = 0.0, comp = 0.0;
    for (std::size_t a = 0; a < nbrs.size(); ++a) {
        for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
            double y = fm.rate(nbrs[a], nbrs[b]) - comp;
            double t = lambda + y;
            comp = (t - lambda) - y;
            lambda = t;
        }
    }
    rec.p_value = tail::poisson_sf(rec.egonet_degree, lambda);
    return rec;
}

}  // namespace

std::vector<EgonetRecord> egonet_pvalues(const Graph& g, const FittedModel& fm, int threads) {
    if (fm.n != g.node_count()) throw std::invalid_argument("egonet_pvalues: node-count mismatch");
    const std::size_t n = g.node_count();
    std::vector<EgonetRecord> records(n);
    if (threads <= 1 || n < 64) {
        for (NodeIndex i = 0; i < n; ++i) records[i] = node_record(g, fm, i);
        return records;
    }
    std::vector<std::thread> pool;
    std::size_t workers = std::min<std::size_t>(threads, n);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers)
                records[i] = node_record(g, fm, static_cast<NodeIndex>(i));
        });
    }
    for (auto& t : pool) t.join();
    return records;
}

DetectionReport detect(const Graph& g, const FittedModel& fm, double alpha, int threads) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("detect: alpha outside (0,1)");
    DetectionReport report;
    report.alpha = alpha;
    report.threshold = alpha / static_cast<double>(g.node_count());
    report.records = egonet_pvalues(g, fm, threads);
    report.t_n = 1.0;
    for (const auto& rec : report.records) {
        report.t_n = std::min(report.t_n, rec.p_value);
        if (rec.p_value < report.threshold) report.flagged.push_back(rec.node);
    }
    report.reject = report.t_n < report.threshold;
    return report;
}

namespace {

// Exact branch-and-bound maximum clique on a small dense-matrix subgraph,
// with a greedy-coloring bound (Tomita-style).
class CliqueSolver {
public:
    explicit CliqueSolver(const Graph& g) : n_(static_cast<int>(g.node_count())) {
        adj_.assign(n_, std::vector<char>(n_, 0));
        g.for_each_edge([&](NodeIndex i, NodeIndex j, EdgeWeight) {
            adj_[i][j] = 1;
            adj_[j][i] = 1;
        });
    }

    int max_clique_size() {
        target_ = n_ + 1;  // never reached: full maximization
        best_ = 0;
        std::vector<int> all(n_);
        for (int i = 0; i < n_; ++i) all[i] = i;
        depth_ = 0;
        expand(all);
        return best_;
    }

    // Is there a clique of size `need` inside `candidates`?
    bool exists(const std::vector<int>& candidates, int need) {
        if (need <= 0) return true;
        if (static_cast<int>(candidates.size()) < need) return false;
        target_ = need;
        best_ = 0;
        depth_ = 0;
        expand(candidates);
        return best_ >= need;
    }

    bool adjacent(int u, int v) const { return adj_[u][v] != 0; }

private:
    void expand(const std::vector<int>& pool) {
        if (best_ >= target_) return;
        // greedy coloring: partition pool into independent classes
        std::vector<std::vector<int>> classes;
        for (int v : pool) {
            std::size_t c = 0;
            for (; c < classes.size(); ++c) {
                bool conflict = false;
                for (int u : classes[c]) {
                    if (adj_[v][u]) {
                        conflict = true;
                        break;
                    }
                }
                if (!conflict) break;
            }
            if (c == classes.size()) classes.emplace_back();
            classes[c].push_back(v);
        }
        std::vector<int> order;
        std::vector<int> bound;
        for (std::size_t c = 0; c < classes.size(); ++c) {
            for (int v : classes[c]) {
                order.push_back(v);
                bound.push_back(static_cast<int>(c) + 1);
            }
        }
        for (int idx = static_cast<int>(order.size()) - 1; idx >= 0; --idx) {
            if (best_ >= target_) return;
            int v = order[idx];
            if (depth_ + bound[idx] <= best_) return;
            std::vector<int> next;
            for (int j = 0; j < idx; ++j)
                if (adj_[v][order[j]]) next.push_back(order[j]);
            ++depth_;
            if (depth_ > best_) best_ = depth_;
            if (!next.empty()) expand(next);
            --depth_;
        }
    }

    int n_;
    std::vector<std::vector<char>> adj_;
    int best_ = 0;
    int target_ = 0;
    int depth_ = 0;
};

}  // namespace

std::vector<NodeIndex> recover_clique(const Graph& g, const std::vector<NodeIndex>& flagged) {
    if (flagged.size() > 200) {
        throw std::invalid_argument(
            "recover_clique: flagged set exceeds 200 nodes; use a more stringent alpha");
    }
    if (flagged.empty()) return {};
    std::vector<NodeIndex> original;
    Graph sub = g.induced_subgraph(flagged, &original);
    CliqueSolver solver(sub);
    int omega = solver.max_clique_size();

    // lexicographically smallest maximum clique: greedily take the smallest
    // vertex that still admits a completion (subgraph labels are ascending in
    // original labels, so subgraph lex order matches)
    std::vector<int> candidates(sub.node_count());
    for (std::size_t i = 0; i < candidates.size(); ++i) candidates[i] = static_cast<int>(i);
    std::vector<NodeIndex> clique;
    int need = omega;
    while (need > 0) {
        bool advanced = false;
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            int v = candidates[k];
            std::vector<int> next;
            for (int u : candidates)
                if (u > v && solver.adjacent(u, v)) next.push_back(u);
            if (solver.exists(next, need - 1)) {
                clique.push_back(original[static_cast<std::size_t>(v)]);
                candidates = std::move(next);
                --need;
                advanced = true;
                break;
            }
        }
        if (!advanced) throw std::logic_error("recover_clique: completion search failed");
    }
    return clique;
}

}  // namespace egonet
