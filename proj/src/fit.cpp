#include "egonet/fit.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "egonet/rng.hpp"

namespace egonet {

double FittedModel::rate(NodeIndex i, NodeIndex j) const {
    if (i == j) throw std::invalid_argument("FittedModel::rate: i == j");
    if (i >= n || j >= n) throw std::out_of_range("FittedModel::rate: index out of range");
    const int K = num_communities;
    switch (kind) {
        case ModelKind::ErdosRenyi:
            return er_p;
        case ModelKind::ChungLu:
            return degrees[i] * degrees[j] / two_m;
        case ModelKind::Sbm:
            return omega[labels[i] * K + labels[j]];
        case ModelKind::Dcsbm:
            // theta product first so the result is bitwise symmetric in (i, j)
            return (theta[i] * theta[j]) * omega[labels[i] * K + labels[j]];
        case ModelKind::Pabm:
            return popularity[i * K + labels[j]] * popularity[j * K + labels[i]];
    }
    return 0.0;
}

namespace {

// k-means with kmeans++ seeding; ties in assignment break toward the lowest
// cluster index, restart ties toward the lowest restart index.
std::vector<int> kmeans(const Eigen::MatrixXd& points, int K, int restarts, int max_iter,
                        std::uint64_t seed) {
    const auto n = points.rows();
    if (K < 1 || n < K) throw std::invalid_argument("kmeans: need 1 <= K <= n");
    std::vector<int> best_labels(n, 0);
    double best_objective = std::numeric_limits<double>::infinity();

    for (int restart = 0; restart < restarts; ++restart) {
        auto eng = rng::make_engine(rng::derive_seed(seed, {static_cast<std::uint64_t>(restart)}));
        Eigen::MatrixXd centers(K, points.cols());

        // kmeans++ seeding
        Eigen::VectorXd min_dist = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
        auto first = static_cast<Eigen::Index>(rng::uniform01(eng) * static_cast<double>(n));
        if (first >= n) first = n - 1;
        centers.row(0) = points.row(first);
        for (int c = 1; c < K; ++c) {
            for (Eigen::Index i = 0; i < n; ++i) {
                double d = (points.row(i) - centers.row(c - 1)).squaredNorm();
                min_dist[i] = std::min(min_dist[i], d);
            }
            double total = min_dist.sum();
            Eigen::Index pick = 0;
            if (total > 0.0) {
                double target = rng::uniform01(eng) * total;
                double cum = 0.0;
                for (Eigen::Index i = 0; i < n; ++i) {
                    cum += min_dist[i];
                    if (cum >= target) {
                        pick = i;
                        break;
                    }
                }
            } else {
                pick = static_cast<Eigen::Index>(rng::uniform01(eng) * static_cast<double>(n));
                if (pick >= n) pick = n - 1;
            }
            centers.row(c) = points.row(pick);
        }

        std::vector<int> labels(n, 0);
        for (int iter = 0; iter < max_iter; ++iter) {
            bool changed = false;
            for (Eigen::Index i = 0; i < n; ++i) {
                int arg = 0;
                double best = (points.row(i) - centers.row(0)).squaredNorm();
                for (int c = 1; c < K; ++c) {
                    double d = (points.row(i) - centers.row(c)).squaredNorm();
                    if (d < best) {
                        best = d;
                        arg = c;
                    }
                }
                if (labels[i] != arg) {
                    labels[i] = arg;
                    changed = true;
                }
            }
            centers.setZero();
            std::vector<Eigen::Index> counts(K, 0);
            for (Eigen::Index i = 0; i < n; ++i) {
                centers.row(labels[i]) += points.row(i);
                ++counts[labels[i]];
            }
            for (int c = 0; c < K; ++c) {
                if (counts[c] > 0) {
                    centers.row(c) /= static_cast<double>(counts[c]);
                } else {
                    // re-seed an emptied cluster on the farthest point
                    Eigen::Index far = 0;
                    double far_d = -1.0;
                    for (Eigen::Index i = 0; i < n; ++i) {
                        double d = (points.row(i) - centers.row(labels[i])).squaredNorm();
                        if (d > far_d) {
                            far_d = d;
                            far = i;
                        }
                    }
                    centers.row(c) = points.row(far);
                    changed = true;
                }
            }
            if (!changed) break;
        }

        double objective = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            objective += (points.row(i) - centers.row(labels[i])).squaredNorm();
        if (objective < best_objective) {
            best_objective = objective;
            best_labels = labels;
        }
    }
    return best_labels;
}

}  // namespace

std::vector<int> spectral_cluster(const Graph& g, const ClusteringConfig& cfg) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    const int K = cfg.num_communities;
    if (K < 1 || static_cast<std::size_t>(K) > g.node_count())
        throw std::invalid_argument("spectral_cluster: need 1 <= K <= n");
    if (K == 1) return std::vector<int>(g.node_count(), 0);

    double tau = cfg.regularizer;
    if (tau < 0.0) {
        tau = 2.0 * static_cast<double>(g.total_weight()) / static_cast<double>(n);
    }

    // L_tau = D_tau^{-1/2} (A + tau/n J) D_tau^{-1/2}
    Eigen::MatrixXd a = Eigen::MatrixXd::Constant(n, n, tau / static_cast<double>(n));
    for (NodeIndex i = 0; i < g.node_count(); ++i) {
        auto nbrs = g.neighborhood(i);
        auto wts = g.neighbor_weights(i);
        for (std::size_t k = 0; k < nbrs.size(); ++k)
            a(i, nbrs[k]) += static_cast<double>(wts[k]);
    }
    Eigen::VectorXd inv_sqrt_deg = a.rowwise().sum();
    for (Eigen::Index i = 0; i < n; ++i)
        inv_sqrt_deg[i] = inv_sqrt_deg[i] > 0.0 ? 1.0 / std::sqrt(inv_sqrt_deg[i]) : 0.0;
    a = inv_sqrt_deg.asDiagonal() * a * inv_sqrt_deg.asDiagonal();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("spectral_cluster: eigensolver failed to converge");

    // K eigenvectors of the K largest-magnitude eigenvalues
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    const auto& evals = solver.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
        return std::fabs(evals[x]) > std::fabs(evals[y]);
    });
    Eigen::MatrixXd embedding(n, K);
    for (int c = 0; c < K; ++c) embedding.col(c) = solver.eigenvectors().col(order[c]);

    if (cfg.row_normalize) {
        for (Eigen::Index i = 0; i < n; ++i) {
            double norm = embedding.row(i).norm();
            if (norm > 0.0) embedding.row(i) /= norm;  // zero rows left as zero
        }
    }
    return kmeans(embedding, K, cfg.kmeans_restarts, cfg.kmeans_max_iter, cfg.seed);
}

FittedModel fit_er(const Graph& g) {
    if (g.node_count() < 2) throw std::invalid_argument("fit_er: need n >= 2");
    FittedModel fm;
    fm.kind = ModelKind::ErdosRenyi;
    fm.n = g.node_count();
    double pairs = 0.5 * static_cast<double>(fm.n) * static_cast<double>(fm.n - 1);
    fm.er_p = static_cast<double>(g.total_weight()) / pairs;
    return fm;
}

FittedModel fit_chunglu(const Graph& g) {
    FittedModel fm;
    fm.kind = ModelKind::ChungLu;
    fm.n = g.node_count();
    fm.two_m = 2.0 * static_cast<double>(g.total_weight());
    if (fm.two_m == 0.0) throw std::invalid_argument("fit_chunglu: empty graph, degenerate fit");
    fm.degrees.resize(fm.n);
    for (NodeIndex i = 0; i < fm.n; ++i) fm.degrees[i] = static_cast<double>(g.degree(i));
    return fm;
}

namespace {

struct BlockSums {
    std::vector<double> sums;        // ordered-pair block sums O_rs
    std::vector<std::size_t> sizes;  // n_r
};

BlockSums block_sums(const Graph& g, const std::vector<int>& labels, int K) {
    BlockSums bs;
    bs.sums.assign(static_cast<std::size_t>(K) * K, 0.0);
    bs.sizes.assign(K, 0);
    for (int c : labels) ++bs.sizes[c];
    g.for_each_edge([&](NodeIndex i, NodeIndex j, EdgeWeight w) {
        int r = labels[i], s = labels[j];
        bs.sums[r * K + s] += static_cast<double>(w);
        bs.sums[s * K + r] += static_cast<double>(w);
    });
    return bs;
}

}  // namespace

FittedModel fit_sbm(const Graph& g, int K, const ClusteringConfig& cfg) {
    FittedModel fm;
    fm.kind = ModelKind::Sbm;
    fm.n = g.node_count();
    fm.num_communities = K;
    ClusteringConfig cc = cfg;
    cc.num_communities = K;
    cc.row_normalize = false;
    fm.labels = spectral_cluster(g, cc);

    auto bs = block_sums(g, fm.labels, K);
    for (std::size_t r = 0; r < static_cast<std::size_t>(K); ++r) {
        if (bs.sizes[r] == 0) throw std::runtime_error("fit_sbm: empty estimated community");
    }
    fm.omega.assign(static_cast<std::size_t>(K) * K, 0.0);
    for (int r = 0; r < K; ++r) {
        for (int s = 0; s < K; ++s) {
            double denom = r == s
                               ? static_cast<double>(bs.sizes[r]) * static_cast<double>(bs.sizes[r] - 1)
                               : static_cast<double>(bs.sizes[r]) * static_cast<double>(bs.sizes[s]);
            fm.omega[r * K + s] = denom > 0.0 ? bs.sums[r * K + s] / denom : 0.0;
        }
    }
    return fm;
}

FittedModel fit_dcsbm(const Graph& g, int K, const ClusteringConfig& cfg) {
    FittedModel fm;
    fm.kind = ModelKind::Dcsbm;
    fm.n = g.node_count();
    fm.num_communities = K;
    ClusteringConfig cc = cfg;
    cc.num_communities = K;
    cc.row_normalize = true;
    fm.labels = spectral_cluster(g, cc);

    auto bs = block_sums(g, fm.labels, K);
    std::vector<double> community_degree(K, 0.0);  // delta_r
    std::vector<double> degree(fm.n);
    for (NodeIndex i = 0; i < fm.n; ++i) {
        degree[i] = static_cast<double>(g.degree(i));
        community_degree[fm.labels[i]] += degree[i];
    }
    for (int r = 0; r < K; ++r) {
        if (community_degree[r] <= 0.0)
            throw std::runtime_error("fit_dcsbm: estimated community with zero degree");
    }
    fm.omega = bs.sums;  // O_rs, the raw block sums
    fm.theta.resize(fm.n);
    for (NodeIndex i = 0; i < fm.n; ++i) fm.theta[i] = degree[i] / community_degree[fm.labels[i]];
    return fm;
}

FittedModel fit_pabm(const Graph& g, int K, const ClusteringConfig& cfg) {
    FittedModel fm;
    fm.kind = ModelKind::Pabm;
    fm.n = g.node_count();
    fm.num_communities = K;
    ClusteringConfig cc = cfg;
    cc.num_communities = K;
    cc.row_normalize = true;
    fm.labels = spectral_cluster(g, cc);

    auto bs = block_sums(g, fm.labels, K);
    // degree of node i into community r
    std::vector<double> degree_into(fm.n * static_cast<std::size_t>(K), 0.0);
    for (NodeIndex i = 0; i < fm.n; ++i) {
        auto nbrs = g.neighborhood(i);
        auto wts = g.neighbor_weights(i);
        for (std::size_t k = 0; k < nbrs.size(); ++k)
            degree_into[i * K + fm.labels[nbrs[k]]] += static_cast<double>(wts[k]);
    }
    fm.popularity.assign(fm.n * static_cast<std::size_t>(K), 0.0);
    for (NodeIndex i = 0; i < fm.n; ++i) {
        for (int r = 0; r < K; ++r) {
            double numer = degree_into[i * K + r];
            if (numer == 0.0) continue;
            double block = bs.sums[fm.labels[i] * K + r];
            if (block <= 0.0)
                throw std::runtime_error("fit_pabm: zero block sum with nonzero node degree");
            fm.popularity[i * K + r] = numer / std::sqrt(block);
        }
    }
    return fm;
}

Eigen::MatrixXd expected_adjacency(const FittedModel& fm) {
    const auto n = static_cast<Eigen::Index>(fm.n);
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double r = fm.rate(static_cast<NodeIndex>(i), static_cast<NodeIndex>(j));
            e(i, j) = r;
            e(j, i) = r;
        }
    }
    return e;
}

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("adjusted_rand_index: size mismatch");
    const std::size_t n = a.size();
    std::map<std::pair<int, int>, double> joint;
    std::map<int, double> ma, mb;
    for (std::size_t i = 0; i < n; ++i) {
        joint[{a[i], b[i]}] += 1.0;
        ma[a[i]] += 1.0;
        mb[b[i]] += 1.0;
    }
    auto choose2 = [](double x) { return 0.5 * x * (x - 1.0); };
    double sum_joint = 0.0, sum_a = 0.0, sum_b = 0.0;
    for (const auto& [k, v] : joint) sum_joint += choose2(v);
    for (const auto& [k, v] : ma) sum_a += choose2(v);
    for (const auto& [k, v] : mb) sum_b += choose2(v);
    double total = choose2(static_cast<double>(n));
    double expected = sum_a * sum_b / total;
    double max_index = 0.5 * (sum_a + sum_b);
    if (max_index == expected) return 1.0;
    return (sum_joint - expected) / (max_index - expected);
}

}  // namespace egonet
