#include "egonet/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "egonet/rng.hpp"

namespace egonet {

const char* to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::ErdosRenyi: return "er";
        case ModelKind::ChungLu: return "chunglu";
        case ModelKind::Sbm: return "sbm";
        case ModelKind::Dcsbm: return "dcsbm";
        case ModelKind::Pabm: return "pabm";
    }
    return "?";
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "er") return ModelKind::ErdosRenyi;
    if (name == "chunglu") return ModelKind::ChungLu;
    if (name == "sbm") return ModelKind::Sbm;
    if (name == "dcsbm") return ModelKind::Dcsbm;
    if (name == "pabm") return ModelKind::Pabm;
    throw std::invalid_argument("unknown model kind: " + name);
}

void ModelSpec::validate() const {
    if (n < 2) throw std::invalid_argument("ModelSpec: need n >= 2");
    auto check_labels = [&] {
        if (labels.size() != n) throw std::invalid_argument("ModelSpec: labels size mismatch");
        for (int c : labels) {
            if (c < 0 || c >= num_communities)
                throw std::invalid_argument("ModelSpec: label outside [0,K)");
        }
    };
    switch (kind) {
        case ModelKind::ErdosRenyi:
            if (er_p < 0.0) throw std::invalid_argument("ModelSpec: negative rate");
            if (edge_law == EdgeLaw::Bernoulli && er_p > 1.0)
                throw std::invalid_argument("ModelSpec: Bernoulli rate > 1");
            break;
        case ModelKind::ChungLu:
            if (theta.size() != n) throw std::invalid_argument("ModelSpec: theta size mismatch");
            for (double t : theta)
                if (t < 0.0) throw std::invalid_argument("ModelSpec: negative theta");
            break;
        case ModelKind::Sbm:
        case ModelKind::Dcsbm:
            check_labels();
            if (omega.size() != static_cast<std::size_t>(num_communities) * num_communities)
                throw std::invalid_argument("ModelSpec: omega size mismatch");
            for (double w : omega)
                if (w < 0.0) throw std::invalid_argument("ModelSpec: negative omega");
            if (kind == ModelKind::Dcsbm && theta.size() != n)
                throw std::invalid_argument("ModelSpec: theta size mismatch");
            break;
        case ModelKind::Pabm:
            check_labels();
            if (popularity.size() != n * static_cast<std::size_t>(num_communities))
                throw std::invalid_argument("ModelSpec: popularity size mismatch");
            for (double t : popularity)
                if (t < 0.0) throw std::invalid_argument("ModelSpec: negative popularity");
            break;
    }
}

double rate(const ModelSpec& spec, NodeIndex i, NodeIndex j) {
    if (i == j) throw std::invalid_argument("rate: i == j");
    if (i >= spec.n || j >= spec.n) throw std::out_of_range("rate: node index out of range");
    const int K = spec.num_communities;
    switch (spec.kind) {
        case ModelKind::ErdosRenyi:
            return spec.er_p;
        case ModelKind::ChungLu:
            return spec.theta[i] * spec.theta[j];
        case ModelKind::Sbm:
            return spec.omega[spec.labels[i] * K + spec.labels[j]];
        case ModelKind::Dcsbm:
            // theta product first so the result is bitwise symmetric in (i, j)
            return (spec.theta[i] * spec.theta[j]) * spec.omega[spec.labels[i] * K + spec.labels[j]];
        case ModelKind::Pabm:
            return spec.popularity[i * K + spec.labels[j]] * spec.popularity[j * K + spec.labels[i]];
    }
    return 0.0;
}

double expected_density(const ModelSpec& spec) {
    if (spec.n < 2) throw std::invalid_argument("expected_density: need n >= 2");
    const double pairs = 0.5 * static_cast<double>(spec.n) * static_cast<double>(spec.n - 1);
    if (spec.kind == ModelKind::ErdosRenyi) return spec.er_p;
    if (spec.kind == ModelKind::ChungLu) {
        double s = 0.0, s2 = 0.0;
        for (double t : spec.theta) {
            s += t;
            s2 += t * t;
        }
        return 0.5 * (s * s - s2) / pairs;
    }
    double total = 0.0;
    for (NodeIndex i = 0; i < spec.n; ++i) {
        for (NodeIndex j = i + 1; j < spec.n; ++j) total += rate(spec, i, j);
    }
    return total / pairs;
}

ModelSpec calibrate_density(ModelSpec spec, double target) {
    spec.validate();
    if (target <= 0.0) throw std::invalid_argument("calibrate_density: target must be positive");
    double density = expected_density(spec);
    if (density <= 0.0) throw std::invalid_argument("calibrate_density: zero expected density");
    const double scale = target / density;
    const double root = std::sqrt(scale);
    switch (spec.kind) {
        case ModelKind::ErdosRenyi:
            spec.er_p *= scale;
            break;
        case ModelKind::ChungLu:
            for (double& t : spec.theta) t *= root;
            break;
        case ModelKind::Sbm:
        case ModelKind::Dcsbm:
            // omega is the matrix entry of lambda_ij, so it carries the full scale
            for (double& w : spec.omega) w *= scale;
            break;
        case ModelKind::Pabm:
            for (double& t : spec.popularity) t *= root;
            break;
    }
    if (spec.edge_law == EdgeLaw::Bernoulli) {
        for (NodeIndex i = 0; i < spec.n; ++i) {
            for (NodeIndex j = i + 1; j < spec.n; ++j) {
                if (rate(spec, i, j) > 1.0)
                    throw std::invalid_argument("calibrate_density: Bernoulli rate exceeds 1");
            }
        }
    }
    return spec;
}

namespace {

std::uint64_t sample_poisson(std::mt19937_64& eng, double lambda) {
    if (lambda <= 0.0) return 0;
    if (lambda < 50.0) {
        // CDF inversion; exact and cheap at the sparse rates used here
        double u = rng::uniform01(eng);
        double p = std::exp(-lambda);
        double cum = p;
        std::uint64_t k = 0;
        while (u > cum && k < 10000) {
            ++k;
            p *= lambda / static_cast<double>(k);
            cum += p;
        }
        return k;
    }
    std::poisson_distribution<std::uint64_t> dist(lambda);
    return dist(eng);
}

}  // namespace

Graph generate(const ModelSpec& spec, std::uint64_t seed) {
    spec.validate();
    auto eng = rng::make_engine(seed);
    std::vector<std::tuple<NodeIndex, NodeIndex, EdgeWeight>> edges;
    for (NodeIndex i = 0; i < spec.n; ++i) {
        for (NodeIndex j = i + 1; j < spec.n; ++j) {
            double lambda = rate(spec, i, j);
            EdgeWeight w = 0;
            if (spec.edge_law == EdgeLaw::Bernoulli) {
                if (lambda > 1.0) throw std::invalid_argument("generate: Bernoulli rate > 1");
                w = rng::uniform01(eng) < lambda ? 1 : 0;
            } else {
                w = sample_poisson(eng, lambda);
            }
            if (w > 0) edges.emplace_back(i, j, w);
        }
    }
    return Graph::from_edges(spec.n, edges);
}

std::vector<double> sample_chunglu_thetas(std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_chunglu_thetas: need n >= 1");
    auto eng = rng::make_engine(seed);
    std::vector<double> theta(n);
    for (double& t : theta) t = rng::beta_1_b(eng, 5.0);
    return theta;
}

void CliquePlan::validate(std::size_t n) const {
    if (members.size() < 2) throw std::invalid_argument("CliquePlan: need at least 2 members");
    std::vector<NodeIndex> sorted(members);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("CliquePlan: duplicate members");
    if (sorted.back() >= n) throw std::out_of_range("CliquePlan: member out of range");
}

Graph embed_clique(const Graph& g, const CliquePlan& plan) {
    plan.validate(g.node_count());
    std::vector<std::tuple<NodeIndex, NodeIndex, EdgeWeight>> edges;
    edges.reserve(g.pair_edge_count() + pair_count(plan.members.size()));
    g.for_each_edge([&](NodeIndex i, NodeIndex j, EdgeWeight w) { edges.emplace_back(i, j, w); });

    std::vector<NodeIndex> members(plan.members);
    std::sort(members.begin(), members.end());
    for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
            // max(existing, 1): only pairs currently absent need a new edge
            if (g.edge_weight(members[a], members[b]) == 0)
                edges.emplace_back(members[a], members[b], 1);
        }
    }
    return Graph::from_edges(g.node_count(), edges);
}

CliquePlan sample_clique_members(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (m > n) throw std::invalid_argument("sample_clique_members: m > n");
    auto eng = rng::make_engine(seed);
    std::vector<NodeIndex> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    // partial Fisher-Yates
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t r = k + static_cast<std::size_t>(rng::uniform01(eng) * static_cast<double>(n - k));
        if (r >= n) r = n - 1;
        std::swap(pool[k], pool[r]);
    }
    CliquePlan plan;
    plan.members.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(m));
    std::sort(plan.members.begin(), plan.members.end());
    return plan;
}

ModelSpec make_simulation_spec(ModelKind kind, std::size_t n, std::uint64_t seed) {
    constexpr double kTargetDensity = 0.05;
    ModelSpec spec;
    spec.kind = kind;
    spec.n = n;
    switch (kind) {
        case ModelKind::ErdosRenyi: {
            spec.edge_law = EdgeLaw::Bernoulli;
            spec.er_p = kTargetDensity;
            return spec;  // already at target density
        }
        case ModelKind::ChungLu: {
            spec.edge_law = EdgeLaw::Poisson;
            spec.theta = sample_chunglu_thetas(n, seed);
            break;
        }
        case ModelKind::Sbm: {
            if (n < 8) throw std::invalid_argument("make_simulation_spec: n too small");
            spec.edge_law = EdgeLaw::Poisson;
            spec.num_communities = 2;
            spec.labels.assign(n, 0);
            for (std::size_t i = n / 2; i < n; ++i) spec.labels[i] = 1;
            spec.omega = {4.0, 1.0, 1.0, 4.0};
            break;
        }
        case ModelKind::Dcsbm: {
            if (n < 12) throw std::invalid_argument("make_simulation_spec: n too small");
            spec.edge_law = EdgeLaw::Poisson;
            spec.num_communities = 3;
            spec.labels.assign(n, 2);  // communities of 25%, 25%, 50%
            for (std::size_t i = 0; i < n / 4; ++i) spec.labels[i] = 0;
            for (std::size_t i = n / 4; i < n / 2; ++i) spec.labels[i] = 1;
            spec.omega = {4.0, 2.0, 1.0, 2.0, 4.0, 1.0, 1.0, 1.0, 4.0};
            spec.theta = sample_chunglu_thetas(n, seed);
            break;
        }
        case ModelKind::Pabm: {
            if (n < 8) throw std::invalid_argument("make_simulation_spec: n too small");
            spec.edge_law = EdgeLaw::Poisson;
            spec.num_communities = 2;
            spec.labels.assign(n, 0);
            for (std::size_t i = n / 2; i < n; ++i) spec.labels[i] = 1;
            // homophily factor h = 4; (alpha, beta) = (0.8, 0.2) for category 1
            // nodes, swapped for category 2; first half of each community (by
            // index) is category 1
            const double h = 4.0;
            const double own1 = 0.8 * std::sqrt(h / (1.0 + h));
            const double cross1 = 0.2 * std::sqrt(1.0 / (1.0 + h));
            const double own2 = 0.2 * std::sqrt(h / (1.0 + h));
            const double cross2 = 0.8 * std::sqrt(1.0 / (1.0 + h));
            spec.popularity.assign(n * 2, 0.0);
            std::size_t half = n / 2;
            for (std::size_t i = 0; i < n; ++i) {
                int community = spec.labels[i];
                std::size_t pos_in_community = community == 0 ? i : i - half;
                std::size_t community_size = community == 0 ? half : n - half;
                bool category1 = pos_in_community < community_size / 2;
                double own = category1 ? own1 : own2;
                double cross = category1 ? cross1 : cross2;
                spec.popularity[i * 2 + community] = own;
                spec.popularity[i * 2 + (1 - community)] = cross;
            }
            break;
        }
    }
    return calibrate_density(std::move(spec), kTargetDensity);
}

}  // namespace egonet
