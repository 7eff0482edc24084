#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "egonet/graph.hpp"

namespace egonet {

enum class ModelKind { ErdosRenyi, ChungLu, Sbm, Dcsbm, Pabm };
enum class EdgeLaw { Bernoulli, Poisson };

const char* to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

/// Generative parameters of one of the five null models. Edge rates are
/// lambda_ij, derived per kind:
///   ErdosRenyi: p
///   ChungLu:    theta_i * theta_j
///   Sbm:        omega[c_i][c_j]
///   Dcsbm:      theta_i * omega[c_i][c_j] * theta_j
///   Pabm:       popularity[i][c_j] * popularity[j][c_i]
struct ModelSpec {
    ModelKind kind = ModelKind::ErdosRenyi;
    EdgeLaw edge_law = EdgeLaw::Bernoulli;
    std::size_t n = 0;
    int num_communities = 1;

    double er_p = 0.0;
    std::vector<double> theta;       // ChungLu / Dcsbm, size n
    std::vector<int> labels;         // Sbm / Dcsbm / Pabm, size n, values in [0,K)
    std::vector<double> omega;       // Sbm / Dcsbm, K*K row-major, symmetric
    std::vector<double> popularity;  // Pabm, n*K row-major

    void validate() const;
};

/// lambda_ij for i != j; symmetric in (i, j).
double rate(const ModelSpec& spec, NodeIndex i, NodeIndex j);

/// Mean of rate(i,j) over all unordered pairs.
double expected_density(const ModelSpec& spec);

/// Rescale all lambda_ij by target/expected_density, pushing the scalar into
/// the factorized parameters. Bernoulli rates exceeding 1 after scaling throw.
ModelSpec calibrate_density(ModelSpec spec, double target);

/// Sample each unordered pair independently from the edge law at rate(i,j).
/// Deterministic given seed.
Graph generate(const ModelSpec& spec, std::uint64_t seed);

/// n independent Beta(1,5) draws (mean 1/6).
std::vector<double> sample_chunglu_thetas(std::size_t n, std::uint64_t seed);

/// The nodes of an anomalous clique to embed.
struct CliquePlan {
    std::vector<NodeIndex> members;
    void validate(std::size_t n) const;
};

/// For every pair inside the clique, weight becomes max(existing, 1); all
/// other pairs untouched.
Graph embed_clique(const Graph& g, const CliquePlan& plan);

/// Choose m distinct nodes uniformly at random.
CliquePlan sample_clique_members(std::size_t n, std::size_t m, std::uint64_t seed);

/// The simulation-study configuration for a model kind at node count n,
/// density-calibrated to 0.05. The seed drives the random parameter draws
/// (ChungLu/Dcsbm thetas); other kinds are deterministic.
ModelSpec make_simulation_spec(ModelKind kind, std::size_t n, std::uint64_t seed);

}  // namespace egonet
