#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "egonet/graph.hpp"
#include "egonet/models.hpp"

namespace egonet {

struct ClusteringConfig {
    int num_communities = 1;
    double regularizer = -1.0;  // tau; negative means "use mean degree"
    bool row_normalize = false;
    int kmeans_restarts = 10;
    int kmeans_max_iter = 100;
    double eig_tol = 1e-8;
    std::uint64_t seed = 0xc105734fULL;
};

/// Estimated Poisson rate structure lambda_hat in factorized form.
struct FittedModel {
    ModelKind kind = ModelKind::ErdosRenyi;
    std::size_t n = 0;
    int num_communities = 1;

    double er_p = 0.0;
    std::vector<double> degrees;     // ChungLu: d_i
    double two_m = 0.0;              // ChungLu: 2M
    std::vector<int> labels;         // Sbm / Dcsbm / Pabm
    std::vector<double> omega;       // Sbm: densities; Dcsbm: block sums O_rs
    std::vector<double> theta;       // Dcsbm: d_i / delta_{c_i}
    std::vector<double> popularity;  // Pabm: theta_hat_{ir}, n*K row-major

    /// lambda_hat_ij; symmetric, i != j.
    double rate(NodeIndex i, NodeIndex j) const;
};

/// Regularized spectral clustering: L_tau = D_tau^{-1/2} (A + tau/n J) D_tau^{-1/2},
/// embedding from the K largest-magnitude eigenvalues, optional row
/// normalization, k-means++ with restarts. Deterministic given (g, cfg).
std::vector<int> spectral_cluster(const Graph& g, const ClusteringConfig& cfg);

FittedModel fit_er(const Graph& g);
FittedModel fit_chunglu(const Graph& g);
FittedModel fit_sbm(const Graph& g, int K, const ClusteringConfig& cfg = {});
FittedModel fit_dcsbm(const Graph& g, int K, const ClusteringConfig& cfg = {});
FittedModel fit_pabm(const Graph& g, int K, const ClusteringConfig& cfg = {});

/// Dense lambda_hat matrix with zero diagonal.
Eigen::MatrixXd expected_adjacency(const FittedModel& fm);

/// Adjusted Rand index between two labelings.
double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace egonet
