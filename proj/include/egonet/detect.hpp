#pragma once

#include <vector>

#include "egonet/fit.hpp"
#include "egonet/graph.hpp"

namespace egonet {

struct DetectionReport {
    double alpha = 0.01;
    double threshold = 0.0;            // alpha / n
    double t_n = 1.0;                  // min p-value
    bool reject = false;               // t_n < alpha/n (strict)
    std::vector<NodeIndex> flagged;    // sorted; {i : p_i < alpha/n}
    std::vector<EgonetRecord> records; // all n records
};

/// Per-node egonet p-values against the fitted null. ER fits use the
/// Binomial tail with n_i = C(|N_i|, 2); Poisson-model fits use the Poisson
/// tail with Lambda_i = sum of lambda_hat over unordered neighbor pairs.
/// Nodes with fewer than two neighbors get p-value 1. Data-parallel over
/// nodes; results are identical for any worker count.
std::vector<EgonetRecord> egonet_pvalues(const Graph& g, const FittedModel& fm, int threads = 1);

DetectionReport detect(const Graph& g, const FittedModel& fm, double alpha, int threads = 1);

/// Exact maximum clique of the subgraph induced by the flagged set, returned
/// in original labels. Among maximum cliques, the lexicographically smallest
/// label set. Guard: |flagged| <= 200.
std::vector<NodeIndex> recover_clique(const Graph& g, const std::vector<NodeIndex>& flagged);

}  // namespace egonet
