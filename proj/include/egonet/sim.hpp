#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "egonet/models.hpp"

namespace egonet {

enum class Detector { Egonet, Chi2 };

const char* to_string(Detector d);

struct SimConfig {
    ModelKind kind = ModelKind::ErdosRenyi;
    std::size_t n = 500;
    std::vector<std::size_t> clique_sizes{0};  // 0 = null runs
    std::vector<double> alphas{0.01};
    std::size_t replicates = 100;
    std::uint64_t base_seed = 20240601;
    bool run_egonet = true;
    bool run_chi2 = false;
    int threads = 1;

    void validate() const;
};

/// One generate -> embed -> fit -> detect pass. p-values do not depend on
/// alpha, so one replicate serves every significance level.
struct ReplicateOutcome {
    bool failed = false;
    std::string error;
    std::size_t clique_size = 0;
    double t_n = 1.0;   // min egonet p-value
    double t_n1 = 1.0;  // max egonet p-value over the true clique (1 when m=0)
    double chi2_statistic = 0.0;

    struct PerAlpha {
        double alpha = 0.0;
        bool egonet_reject = false;
        bool chi2_reject = false;
        std::size_t flagged_clique = 0;      // flagged nodes inside C
        std::size_t flagged_non_clique = 0;  // flagged nodes outside C
    };
    std::vector<PerAlpha> per_alpha;
};

/// Model parameters for one simulation cell. Random parameter draws (the
/// degree propensities of the heterogeneous models) happen once per cell and
/// are shared by all replicates, mirroring the study protocol.
ModelSpec cell_spec(const SimConfig& cfg);

/// Replicate seeds derive from (base seed, kind, n, m, replicate index); the
/// clique-placement stream is separate from the edge-sampling stream.
ReplicateOutcome run_replicate(const SimConfig& cfg, const ModelSpec& spec,
                               std::size_t clique_size, std::size_t replicate_index);

/// One (model, n, m, alpha, detector) cell of a SimSummary.
struct SimCell {
    ModelKind kind = ModelKind::ErdosRenyi;
    Detector detector = Detector::Egonet;
    std::size_t n = 0;
    std::size_t clique_size = 0;
    double alpha = 0.0;
    std::size_t replicates = 0;  // successful replicates
    std::size_t failures = 0;
    std::size_t rejects = 0;
    // node-level pools (egonet only; empty for chi2)
    std::size_t clique_nodes_flagged = 0;
    std::size_t clique_nodes_total = 0;
    std::size_t non_clique_nodes_flagged = 0;
    std::size_t non_clique_nodes_total = 0;

    bool missing() const { return replicates == 0; }
    /// Network-level rate: false-alarm when m=0, detection when m>0.
    double reject_rate() const;
    double reject_rate_se() const;
    std::optional<double> node_detection_rate() const;
    std::optional<double> node_false_alarm_rate() const;
};

struct SimSummary {
    std::vector<SimCell> cells;

    const SimCell* find(ModelKind kind, Detector det, std::size_t n, std::size_t m,
                        double alpha) const;
};

/// Fold replicate outcomes into per-(m, alpha, detector) cells.
SimSummary aggregate(const SimConfig& cfg,
                     const std::vector<std::vector<ReplicateOutcome>>& outcomes_per_m);

/// Run every (m, replicate) of the config; deterministic for any thread count.
SimSummary run_simulation(const SimConfig& cfg);

/// The full factorial of the simulation study, replicate counts scaled by
/// `scale` in (0,1]: five models x n in {500,1000,2000} x the (n,m) pairings
/// (500: m in {5,10}; 1000/2000: m in {10,20}) x alpha in {1%,2%,5%}, both
/// detectors, density 0.05.
SimSummary paper_suite(double scale, std::uint64_t base_seed = 20240601, int threads = 1);

}  // namespace egonet
