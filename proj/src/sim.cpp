#include "egonet/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "egonet/chi2.hpp"
#include "egonet/detect.hpp"
#include "egonet/fit.hpp"
#include "egonet/rng.hpp"
#include "egonet/tail.hpp"

namespace egonet {

const char* to_string(Detector d) { return d == Detector::Egonet ? "egonet" : "chi2"; }

void SimConfig::validate() const {
    if (replicates < 1) throw std::invalid_argument("SimConfig: need replicates >= 1");
    if (alphas.empty()) throw std::invalid_argument("SimConfig: need at least one alpha");
    for (double a : alphas) {
        if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("SimConfig: alpha outside (0,1)");
    }
    for (std::size_t m : clique_sizes) {
        if (m == 1 || m >= n) throw std::invalid_argument("SimConfig: clique size must be 0 or in [2,n)");
    }
    if (!run_egonet && !run_chi2) throw std::invalid_argument("SimConfig: no detector selected");
}

namespace {

FittedModel fit_same_kind(const Graph& g, ModelKind kind) {
    switch (kind) {
        case ModelKind::ErdosRenyi: return fit_er(g);
        case ModelKind::ChungLu: return fit_chunglu(g);
        case ModelKind::Sbm: return fit_sbm(g, 2);
        case ModelKind::Dcsbm: return fit_dcsbm(g, 3);
        case ModelKind::Pabm: return fit_pabm(g, 2);
    }
    throw std::logic_error("fit_same_kind: unreachable");
}

}  // namespace

ModelSpec cell_spec(const SimConfig& cfg) {
    const auto kind_tag = static_cast<std::uint64_t>(cfg.kind);
    return make_simulation_spec(cfg.kind, cfg.n,
                                rng::derive_seed(cfg.base_seed, {kind_tag, cfg.n, 1}));
}

ReplicateOutcome run_replicate(const SimConfig& cfg, const ModelSpec& spec,
                               std::size_t clique_size, std::size_t replicate_index) {
    ReplicateOutcome out;
    out.clique_size = clique_size;
    const auto kind_tag = static_cast<std::uint64_t>(cfg.kind);
    auto seed_for = [&](std::uint64_t stream) {
        return rng::derive_seed(cfg.base_seed,
                                {kind_tag, cfg.n, clique_size, replicate_index, stream});
    };
    try {
        Graph g = generate(spec, seed_for(2));
        CliquePlan plan;
        if (clique_size > 0) {
            plan = sample_clique_members(cfg.n, clique_size, seed_for(3));
            g = embed_clique(g, plan);
        }
        FittedModel fm = fit_same_kind(g, cfg.kind);

        std::vector<char> in_clique(cfg.n, 0);
        for (NodeIndex v : plan.members) in_clique[v] = 1;

        std::vector<EgonetRecord> records;
        if (cfg.run_egonet) {
            records = egonet_pvalues(g, fm);
            out.t_n = 1.0;
            out.t_n1 = clique_size > 0 ? 0.0 : 1.0;
            for (const auto& rec : records) {
                out.t_n = std::min(out.t_n, rec.p_value);
                if (in_clique[rec.node]) out.t_n1 = std::max(out.t_n1, rec.p_value);
            }
        }
        double chi2_stat = 0.0;
        if (cfg.run_chi2) {
            chi2_stat = chi2_detect(g, fm, cfg.alphas.front()).statistic;
            out.chi2_statistic = chi2_stat;
        }

        for (double alpha : cfg.alphas) {
            ReplicateOutcome::PerAlpha pa;
            pa.alpha = alpha;
            const double threshold = alpha / static_cast<double>(cfg.n);
            if (cfg.run_egonet) {
                pa.egonet_reject = out.t_n < threshold;
                for (const auto& rec : records) {
                    if (rec.p_value < threshold) {
                        if (in_clique[rec.node]) {
                            ++pa.flagged_clique;
                        } else {
                            ++pa.flagged_non_clique;
                        }
                    }
                }
            }
            if (cfg.run_chi2) {
                pa.chi2_reject = chi2_stat > chi2_critical(alpha);
            }
            out.per_alpha.push_back(pa);
        }
    } catch (const std::exception& e) {
        out.failed = true;
        out.error = e.what();
        out.per_alpha.clear();
    }
    return out;
}

double SimCell::reject_rate() const {
    return replicates == 0 ? 0.0 : static_cast<double>(rejects) / static_cast<double>(replicates);
}

double SimCell::reject_rate_se() const {
    if (replicates == 0) return 0.0;
    double r = reject_rate();
    return std::sqrt(r * (1.0 - r) / static_cast<double>(replicates));
}

std::optional<double> SimCell::node_detection_rate() const {
    if (detector != Detector::Egonet || clique_nodes_total == 0) return std::nullopt;
    return static_cast<double>(clique_nodes_flagged) / static_cast<double>(clique_nodes_total);
}

std::optional<double> SimCell::node_false_alarm_rate() const {
    if (detector != Detector::Egonet || non_clique_nodes_total == 0) return std::nullopt;
    return static_cast<double>(non_clique_nodes_flagged) /
           static_cast<double>(non_clique_nodes_total);
}

const SimCell* SimSummary::find(ModelKind kind, Detector det, std::size_t n, std::size_t m,
                                double alpha) const {
    for (const auto& cell : cells) {
        if (cell.kind == kind && cell.detector == det && cell.n == n && cell.clique_size == m &&
            std::fabs(cell.alpha - alpha) < 1e-12) {
            return &cell;
        }
    }
    return nullptr;
}

SimSummary aggregate(const SimConfig& cfg,
                     const std::vector<std::vector<ReplicateOutcome>>& outcomes_per_m) {
    SimSummary summary;
    for (std::size_t mi = 0; mi < cfg.clique_sizes.size(); ++mi) {
        const std::size_t m = cfg.clique_sizes[mi];
        for (std::size_t ai = 0; ai < cfg.alphas.size(); ++ai) {
            for (Detector det : {Detector::Egonet, Detector::Chi2}) {
                if (det == Detector::Egonet && !cfg.run_egonet) continue;
                if (det == Detector::Chi2 && !cfg.run_chi2) continue;
                SimCell cell;
                cell.kind = cfg.kind;
                cell.detector = det;
                cell.n = cfg.n;
                cell.clique_size = m;
                cell.alpha = cfg.alphas[ai];
                for (const auto& out : outcomes_per_m[mi]) {
                    if (out.failed) {
                        ++cell.failures;
                        continue;
                    }
                    const auto& pa = out.per_alpha[ai];
                    ++cell.replicates;
                    bool reject = det == Detector::Egonet ? pa.egonet_reject : pa.chi2_reject;
                    if (reject) ++cell.rejects;
                    if (det == Detector::Egonet) {
                        cell.clique_nodes_flagged += pa.flagged_clique;
                        cell.clique_nodes_total += m;
                        cell.non_clique_nodes_flagged += pa.flagged_non_clique;
                        cell.non_clique_nodes_total += cfg.n - m;
                    }
                }
                summary.cells.push_back(cell);
            }
        }
    }
    return summary;
}

SimSummary run_simulation(const SimConfig& cfg) {
    cfg.validate();
    const ModelSpec spec = cell_spec(cfg);
    std::vector<std::vector<ReplicateOutcome>> outcomes(cfg.clique_sizes.size());
    for (auto& v : outcomes) v.resize(cfg.replicates);

    struct Job {
        std::size_t mi, rep;
    };
    std::vector<Job> jobs;
    jobs.reserve(cfg.clique_sizes.size() * cfg.replicates);
    for (std::size_t mi = 0; mi < cfg.clique_sizes.size(); ++mi) {
        for (std::size_t rep = 0; rep < cfg.replicates; ++rep) jobs.push_back({mi, rep});
    }

    const int workers = std::max(1, cfg.threads);
    if (workers == 1) {
        for (const Job& job : jobs) {
            outcomes[job.mi][job.rep] =
                run_replicate(cfg, spec, cfg.clique_sizes[job.mi], job.rep);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t k = next.fetch_add(1);
                    if (k >= jobs.size()) return;
                    const Job& job = jobs[k];
                    outcomes[job.mi][job.rep] =
                        run_replicate(cfg, spec, cfg.clique_sizes[job.mi], job.rep);
                }
            });
        }
        for (auto& t : pool) t.join();
    }
    return aggregate(cfg, outcomes);
}

SimSummary paper_suite(double scale, std::uint64_t base_seed, int threads) {
    if (!(scale > 0.0 && scale <= 1.0)) throw std::invalid_argument("paper_suite: scale outside (0,1]");
    auto replicates_for = [&](ModelKind kind, std::size_t n) -> std::size_t {
        std::size_t base = 10000;
        if ((kind == ModelKind::Sbm || kind == ModelKind::Dcsbm) && n == 2000) base = 5000;
        if (kind == ModelKind::Pabm) base = n == 500 ? 10000 : (n == 1000 ? 5000 : 500);
        auto r = static_cast<std::size_t>(std::ceil(scale * static_cast<double>(base)));
        return std::max<std::size_t>(1, r);
    };

    SimSummary summary;
    for (ModelKind kind : {ModelKind::ErdosRenyi, ModelKind::ChungLu, ModelKind::Sbm,
                           ModelKind::Dcsbm, ModelKind::Pabm}) {
        for (std::size_t n : {std::size_t{500}, std::size_t{1000}, std::size_t{2000}}) {
            SimConfig cfg;
            cfg.kind = kind;
            cfg.n = n;
            cfg.clique_sizes = n == 500 ? std::vector<std::size_t>{0, 5, 10}
                                        : std::vector<std::size_t>{0, 10, 20};
            cfg.alphas = {0.01, 0.02, 0.05};
            cfg.replicates = replicates_for(kind, n);
            cfg.base_seed = base_seed;
            cfg.run_egonet = true;
            cfg.run_chi2 = true;
            cfg.threads = threads;
            SimSummary part = run_simulation(cfg);
            summary.cells.insert(summary.cells.end(), part.cells.begin(), part.cells.end());
        }
    }
    return summary;
}

}  // namespace egonet
