#include "egonet/io.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>

#include "egonet/rng.hpp"

namespace egonet::io {

NodeIndex LabeledGraph::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == label) return static_cast<NodeIndex>(i);
    }
    throw std::invalid_argument("unknown node label: " + label);
}

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
    throw std::runtime_error("edge list line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

LabeledGraph read_edge_list(std::istream& in) {
    std::unordered_map<std::string, NodeIndex> index;
    std::vector<std::string> labels;
    std::vector<std::tuple<NodeIndex, NodeIndex, EdgeWeight>> edges;

    auto intern = [&](const std::string& label) {
        auto [it, inserted] = index.try_emplace(label, static_cast<NodeIndex>(labels.size()));
        if (inserted) labels.push_back(label);
        return it->second;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream tokens(line);
        std::string u, v, w, extra;
        if (!(tokens >> u)) continue;  // blank or comment-only line
        if (!(tokens >> v)) parse_fail(line_no, "expected at least two tokens");
        EdgeWeight weight = 1;
        if (tokens >> w) {
            if (tokens >> extra) parse_fail(line_no, "trailing tokens");
            std::uint64_t parsed = 0;
            auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), parsed);
            if (ec != std::errc{} || ptr != w.data() + w.size() || parsed == 0)
                parse_fail(line_no, "weight must be a positive integer, got '" + w + "'");
            weight = parsed;
        }
        if (u == v) parse_fail(line_no, "self-loop on '" + u + "'");
        NodeIndex ui = intern(u);  // sequenced: label indices follow appearance order
        NodeIndex vi = intern(v);
        edges.emplace_back(ui, vi, weight);
    }

    LabeledGraph lg;
    lg.labels = std::move(labels);
    lg.graph = Graph::from_edges(lg.labels.size(), edges);
    return lg;
}

LabeledGraph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path);
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const LabeledGraph& lg) {
    lg.graph.for_each_edge([&](NodeIndex i, NodeIndex j, EdgeWeight w) {
        out << lg.labels[i] << ' ' << lg.labels[j];
        if (w != 1) out << ' ' << w;
        out << '\n';
    });
    if (!out) throw std::runtime_error("edge list write failed");
}

void write_edge_list_file(const std::string& path, const LabeledGraph& lg) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output: " + path);
    write_edge_list(out, lg);
}

LabeledGraph with_default_labels(Graph g) {
    LabeledGraph lg;
    lg.labels.reserve(g.node_count());
    for (std::size_t i = 0; i < g.node_count(); ++i) lg.labels.push_back(std::to_string(i));
    lg.graph = std::move(g);
    return lg;
}

nlohmann::json to_json(const DetectionReport& report, const std::vector<std::string>& labels) {
    if (labels.size() != report.records.size())
        throw std::invalid_argument("to_json: label count does not match record count");
    nlohmann::json j;
    j["schema_version"] = kReportSchemaVersion;
    j["kind"] = "detection_report";
    j["alpha"] = report.alpha;
    j["threshold"] = report.threshold;
    j["t_n"] = report.t_n;
    j["reject"] = report.reject;
    nlohmann::json flagged = nlohmann::json::array();
    for (NodeIndex v : report.flagged) flagged.push_back(labels[v]);
    j["flagged"] = flagged;
    nlohmann::json records = nlohmann::json::array();
    for (const auto& rec : report.records) {
        records.push_back({{"node", labels[rec.node]},
                           {"degree", rec.degree},
                           {"pair_count", rec.pair_count},
                           {"egonet_degree", rec.egonet_degree},
                           {"p_value", rec.p_value}});
    }
    j["records"] = records;
    return j;
}

DetectionReport detection_report_from_json(const nlohmann::json& j,
                                           std::vector<std::string>* labels_out) {
    DetectionReport report;
    report.alpha = j.at("alpha").get<double>();
    report.threshold = j.at("threshold").get<double>();
    report.t_n = j.at("t_n").get<double>();
    report.reject = j.at("reject").get<bool>();
    std::vector<std::string> labels;
    std::unordered_map<std::string, NodeIndex> index;
    for (const auto& r : j.at("records")) {
        EgonetRecord rec;
        rec.node = static_cast<NodeIndex>(labels.size());
        std::string label = r.at("node").get<std::string>();
        index[label] = rec.node;
        labels.push_back(label);
        rec.degree = r.at("degree").get<EdgeWeight>();
        rec.pair_count = r.at("pair_count").get<std::uint64_t>();
        rec.egonet_degree = r.at("egonet_degree").get<EdgeWeight>();
        rec.p_value = r.at("p_value").get<double>();
        report.records.push_back(rec);
    }
    for (const auto& f : j.at("flagged")) report.flagged.push_back(index.at(f.get<std::string>()));
    if (labels_out) *labels_out = std::move(labels);
    return report;
}

nlohmann::json to_json(const Chi2Report& report) {
    nlohmann::json j;
    j["schema_version"] = kReportSchemaVersion;
    j["kind"] = "chi2_report";
    j["statistic"] = report.statistic;
    j["angle"] = report.angle;
    j["critical"] = report.critical;
    j["reject"] = report.reject;
    nlohmann::json tables = nlohmann::json::array();
    for (const auto& t : report.quadrant_tables) tables.push_back({t[0], t[1], t[2], t[3]});
    j["quadrant_tables"] = tables;
    return j;
}

Chi2Report chi2_report_from_json(const nlohmann::json& j) {
    Chi2Report report;
    report.statistic = j.at("statistic").get<double>();
    report.angle = j.at("angle").get<double>();
    report.critical = j.at("critical").get<double>();
    report.reject = j.at("reject").get<bool>();
    for (const auto& t : j.at("quadrant_tables")) {
        report.quadrant_tables.push_back({t.at(0).get<long>(), t.at(1).get<long>(),
                                          t.at(2).get<long>(), t.at(3).get<long>()});
    }
    return report;
}

nlohmann::json to_json(const SimSummary& summary) {
    nlohmann::json j;
    j["schema_version"] = kReportSchemaVersion;
    j["kind"] = "sim_summary";
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : summary.cells) {
        nlohmann::json cj{{"model", to_string(c.kind)},
                          {"detector", to_string(c.detector)},
                          {"n", c.n},
                          {"clique_size", c.clique_size},
                          {"alpha", c.alpha},
                          {"replicates", c.replicates},
                          {"failures", c.failures},
                          {"rejects", c.rejects}};
        if (c.missing()) {
            cj["rate"] = nullptr;
            cj["rate_se"] = nullptr;
        } else {
            cj["rate"] = c.reject_rate();
            cj["rate_se"] = c.reject_rate_se();
        }
        cj["rate_meaning"] = c.clique_size == 0 ? "false_alarm" : "detection";
        if (c.detector == Detector::Egonet) {
            cj["clique_nodes_flagged"] = c.clique_nodes_flagged;
            cj["clique_nodes_total"] = c.clique_nodes_total;
            cj["non_clique_nodes_flagged"] = c.non_clique_nodes_flagged;
            cj["non_clique_nodes_total"] = c.non_clique_nodes_total;
            auto ndr = c.node_detection_rate();
            auto nfa = c.node_false_alarm_rate();
            cj["node_detection_rate"] = ndr ? nlohmann::json(*ndr) : nlohmann::json(nullptr);
            cj["node_false_alarm_rate"] = nfa ? nlohmann::json(*nfa) : nlohmann::json(nullptr);
        }
        cells.push_back(cj);
    }
    j["cells"] = cells;
    return j;
}

SimSummary sim_summary_from_json(const nlohmann::json& j) {
    SimSummary summary;
    for (const auto& cj : j.at("cells")) {
        SimCell c;
        c.kind = model_kind_from_string(cj.at("model").get<std::string>());
        c.detector = cj.at("detector").get<std::string>() == "egonet" ? Detector::Egonet
                                                                      : Detector::Chi2;
        c.n = cj.at("n").get<std::size_t>();
        c.clique_size = cj.at("clique_size").get<std::size_t>();
        c.alpha = cj.at("alpha").get<double>();
        c.replicates = cj.at("replicates").get<std::size_t>();
        c.failures = cj.at("failures").get<std::size_t>();
        c.rejects = cj.at("rejects").get<std::size_t>();
        if (c.detector == Detector::Egonet) {
            c.clique_nodes_flagged = cj.at("clique_nodes_flagged").get<std::size_t>();
            c.clique_nodes_total = cj.at("clique_nodes_total").get<std::size_t>();
            c.non_clique_nodes_flagged = cj.at("non_clique_nodes_flagged").get<std::size_t>();
            c.non_clique_nodes_total = cj.at("non_clique_nodes_total").get<std::size_t>();
        }
        summary.cells.push_back(c);
    }
    return summary;
}

std::string render(const nlohmann::json& j) { return j.dump(2) + "\n"; }

namespace {

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output: " + out_path);
    out << text;
}

FittedModel fit_for_cli(const Graph& g, const std::string& model, int k) {
    ModelKind kind = model_kind_from_string(model);
    switch (kind) {
        case ModelKind::ErdosRenyi: return fit_er(g);
        case ModelKind::ChungLu: return fit_chunglu(g);
        case ModelKind::Sbm: return fit_sbm(g, k);
        case ModelKind::Dcsbm: return fit_dcsbm(g, k);
        case ModelKind::Pabm: return fit_pabm(g, k);
    }
    throw std::logic_error("fit_for_cli: unreachable");
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Egonet-based anomalous clique detection"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Sample a network from a null model");
    std::string gen_model = "er";
    std::size_t gen_n = 500;
    double gen_p = 0.05;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    gen->add_option("--model", gen_model, "er|chunglu|sbm|dcsbm|pabm")->capture_default_str();
    gen->add_option("--n", gen_n, "node count")->capture_default_str();
    gen->add_option("--p", gen_p, "edge probability (er only)")->capture_default_str();
    gen->add_option("--seed", gen_seed, "RNG seed")->capture_default_str();
    gen->add_option("--out", gen_out, "output edge list path (default stdout)");

    // embed-clique
    auto* embed = app.add_subcommand("embed-clique", "Embed a clique into an edge-list network");
    std::string embed_in, embed_out, embed_members;
    std::size_t embed_m = 0;
    std::uint64_t embed_seed = 1;
    embed->add_option("input", embed_in, "edge list path")->required();
    embed->add_option("--m", embed_m, "clique size, members chosen uniformly at random");
    embed->add_option("--members", embed_members, "comma-separated node labels (overrides --m)");
    embed->add_option("--seed", embed_seed, "RNG seed")->capture_default_str();
    embed->add_option("--out", embed_out, "output edge list path (default stdout)");

    // detect
    auto* det = app.add_subcommand("detect", "Run the egonet test on an edge-list network");
    std::string det_in, det_model = "er", det_out;
    int det_k = 2;
    double det_alpha = 0.01;
    bool det_chi2 = false;
    int det_threads = 1;
    std::uint64_t det_seed = 0;
    det->add_option("input", det_in, "edge list path")->required();
    det->add_option("--model", det_model, "null model: er|chunglu|sbm|dcsbm|pabm")
        ->capture_default_str();
    det->add_option("--k", det_k, "community count for sbm/dcsbm/pabm")->capture_default_str();
    det->add_option("--alpha", det_alpha, "significance level")->capture_default_str();
    det->add_flag("--chi2", det_chi2, "also run the chi-squared benchmark detector");
    det->add_option("--threads", det_threads, "worker count")->capture_default_str();
    det->add_option("--seed", det_seed, "echoed into the report")->capture_default_str();
    det->add_option("--out", det_out, "report path (default stdout)");

    // recover-clique
    auto* rec = app.add_subcommand("recover-clique", "Exact max clique on a flagged node set");
    std::string rec_in, rec_nodes, rec_out;
    rec->add_option("input", rec_in, "edge list path")->required();
    rec->add_option("--nodes", rec_nodes, "comma-separated flagged node labels")->required();
    rec->add_option("--out", rec_out, "report path (default stdout)");

    // simulate
    auto* sim = app.add_subcommand("simulate", "Seeded Monte-Carlo sweeps");
    std::string sim_suite, sim_model = "er", sim_out;
    double sim_scale = 0.01;
    std::size_t sim_n = 500, sim_reps = 100;
    std::vector<std::size_t> sim_m{0, 10};
    std::vector<double> sim_alphas{0.01};
    bool sim_chi2 = false;
    std::uint64_t sim_seed = 20240601;
    int sim_threads = 1;
    sim->add_option("--suite", sim_suite, "'paper' runs the full factorial");
    sim->add_option("--scale", sim_scale, "replicate scale for --suite paper")->capture_default_str();
    sim->add_option("--model", sim_model, "model kind for an explicit cell")->capture_default_str();
    sim->add_option("--n", sim_n, "node count")->capture_default_str();
    sim->add_option("--m", sim_m, "clique sizes (0 = null runs)")->capture_default_str();
    sim->add_option("--alpha", sim_alphas, "significance levels")->capture_default_str();
    sim->add_option("--replicates", sim_reps, "replicates per cell")->capture_default_str();
    sim->add_flag("--chi2", sim_chi2, "also run the chi-squared benchmark detector");
    sim->add_option("--seed", sim_seed, "base seed")->capture_default_str();
    sim->add_option("--threads", sim_threads, "worker count")->capture_default_str();
    sim->add_option("--out", sim_out, "summary path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage errors exit 1
    }

    try {
        if (gen->parsed()) {
            ModelSpec spec;
            if (model_kind_from_string(gen_model) == ModelKind::ErdosRenyi) {
                spec.kind = ModelKind::ErdosRenyi;
                spec.edge_law = EdgeLaw::Bernoulli;
                spec.n = gen_n;
                spec.er_p = gen_p;
                spec.validate();
            } else {
                spec = make_simulation_spec(model_kind_from_string(gen_model), gen_n,
                                            rng::derive_seed(gen_seed, {0}));
            }
            Graph g = generate(spec, rng::derive_seed(gen_seed, {1}));
            std::ostringstream text;
            write_edge_list(text, with_default_labels(std::move(g)));
            emit(gen_out, text.str());
        } else if (embed->parsed()) {
            LabeledGraph lg = read_edge_list_file(embed_in);
            CliquePlan plan;
            if (!embed_members.empty()) {
                std::istringstream ss(embed_members);
                std::string tok;
                while (std::getline(ss, tok, ',')) plan.members.push_back(lg.index_of(tok));
            } else if (embed_m >= 2) {
                plan = sample_clique_members(lg.graph.node_count(), embed_m, embed_seed);
            } else {
                std::cerr << "embed-clique: need --m >= 2 or --members\n";
                return 1;
            }
            lg.graph = embed_clique(lg.graph, plan);
            std::ostringstream text;
            write_edge_list(text, lg);
            emit(embed_out, text.str());
        } else if (det->parsed()) {
            LabeledGraph lg = read_edge_list_file(det_in);
            FittedModel fm = fit_for_cli(lg.graph, det_model, det_k);
            DetectionReport report = detect(lg.graph, fm, det_alpha, det_threads);
            nlohmann::json j = to_json(report, lg.labels);
            j["config"] = {{"model", det_model}, {"k", det_k}, {"alpha", det_alpha},
                           {"seed", det_seed}, {"input", det_in}};
            if (det_chi2) j["chi2"] = to_json(chi2_detect(lg.graph, fm, det_alpha));
            emit(det_out, render(j));
            std::cerr << (report.reject ? "REJECT" : "no rejection") << "  T_n=" << report.t_n
                      << "  threshold=" << report.threshold << "  flagged=" << report.flagged.size()
                      << "\n";
        } else if (rec->parsed()) {
            LabeledGraph lg = read_edge_list_file(rec_in);
            std::vector<NodeIndex> flagged;
            std::istringstream ss(rec_nodes);
            std::string tok;
            while (std::getline(ss, tok, ',')) flagged.push_back(lg.index_of(tok));
            auto clique = recover_clique(lg.graph, flagged);
            nlohmann::json j;
            j["schema_version"] = kReportSchemaVersion;
            j["kind"] = "clique_recovery";
            nlohmann::json members = nlohmann::json::array();
            for (NodeIndex v : clique) members.push_back(lg.labels[v]);
            j["clique"] = members;
            j["size"] = clique.size();
            emit(rec_out, render(j));
        } else if (sim->parsed()) {
            SimSummary summary;
            nlohmann::json config;
            if (sim_suite == "paper") {
                summary = paper_suite(sim_scale, sim_seed, sim_threads);
                config = {{"suite", "paper"}, {"scale", sim_scale}, {"seed", sim_seed}};
            } else if (sim_suite.empty()) {
                SimConfig cfg;
                cfg.kind = model_kind_from_string(sim_model);
                cfg.n = sim_n;
                cfg.clique_sizes = sim_m;
                cfg.alphas = sim_alphas;
                cfg.replicates = sim_reps;
                cfg.base_seed = sim_seed;
                cfg.run_chi2 = sim_chi2;
                cfg.threads = sim_threads;
                summary = run_simulation(cfg);
                config = {{"model", sim_model}, {"n", sim_n}, {"replicates", sim_reps},
                          {"seed", sim_seed}};
            } else {
                std::cerr << "simulate: unknown suite '" << sim_suite << "'\n";
                return 1;
            }
            nlohmann::json j = to_json(summary);
            j["config"] = config;
            emit(sim_out, render(j));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace egonet::io
