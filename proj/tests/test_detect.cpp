#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "egonet/detect.hpp"
#include "egonet/models.hpp"
#include "egonet/rng.hpp"
#include "egonet/tail.hpp"

using namespace egonet;

namespace {

// Brute-force per-node statistics on a dense matrix.
struct DenseStats {
    std::uint64_t pairs;
    EdgeWeight egonet;
};

DenseStats dense_stats(const Graph& g, NodeIndex i) {
    std::size_t n = g.node_count();
    std::vector<NodeIndex> nbrs;
    for (NodeIndex j = 0; j < n; ++j)
        if (j != i && g.edge_weight(i, j) > 0) nbrs.push_back(j);
    EdgeWeight e = 0;
    for (std::size_t a = 0; a < nbrs.size(); ++a)
        for (std::size_t b = a + 1; b < nbrs.size(); ++b) e += g.edge_weight(nbrs[a], nbrs[b]);
    return {pair_count(nbrs.size()), e};
}

}  // namespace

TEST_CASE("p-values match a dense recomputation under the homogeneous null") {
    Graph g = generate(make_simulation_spec(ModelKind::ErdosRenyi, 200, 0), 12);
    FittedModel fm = fit_er(g);
    auto records = egonet_pvalues(g, fm);
    REQUIRE(records.size() == 200);
    for (const auto& rec : records) {
        auto ds = dense_stats(g, rec.node);
        CHECK(rec.pair_count == ds.pairs);
        CHECK(rec.egonet_degree == ds.egonet);
        double want = ds.pairs < 1 ? 1.0 : tail::binom_sf(ds.egonet, ds.pairs, fm.er_p);
        if (ds.pairs >= 1 && g.neighborhood(rec.node).size() < 2) want = 1.0;
        CHECK(rec.p_value == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("p-values match a long-double rate sum under a heterogeneous null") {
    Graph g = generate(make_simulation_spec(ModelKind::ChungLu, 150, 3), 13);
    FittedModel fm = fit_chunglu(g);
    auto records = egonet_pvalues(g, fm);
    for (const auto& rec : records) {
        auto nbrs = g.neighborhood(rec.node);
        if (nbrs.size() < 2) {
            CHECK(rec.p_value == 1.0);
            continue;
        }
        long double lambda = 0.0L;
        for (std::size_t a = 0; a < nbrs.size(); ++a)
            for (std::size_t b = a + 1; b < nbrs.size(); ++b)
                lambda += static_cast<long double>(fm.rate(nbrs[a], nbrs[b]));
        double want = tail::poisson_sf(rec.egonet_degree, static_cast<double>(lambda));
        CHECK(rec.p_value == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("results are identical for any worker count") {
    Graph g = generate(make_simulation_spec(ModelKind::Dcsbm, 300, 8), 14);
    FittedModel fm = fit_dcsbm(g, 3);
    auto one = egonet_pvalues(g, fm, 1);
    for (int threads : {2, 3, 7}) {
        auto many = egonet_pvalues(g, fm, threads);
        REQUIRE(many.size() == one.size());
        for (std::size_t i = 0; i < one.size(); ++i) {
            CHECK(many[i].p_value == one[i].p_value);  // bitwise, not approximate
            CHECK(many[i].egonet_degree == one[i].egonet_degree);
        }
    }
}

TEST_CASE("flagged sets grow monotonically with alpha") {
    ModelSpec spec = make_simulation_spec(ModelKind::ErdosRenyi, 300, 0);
    Graph g = embed_clique(generate(spec, 15), sample_clique_members(300, 8, 15));
    FittedModel fm = fit_er(g);
    std::vector<NodeIndex> prev;
    for (double alpha : {0.001, 0.01, 0.05, 0.2}) {
        auto report = detect(g, fm, alpha);
        CHECK(report.threshold == doctest::Approx(alpha / 300.0));
        CHECK(report.reject == (report.t_n < report.threshold));
        CHECK(report.reject == !report.flagged.empty());
        CHECK(std::includes(report.flagged.begin(), report.flagged.end(), prev.begin(),
                            prev.end()));
        prev = report.flagged;
    }
}

TEST_CASE("detection output is equivariant under node relabeling") {
    std::size_t n = 120;
    ModelSpec spec = make_simulation_spec(ModelKind::ErdosRenyi, n, 0);
    Graph g = embed_clique(generate(spec, 16), sample_clique_members(n, 7, 16));

    std::vector<NodeIndex> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<NodeIndex>(i);
    auto eng = rng::make_engine(17);
    std::shuffle(perm.begin(), perm.end(), eng);

    std::vector<std::tuple<NodeIndex, NodeIndex, EdgeWeight>> mapped;
    g.for_each_edge([&](NodeIndex i, NodeIndex j, EdgeWeight w) {
        mapped.emplace_back(perm[i], perm[j], w);
    });
    Graph h = Graph::from_edges(n, mapped);

    auto rg = egonet_pvalues(g, fit_er(g));
    auto rh = egonet_pvalues(h, fit_er(h));
    for (NodeIndex i = 0; i < n; ++i)
        CHECK(rh[perm[i]].p_value == doctest::Approx(rg[i].p_value).epsilon(1e-12));
}

TEST_CASE("a planted clique is flagged and recovered") {
    std::size_t n = 500;
    ModelSpec spec = make_simulation_spec(ModelKind::ErdosRenyi, n, 0);
    auto plan = sample_clique_members(n, 12, 404);
    Graph g = embed_clique(generate(spec, 404), plan);
    auto report = detect(g, fit_er(g), 0.01);
    CHECK(report.reject);
    // every clique member shows up in the flagged set
    for (NodeIndex v : plan.members)
        CHECK(std::binary_search(report.flagged.begin(), report.flagged.end(), v));
    auto clique = recover_clique(g, report.flagged);
    CHECK(clique.size() >= 12);
    std::vector<NodeIndex> inter;
    std::set_intersection(clique.begin(), clique.end(), plan.members.begin(), plan.members.end(),
                          std::back_inserter(inter));
    CHECK(inter.size() == plan.members.size());
}

TEST_CASE("clique recovery agrees with exhaustive search on 15 nodes") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        std::size_t n = 15;
        auto eng = rng::make_engine(seed + 100);
        std::vector<std::tuple<NodeIndex, NodeIndex, EdgeWeight>> edges;
        for (NodeIndex i = 0; i < n; ++i)
            for (NodeIndex j = i + 1; j < n; ++j)
                if (rng::uniform01(eng) < 0.5) edges.emplace_back(i, j, 1);
        Graph g = Graph::from_edges(n, edges);

        // exhaustive: best (largest, then lexicographically smallest) clique
        std::vector<NodeIndex> best;
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            std::vector<NodeIndex> mem;
            for (NodeIndex v = 0; v < n; ++v)
                if (mask & (1u << v)) mem.push_back(v);
            bool clique = true;
            for (std::size_t a = 0; a < mem.size() && clique; ++a)
                for (std::size_t b = a + 1; b < mem.size(); ++b)
                    if (g.edge_weight(mem[a], mem[b]) == 0) {
                        clique = false;
                        break;
                    }
            if (!clique) continue;
            if (mem.size() > best.size() ||
                (mem.size() == best.size() && std::lexicographical_compare(mem.begin(), mem.end(),
                                                                           best.begin(),
                                                                           best.end())))
                best = mem;
        }

        std::vector<NodeIndex> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<NodeIndex>(i);
        auto got = recover_clique(g, all);
        CHECK(got == best);
    }
}

TEST_CASE("clique recovery guards oversized flagged sets") {
    Graph g = generate(make_simulation_spec(ModelKind::ErdosRenyi, 300, 0), 1);
    std::vector<NodeIndex> flagged(201);
    for (std::size_t i = 0; i < flagged.size(); ++i) flagged[i] = static_cast<NodeIndex>(i);
    CHECK_THROWS(recover_clique(g, flagged));
    CHECK(recover_clique(g, {}).empty());
}

TEST_CASE("alpha outside (0,1) is rejected") {
    Graph g = generate(make_simulation_spec(ModelKind::ErdosRenyi, 50, 0), 2);
    FittedModel fm = fit_er(g);
    CHECK_THROWS(detect(g, fm, 0.0));
    CHECK_THROWS(detect(g, fm, 1.0));
    CHECK_THROWS(detect(g, fm, -0.5));
}
