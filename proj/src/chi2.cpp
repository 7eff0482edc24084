#include "egonet/chi2.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "egonet/tail.hpp"

namespace egonet {

std::pair<Eigen::VectorXd, Eigen::VectorXd> residual_pcs(const Graph& g, const FittedModel& fm) {
    if (g.node_count() != fm.n) throw std::invalid_argument("residual_pcs: node-count mismatch");
    if (g.node_count() < 2) throw std::invalid_argument("residual_pcs: need n >= 2");
    const auto n = static_cast<Eigen::Index>(g.node_count());

    Eigen::MatrixXd residual = -expected_adjacency(fm);
    for (NodeIndex i = 0; i < g.node_count(); ++i) {
        auto nbrs = g.neighborhood(i);
        auto wts = g.neighbor_weights(i);
        for (std::size_t k = 0; k < nbrs.size(); ++k)
            residual(i, nbrs[k]) += static_cast<double>(wts[k]);
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(residual);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("residual_pcs: eigensolver failed to converge");

    const auto& evals = solver.eigenvalues();
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return std::fabs(evals[a]) > std::fabs(evals[b]);
    });

    auto canonical = [&](Eigen::Index col) {
        Eigen::VectorXd v = solver.eigenvectors().col(col);
        Eigen::Index arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        if (v[arg] < 0.0) v = -v;  // sign fixed on the largest-magnitude entry
        return v;
    };
    return {canonical(order[0]), canonical(order[1])};
}

namespace {

std::array<long, 4> quadrant_counts(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2,
                                    double angle) {
    const double c = std::cos(-angle), s = std::sin(-angle);
    std::array<long, 4> counts{0, 0, 0, 0};  // (N11, N12, N21, N22)
    for (Eigen::Index i = 0; i < x1.size(); ++i) {
        double rx = c * x1[i] - s * x2[i];
        double ry = s * x1[i] + c * x2[i];
        // zero coordinates count as positive
        int row = rx >= 0.0 ? 0 : 1;
        int col = ry >= 0.0 ? 0 : 1;
        ++counts[row * 2 + col];
    }
    return counts;
}

double table_chi2(const std::array<long, 4>& t) {
    double n11 = static_cast<double>(t[0]), n12 = static_cast<double>(t[1]);
    double n21 = static_cast<double>(t[2]), n22 = static_cast<double>(t[3]);
    double r1 = n11 + n12, r2 = n21 + n22;
    double c1 = n11 + n21, c2 = n12 + n22;
    if (r1 == 0.0 || r2 == 0.0 || c1 == 0.0 || c2 == 0.0) return 0.0;
    double n = r1 + r2;
    double det = n11 * n22 - n12 * n21;
    return n * det * det / (r1 * r2 * c1 * c2);
}

}  // namespace

double quadrant_chi2(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2, double angle) {
    if (x1.size() != x2.size()) throw std::invalid_argument("quadrant_chi2: length mismatch");
    return table_chi2(quadrant_counts(x1, x2, angle));
}

double chi2_critical(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("chi2_critical: alpha outside (0,1)");
    return tail::chi2_quantile_1df(1.0 - alpha / 32.0);
}

Chi2Report chi2_detect(const Graph& g, const FittedModel& fm, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("chi2_detect: alpha outside (0,1)");
    auto [x1, x2] = residual_pcs(g, fm);

    Chi2Report report;
    report.statistic = -1.0;
    constexpr int kGridSize = 32;
    for (int k = 1; k <= kGridSize; ++k) {
        double angle = static_cast<double>(k) * M_PI / 16.0;
        auto table = quadrant_counts(x1, x2, angle);
        report.quadrant_tables.push_back(table);
        double stat = table_chi2(table);
        if (stat > report.statistic) {
            report.statistic = stat;
            report.angle = angle;
        }
    }
    report.critical = chi2_critical(alpha);
    report.reject = report.statistic > report.critical;
    return report;
}

}  // namespace egonet
