#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "egonet/fit.hpp"
#include "egonet/graph.hpp"

namespace egonet {

struct Chi2Report {
    double statistic = 0.0;  // max over the rotation grid
    double angle = 0.0;      // argmax rotation
    double critical = 0.0;   // chi2_critical(alpha)
    bool reject = false;
    // 2x2 table per grid angle, stored (N11, N12, N21, N22)
    std::vector<std::array<long, 4>> quadrant_tables;
};

/// First two principal components of the residual R = A - E_hat[A]:
/// eigenvectors of the two largest-magnitude eigenvalues, unit norm, sign
/// fixed so the largest-magnitude entry is positive.
std::pair<Eigen::VectorXd, Eigen::VectorXd> residual_pcs(const Graph& g, const FittedModel& fm);

/// Rotate points by -angle, tabulate quadrant counts (zero coordinates count
/// as positive), return the chi-squared independence statistic; 0 when any
/// margin is 0.
double quadrant_chi2(const Eigen::VectorXd& x1, const Eigen::VectorXd& x2, double angle);

/// Critical value for the maximized statistic: the chi2_1 quantile at
/// 1 - alpha/32, a Bonferroni correction for maximizing over the grid.
double chi2_critical(double alpha);

/// Maximize over the 32-angle grid {k*pi/16 : k=1..32}; reject when the
/// statistic exceeds chi2_critical(alpha).
Chi2Report chi2_detect(const Graph& g, const FittedModel& fm, double alpha);

}  // namespace egonet
