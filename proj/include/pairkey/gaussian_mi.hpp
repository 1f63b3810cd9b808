#pragma once

#include <Eigen/Dense>
#include <vector>

namespace pairkey {

// Mutual information I(A;B) in bits between blocks of a jointly Gaussian
// vector with covariance `cov`, via 1/2 log2(det(S_A) det(S_B) / det(S_AB)).
// A singular block yields the distinguished value +infinity.
double gaussian_mi(const Eigen::MatrixXd& cov, const std::vector<int>& a,
                   const std::vector<int>& b);

// Conditional version I(A;B|C); c may be empty.
double gaussian_conditional_mi(const Eigen::MatrixXd& cov, const std::vector<int>& a,
                               const std::vector<int>& b, const std::vector<int>& c);

}  // namespace pairkey
