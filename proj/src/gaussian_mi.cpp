#include "pairkey/gaussian_mi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pairkey {

namespace {

void check_indices(const Eigen::MatrixXd& cov, const std::vector<int>& idx) {
    for (int k : idx) {
        if (k < 0 || k >= cov.rows())
            throw std::invalid_argument("covariance index out of range");
    }
}

void check_disjoint(const std::vector<int>& a, const std::vector<int>& b) {
    for (int x : a)
        for (int y : b)
            if (x == y) throw std::invalid_argument("index sets must be disjoint");
}

// det of the principal submatrix; an empty set contributes det = 1.
double subdet(const Eigen::MatrixXd& cov, const std::vector<int>& idx) {
    if (idx.empty()) return 1.0;
    const int n = static_cast<int>(idx.size());
    Eigen::MatrixXd sub(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) sub(r, c) = cov(idx[r], idx[c]);
    return sub.determinant();
}

std::vector<int> join(const std::vector<int>& x, const std::vector<int>& y) {
    std::vector<int> out = x;
    out.insert(out.end(), y.begin(), y.end());
    return out;
}

}  // namespace

double gaussian_conditional_mi(const Eigen::MatrixXd& cov, const std::vector<int>& a,
                               const std::vector<int>& b, const std::vector<int>& c) {
    if (cov.rows() != cov.cols()) throw std::invalid_argument("covariance must be square");
    check_indices(cov, a);
    check_indices(cov, b);
    check_indices(cov, c);
    check_disjoint(a, b);
    check_disjoint(a, c);
    check_disjoint(b, c);

    const double det_ac = subdet(cov, join(a, c));
    const double det_bc = subdet(cov, join(b, c));
    const double det_c = subdet(cov, c);
    const double det_abc = subdet(cov, join(join(a, b), c));
    if (!(det_ac > 0.0) || !(det_bc > 0.0) || !(det_c > 0.0) || !(det_abc > 0.0))
        return std::numeric_limits<double>::infinity();

    const double mi = 0.5 * (std::log2(det_ac) + std::log2(det_bc) - std::log2(det_c) -
                             std::log2(det_abc));
    return std::max(mi, 0.0);
}

double gaussian_mi(const Eigen::MatrixXd& cov, const std::vector<int>& a,
                   const std::vector<int>& b) {
    return gaussian_conditional_mi(cov, a, b, {});
}

}  // namespace pairkey
