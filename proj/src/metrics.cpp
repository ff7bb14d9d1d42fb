#include "clrsc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace clrsc {

namespace {

// Hungarian algorithm (Jonker-Volgenant style potentials), O(k^3),
// minimizing; we feed negated counts to maximize agreement.
std::vector<int> hungarian_min(const Matrix& cost) {
    const int n = static_cast<int>(cost.rows());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, false);
        do {
            used[j0] = true;
            const int i0 = p[j0];
            double delta = inf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> match(n, 0);
    for (int j = 1; j <= n; ++j) {
        if (p[j] != 0) match[p[j] - 1] = j - 1;
    }
    return match;
}

}  // namespace

std::vector<int> best_label_matching(const Matrix& confusion) {
    if (confusion.rows() != confusion.cols()) {
        throw std::invalid_argument("best_label_matching: confusion matrix must be square");
    }
    const int k = static_cast<int>(confusion.rows());
    if (k == 0) return {};
    if (k <= 8) {
        std::vector<int> perm(k), best(k);
        std::iota(perm.begin(), perm.end(), 0);
        best = perm;
        double best_sum = -1.0;
        do {
            double sum = 0.0;
            for (int i = 0; i < k; ++i) sum += confusion(i, perm[i]);
            if (sum > best_sum) {
                best_sum = sum;
                best = perm;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }
    return hungarian_min(-confusion);
}

double sca(const ClusterAssignment& predicted, const ClusterAssignment& truth) {
    const std::size_t n = truth.labels.size();
    if (predicted.labels.size() != n) {
        throw std::invalid_argument("sca: assignments have different lengths");
    }
    if (n == 0) throw std::invalid_argument("sca: empty assignments");

    const int k = std::max(predicted.k, truth.k);
    Matrix confusion = Matrix::Zero(k, k);
    for (std::size_t i = 0; i < n; ++i) {
        confusion(truth.labels[i] - 1, predicted.labels[i] - 1) += 1.0;
    }
    const std::vector<int> perm = best_label_matching(confusion);
    double matched = 0.0;
    for (int i = 0; i < k; ++i) matched += confusion(i, perm[i]);
    const double misclassified = static_cast<double>(n) - matched;
    return 100.0 - misclassified * 100.0 / static_cast<double>(n);
}

double psnr(const Matrix& clean, const Matrix& noisy, double s) {
    if (clean.rows() != noisy.rows() || clean.cols() != noisy.cols()) {
        throw std::invalid_argument("psnr: shape mismatch");
    }
    if (s <= 0) throw std::invalid_argument("psnr: peak value must be > 0");
    const double mse = (clean - noisy).squaredNorm() / static_cast<double>(clean.size());
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(s * s / mse);
}

double sigma_for_psnr(double target_db, double s) {
    return s * std::pow(10.0, -target_db / 20.0);
}

double coeff_difference(const std::vector<Matrix>& z) {
    if (z.size() < 2) throw std::invalid_argument("coeff_difference: needs at least two views");
    double sum = 0.0;
    int pairs = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        for (std::size_t j = i + 1; j < z.size(); ++j) {
            sum += (z[i] - z[j]).norm();
            pairs += 1;
        }
    }
    return sum / pairs;
}

double coeff_difference(const CoefficientStack& stack) { return coeff_difference(stack.Z); }

}  // namespace clrsc
