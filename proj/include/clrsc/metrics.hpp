#pragma once

#include "clrsc/numerics.hpp"
#include "clrsc/solver.hpp"
#include "clrsc/spectral.hpp"

#include <vector>

namespace clrsc {

/// Permutation p maximizing sum_i confusion(i, p[i]); exhaustive for k <= 8,
/// Hungarian assignment above.
std::vector<int> best_label_matching(const Matrix& confusion);

/// Subspace clustering accuracy in [0, 100]: percentage of points matched
/// under the best one-to-one label permutation.
double sca(const ClusterAssignment& predicted, const ClusterAssignment& truth);

/// 10 log10(s^2 / MSE); returns +infinity when the inputs are equal.
double psnr(const Matrix& clean, const Matrix& noisy, double s);

/// Noise level realizing an expected PSNR of `target_db` for peak value s.
double sigma_for_psnr(double target_db, double s);

/// Mean pairwise Frobenius distance between the per-view coefficient
/// matrices; ||Z_1 - Z_2||_F for two views.
double coeff_difference(const CoefficientStack& stack);
double coeff_difference(const std::vector<Matrix>& z);

}  // namespace clrsc
