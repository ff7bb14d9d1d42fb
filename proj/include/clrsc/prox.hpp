#pragma once

#include "clrsc/numerics.hpp"

namespace clrsc {

/// Singular value thresholding: the proximal operator of beta * nuclear norm,
/// i.e. the minimizer of beta*||Z||_* + 1/2*||Z - m||_F^2.
/// Short-and-wide inputs go through the Gram-matrix SVD.
Matrix svt(const Matrix& m, double beta);

/// Column-wise l2 shrinkage: proximal operator of tau * ||.||_{1,2}.
/// Columns with norm <= tau map to zero.
Matrix prox_l12_columns(const Matrix& v, double tau);

/// Minimizer of ||E||_F^2 + mu/2 * ||r - E||_F^2, i.e. E = r * mu / (mu + 2).
Matrix frobenius_error_prox(const Matrix& r, double mu);

}  // namespace clrsc
