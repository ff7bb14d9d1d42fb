#include "clrsc/prox.hpp"

#include <cmath>
#include <stdexcept>

namespace clrsc {

Matrix svt(const Matrix& m, double beta) {
    if (beta < 0 || !std::isfinite(beta)) {
        throw std::invalid_argument("svt: beta must be finite and >= 0");
    }
    if (beta == 0.0) return m;

    const bool wide = m.rows() <= 32 && m.cols() >= 4 * m.rows();
    const SvdResult svd = wide ? gram_svd_wide(m) : thin_svd(m);

    Vector s = svd.sigma;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        double v = s(i) - beta;
        s(i) = (v > 1e-12) ? v : 0.0;
    }
    return svd.U * s.asDiagonal() * svd.V.transpose();
}

Matrix prox_l12_columns(const Matrix& v, double tau) {
    if (tau == 0.0) return v;
    Matrix out = Matrix::Zero(v.rows(), v.cols());
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
        const double n = v.col(j).norm();
        if (n > tau) out.col(j) = ((n - tau) / n) * v.col(j);
    }
    return out;
}

Matrix frobenius_error_prox(const Matrix& r, double mu) {
    if (mu <= 0) throw std::invalid_argument("frobenius_error_prox: mu must be > 0");
    return r * (mu / (mu + 2.0));
}

}  // namespace clrsc
