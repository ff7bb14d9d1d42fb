#include "clrsc/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace clrsc {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) {
    // Decorrelate seed and stream id before they enter the counter.
    std::uint64_t s = seed;
    std::uint64_t mixed = splitmix64(s);
    s = mixed ^ (stream_id * 0xda942042e4dd58b5ULL);
    state_ = splitmix64(s) ^ stream_id;
}

std::uint64_t RngStream::next_u64() { return splitmix64(state_); }

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // Box-Muller; u1 shifted into (0, 1] so the log is finite.
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

std::uint64_t RngStream::stream_id(std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

SvdResult thin_svd(const Matrix& m) {
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() == Eigen::Success && svd.singularValues().allFinite() &&
        svd.matrixU().allFinite() && svd.matrixV().allFinite()) {
        return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
    }
    // Eigen 3.4.0's divide-and-conquer kernel can emit NaN on some well-scaled
    // inputs; the one-sided Jacobi path is slower but does not share the defect.
    Eigen::JacobiSVD<Matrix> jac(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (jac.info() != Eigen::Success) {
        throw NumericalError("SVD failed to converge on a " + std::to_string(m.rows()) +
                             "x" + std::to_string(m.cols()) + " matrix");
    }
    return {jac.matrixU(), jac.singularValues(), jac.matrixV()};
}

SvdResult gram_svd_wide(const Matrix& m) {
    const Matrix gram = m * m.transpose();  // rows x rows
    Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
    if (eig.info() != Eigen::Success) {
        throw NumericalError("eigendecomposition failed on a " + std::to_string(gram.rows()) +
                             "x" + std::to_string(gram.cols()) + " Gram matrix");
    }
    const Eigen::Index r = gram.rows();
    // Eigenvalues come back ascending; reverse to nonincreasing singular values.
    Eigen::Index kept = 0;
    for (Eigen::Index i = 0; i < r; ++i) {
        if (std::sqrt(std::max(eig.eigenvalues()(r - 1 - i), 0.0)) > 1e-12) ++kept;
    }
    SvdResult out;
    out.U.resize(m.rows(), kept);
    out.sigma.resize(kept);
    for (Eigen::Index i = 0; i < kept; ++i) {
        out.sigma(i) = std::sqrt(std::max(eig.eigenvalues()(r - 1 - i), 0.0));
        out.U.col(i) = eig.eigenvectors().col(r - 1 - i);
    }
    out.V = m.transpose() * out.U * out.sigma.cwiseInverse().asDiagonal();
    return out;
}

std::pair<Vector, Matrix> sym_eig_smallest(const Matrix& m, Eigen::Index k) {
    if (m.rows() != m.cols()) throw std::invalid_argument("sym_eig_smallest: matrix not square");
    if (k > m.rows()) throw std::invalid_argument("sym_eig_smallest: k exceeds dimension");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (((m - m.transpose()).cwiseAbs().maxCoeff()) > 1e-10 * scale) {
        throw std::invalid_argument("sym_eig_smallest: matrix not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
    if (eig.info() != Eigen::Success) {
        throw NumericalError("eigendecomposition failed on a " + std::to_string(m.rows()) +
                             "x" + std::to_string(m.cols()) + " matrix");
    }
    return {eig.eigenvalues().head(k), eig.eigenvectors().leftCols(k)};
}

double spectral_norm(const Matrix& m) {
    return Eigen::BDCSVD<Matrix>(m).singularValues()(0);
}

Matrix random_orthonormal(RngStream& rng, Eigen::Index rows, Eigen::Index cols) {
    if (cols > rows) throw std::invalid_argument("random_orthonormal: cols > rows");
    const Matrix g = gaussian_matrix(rng, rows, cols, 1.0);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = Matrix(qr.householderQ()).leftCols(cols);
    // Fix signs so the factorization is unique (R diagonal positive).
    const Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < cols; ++j) {
        if (r(j, j) < 0) q.col(j) = -q.col(j);
    }
    return q;
}

Matrix random_rotation(RngStream& rng, Eigen::Index n) {
    if (n < 1) throw std::invalid_argument("random_rotation: n must be >= 1");
    Matrix q = random_orthonormal(rng, n, n);
    if (q.determinant() < 0) q.col(n - 1) = -q.col(n - 1);
    return q;
}

Matrix gaussian_matrix(RngStream& rng, Eigen::Index rows, Eigen::Index cols, double sigma) {
    if (sigma < 0) throw std::invalid_argument("gaussian_matrix: sigma must be >= 0");
    Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            m(i, j) = sigma * rng.gaussian();
        }
    }
    return m;
}

}  // namespace clrsc
