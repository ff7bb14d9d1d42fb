#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace clrsc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Thrown when a factorization fails to converge or iterates go non-finite.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown on malformed input data (files, manifests, shape mismatches).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Deterministic random stream. The generator is pinned to splitmix64 seeded
/// by a mix of (seed, stream id), with Gaussian draws via Box-Muller over
/// 53-bit uniforms, so identical (seed, stream) pairs replay identical
/// sequences on any platform.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next_u64();
    /// Uniform on [0, 1).
    double uniform();
    /// Standard normal.
    double gaussian();

    /// FNV-1a hash for deriving stream ids from purpose labels.
    static std::uint64_t stream_id(std::string_view label);

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

struct SvdResult {
    Matrix U;
    Vector sigma;  // nonincreasing, nonnegative
    Matrix V;
};

/// Thin SVD, min(rows, cols) components.
SvdResult thin_svd(const Matrix& m);

/// Thin SVD of a short-and-wide matrix through the rows x rows Gram matrix.
/// Components with singular value <= 1e-12 are dropped, so U/V may have
/// fewer than min(rows, cols) columns; the reconstruction is unaffected.
SvdResult gram_svd_wide(const Matrix& m);

/// k smallest eigenpairs of a symmetric matrix; values nondecreasing.
std::pair<Vector, Matrix> sym_eig_smallest(const Matrix& m, Eigen::Index k);

/// Largest singular value.
double spectral_norm(const Matrix& m);

Matrix random_orthonormal(RngStream& rng, Eigen::Index rows, Eigen::Index cols);

/// Random orthogonal matrix with determinant +1.
Matrix random_rotation(RngStream& rng, Eigen::Index n);

/// iid N(0, sigma^2) entries.
Matrix gaussian_matrix(RngStream& rng, Eigen::Index rows, Eigen::Index cols, double sigma);

}  // namespace clrsc
