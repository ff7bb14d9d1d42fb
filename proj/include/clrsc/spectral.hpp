#pragma once

#include "clrsc/numerics.hpp"
#include "clrsc/solver.hpp"

#include <vector>

namespace clrsc {

struct ClusterAssignment {
    std::vector<int> labels;  // values in {1..k}
    int k = 0;
};

/// W_ij = sqrt(sum_k Z_k(i,j)^2) + sqrt(sum_k Z_k(j,i)^2); symmetric and
/// nonnegative by construction.
Matrix fuse_affinity(const CoefficientStack& stack);
Matrix fuse_affinity(const std::vector<Matrix>& z);

/// L = I - D^{-1/2} W D^{-1/2}; zero-degree rows use a zero scaling entry.
Matrix normalized_laplacian(const Matrix& w);

/// N x k matrix of the k smallest eigenvectors of L, rows normalized to unit
/// length (zero rows stay zero).
Matrix spectral_embed(const Matrix& laplacian, int k);

struct KMeansOptions {
    int restarts = 20;
    int max_iters = 300;
    double tol = 1e-9;  // relative WCSS change
};

/// k-means++ with best-of-restarts by within-cluster sum of squares.
ClusterAssignment kmeans(const Matrix& points, int k, RngStream& rng,
                         const KMeansOptions& opts = {});

/// Normalized spectral clustering: laplacian -> embedding -> k-means.
ClusterAssignment cluster(const Matrix& w, int k, RngStream& rng);

}  // namespace clrsc
