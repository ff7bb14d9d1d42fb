#include "clrsc/spectral.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace clrsc {

Matrix fuse_affinity(const std::vector<Matrix>& z) {
    if (z.empty()) throw std::invalid_argument("fuse_affinity: empty stack");
    const Eigen::Index n = z.front().rows();
    for (const Matrix& zi : z) {
        if (zi.rows() != n || zi.cols() != n) {
            throw std::invalid_argument("fuse_affinity: coefficient matrices must all be NxN");
        }
    }
    Matrix sq = Matrix::Zero(n, n);
    for (const Matrix& zi : z) sq += zi.cwiseProduct(zi);
    const Matrix p = sq.cwiseSqrt();
    return p + p.transpose();
}

Matrix fuse_affinity(const CoefficientStack& stack) { return fuse_affinity(stack.Z); }

Matrix normalized_laplacian(const Matrix& w) {
    const Eigen::Index n = w.rows();
    Vector dinv_sqrt(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double d = w.row(i).sum();
        dinv_sqrt(i) = d > 0 ? 1.0 / std::sqrt(d) : 0.0;
    }
    Matrix l = -(dinv_sqrt.asDiagonal() * w * dinv_sqrt.asDiagonal());
    l.diagonal().array() += 1.0;
    // Exact symmetry despite rounding in the normalization products.
    l = ((l + l.transpose()) / 2.0).eval();
    return l;
}

Matrix spectral_embed(const Matrix& laplacian, int k) {
    if (k < 1 || k > laplacian.rows()) {
        throw std::invalid_argument("spectral_embed: k out of range");
    }
    auto [values, vectors] = sym_eig_smallest(laplacian, k);
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
        const double norm = vectors.row(i).norm();
        if (norm > 0) vectors.row(i) /= norm;
    }
    return vectors;
}

namespace {

double squared_dist(const Matrix& points, Eigen::Index row, const Matrix& centroids,
                    Eigen::Index c) {
    return (points.row(row) - centroids.row(c)).squaredNorm();
}

Matrix seed_plusplus(const Matrix& points, int k, RngStream& rng) {
    const Eigen::Index n = points.rows();
    Matrix centroids(k, points.cols());
    centroids.row(0) = points.row(static_cast<Eigen::Index>(rng.next_u64() % n));
    Vector d2(n);
    for (int c = 1; c < k; ++c) {
        for (Eigen::Index i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::max();
            for (int j = 0; j < c; ++j) best = std::min(best, squared_dist(points, i, centroids, j));
            d2(i) = best;
        }
        const double total = d2.sum();
        if (total <= 0) {
            // All mass on chosen points (duplicates); fall back to uniform.
            centroids.row(c) = points.row(static_cast<Eigen::Index>(rng.next_u64() % n));
            continue;
        }
        double target = rng.uniform() * total;
        Eigen::Index pick = n - 1;
        for (Eigen::Index i = 0; i < n; ++i) {
            target -= d2(i);
            if (target <= 0) {
                pick = i;
                break;
            }
        }
        centroids.row(c) = points.row(pick);
    }
    return centroids;
}

}  // namespace

ClusterAssignment kmeans(const Matrix& points, int k, RngStream& rng, const KMeansOptions& opts) {
    const Eigen::Index n = points.rows();
    if (k < 1 || k > n) throw std::invalid_argument("kmeans: k out of range");

    std::vector<int> best_labels;
    double best_wcss = std::numeric_limits<double>::max();

    for (int restart = 0; restart < opts.restarts; ++restart) {
        Matrix centroids = seed_plusplus(points, k, rng);
        std::vector<int> labels(n, 0);
        double wcss = std::numeric_limits<double>::max();

        for (int it = 0; it < opts.max_iters; ++it) {
            double new_wcss = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                double best = std::numeric_limits<double>::max();
                int arg = 0;
                for (int c = 0; c < k; ++c) {
                    const double d = squared_dist(points, i, centroids, c);
                    if (d < best) {
                        best = d;
                        arg = c;
                    }
                }
                labels[i] = arg;
                new_wcss += best;
            }

            centroids.setZero();
            std::vector<Eigen::Index> counts(k, 0);
            for (Eigen::Index i = 0; i < n; ++i) {
                centroids.row(labels[i]) += points.row(i);
                counts[labels[i]] += 1;
            }
            for (int c = 0; c < k; ++c) {
                if (counts[c] > 0) {
                    centroids.row(c) /= static_cast<double>(counts[c]);
                } else {
                    // Re-seed an empty cluster at the point farthest from its centroid.
                    Eigen::Index far = 0;
                    double far_d = -1.0;
                    for (Eigen::Index i = 0; i < n; ++i) {
                        const double d = squared_dist(points, i, centroids, labels[i]);
                        if (d > far_d) {
                            far_d = d;
                            far = i;
                        }
                    }
                    centroids.row(c) = points.row(far);
                }
            }

            if (wcss < std::numeric_limits<double>::max() &&
                std::abs(wcss - new_wcss) <= opts.tol * std::max(wcss, 1e-300)) {
                wcss = new_wcss;
                break;
            }
            wcss = new_wcss;
        }

        if (wcss < best_wcss) {
            best_wcss = wcss;
            best_labels = labels;
        }
    }

    ClusterAssignment out;
    out.k = k;
    out.labels.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) out.labels[i] = best_labels[i] + 1;
    return out;
}

ClusterAssignment cluster(const Matrix& w, int k, RngStream& rng) {
    return kmeans(spectral_embed(normalized_laplacian(w), k), k, rng);
}

}  // namespace clrsc
