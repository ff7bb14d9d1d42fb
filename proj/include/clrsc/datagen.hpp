#pragma once

#include "clrsc/numerics.hpp"
#include "clrsc/spectral.hpp"

#include <vector>

namespace clrsc {

struct MultiViewDataset {
    std::vector<Matrix> views;  // D_i x N, shared N
    std::vector<int> labels;    // empty when ground truth is absent
    int k = 0;

    bool has_labels() const { return !labels.empty(); }
    Eigen::Index n() const { return views.empty() ? 0 : views.front().cols(); }
    ClusterAssignment truth() const { return {labels, k}; }
};

struct SyntheticParams {
    Eigen::Index ambient = 100;
    int k = 5;
    Eigen::Index dim = 4;
    Eigen::Index per_cluster = 20;
    int views = 2;
};

/// Union-of-subspaces generator: per view, a random orthonormal base rotated
/// k-1 times, each cluster sampled through an iid Gaussian mixing matrix.
MultiViewDataset gen_synthetic(RngStream& rng, const SyntheticParams& params = {});

struct SemiSyntheticParams {
    int k = 5;
    int endmembers = 5;
    int repeats = 10;
    int views = 2;
};

/// Mixes random endmember subsets of a spectra library with uniform weights;
/// each mixed sample is replicated `repeats` times column-wise.
MultiViewDataset gen_semisynthetic(RngStream& rng, const Matrix& library,
                                   const SemiSyntheticParams& params = {});

/// Smooth positive random curves standing in for a real spectra library.
Matrix synthetic_spectra_library(RngStream& rng, Eigen::Index rows = 321,
                                 Eigen::Index cols = 321);

/// Adds iid Gaussian noise with sigma = s * 10^(-target/20) to every view;
/// s is the maximum absolute entry over the whole dataset. Labels untouched.
MultiViewDataset add_noise_at_psnr(RngStream& rng, const MultiViewDataset& clean,
                                   double target_psnr_db);

}  // namespace clrsc
