#include "clrsc/datagen.hpp"

#include "clrsc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace clrsc {

MultiViewDataset gen_synthetic(RngStream& rng, const SyntheticParams& p) {
    if (p.dim > p.ambient) throw std::invalid_argument("gen_synthetic: dim > ambient");
    if (p.k < 1 || p.per_cluster < 1 || p.views < 1) {
        throw std::invalid_argument("gen_synthetic: counts must be >= 1");
    }
    MultiViewDataset out;
    out.k = p.k;
    const Eigen::Index n = static_cast<Eigen::Index>(p.k) * p.per_cluster;
    for (int v = 0; v < p.views; ++v) {
        Matrix basis = random_orthonormal(rng, p.ambient, p.dim);
        const Matrix rotation = random_rotation(rng, p.ambient);
        Matrix x(p.ambient, n);
        for (int j = 0; j < p.k; ++j) {
            if (j > 0) basis = rotation * basis;
            const Matrix mix = gaussian_matrix(rng, p.dim, p.per_cluster, 1.0);
            x.middleCols(static_cast<Eigen::Index>(j) * p.per_cluster, p.per_cluster) =
                basis * mix;
        }
        out.views.push_back(std::move(x));
    }
    out.labels.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.labels[i] = static_cast<int>(i / p.per_cluster) + 1;
    }
    return out;
}

MultiViewDataset gen_semisynthetic(RngStream& rng, const Matrix& library,
                                   const SemiSyntheticParams& p) {
    if (library.cols() < p.endmembers) {
        throw DataError("gen_semisynthetic: library has " + std::to_string(library.cols()) +
                        " spectra, need at least " + std::to_string(p.endmembers));
    }
    if (p.k < 1 || p.endmembers < 1 || p.repeats < 1 || p.views < 1) {
        throw std::invalid_argument("gen_semisynthetic: counts must be >= 1");
    }
    MultiViewDataset out;
    out.k = p.k;
    const Eigen::Index n = static_cast<Eigen::Index>(p.k) * p.repeats;
    for (int v = 0; v < p.views; ++v) {
        Matrix x(library.rows(), n);
        for (int j = 0; j < p.k; ++j) {
            // Distinct endmember subset, then unnormalized Uniform(0,1) weights.
            std::vector<Eigen::Index> chosen;
            while (static_cast<int>(chosen.size()) < p.endmembers) {
                const auto col = static_cast<Eigen::Index>(
                    rng.next_u64() % static_cast<std::uint64_t>(library.cols()));
                if (std::find(chosen.begin(), chosen.end(), col) == chosen.end()) {
                    chosen.push_back(col);
                }
            }
            Vector sample = Vector::Zero(library.rows());
            for (Eigen::Index col : chosen) sample += rng.uniform() * library.col(col);
            for (int r = 0; r < p.repeats; ++r) {
                x.col(static_cast<Eigen::Index>(j) * p.repeats + r) = sample;
            }
        }
        out.views.push_back(std::move(x));
    }
    out.labels.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) out.labels[i] = static_cast<int>(i / p.repeats) + 1;
    return out;
}

Matrix synthetic_spectra_library(RngStream& rng, Eigen::Index rows, Eigen::Index cols) {
    Matrix lib(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        // Baseline plus a few Gaussian absorption bumps.
        const double baseline = 0.2 + 0.6 * rng.uniform();
        Vector curve = Vector::Constant(rows, baseline);
        const int bumps = 3 + static_cast<int>(rng.next_u64() % 5);
        for (int b = 0; b < bumps; ++b) {
            const double center = rng.uniform() * static_cast<double>(rows - 1);
            const double width = 4.0 + 30.0 * rng.uniform();
            const double height = 0.1 + 0.8 * rng.uniform();
            for (Eigen::Index i = 0; i < rows; ++i) {
                const double t = (static_cast<double>(i) - center) / width;
                curve(i) += height * std::exp(-0.5 * t * t);
            }
        }
        lib.col(j) = curve;
    }
    return lib;
}

MultiViewDataset add_noise_at_psnr(RngStream& rng, const MultiViewDataset& clean,
                                   double target_psnr_db) {
    if (!std::isfinite(target_psnr_db)) {
        throw std::invalid_argument("add_noise_at_psnr: target must be finite");
    }
    double peak = 0.0;
    for (const Matrix& x : clean.views) peak = std::max(peak, x.cwiseAbs().maxCoeff());
    if (peak == 0.0) peak = 1.0;
    const double sigma = sigma_for_psnr(target_psnr_db, peak);

    MultiViewDataset out = clean;
    for (Matrix& x : out.views) {
        x += gaussian_matrix(rng, x.rows(), x.cols(), sigma);
    }
    return out;
}

}  // namespace clrsc
