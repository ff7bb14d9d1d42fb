#pragma once

#include "clrsc/datagen.hpp"
#include "clrsc/io.hpp"
#include "clrsc/solver.hpp"

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace clrsc {

inline constexpr double kCleanPsnr = std::numeric_limits<double>::infinity();

struct ExperimentConfig {
    enum class Generator { synthetic, semisynthetic };

    Generator generator = Generator::synthetic;
    std::string library_path;  // empty -> built-in spectra stand-in
    std::vector<double> noise_levels{kCleanPsnr, 48.0, 44.0, 40.0, 36.0, 32.0};
    int trials = 50;
    std::vector<std::string> methods{"clrsc", "mlap", "lrr"};
    SolverConfig solver;
    std::uint64_t seed = 0;
    SyntheticParams synthetic;
    SemiSyntheticParams semisynthetic;
};

struct ExperimentRecord {
    int trial = 0;
    double psnr_db = kCleanPsnr;
    std::string method;
    double sca = 0.0;
    std::optional<double> z_diff;  // absent for single-view methods
    int iterations = 0;
    bool converged = false;
    double runtime_ms = 0.0;
};

struct SummaryRow {
    double psnr_db = kCleanPsnr;
    std::string method;
    double mean_sca = 0.0;
    double median_sca = 0.0;
    double min_sca = 0.0;
    double max_sca = 0.0;
    std::optional<double> mean_z_diff;
};

/// Cross-view coefficient distance of the independent per-view LRR solves;
/// kept beside the records because single-view rows carry no z_diff.
struct LrrPairDiff {
    int trial = 0;
    double psnr_db = kCleanPsnr;
    double z_diff = 0.0;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<ExperimentRecord> records;
    std::vector<LrrPairDiff> lrr_pair_diffs;

    std::vector<SummaryRow> summarize() const;
    std::optional<double> mean_lrr_pair_diff(double psnr_db) const;
};

void validate(const ExperimentConfig& cfg);

ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Aggregates records into (psnr, method) rows following the order of first
/// appearance.
std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records);

/// Emits records.csv, summary.csv and run-manifest.txt into `dir`.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

std::vector<ExperimentRecord> load_records(const std::filesystem::path& path);

}  // namespace clrsc
