#include "clrsc/experiment.hpp"

#include "clrsc/metrics.hpp"
#include "clrsc/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace clrsc {

namespace fs = std::filesystem;

void validate(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
    if (cfg.methods.empty()) throw std::invalid_argument("experiment: at least one method required");
    for (const std::string& m : cfg.methods) {
        if (m != "clrsc" && m != "mlap" && m != "lrr") {
            throw std::invalid_argument("experiment: unknown method '" + m + "'");
        }
    }
    if (cfg.noise_levels.empty()) throw std::invalid_argument("experiment: no noise levels");
    for (double p : cfg.noise_levels) {
        if (std::isnan(p) || p == -kCleanPsnr) {
            throw std::invalid_argument("experiment: noise level must be finite or 'clean'");
        }
    }
}

namespace {

std::uint64_t stream_for(int trial, const std::string& purpose) {
    return RngStream::stream_id("trial/" + std::to_string(trial) + "/" + purpose);
}

MultiViewDataset generate_clean(const ExperimentConfig& cfg, const Matrix* library, int trial) {
    RngStream rng(cfg.seed, stream_for(trial, "gen"));
    if (cfg.generator == ExperimentConfig::Generator::synthetic) {
        return gen_synthetic(rng, cfg.synthetic);
    }
    return gen_semisynthetic(rng, *library, cfg.semisynthetic);
}

struct MethodResult {
    double sca = 0.0;
    std::optional<double> z_diff;
    int iterations = 0;
    bool converged = false;
};

MethodResult score_stack(const CoefficientStack& stack, const MultiViewDataset& data,
                         RngStream& kmeans_rng) {
    MethodResult r;
    r.iterations = stack.diagnostics.iterations;
    r.converged = stack.diagnostics.converged;
    if (stack.Z.size() >= 2) r.z_diff = coeff_difference(stack);
    const ClusterAssignment predicted = cluster(fuse_affinity(stack), data.k, kmeans_rng);
    r.sca = sca(predicted, data.truth());
    return r;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);

    ExperimentReport report;
    report.config = cfg;

    Matrix library;
    if (cfg.generator == ExperimentConfig::Generator::semisynthetic) {
        if (cfg.library_path.empty()) {
            RngStream lib_rng(cfg.seed, RngStream::stream_id("spectra-library"));
            library = synthetic_spectra_library(lib_rng);
        } else {
            library = load_matrix_csv(cfg.library_path);
        }
    }

    using clock = std::chrono::steady_clock;

    for (int trial = 1; trial <= cfg.trials; ++trial) {
        const MultiViewDataset clean = generate_clean(cfg, &library, trial);

        for (double psnr_db : cfg.noise_levels) {
            const std::string level_tag = format_double(psnr_db);
            MultiViewDataset data = clean;
            if (std::isfinite(psnr_db)) {
                RngStream noise_rng(cfg.seed, stream_for(trial, "noise/" + level_tag));
                data = add_noise_at_psnr(noise_rng, clean, psnr_db);
            }

            for (const std::string& method : cfg.methods) {
                if (method == "lrr") {
                    std::vector<Matrix> z_per_view;
                    for (std::size_t v = 0; v < data.views.size(); ++v) {
                        const std::string label = "lrr-v" + std::to_string(v + 1);
                        ExperimentRecord rec;
                        rec.trial = trial;
                        rec.psnr_db = psnr_db;
                        rec.method = label;
                        const auto t0 = clock::now();
                        try {
                            const double lambda = cfg.solver.lambda.empty()
                                                      ? 0.5
                                                      : cfg.solver.lambda[std::min(
                                                            v, cfg.solver.lambda.size() - 1)];
                            CoefficientStack stack = solve_lrr(data.views[v], lambda, cfg.solver);
                            RngStream kmeans_rng(
                                cfg.seed, stream_for(trial, "kmeans/" + level_tag + "/" + label));
                            const MethodResult r = score_stack(stack, data, kmeans_rng);
                            rec.sca = r.sca;
                            rec.iterations = r.iterations;
                            rec.converged = r.converged;
                            z_per_view.push_back(std::move(stack.Z.front()));
                        } catch (const NumericalError&) {
                            rec.converged = false;
                        }
                        rec.runtime_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
                        report.records.push_back(std::move(rec));
                    }
                    if (z_per_view.size() == data.views.size() && z_per_view.size() >= 2) {
                        report.lrr_pair_diffs.push_back({trial, psnr_db, coeff_difference(z_per_view)});
                    }
                    continue;
                }

                ExperimentRecord rec;
                rec.trial = trial;
                rec.psnr_db = psnr_db;
                rec.method = method;
                const auto t0 = clock::now();
                try {
                    CoefficientStack stack = method == "clrsc" ? solve_clrsc(data.views, cfg.solver)
                                                               : solve_mlap(data.views, cfg.solver);
                    RngStream kmeans_rng(cfg.seed,
                                         stream_for(trial, "kmeans/" + level_tag + "/" + method));
                    const MethodResult r = score_stack(stack, data, kmeans_rng);
                    rec.sca = r.sca;
                    rec.z_diff = r.z_diff;
                    rec.iterations = r.iterations;
                    rec.converged = r.converged;
                } catch (const NumericalError&) {
                    rec.converged = false;
                }
                rec.runtime_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
                report.records.push_back(std::move(rec));
            }
        }
    }
    return report;
}

std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records) {
    std::vector<SummaryRow> rows;
    auto find_row = [&rows](double psnr_db, const std::string& method) -> SummaryRow* {
        for (SummaryRow& r : rows) {
            if (r.method == method &&
                (r.psnr_db == psnr_db || (std::isinf(r.psnr_db) && std::isinf(psnr_db)))) {
                return &r;
            }
        }
        return nullptr;
    };

    struct Bucket {
        std::vector<double> sca;
        std::vector<double> z_diff;
    };
    std::vector<Bucket> buckets;

    for (const ExperimentRecord& rec : records) {
        SummaryRow* row = find_row(rec.psnr_db, rec.method);
        if (!row) {
            rows.push_back({rec.psnr_db, rec.method, 0, 0, 0, 0, std::nullopt});
            buckets.emplace_back();
            row = &rows.back();
        }
        Bucket& b = buckets[static_cast<std::size_t>(row - rows.data())];
        b.sca.push_back(rec.sca);
        if (rec.z_diff) b.z_diff.push_back(*rec.z_diff);
    }

    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<double> s = buckets[i].sca;
        std::sort(s.begin(), s.end());
        const std::size_t n = s.size();
        rows[i].min_sca = s.front();
        rows[i].max_sca = s.back();
        rows[i].mean_sca = 0.0;
        for (double v : s) rows[i].mean_sca += v;
        rows[i].mean_sca /= static_cast<double>(n);
        rows[i].median_sca = (n % 2 == 1) ? s[n / 2] : (s[n / 2 - 1] + s[n / 2]) / 2.0;
        if (!buckets[i].z_diff.empty()) {
            double sum = 0.0;
            for (double v : buckets[i].z_diff) sum += v;
            rows[i].mean_z_diff = sum / static_cast<double>(buckets[i].z_diff.size());
        }
    }
    return rows;
}

std::vector<SummaryRow> ExperimentReport::summarize() const { return clrsc::summarize(records); }

std::optional<double> ExperimentReport::mean_lrr_pair_diff(double psnr_db) const {
    double sum = 0.0;
    int count = 0;
    for (const LrrPairDiff& d : lrr_pair_diffs) {
        if (d.psnr_db == psnr_db || (std::isinf(d.psnr_db) && std::isinf(psnr_db))) {
            sum += d.z_diff;
            ++count;
        }
    }
    if (count == 0) return std::nullopt;
    return sum / count;
}

void write_report(const ExperimentReport& report, const fs::path& dir) {
    fs::create_directories(dir);

    {
        std::ofstream out(dir / "records.csv");
        if (!out) throw DataError("cannot write " + (dir / "records.csv").string());
        out << "trial,psnr_db,method,sca,z_diff,iterations,converged,runtime_ms\n";
        for (const ExperimentRecord& r : report.records) {
            out << r.trial << ',' << format_double(r.psnr_db) << ',' << r.method << ','
                << format_double(r.sca) << ',' << (r.z_diff ? format_double(*r.z_diff) : "")
                << ',' << r.iterations << ',' << (r.converged ? 1 : 0) << ','
                << format_double(r.runtime_ms) << '\n';
        }
    }

    {
        std::ofstream out(dir / "summary.csv");
        if (!out) throw DataError("cannot write " + (dir / "summary.csv").string());
        out << "psnr_db,method,mean_sca,median_sca,min_sca,max_sca,mean_z_diff\n";
        for (const SummaryRow& r : report.summarize()) {
            out << format_double(r.psnr_db) << ',' << r.method << ',' << format_double(r.mean_sca)
                << ',' << format_double(r.median_sca) << ',' << format_double(r.min_sca) << ','
                << format_double(r.max_sca) << ','
                << (r.mean_z_diff ? format_double(*r.mean_z_diff) : "") << '\n';
        }
    }

    {
        const ExperimentConfig& c = report.config;
        std::ofstream out(dir / "run-manifest.txt");
        if (!out) throw DataError("cannot write " + (dir / "run-manifest.txt").string());
        out << "generator = "
            << (c.generator == ExperimentConfig::Generator::synthetic ? "synthetic" : "semisynthetic")
            << '\n';
        if (c.generator == ExperimentConfig::Generator::semisynthetic) {
            out << "library = " << (c.library_path.empty() ? "<built-in stand-in>" : c.library_path)
                << '\n';
        }
        out << "trials = " << c.trials << '\n';
        out << "seed = " << c.seed << '\n';
        out << "noise_levels =";
        for (double p : c.noise_levels) out << ' ' << format_double(p);
        out << '\n';
        out << "methods =";
        for (const std::string& m : c.methods) out << ' ' << m;
        out << '\n';
        out << "solver.lambda =";
        if (c.solver.lambda.empty()) {
            out << " 0.5 (default, all views)";
        } else {
            for (double l : c.solver.lambda) out << ' ' << format_double(l);
        }
        out << '\n';
        out << "solver.tau = " << format_double(c.solver.tau) << '\n';
        out << "solver.mu0 = " << format_double(c.solver.mu0) << '\n';
        out << "solver.mu_max = " << format_double(c.solver.mu_max) << '\n';
        out << "solver.rho = "
            << (c.solver.rho > 0 ? format_double(c.solver.rho) : "auto (1.02 * max spectral norm^2)")
            << '\n';
        out << "solver.gamma0 = " << format_double(c.solver.gamma0) << '\n';
        out << "solver.eps1 = " << format_double(c.solver.eps1) << '\n';
        out << "solver.eps2 = " << format_double(c.solver.eps2) << '\n';
        out << "solver.max_iters = " << c.solver.max_iters << '\n';
    }
}

std::vector<ExperimentRecord> load_records(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::vector<ExperimentRecord> records;
    std::string line;
    if (!std::getline(in, line)) throw DataError(path.string() + ": empty file");
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) fields.push_back(tok);
        while (fields.size() < 8) fields.push_back("");
        if (fields.size() != 8) {
            throw DataError(path.string() + ":" + std::to_string(lineno) + ": expected 8 fields");
        }
        ExperimentRecord r;
        r.trial = std::stoi(fields[0]);
        r.psnr_db = fields[1] == "inf" ? kCleanPsnr : std::stod(fields[1]);
        r.method = fields[2];
        r.sca = std::stod(fields[3]);
        if (!fields[4].empty()) r.z_diff = std::stod(fields[4]);
        r.iterations = std::stoi(fields[5]);
        r.converged = fields[6] == "1";
        r.runtime_ms = std::stod(fields[7]);
        records.push_back(std::move(r));
    }
    return records;
}

}  // namespace clrsc
