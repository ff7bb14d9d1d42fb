#include "clrsc/experiment.hpp"
#include "clrsc/io.hpp"
#include "clrsc/metrics.hpp"
#include "clrsc/prox.hpp"
#include "clrsc/solver.hpp"
#include "clrsc/spectral.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

void add_solver_flags(CLI::App* cmd, clrsc::SolverConfig& s) {
    cmd->add_option("--lambda", s.lambda, "nuclear-norm weight per view (single value broadcasts)");
    cmd->add_option("--tau", s.tau, "consensus penalty weight");
    cmd->add_option("--mu0", s.mu0, "initial penalty parameter");
    cmd->add_option("--mu-max", s.mu_max, "penalty parameter cap");
    cmd->add_option("--rho", s.rho, "linearization constant (<=0 picks 1.02*max spectral norm^2)");
    cmd->add_option("--gamma0", s.gamma0, "penalty growth factor");
    cmd->add_option("--eps1", s.eps1, "feasibility tolerance");
    cmd->add_option("--eps2", s.eps2, "iterate-change tolerance");
    cmd->add_option("--max-iters", s.max_iters, "iteration cap");
}

std::vector<double> parse_levels(const std::vector<std::string>& tokens) {
    std::vector<double> levels;
    for (const std::string& t : tokens) {
        if (t == "clean" || t == "inf") {
            levels.push_back(clrsc::kCleanPsnr);
        } else {
            levels.push_back(std::stod(t));
        }
    }
    return levels;
}

int run_prox_check() {
    clrsc::Matrix v(2, 3);
    v << 0.0010, 1.0000, 1.0000,
         0.0015, 0.1000, 1.0100;
    clrsc::Matrix expected(2, 3);
    expected << 0, 0.9005, 0.9296,
                0, 0.0900, 0.9389;
    const clrsc::Matrix got = clrsc::prox_l12_columns(v, 0.1);
    std::cout << "input:\n" << v << "\n\ncolumn-wise l2 shrinkage, tau = 0.1:\n" << got
              << "\n\nreference:\n" << expected << "\n";
    const double err = (got - expected).cwiseAbs().maxCoeff();
    std::cout << "\nmax abs deviation from reference: " << clrsc::format_double(err) << "\n";
    if (err > 5e-5) {
        std::cerr << "deviation exceeds 5e-5\n";
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Collaborative low-rank subspace clustering benchmark"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from an INI file (flags override)");

    // gen-synthetic
    auto* gen_syn = app.add_subcommand("gen-synthetic", "generate a union-of-subspaces dataset");
    std::uint64_t seed = 0;
    std::string out_dir = "dataset";
    clrsc::SyntheticParams syn;
    gen_syn->add_option("--seed", seed, "master seed");
    gen_syn->add_option("--ambient", syn.ambient, "ambient dimension");
    gen_syn->add_option("-k,--clusters", syn.k, "number of subspaces");
    gen_syn->add_option("--dim", syn.dim, "subspace dimension");
    gen_syn->add_option("--per-cluster", syn.per_cluster, "points per subspace");
    gen_syn->add_option("--views", syn.views, "number of views");
    gen_syn->add_option("-o,--out", out_dir, "output directory");

    // gen-semisynthetic
    auto* gen_semi = app.add_subcommand("gen-semisynthetic", "mix spectra-library endmembers");
    std::string library_path;
    clrsc::SemiSyntheticParams semi;
    gen_semi->add_option("--seed", seed, "master seed");
    gen_semi->add_option("--library", library_path, "spectra library CSV (default: built-in stand-in)");
    gen_semi->add_option("-k,--clusters", semi.k, "number of clusters");
    gen_semi->add_option("--endmembers", semi.endmembers, "endmembers per cluster");
    gen_semi->add_option("--repeats", semi.repeats, "column repeats per cluster");
    gen_semi->add_option("--views", semi.views, "number of views");
    gen_semi->add_option("-o,--out", out_dir, "output directory");

    // add-noise
    auto* add_noise = app.add_subcommand("add-noise", "inject Gaussian noise at a target PSNR");
    std::string manifest_path;
    double target_psnr = 40.0;
    add_noise->add_option("--manifest", manifest_path, "dataset manifest")->required();
    add_noise->add_option("--psnr", target_psnr, "target PSNR in dB")->required();
    add_noise->add_option("--seed", seed, "master seed");
    add_noise->add_option("-o,--out", out_dir, "output directory");

    // cluster
    auto* cluster_cmd = app.add_subcommand("cluster", "segment one dataset and report SCA");
    std::string method = "clrsc";
    int lrr_view = 1;
    std::string labels_out;
    clrsc::SolverConfig cluster_solver;
    cluster_cmd->add_option("--manifest", manifest_path, "dataset manifest")->required();
    cluster_cmd->add_option("--method", method, "clrsc | mlap | lrr")
        ->check(CLI::IsMember({"clrsc", "mlap", "lrr"}));
    cluster_cmd->add_option("--view", lrr_view, "view index for lrr (1-based)");
    cluster_cmd->add_option("--seed", seed, "master seed");
    cluster_cmd->add_option("--labels-out", labels_out, "write predicted labels to this CSV");
    add_solver_flags(cluster_cmd, cluster_solver);

    // benchmark
    auto* bench = app.add_subcommand("benchmark", "run the full experiment matrix");
    clrsc::ExperimentConfig exp;
    std::string generator = "synthetic";
    std::vector<std::string> level_tokens;
    std::vector<std::string> methods;
    bench->add_option("--generator", generator, "synthetic | semisynthetic")
        ->check(CLI::IsMember({"synthetic", "semisynthetic"}));
    bench->add_option("--library", exp.library_path, "spectra library CSV for semisynthetic");
    bench->add_option("--trials", exp.trials, "trials per noise level");
    bench->add_option("--seed", exp.seed, "master seed");
    bench->add_option("--levels", level_tokens, "noise levels in dB ('clean' for noiseless)");
    bench->add_option("--methods", methods, "subset of clrsc mlap lrr");
    bench->add_option("--ambient", exp.synthetic.ambient, "synthetic ambient dimension");
    bench->add_option("-k,--clusters", exp.synthetic.k, "synthetic subspace count");
    bench->add_option("--dim", exp.synthetic.dim, "synthetic subspace dimension");
    bench->add_option("--per-cluster", exp.synthetic.per_cluster, "synthetic points per subspace");
    bench->add_option("-o,--out", out_dir, "report directory");
    add_solver_flags(bench, exp.solver);

    // prox-check
    app.add_subcommand("prox-check", "print the column-shrinkage reference example");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen_syn->parsed()) {
            clrsc::RngStream rng(seed, clrsc::RngStream::stream_id("trial/1/gen"));
            clrsc::write_dataset(clrsc::gen_synthetic(rng, syn), out_dir);
            std::cout << "wrote " << out_dir << "/dataset.manifest\n";
        } else if (gen_semi->parsed()) {
            clrsc::Matrix library;
            if (library_path.empty()) {
                clrsc::RngStream lib_rng(seed, clrsc::RngStream::stream_id("spectra-library"));
                library = clrsc::synthetic_spectra_library(lib_rng);
            } else {
                library = clrsc::load_matrix_csv(library_path);
            }
            clrsc::RngStream rng(seed, clrsc::RngStream::stream_id("trial/1/gen"));
            clrsc::write_dataset(clrsc::gen_semisynthetic(rng, library, semi), out_dir);
            std::cout << "wrote " << out_dir << "/dataset.manifest\n";
        } else if (add_noise->parsed()) {
            const clrsc::MultiViewDataset clean = clrsc::load_dataset(manifest_path);
            clrsc::RngStream rng(seed, clrsc::RngStream::stream_id("trial/1/noise"));
            clrsc::write_dataset(clrsc::add_noise_at_psnr(rng, clean, target_psnr), out_dir);
            std::cout << "wrote " << out_dir << "/dataset.manifest\n";
        } else if (cluster_cmd->parsed()) {
            const clrsc::MultiViewDataset data = clrsc::load_dataset(manifest_path);
            clrsc::CoefficientStack stack;
            if (method == "clrsc") {
                stack = clrsc::solve_clrsc(data.views, cluster_solver);
            } else if (method == "mlap") {
                stack = clrsc::solve_mlap(data.views, cluster_solver);
            } else {
                if (lrr_view < 1 || lrr_view > static_cast<int>(data.views.size())) {
                    throw std::invalid_argument("cluster: --view out of range");
                }
                const double lambda =
                    cluster_solver.lambda.empty() ? 0.5 : cluster_solver.lambda.front();
                stack = clrsc::solve_lrr(data.views[lrr_view - 1], lambda, cluster_solver);
            }
            if (!stack.diagnostics.converged) {
                std::cerr << "warning: solver did not converge within "
                          << stack.diagnostics.iterations << " iterations\n";
            }
            clrsc::RngStream rng(seed, clrsc::RngStream::stream_id("kmeans"));
            const clrsc::ClusterAssignment predicted =
                clrsc::cluster(clrsc::fuse_affinity(stack), data.k, rng);
            if (!labels_out.empty()) clrsc::write_labels(predicted.labels, labels_out);
            std::cout << "iterations: " << stack.diagnostics.iterations
                      << (stack.diagnostics.converged ? " (converged)" : " (not converged)") << "\n";
            if (data.has_labels()) {
                std::cout << "sca: " << clrsc::format_double(clrsc::sca(predicted, data.truth()))
                          << "\n";
            } else if (labels_out.empty()) {
                for (std::size_t i = 0; i < predicted.labels.size(); ++i) {
                    std::cout << predicted.labels[i]
                              << (i + 1 < predicted.labels.size() ? ',' : '\n');
                }
            }
        } else if (bench->parsed()) {
            exp.generator = generator == "synthetic"
                                ? clrsc::ExperimentConfig::Generator::synthetic
                                : clrsc::ExperimentConfig::Generator::semisynthetic;
            if (!level_tokens.empty()) exp.noise_levels = parse_levels(level_tokens);
            if (!methods.empty()) exp.methods = methods;
            clrsc::validate(exp);
            const clrsc::ExperimentReport report = clrsc::run_experiment(exp);
            clrsc::write_report(report, out_dir);
            std::cout << "wrote " << out_dir << "/records.csv and " << out_dir << "/summary.csv\n";
        } else {
            return run_prox_check();
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const clrsc::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const clrsc::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}
