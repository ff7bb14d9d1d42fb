#pragma once

#include "clrsc/numerics.hpp"

#include <vector>

namespace clrsc {

/// Penalty on the per-view fitting error E_i.
enum class ErrorNorm { frobenius, l12 };

/// Penalty coupling the stacked coefficient rows A.
enum class ConsensusPenalty { nuclear, l12, none };

struct SolverConfig {
    std::vector<double> lambda;  // per view; empty -> 0.5 each, size 1 -> broadcast
    double tau = 0.5;
    double mu0 = 1e-2;
    double mu_max = 1e10;
    double rho = 0.0;  // <= 0 resolves to 1.02 * max_i sigma_max(X_i)^2
    double gamma0 = 1.1;
    double eps1 = 1e-4;
    double eps2 = 1e-4;
    int max_iters = 500;
};

struct SolverDiagnostics {
    std::vector<double> feas_residual;       // per iteration, max over views
    std::vector<double> consensus_residual;  // per iteration, max over views
    std::vector<double> m_history;
    int iterations = 0;
    bool converged = false;
    double rho = 0.0;
    double global_x_norm = 0.0;  // Frobenius norm of the row-concatenated views
};

struct CoefficientStack {
    std::vector<Matrix> Z;  // per view, N x N
    Matrix A;               // c x N^2; empty when no consensus term
    SolverDiagnostics diagnostics;
};

/// Data plus resolved penalty choices shared by every iteration.
struct ProblemSpec {
    std::vector<Matrix> views;
    std::vector<double> lambda;
    double tau = 0.0;
    ErrorNorm error_norm = ErrorNorm::frobenius;
    ConsensusPenalty consensus = ConsensusPenalty::none;
    double rho = 0.0;
    double global_x_norm = 0.0;
    std::vector<double> view_norms;  // ||X_i||_F

    Eigen::Index num_views() const { return static_cast<Eigen::Index>(views.size()); }
    Eigen::Index n() const { return views.front().cols(); }
};

struct SolverState {
    std::vector<Matrix> Z;  // N x N
    std::vector<Matrix> E;  // D_i x N
    std::vector<Matrix> Y;  // D_i x N multipliers
    Matrix A;               // c x N^2 consensus
    Matrix W;               // c x N^2 row multipliers w_i
    double mu = 0.0;
    int iter = 0;
};

struct StoppingResult {
    std::vector<double> feas;       // ||X_i Z_i - X_i + E_i||_F / ||X_i||_F
    std::vector<double> consensus;  // ||A_(i,:) - vec(Z_i)^T||_2 / ||X_i||_F
    double m = 0.0;
    bool converged = false;
};

/// Validates shapes/config and resolves lambda, rho and the global scale.
ProblemSpec make_problem(std::vector<Matrix> views, const SolverConfig& cfg,
                         ErrorNorm error_norm, ConsensusPenalty consensus);

SolverState initial_state(const ProblemSpec& spec, const SolverConfig& cfg);

/// Gradient of the smooth part of the Z_i subproblem at the current iterate.
/// The consensus segment is reshaped to N x N in column-major vec order.
Matrix gradient_g(const ProblemSpec& spec, const SolverState& state, Eigen::Index i);

/// Z_i <- svt(Z_i - gradient_g / rho, lambda_i / rho).
Matrix z_update(const ProblemSpec& spec, const SolverState& state, Eigen::Index i);

/// Error prox on X_i - X_i Z_i + Y_i / mu at iteration-k values.
Matrix e_update(const ProblemSpec& spec, const SolverState& state, Eigen::Index i);

/// Consensus prox on B with B_(i,:) = vec(Z_i)^T + w_i / mu; reads the freshly
/// updated Z held in `state`.
Matrix a_update(const ProblemSpec& spec, const SolverState& state);

StoppingResult stopping_check(const ProblemSpec& spec, const SolverState& state,
                              const SolverState& previous, const SolverConfig& cfg);

/// Applies the dual ascent on Y_i and w_i and the adaptive mu schedule.
void multiplier_and_mu_update(const ProblemSpec& spec, SolverState& state, double m,
                              const SolverConfig& cfg);

CoefficientStack solve(const ProblemSpec& spec, const SolverConfig& cfg);

/// Collaborative low-rank solver: Frobenius error, nuclear-norm consensus.
CoefficientStack solve_clrsc(const std::vector<Matrix>& views, const SolverConfig& cfg);

/// MLAP baseline: column-sparse error, l_{1,2} consensus.
CoefficientStack solve_mlap(const std::vector<Matrix>& views, const SolverConfig& cfg);

/// Single-view low-rank representation, no consensus term.
CoefficientStack solve_lrr(const Matrix& view, double lambda, const SolverConfig& cfg,
                           ErrorNorm error_norm = ErrorNorm::l12);

}  // namespace clrsc
