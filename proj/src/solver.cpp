#include "clrsc/solver.hpp"

#include "clrsc/prox.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace clrsc {

namespace {

void validate_config(const SolverConfig& cfg) {
    if (cfg.tau < 0) throw std::invalid_argument("solver: tau must be >= 0");
    if (cfg.mu0 <= 0) throw std::invalid_argument("solver: mu0 must be > 0");
    if (cfg.mu_max <= cfg.mu0) throw std::invalid_argument("solver: mu_max must exceed mu0");
    if (cfg.gamma0 <= 1) throw std::invalid_argument("solver: gamma0 must be > 1");
    if (cfg.eps1 <= 0 || cfg.eps2 <= 0) throw std::invalid_argument("solver: tolerances must be > 0");
    if (cfg.max_iters < 1) throw std::invalid_argument("solver: max_iters must be >= 1");
}

}  // namespace

ProblemSpec make_problem(std::vector<Matrix> views, const SolverConfig& cfg,
                         ErrorNorm error_norm, ConsensusPenalty consensus) {
    validate_config(cfg);
    if (views.empty()) throw std::invalid_argument("solver: no views");
    const Eigen::Index n = views.front().cols();
    for (std::size_t i = 0; i < views.size(); ++i) {
        if (views[i].cols() != n) {
            throw DataError("solver: view " + std::to_string(i + 1) + " has " +
                            std::to_string(views[i].cols()) + " samples, expected " +
                            std::to_string(n));
        }
        if (!views[i].allFinite()) {
            throw DataError("solver: view " + std::to_string(i + 1) + " contains non-finite values");
        }
    }

    ProblemSpec spec;
    spec.tau = cfg.tau;
    spec.error_norm = error_norm;
    spec.consensus = consensus;

    const std::size_t c = views.size();
    if (cfg.lambda.empty()) {
        spec.lambda.assign(c, 0.5);
    } else if (cfg.lambda.size() == 1) {
        spec.lambda.assign(c, cfg.lambda.front());
    } else if (cfg.lambda.size() == c) {
        spec.lambda = cfg.lambda;
    } else {
        throw std::invalid_argument("solver: lambda count does not match view count");
    }
    for (double l : spec.lambda) {
        if (l <= 0) throw std::invalid_argument("solver: lambda must be > 0");
    }

    double sq = 0.0;
    double max_spec_sq = 0.0;
    spec.view_norms.reserve(c);
    for (const Matrix& x : views) {
        spec.view_norms.push_back(x.norm());
        sq += x.squaredNorm();
        const double s = spectral_norm(x);
        max_spec_sq = std::max(max_spec_sq, s * s);
    }
    spec.global_x_norm = std::sqrt(sq);

    if (cfg.rho > 0) {
        if (cfg.rho <= max_spec_sq) {
            throw std::invalid_argument("solver: rho must exceed max spectral norm squared (" +
                                        std::to_string(max_spec_sq) + ")");
        }
        spec.rho = cfg.rho;
    } else {
        spec.rho = 1.02 * max_spec_sq;
    }
    if (spec.rho <= 0) spec.rho = 1.0;  // all-zero data

    spec.views = std::move(views);
    return spec;
}

SolverState initial_state(const ProblemSpec& spec, const SolverConfig& cfg) {
    SolverState s;
    const Eigen::Index n = spec.n();
    const Eigen::Index c = spec.num_views();
    for (const Matrix& x : spec.views) {
        s.Z.push_back(Matrix::Zero(n, n));
        s.E.push_back(Matrix::Zero(x.rows(), n));
        s.Y.push_back(Matrix::Zero(x.rows(), n));
    }
    if (spec.consensus != ConsensusPenalty::none) {
        s.A = Matrix::Zero(c, n * n);
        s.W = Matrix::Zero(c, n * n);
    }
    s.mu = cfg.mu0;
    s.iter = 0;
    return s;
}

Matrix gradient_g(const ProblemSpec& spec, const SolverState& state, Eigen::Index i) {
    const Matrix& x = spec.views[i];
    const double mu = state.mu;
    const Matrix residual = x - x * state.Z[i] - state.E[i] + state.Y[i] / mu;
    Matrix grad = -mu * (x.transpose() * residual);
    if (spec.consensus != ConsensusPenalty::none) {
        const Eigen::Index n = spec.n();
        Vector d = state.Z[i].reshaped() - state.A.row(i).transpose() +
                   state.W.row(i).transpose() / mu;
        grad += mu * d.reshaped(n, n);
    }
    return grad;
}

Matrix z_update(const ProblemSpec& spec, const SolverState& state, Eigen::Index i) {
    // Proximal weight mu*rho: the smooth part G carries a factor mu, so its
    // gradient Lipschitz constant grows with mu and a fixed weight diverges
    // once mu is large. rho itself stays > max ||X_i||_2^2.
    const double weight = state.mu * spec.rho;
    const Matrix target = state.Z[i] - gradient_g(spec, state, i) / weight;
    return svt(target, spec.lambda[i] / weight);
}

Matrix e_update(const ProblemSpec& spec, const SolverState& state, Eigen::Index i) {
    const Matrix& x = spec.views[i];
    const Matrix r = x - x * state.Z[i] + state.Y[i] / state.mu;
    if (spec.error_norm == ErrorNorm::frobenius) return frobenius_error_prox(r, state.mu);
    return prox_l12_columns(r, 1.0 / state.mu);
}

Matrix a_update(const ProblemSpec& spec, const SolverState& state) {
    const Eigen::Index c = spec.num_views();
    Matrix b(c, spec.n() * spec.n());
    for (Eigen::Index i = 0; i < c; ++i) {
        b.row(i) = state.Z[i].reshaped().transpose() + state.W.row(i) / state.mu;
    }
    if (spec.consensus == ConsensusPenalty::nuclear) return svt(b, spec.tau / state.mu);
    return prox_l12_columns(b, spec.tau / state.mu);
}

StoppingResult stopping_check(const ProblemSpec& spec, const SolverState& state,
                              const SolverState& previous, const SolverConfig& cfg) {
    const Eigen::Index c = spec.num_views();
    StoppingResult out;

    double max_change = 0.0;
    if (spec.consensus != ConsensusPenalty::none) {
        max_change = (state.A - previous.A).norm();
    }
    for (Eigen::Index i = 0; i < c; ++i) {
        max_change = std::max(max_change, (state.Z[i] - previous.Z[i]).norm());
        max_change = std::max(max_change, (state.E[i] - previous.E[i]).norm());
    }
    out.m = previous.mu * std::sqrt(spec.rho) / spec.global_x_norm * max_change;

    bool ok = out.m < cfg.eps2;
    for (Eigen::Index i = 0; i < c; ++i) {
        const Matrix& x = spec.views[i];
        const double feas = (x * state.Z[i] - x + state.E[i]).norm() / spec.view_norms[i];
        out.feas.push_back(feas);
        ok = ok && feas < cfg.eps1;
        double cons = 0.0;
        if (spec.consensus != ConsensusPenalty::none) {
            cons = (state.A.row(i).transpose() - state.Z[i].reshaped()).norm() / spec.view_norms[i];
        }
        out.consensus.push_back(cons);
        ok = ok && cons < cfg.eps1;
    }
    out.converged = ok;
    return out;
}

void multiplier_and_mu_update(const ProblemSpec& spec, SolverState& state, double m,
                              const SolverConfig& cfg) {
    const double mu = state.mu;
    for (Eigen::Index i = 0; i < spec.num_views(); ++i) {
        const Matrix& x = spec.views[i];
        state.Y[i] += mu * (x - x * state.Z[i] - state.E[i]);
        if (spec.consensus != ConsensusPenalty::none) {
            state.W.row(i) += mu * (state.Z[i].reshaped().transpose() - state.A.row(i));
        }
    }
    const double gamma = (m < cfg.eps2) ? cfg.gamma0 : 1.0;
    state.mu = std::min(cfg.mu_max, gamma * mu);
    state.iter += 1;
}

CoefficientStack solve(const ProblemSpec& spec, const SolverConfig& cfg) {
    const Eigen::Index c = spec.num_views();
    SolverState state = initial_state(spec, cfg);

    SolverDiagnostics diag;
    diag.rho = spec.rho;
    diag.global_x_norm = spec.global_x_norm;

    for (int k = 0; k < cfg.max_iters; ++k) {
        SolverState next = state;
        for (Eigen::Index i = 0; i < c; ++i) next.Z[i] = z_update(spec, state, i);
        // E reads the fresh Z (Gauss-Seidel over variable groups); only the
        // per-view updates within each group are independent. Exact parallel
        // splitting of Z/E/A is unstable here once mu grows.
        for (Eigen::Index i = 0; i < c; ++i) next.E[i] = e_update(spec, next, i);
        if (spec.consensus != ConsensusPenalty::none) next.A = a_update(spec, next);

        for (Eigen::Index i = 0; i < c; ++i) {
            if (!next.Z[i].allFinite() || !next.E[i].allFinite()) {
                throw NumericalError("solver: non-finite iterate for view " +
                                     std::to_string(i + 1) + " at iteration " +
                                     std::to_string(k + 1));
            }
        }

        const StoppingResult stop = stopping_check(spec, next, state, cfg);
        double max_feas = 0.0, max_cons = 0.0;
        for (Eigen::Index i = 0; i < c; ++i) {
            max_feas = std::max(max_feas, stop.feas[i]);
            max_cons = std::max(max_cons, stop.consensus[i]);
        }
        diag.feas_residual.push_back(max_feas);
        diag.consensus_residual.push_back(max_cons);
        diag.m_history.push_back(stop.m);
        diag.iterations = k + 1;

        if (stop.converged) {
            diag.converged = true;
            state = std::move(next);
            break;
        }
        multiplier_and_mu_update(spec, next, stop.m, cfg);
        state = std::move(next);
    }

    CoefficientStack out;
    out.Z = std::move(state.Z);
    if (spec.consensus != ConsensusPenalty::none) out.A = std::move(state.A);
    out.diagnostics = std::move(diag);
    return out;
}

CoefficientStack solve_clrsc(const std::vector<Matrix>& views, const SolverConfig& cfg) {
    return solve(make_problem(views, cfg, ErrorNorm::frobenius, ConsensusPenalty::nuclear), cfg);
}

CoefficientStack solve_mlap(const std::vector<Matrix>& views, const SolverConfig& cfg) {
    return solve(make_problem(views, cfg, ErrorNorm::l12, ConsensusPenalty::l12), cfg);
}

CoefficientStack solve_lrr(const Matrix& view, double lambda, const SolverConfig& cfg,
                           ErrorNorm error_norm) {
    SolverConfig c = cfg;
    c.lambda.assign(1, lambda);
    c.tau = 0.0;
    return solve(make_problem({view}, c, error_norm, ConsensusPenalty::none), c);
}

}  // namespace clrsc
