#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ilt/grid.hpp"
#include "ilt/optics.hpp"
#include "ilt/regularization.hpp"

namespace ilt {

struct SolverConfig {
    double rho = 10.0;
    double gamma = 30.0;
    double beta1 = 0.01;
    double beta2 = 0.015;
    double armijo_alpha = 0.3;
    double armijo_beta = 0.5;
    double armijo_t0 = 1.0;
    double outer_tol = 0.0;
    std::size_t outer_max_iters = 100;
    std::size_t bregman_max_iters = 20;
    /// Negative means "1e-4 * n" for an n x n mask.
    double bregman_tol = -1.0;
    std::size_t descent_max_iters = 30;

    void validate() const;
    double bregman_tolerance(std::size_t n) const { return bregman_tol < 0.0 ? 1e-4 * static_cast<double>(n) : bregman_tol; }
};

/// Raised when the iteration produces NaN/Inf; the message names the
/// iteration and the offending field.
class NonFiniteError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AdmmState {
    RealGrid u;
    ComplexGrid v;
    ComplexGrid p;
    std::size_t iteration = 0;
};

struct BregmanState {
    SplitTriple d;
    SplitTriple b;
};

struct ConvergenceRecord {
    std::size_t iteration = 0;
    double lagrangian = 0.0;
    double epe_error = 0.0;
    double primal_residual = 0.0;  // ||V - HU||_2
    bool step_accepted = false;    // the U-subproblem took at least one descent step

    // Diagnostics beyond the CSV columns.
    double v_change = 0.0;                // ||V^{k+1} - V^k||_2
    bool smooth_branch_only = false;      // every pixel kept V_i = W_i
    double dual_identity_residual = 0.0;  // ||P + grad h(V)|| / max(||P||, tiny)
};

using ProgressSink = std::function<void(const ConvergenceRecord&)>;
using WarningSink = std::function<void(std::string_view)>;

// Per-entry data-fit term h(v) = (Sig_a(|v|^2) - I)^2 and its derivatives
// along the real axis.
double entry_misfit(double v, double target, double a, double tr);
double entry_gradient(double v, double target, double a, double tr);
double entry_curvature(double v, double target, double a, double tr);

/// h_a(V) = ||Sig_a(|V|^2) - I||^2.
double misfit_h(const ComplexGrid& v, const BinaryPattern& target, double a, double tr);

/// Gradient of h_a with respect to (Re V, Im V), packed as a complex grid:
/// 4 a V (S - I)(1 - S) S with S = Sig_a(|V|^2).
ComplexGrid grad_h(const ComplexGrid& v, const BinaryPattern& target, double a, double tr);

/// Upper estimate (sampled max x 1.01) of sup |h''| over |v| in [0, 3] for
/// both target values; this is the Lipschitz constant of grad h.
double estimate_lipschitz(double a, double tr, std::size_t samples = 1'000'000);

double rho_condition_margin(double rho, double lipschitz);
/// rho/2 - L/rho - L > 0 (strict).
bool check_rho_condition(double rho, double lipschitz);

double augmented_lagrangian(const RealGrid& u, const ComplexGrid& v, const ComplexGrid& p,
                            const BinaryPattern& target, const SolverConfig& cfg, const ImagingModel& model);

/// Unconstrained ILT objective ||Sig(|HU|^2) - I||^2 + beta1 TV(U) + beta2 ||U(1-U)||_1.
double ilt_objective(const RealGrid& u, const BinaryPattern& target, const SolverConfig& cfg,
                     const ImagingModel& model);

/// Smooth Bregman sub-objective
/// F(U) = ||HU - W||^2 + gamma/2 ||d - phi(U) - b||^2.
class BregmanObjective {
public:
    BregmanObjective(const ImagingModel& model, const ComplexGrid& w, const BregmanState& state,
                     const SolverConfig& cfg);

    double value(const RealGrid& u) const;
    RealGrid gradient(const RealGrid& u) const;
    /// Value and gradient sharing one forward convolution.
    double value_and_gradient(const RealGrid& u, RealGrid& grad) const;
    /// Same, with the data residual HU - W already known.
    double value_and_gradient(const RealGrid& u, const ComplexGrid& residual, RealGrid& grad) const;
    ComplexGrid residual(const RealGrid& u) const;

    /// Restriction of F to the ray u - t g. Uses linearity of H so each
    /// trial costs no convolution; valid while `u` and `g` outlive it.
    class Ray {
    public:
        double operator()(double t) const;

    private:
        friend class BregmanObjective;
        Ray(const BregmanObjective& owner, const RealGrid& u, const RealGrid& g, const ComplexGrid& residual);
        const BregmanObjective& owner_;
        const RealGrid& u_;
        const RealGrid& g_;
        const ComplexGrid& residual_;  // HU - W

    public:
        const ComplexGrid hg;  // H g
    };
    Ray ray(const RealGrid& u, const RealGrid& g, const ComplexGrid& residual) const {
        return Ray(*this, u, g, residual);
    }

private:
    double penalty_terms(const RealGrid& u, SplitTriple* residual) const;
    /// gamma/2 ||d - phi(u - t g) - b||^2 without materializing u - t g.
    double penalty_along(const RealGrid& u, const RealGrid& g, double t) const;

    const ImagingModel& model_;
    const ComplexGrid& w_;
    const BregmanState& state_;
    const SolverConfig& cfg_;
};

RealGrid grad_F(const RealGrid& u, const ComplexGrid& w, const SplitTriple& d, const SplitTriple& b,
                const SolverConfig& cfg, const ImagingModel& model);

/// Objective minimized by the U-subproblem:
/// ||HU - W||^2 + beta1 TV(U) + beta2 ||U(1-U)||_1.
double u_objective(const RealGrid& u, const ComplexGrid& w, const SolverConfig& cfg, const ImagingModel& model);

struct ArmijoResult {
    double step = 0.0;  // 0 signals stagnation
    double value = 0.0; // objective at the accepted point (or at u when step == 0)
    std::size_t evaluations = 0;
};

/// Backtracking from t0 by armijo_beta until
/// f(u - t g) <= f(u) - alpha t ||g||^2. Gives up after descent_max_iters
/// reductions.
ArmijoResult armijo_step(const std::function<double(const RealGrid&)>& f, const RealGrid& u, const RealGrid& g,
                         double f_u, const SolverConfig& cfg);

/// Same rule with the objective given along the ray, phi(t) = f(u - t g).
ArmijoResult armijo_step_along(const std::function<double(double)>& along, double grad_norm_sq, double f_u,
                               const SolverConfig& cfg);

struct USubproblemResult {
    RealGrid u;
    double objective = 0.0;
    std::size_t bregman_iterations = 0;
    std::size_t descent_steps = 0;
};

USubproblemResult u_subproblem(const ComplexGrid& w, const RealGrid& u_init, const SolverConfig& cfg,
                               const ImagingModel& model);

/// Per-pixel minimizer of (T(|v|^2) - I)^2 + rho/2 |v - w|^2.
Complex v_update_pixel(Complex w, double target, double rho, double tr);
double v_pixel_cost(Complex v, Complex w, double target, double rho, double tr);

struct VUpdate {
    ComplexGrid v;
    std::size_t moved = 0;  // pixels not kept at W_i
};

VUpdate v_subproblem_detailed(const ComplexGrid& w, const BinaryPattern& target, double rho, double tr);
ComplexGrid v_subproblem(const ComplexGrid& w, const BinaryPattern& target, double rho, double tr);

ComplexGrid dual_update(const ComplexGrid& p, const ComplexGrid& v, const ComplexGrid& hu, double rho);

struct AdmmOptions {
    ProgressSink progress;
    WarningSink warn;
    /// Starting mask; defaults to the target itself.
    std::optional<RealGrid> initial_mask;
};

struct AdmmResult {
    RealGrid mask;
    std::vector<ConvergenceRecord> records;
    double initial_lagrangian = 0.0;
    double initial_epe_error = 0.0;
    double lipschitz = 0.0;
    bool rho_condition_holds = false;
    AdmmState final_state;
};

AdmmResult admm_optimize(const BinaryPattern& target, const ImagingModel& model, const SolverConfig& cfg,
                         const AdmmOptions& options = {});

struct TraceReport {
    double nonincreasing_fraction = 1.0;
    std::size_t transitions = 0;
    std::vector<double> v_changes;
    double first_quarter_mean_v_change = 0.0;
    double last_quarter_mean_v_change = 0.0;
    std::size_t dual_identity_checked = 0;
    std::size_t dual_identity_held = 0;
};

/// Lagrangian monotonicity (relative tolerance `rel_tol`) and V-step decay.
/// The first record is compared against `initial_lagrangian` when given.
TraceReport lagrangian_trace_check(const std::vector<ConvergenceRecord>& records,
                                   std::optional<double> initial_lagrangian = std::nullopt,
                                   double rel_tol = 1e-8);

}  // namespace ilt
