#include "ilt/solver.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

#include "ilt/metrics.hpp"

namespace ilt {

void SolverConfig::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("solver config: " + msg); };
    if (!(rho > 0.0)) fail("rho must be > 0");
    if (!(gamma > 0.0)) fail("gamma must be > 0");
    if (!(beta1 >= 0.0)) fail("beta1 must be >= 0");
    if (!(beta2 >= 0.0)) fail("beta2 must be >= 0");
    if (!(armijo_alpha > 0.0 && armijo_alpha < 0.5)) fail("armijo_alpha must lie in (0, 0.5)");
    if (!(armijo_beta > 0.0 && armijo_beta < 1.0)) fail("armijo_beta must lie in (0, 1)");
    if (!(armijo_t0 > 0.0)) fail("armijo_t0 must be > 0");
    if (!(outer_tol >= 0.0)) fail("outer_tol must be >= 0");
    if (outer_max_iters == 0) fail("outer_max_iters must be > 0");
    if (bregman_max_iters == 0) fail("bregman_max_iters must be > 0");
    if (descent_max_iters == 0) fail("descent_max_iters must be > 0");
}

// ---------------------------------------------------------------- data term

namespace {

struct SigmoidTerms {
    double s;   // Sig_a(x)
    double d1;  // dS/dx
    double d2;  // d2S/dx2
};

SigmoidTerms sigmoid_terms(double x, double a, double tr) {
    const double s = sigmoid(x, a, tr);
    const double q = s * (1.0 - s);
    return {s, a * q, a * a * q * (1.0 - 2.0 * s)};
}

}  // namespace

double entry_misfit(double v, double target, double a, double tr) {
    const double r = sigmoid(v * v, a, tr) - target;
    return r * r;
}

double entry_gradient(double v, double target, double a, double tr) {
    const auto t = sigmoid_terms(v * v, a, tr);
    return 4.0 * v * (t.s - target) * t.d1;
}

double entry_curvature(double v, double target, double a, double tr) {
    const auto t = sigmoid_terms(v * v, a, tr);
    const double r = t.s - target;
    return 4.0 * r * t.d1 + 8.0 * v * v * (t.d1 * t.d1 + r * t.d2);
}

double misfit_h(const ComplexGrid& v, const BinaryPattern& target, double a, double tr) {
    require_same_shape(v, target.grid(), "misfit_h");
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double r = sigmoid(std::norm(v[i]), a, tr) - target[i];
        s += r * r;
    }
    return s;
}

ComplexGrid grad_h(const ComplexGrid& v, const BinaryPattern& target, double a, double tr) {
    require_same_shape(v, target.grid(), "grad_h");
    ComplexGrid out(v.side());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double s = sigmoid(std::norm(v[i]), a, tr);
        out[i] = 4.0 * a * (s - target[i]) * (1.0 - s) * s * v[i];
    }
    return out;
}

double estimate_lipschitz(double a, double tr, std::size_t samples) {
    if (!(a > 0.0)) throw std::invalid_argument("estimate_lipschitz: steepness must be > 0");
    if (samples < 3) throw std::invalid_argument("estimate_lipschitz: need at least 3 samples");
    constexpr double kRange = 3.0;
    const double step = kRange / static_cast<double>(samples - 1);

    double best = 0.0;
    for (double target : {0.0, 1.0}) {
        std::size_t arg = 0;
        double local = -1.0;
        for (std::size_t i = 0; i < samples; ++i) {
            const double c = std::abs(entry_curvature(static_cast<double>(i) * step, target, a, tr));
            if (c > local) {
                local = c;
                arg = i;
            }
        }
        // Golden-section refinement of |h''| on the bracketing interval.
        double lo = std::max(0.0, (static_cast<double>(arg) - 1.0) * step);
        double hi = std::min(kRange, (static_cast<double>(arg) + 1.0) * step);
        const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
        auto f = [&](double x) { return std::abs(entry_curvature(x, target, a, tr)); };
        double x1 = hi - ratio * (hi - lo), x2 = lo + ratio * (hi - lo);
        double f1 = f(x1), f2 = f(x2);
        for (int it = 0; it < 60; ++it) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + ratio * (hi - lo);
                f2 = f(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - ratio * (hi - lo);
                f1 = f(x1);
            }
        }
        best = std::max({best, local, f1, f2});
    }
    return best * 1.01;
}

double rho_condition_margin(double rho, double lipschitz) { return rho / 2.0 - lipschitz / rho - lipschitz; }

bool check_rho_condition(double rho, double lipschitz) { return rho_condition_margin(rho, lipschitz) > 0.0; }

// ---------------------------------------------------------------- objectives

namespace {

double residual_sq(const ComplexGrid& a, const ComplexGrid& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return s;
}

}  // namespace

double augmented_lagrangian(const RealGrid& u, const ComplexGrid& v, const ComplexGrid& p,
                            const BinaryPattern& target, const SolverConfig& cfg, const ImagingModel& model) {
    require_same_shape(u, v, "augmented_lagrangian");
    require_same_shape(u, p, "augmented_lagrangian");
    const auto& optics = model.optics();
    const ComplexGrid hu = model.field(u);
    ComplexGrid r(u.side());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = v[i] - hu[i];
    return misfit_h(v, target, optics.sigmoid_steepness, optics.threshold) + cfg.beta1 * tv_norm(u) +
           cfg.beta2 * binarity_penalty(u) + inner(p, r) + 0.5 * cfg.rho * inner(r, r);
}

double ilt_objective(const RealGrid& u, const BinaryPattern& target, const SolverConfig& cfg,
                     const ImagingModel& model) {
    const auto& optics = model.optics();
    return misfit_h(model.field(u), target, optics.sigmoid_steepness, optics.threshold) +
           cfg.beta1 * tv_norm(u) + cfg.beta2 * binarity_penalty(u);
}

double u_objective(const RealGrid& u, const ComplexGrid& w, const SolverConfig& cfg, const ImagingModel& model) {
    return residual_sq(model.field(u), w) + cfg.beta1 * tv_norm(u) + cfg.beta2 * binarity_penalty(u);
}

BregmanObjective::BregmanObjective(const ImagingModel& model, const ComplexGrid& w, const BregmanState& state,
                                   const SolverConfig& cfg)
    : model_(model), w_(w), state_(state), cfg_(cfg) {
    require_same_shape(w, state.d.tv_x, "BregmanObjective");
}

double BregmanObjective::penalty_terms(const RealGrid& u, SplitTriple* residual) const {
    if (!residual) return penalty_along(u, u, 0.0);
    SplitTriple r = state_.d - phi(u, cfg_.beta1, cfg_.beta2) - state_.b;
    const double n2 = l2_norm(r);
    *residual = std::move(r);
    return 0.5 * cfg_.gamma * n2 * n2;
}

double BregmanObjective::penalty_along(const RealGrid& u, const RealGrid& g, double t) const {
    const std::size_t n = u.side();
    const double b1 = cfg_.beta1, b2 = cfg_.beta2;
    const auto& d = state_.d;
    const auto& b = state_.b;
    auto at = [&](std::size_t i) { return u[i] - t * g[i]; };
    double sum = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const std::size_t i = r * n + c;
            const double x = at(i);
            const double dx = c + 1 < n ? at(i + 1) - x : 0.0;
            const double dy = r + 1 < n ? at(i + n) - x : 0.0;
            const double rx = d.tv_x[i] - b1 * dx - b.tv_x[i];
            const double ry = d.tv_y[i] - b1 * dy - b.tv_y[i];
            const double rp = d.pen[i] - b2 * x * (1.0 - x) - b.pen[i];
            sum += rx * rx + ry * ry + rp * rp;
        }
    }
    return 0.5 * cfg_.gamma * sum;
}

double BregmanObjective::value(const RealGrid& u) const {
    return residual_sq(model_.field(u), w_) + penalty_terms(u, nullptr);
}

ComplexGrid BregmanObjective::residual(const RealGrid& u) const {
    ComplexGrid res = model_.field(u);
    for (std::size_t i = 0; i < res.size(); ++i) res[i] -= w_[i];
    return res;
}

double BregmanObjective::value_and_gradient(const RealGrid& u, RealGrid& grad) const {
    return value_and_gradient(u, residual(u), grad);
}

double BregmanObjective::value_and_gradient(const RealGrid& u, const ComplexGrid& res, RealGrid& grad) const {
    SplitTriple r;
    const double value = inner(res, res) + penalty_terms(u, &r);

    const RealGrid back = model_.convolver().adjoint_real(res);
    const RealGrid tv_back = diff_adjoint(r.tv_x, r.tv_y);
    grad = RealGrid(u.side());
    const double g1 = cfg_.gamma * cfg_.beta1;
    const double g2 = cfg_.gamma * cfg_.beta2;
    for (std::size_t i = 0; i < grad.size(); ++i)
        grad[i] = 2.0 * back[i] - g1 * tv_back[i] + g2 * r.pen[i] * (2.0 * u[i] - 1.0);
    return value;
}

BregmanObjective::Ray::Ray(const BregmanObjective& owner, const RealGrid& u, const RealGrid& g,
                           const ComplexGrid& residual)
    : owner_(owner), u_(u), g_(g), residual_(residual), hg(owner.model_.field(g)) {}

double BregmanObjective::Ray::operator()(double t) const {
    double data = 0.0;
    for (std::size_t i = 0; i < residual_.size(); ++i) data += std::norm(residual_[i] - t * hg[i]);
    return data + owner_.penalty_along(u_, g_, t);
}

RealGrid BregmanObjective::gradient(const RealGrid& u) const {
    RealGrid g;
    value_and_gradient(u, g);
    return g;
}

RealGrid grad_F(const RealGrid& u, const ComplexGrid& w, const SplitTriple& d, const SplitTriple& b,
                const SolverConfig& cfg, const ImagingModel& model) {
    const BregmanState state{d, b};
    return BregmanObjective(model, w, state, cfg).gradient(u);
}

// ---------------------------------------------------------------- U-subproblem

ArmijoResult armijo_step(const std::function<double(const RealGrid&)>& f, const RealGrid& u, const RealGrid& g,
                         double f_u, const SolverConfig& cfg) {
    require_same_shape(u, g, "armijo_step");
    RealGrid trial(u.side());
    const auto along = [&](double t) {
        for (std::size_t i = 0; i < u.size(); ++i) trial[i] = u[i] - t * g[i];
        return f(trial);
    };
    return armijo_step_along(along, inner(g, g), f_u, cfg);
}

ArmijoResult armijo_step_along(const std::function<double(double)>& along, double grad_norm_sq, double f_u,
                               const SolverConfig& cfg) {
    ArmijoResult result{0.0, f_u, 0};
    if (grad_norm_sq == 0.0) return result;
    double t = cfg.armijo_t0;
    for (std::size_t k = 0; k <= cfg.descent_max_iters; ++k) {
        const double ft = along(t);
        ++result.evaluations;
        if (ft <= f_u - cfg.armijo_alpha * t * grad_norm_sq) {
            result.step = t;
            result.value = ft;
            return result;
        }
        t *= cfg.armijo_beta;
    }
    return result;
}

USubproblemResult u_subproblem(const ComplexGrid& w, const RealGrid& u_init, const SolverConfig& cfg,
                               const ImagingModel& model) {
    require_same_shape(w, u_init, "u_subproblem");
    const double tol = cfg.bregman_tolerance(u_init.side());
    const double kappa = 1.0 / cfg.gamma;

    RealGrid u = u_init;
    BregmanState state{phi(u, cfg.beta1, cfg.beta2), SplitTriple::zeros(u.side())};

    USubproblemResult best{u_init, u_objective(u_init, w, cfg, model), 0, 0};
    std::size_t steps = 0;

    for (std::size_t k = 0; k < cfg.bregman_max_iters; ++k) {
        const RealGrid u_prev = u;
        const BregmanObjective objective(model, w, state, cfg);

        RealGrid grad;
        ComplexGrid res = objective.residual(u);
        double fu = objective.value_and_gradient(u, res, grad);
        for (std::size_t m = 0; m < cfg.descent_max_iters; ++m) {
            if (!std::isfinite(fu) || !all_finite(grad)) {
                std::ostringstream msg;
                msg << "u_subproblem: non-finite Bregman objective or gradient at inner iteration " << k << '/' << m;
                throw NonFiniteError(msg.str());
            }
            const double g2 = inner(grad, grad);
            if (g2 == 0.0) break;
            const auto along = objective.ray(u, grad, res);
            const ArmijoResult step = armijo_step_along(along, g2, fu, cfg);
            if (step.step == 0.0) break;
            for (std::size_t i = 0; i < u.size(); ++i) u[i] -= step.step * grad[i];
            for (std::size_t i = 0; i < res.size(); ++i) res[i] -= step.step * along.hg[i];
            ++steps;
            const double previous = fu;
            fu = objective.value_and_gradient(u, res, grad);
            if (previous - fu <= 1e-12 * std::max(1.0, std::abs(previous))) break;
        }

        u = project_box(u);
        const SplitTriple phi_u = phi(u, cfg.beta1, cfg.beta2);
        const SplitTriple shifted = phi_u + state.b;
        state.d = shrink(shifted, kappa);
        state.b = shifted - state.d;

        const double obj = u_objective(u, w, cfg, model);
        if (!std::isfinite(obj)) throw NonFiniteError("u_subproblem: non-finite objective after projection");
        if (obj < best.objective) {
            best.u = u;
            best.objective = obj;
        }
        best.bregman_iterations = k + 1;

        RealGrid delta(u.side());
        for (std::size_t i = 0; i < u.size(); ++i) delta[i] = u[i] - u_prev[i];
        if (l2_norm(delta) < tol) break;
    }
    best.descent_steps = steps;
    return best;
}

// ---------------------------------------------------------------- V-subproblem

namespace {

// Magnitude m on the ray of w with |m * phase|^2 on the requested side of tr.
Complex place_on_ray(Complex phase, double tr, bool printed) {
    double m = std::sqrt(tr);
    Complex v = m * phase;
    const double up = std::numeric_limits<double>::infinity();
    for (int guard = 0; guard < 64; ++guard) {
        const bool is_printed = std::norm(v) >= tr;
        if (is_printed == printed) return v;
        m = std::nextafter(m, printed ? up : 0.0);
        v = m * phase;
    }
    return v;
}

}  // namespace

double v_pixel_cost(Complex v, Complex w, double target, double rho, double tr) {
    const double printed = std::norm(v) >= tr ? 1.0 : 0.0;
    const double misfit = printed - target;
    return misfit * misfit + 0.5 * rho * std::norm(v - w);
}

Complex v_update_pixel(Complex w, double target, double rho, double tr) {
    const double mag = std::abs(w);
    const bool printed = std::norm(w) >= tr;
    const bool wanted = target != 0.0;
    if (printed == wanted) return w;
    const double gap = mag - std::sqrt(tr);
    if (0.5 * rho * gap * gap > 1.0) return w;
    const Complex phase = mag > 0.0 ? w / mag : Complex{1.0, 0.0};
    return place_on_ray(phase, tr, wanted);
}

VUpdate v_subproblem_detailed(const ComplexGrid& w, const BinaryPattern& target, double rho, double tr) {
    require_same_shape(w, target.grid(), "v_subproblem");
    if (!(rho > 0.0)) throw std::invalid_argument("v_subproblem: rho must be > 0");
    if (!(tr > 0.0 && tr < 1.0)) throw std::invalid_argument("v_subproblem: threshold must lie in (0, 1)");
    VUpdate out{ComplexGrid(w.side()), 0};
    for (std::size_t i = 0; i < w.size(); ++i) {
        out.v[i] = v_update_pixel(w[i], target[i], rho, tr);
        if (out.v[i] != w[i]) ++out.moved;
    }
    return out;
}

ComplexGrid v_subproblem(const ComplexGrid& w, const BinaryPattern& target, double rho, double tr) {
    return v_subproblem_detailed(w, target, rho, tr).v;
}

ComplexGrid dual_update(const ComplexGrid& p, const ComplexGrid& v, const ComplexGrid& hu, double rho) {
    require_same_shape(p, v, "dual_update");
    require_same_shape(p, hu, "dual_update");
    ComplexGrid out(p.side());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i] + rho * (v[i] - hu[i]);
    return out;
}

// ---------------------------------------------------------------- outer loop

namespace {

void require_finite(const RealGrid& g, std::size_t iteration, const char* field) {
    if (!all_finite(g)) {
        std::ostringstream msg;
        msg << "admm_optimize: non-finite values in " << field << " at outer iteration " << iteration;
        throw NonFiniteError(msg.str());
    }
}

void require_finite(const ComplexGrid& g, std::size_t iteration, const char* field) {
    if (!all_finite(g)) {
        std::ostringstream msg;
        msg << "admm_optimize: non-finite values in " << field << " at outer iteration " << iteration;
        throw NonFiniteError(msg.str());
    }
}

}  // namespace

AdmmResult admm_optimize(const BinaryPattern& target, const ImagingModel& model, const SolverConfig& cfg,
                         const AdmmOptions& options) {
    cfg.validate();
    const OpticsConfig& optics = model.optics();
    optics.validate();
    const std::size_t n = target.side();
    if (n != model.mask_side()) throw DimensionError("admm_optimize: target side does not match imaging model");
    if (n < 2) throw DimensionError("admm_optimize: mask side must be at least 2");

    const double a = optics.sigmoid_steepness;
    const double tr = optics.threshold;

    AdmmResult result;
    result.lipschitz = estimate_lipschitz(a, tr);
    result.rho_condition_holds = check_rho_condition(cfg.rho, result.lipschitz);
    if (!result.rho_condition_holds) {
        std::ostringstream msg;
        msg << "rho = " << cfg.rho << " violates rho/2 - L/rho - L > 0 with estimated L = " << result.lipschitz
            << "; convergence is not guaranteed";
        if (options.warn)
            options.warn(msg.str());
        else
            std::clog << "warning: " << msg.str() << '\n';
    }

    AdmmState state;
    state.u = options.initial_mask ? project_box(*options.initial_mask) : target.grid();
    require_same_shape(state.u, target.grid(), "admm_optimize initial mask");
    state.v = model.field(state.u);
    state.p = ComplexGrid(n, Complex{1.0, 0.0});

    result.initial_lagrangian = augmented_lagrangian(state.u, state.v, state.p, target, cfg, model);
    result.initial_epe_error = evaluate(state.u, target, model).error;

    for (std::size_t k = 1; k <= cfg.outer_max_iters; ++k) {
        ComplexGrid w(n);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = state.v[i] + state.p[i] / cfg.rho;
        USubproblemResult us = u_subproblem(w, state.u, cfg, model);
        state.u = std::move(us.u);
        require_finite(state.u, k, "U");

        const ComplexGrid hu = model.field(state.u);
        ComplexGrid wv(n);
        for (std::size_t i = 0; i < wv.size(); ++i) wv[i] = hu[i] - state.p[i] / cfg.rho;
        VUpdate vu = v_subproblem_detailed(wv, target, cfg.rho, tr);
        require_finite(vu.v, k, "V");

        ComplexGrid dv(n);
        for (std::size_t i = 0; i < dv.size(); ++i) dv[i] = vu.v[i] - state.v[i];
        state.v = std::move(vu.v);
        state.p = dual_update(state.p, state.v, hu, cfg.rho);
        require_finite(state.p, k, "P");
        state.iteration = k;

        ConvergenceRecord rec;
        rec.iteration = k;
        rec.lagrangian = augmented_lagrangian(state.u, state.v, state.p, target, cfg, model);
        rec.epe_error = evaluate(state.u, target, model).error;
        ComplexGrid r(n);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = state.v[i] - hu[i];
        rec.primal_residual = l2_norm(r);
        rec.step_accepted = us.descent_steps > 0;
        rec.v_change = l2_norm(dv);
        rec.smooth_branch_only = vu.moved == 0;
        const ComplexGrid gh = grad_h(state.v, target, a, tr);
        ComplexGrid sum(n);
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = state.p[i] + gh[i];
        rec.dual_identity_residual = l2_norm(sum) / std::max(l2_norm(state.p), 1e-300);
        if (!std::isfinite(rec.lagrangian)) {
            std::ostringstream msg;
            msg << "admm_optimize: non-finite Lagrangian at outer iteration " << k;
            throw NonFiniteError(msg.str());
        }

        result.records.push_back(rec);
        if (options.progress) options.progress(rec);
        if (rec.epe_error <= cfg.outer_tol) break;
    }

    result.mask = state.u;
    result.final_state = std::move(state);
    return result;
}

TraceReport lagrangian_trace_check(const std::vector<ConvergenceRecord>& records,
                                   std::optional<double> initial_lagrangian, double rel_tol) {
    TraceReport report;
    std::size_t ok = 0;
    std::optional<double> previous = initial_lagrangian;
    for (const auto& rec : records) {
        if (previous) {
            ++report.transitions;
            if (rec.lagrangian <= *previous + rel_tol * std::abs(*previous)) ++ok;
        }
        previous = rec.lagrangian;
        report.v_changes.push_back(rec.v_change);
        if (rec.smooth_branch_only) {
            ++report.dual_identity_checked;
            if (rec.dual_identity_residual <= 1e-8) ++report.dual_identity_held;
        }
    }
    report.nonincreasing_fraction =
        report.transitions == 0 ? 1.0 : static_cast<double>(ok) / static_cast<double>(report.transitions);

    const std::size_t count = report.v_changes.size();
    if (count > 0) {
        const std::size_t quarter = std::max<std::size_t>(1, count / 4);
        double first = 0.0, last = 0.0;
        for (std::size_t i = 0; i < quarter; ++i) {
            first += report.v_changes[i];
            last += report.v_changes[count - 1 - i];
        }
        report.first_quarter_mean_v_change = first / static_cast<double>(quarter);
        report.last_quarter_mean_v_change = last / static_cast<double>(quarter);
    }
    return report;
}

}  // namespace ilt
