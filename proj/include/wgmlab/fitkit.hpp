#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

// Nonlinear least-squares reduction of measured or simulated traces to
// physical quantities. Fits are deterministic: initialization comes from a
// log-linear regression of the data, there are no randomized restarts.

namespace wgmlab::fitkit {

struct FitResult {
    std::string model_name;
    std::vector<std::string> parameter_names;
    std::vector<double> parameters;
    std::vector<double> standard_errors;  // filled iff converged
    double residual_norm = 0.0;           // sqrt(sum of squared residuals)
    bool converged = false;
    int n_iterations = 0;
    // Physical quantities implied by the parameters ("T2", "tau_pi", ...).
    std::map<std::string, double> derived;
};

struct XY {
    std::vector<double> x;
    std::vector<double> y;
};

// Residual callback: fills r with model(p) - data, one entry per point.
using ResidualFn =
    std::function<void(const std::vector<double>& p, std::vector<double>& r)>;

struct LevenbergOptions {
    int max_iterations = 200;
    double step_tolerance = 1e-9;  // relative step size at termination
    double initial_damping = 1e-3;
};

// Damped Gauss-Newton with a numerically differenced Jacobian. The damping
// update enforces a monotone residual decrease.
FitResult levenberg_fit(const ResidualFn& fn, std::vector<double> init,
                        std::size_t n_residuals,
                        const LevenbergOptions& opts = {});

enum class DecayModel { amp_2pe, int_2pe, pop_3pe, hole };

// Fits A exp(-k t) (plus an optional additive floor, off by default) and maps
// the rate to the physical constant of the chosen model:
//   amp_2pe: T2 = 2/k     int_2pe: T2 = 4/k
//   pop_3pe: T1 = 1/k     hole:    T_h = 1/k
FitResult fit_decay(const XY& series, DecayModel model,
                    std::optional<std::vector<double>> init = std::nullopt,
                    bool with_floor = false);

enum class HoleFitMode { piecewise, two_component_sum };

// Two-regime spectral-hole decay. Default mode fits sequential single
// exponentials with a fitted breakpoint; the sum mode fits
// A1 exp(-t/Tf) + A2 exp(-t/Ts). If the two components are numerically
// indistinguishable the fit falls back to a single exponential and says so.
FitResult fit_two_stage_hole(const XY& series,
                             std::optional<double> breakpoint = std::nullopt,
                             HoleFitMode mode = HoleFitMode::piecewise);

// Hard-pulse two-pulse-echo amplitude vs second-pulse duration:
// amplitude = A sin^2(Omega tau / 2). Reports tau_pi = pi/Omega and the raw
// argmax of the scan as a model-free cross-check.
FitResult fit_pi_pulse(const XY& series);

// Ordinary least squares for y = a x^2 + b x + c; reports R^2.
FitResult fit_heating_quadratic(const XY& series);

}  // namespace wgmlab::fitkit
