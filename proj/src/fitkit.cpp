#include "wgmlab/fitkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wgmlab/constants.hpp"

namespace wgmlab::fitkit {

namespace {

// Solve (A + damping*diag(A)) dx = b in place; A is n x n row-major SPD-ish.
// Plain Gaussian elimination with partial pivoting; systems here are tiny.
bool solve_linear(std::vector<double> a, std::vector<double> b, int n,
                  std::vector<double>& x) {
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::fabs(a[r * n + col]) > std::fabs(a[piv * n + col])) piv = r;
        }
        if (std::fabs(a[piv * n + col]) < 1e-300) return false;
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
            std::swap(b[piv], b[col]);
        }
        for (int r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / a[col * n + col];
            for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            b[r] -= f * b[col];
        }
    }
    x.assign(n, 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c) s -= a[r * n + c] * x[c];
        x[r] = s / a[r * n + r];
    }
    return true;
}

double sum_sq(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

void numeric_jacobian(const ResidualFn& fn, const std::vector<double>& p,
                      const std::vector<double>& r0,
                      std::vector<double>& jac /* m x n */) {
    const int n = static_cast<int>(p.size());
    const int m = static_cast<int>(r0.size());
    std::vector<double> pp = p, r1(m);
    for (int j = 0; j < n; ++j) {
        const double h = 1e-7 * std::max(std::fabs(p[j]), 1e-12);
        pp[j] = p[j] + h;
        fn(pp, r1);
        for (int i = 0; i < m; ++i) jac[i * n + j] = (r1[i] - r0[i]) / h;
        pp[j] = p[j];
    }
}

// Log-linear regression of ln(y) on x over the strictly positive samples:
// deterministic initialization for A exp(-k x).
std::pair<double, double> log_linear_init(const XY& s) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (s.y[i] > 0.0) {
            const double ly = std::log(s.y[i]);
            sx += s.x[i];
            sy += ly;
            sxx += s.x[i] * s.x[i];
            sxy += s.x[i] * ly;
            ++n;
        }
    }
    if (n < 2) throw std::invalid_argument("fit_decay: all-zero or negative signal");
    const double den = n * sxx - sx * sx;
    double slope = den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
    const double icept = (sy - slope * sx) / n;
    if (!(slope < 0.0)) slope = -1.0 / std::max(1e-300, *std::max_element(
        s.x.begin(), s.x.end()));
    return {std::exp(icept), -slope};  // (A, k)
}

void check_series(const XY& s, std::size_t min_points, const char* who) {
    if (s.x.size() != s.y.size()) {
        throw std::invalid_argument(std::string(who) + ": x/y length mismatch");
    }
    if (s.x.size() < min_points) {
        throw std::invalid_argument(std::string(who) + ": needs at least " +
                                    std::to_string(min_points) + " points");
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
            throw std::invalid_argument(std::string(who) + ": non-finite sample");
        }
    }
}

}  // namespace

FitResult levenberg_fit(const ResidualFn& fn, std::vector<double> p,
                        std::size_t n_residuals, const LevenbergOptions& opts) {
    const int n = static_cast<int>(p.size());
    const int m = static_cast<int>(n_residuals);
    FitResult out;
    out.parameters = p;

    std::vector<double> r(m), r_try(m), jac(m * n), jtj(n * n), jtr(n), dx;
    fn(p, r);
    double ssr = sum_sq(r);
    double damping = opts.initial_damping;
    int iter = 0;
    bool converged = false;

    for (; iter < opts.max_iterations; ++iter) {
        numeric_jacobian(fn, p, r, jac);
        for (int a = 0; a < n; ++a) {
            jtr[a] = 0.0;
            for (int b = 0; b < n; ++b) jtj[a * n + b] = 0.0;
        }
        for (int i = 0; i < m; ++i) {
            for (int a = 0; a < n; ++a) {
                jtr[a] += jac[i * n + a] * r[i];
                for (int b = a; b < n; ++b) {
                    jtj[a * n + b] += jac[i * n + a] * jac[i * n + b];
                }
            }
        }
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < a; ++b) jtj[a * n + b] = jtj[b * n + a];
        }

        bool stepped = false;
        for (int inner = 0; inner < 30; ++inner) {
            std::vector<double> damped = jtj;
            for (int a = 0; a < n; ++a) {
                damped[a * n + a] += damping * std::max(jtj[a * n + a], 1e-30);
            }
            std::vector<double> rhs(n);
            for (int a = 0; a < n; ++a) rhs[a] = -jtr[a];
            if (!solve_linear(damped, rhs, n, dx)) {
                damping *= 10.0;
                continue;
            }
            std::vector<double> p_try(p);
            for (int a = 0; a < n; ++a) p_try[a] += dx[a];
            fn(p_try, r_try);
            const double ssr_try = sum_sq(r_try);
            if (ssr_try <= ssr) {
                double rel_step = 0.0;
                for (int a = 0; a < n; ++a) {
                    rel_step = std::max(rel_step,
                                        std::fabs(dx[a]) /
                                            std::max(std::fabs(p[a]), 1e-12));
                }
                p = p_try;
                r = r_try;
                ssr = ssr_try;
                damping = std::max(damping * 0.25, 1e-14);
                stepped = true;
                if (rel_step < opts.step_tolerance) converged = true;
                break;
            }
            damping *= 10.0;
        }
        if (converged) break;
        if (!stepped) {
            converged = true;  // no decreasing step exists: at a minimum
            break;
        }
    }

    out.parameters = p;
    out.residual_norm = std::sqrt(ssr);
    out.converged = converged;
    out.n_iterations = iter + 1;

    if (converged) {
        // Linearized covariance at the optimum: sigma^2 (J^T J)^-1.
        numeric_jacobian(fn, p, r, jac);
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) jtj[a * n + b] = 0.0;
        }
        for (int i = 0; i < m; ++i) {
            for (int a = 0; a < n; ++a) {
                for (int b = 0; b < n; ++b) {
                    jtj[a * n + b] += jac[i * n + a] * jac[i * n + b];
                }
            }
        }
        const double dof = std::max(1, m - n);
        const double sigma2 = ssr / dof;
        out.standard_errors.assign(n, 0.0);
        // invert via n solves of unit vectors (n is tiny)
        for (int a = 0; a < n; ++a) {
            std::vector<double> e(n, 0.0), col;
            e[a] = 1.0;
            if (solve_linear(jtj, e, n, col) && col[a] >= 0.0) {
                out.standard_errors[a] = std::sqrt(sigma2 * col[a]);
            } else {
                out.standard_errors[a] =
                    std::numeric_limits<double>::quiet_NaN();
            }
        }
    }
    return out;
}

FitResult fit_decay(const XY& series, DecayModel model,
                    std::optional<std::vector<double>> init, bool with_floor) {
    check_series(series, 4, "fit_decay");
    for (double d : series.x) {
        if (d < 0.0) throw std::invalid_argument("fit_decay: negative delay");
    }
    bool any_nonzero = false;
    for (double y : series.y) any_nonzero |= y != 0.0;
    if (!any_nonzero) throw std::invalid_argument("fit_decay: all-zero signal");

    std::vector<double> p0;
    if (init) {
        p0 = *init;
    } else {
        auto [amp, rate] = log_linear_init(series);
        p0 = {amp, rate};
        if (with_floor) p0.push_back(0.0);
    }

    const int m = static_cast<int>(series.x.size());
    auto residual = [&](const std::vector<double>& p, std::vector<double>& r) {
        const double floor = p.size() > 2 ? p[2] : 0.0;
        for (int i = 0; i < m; ++i) {
            r[i] = p[0] * std::exp(-p[1] * series.x[i]) + floor - series.y[i];
        }
    };

    FitResult res = levenberg_fit(residual, p0, m);
    res.parameter_names = {"amplitude", "rate"};
    if (with_floor) res.parameter_names.push_back("floor");

    const double k = res.parameters[1];
    switch (model) {
        case DecayModel::amp_2pe:
            res.model_name = "amp_2pe";
            res.derived["T2"] = 2.0 / k;
            break;
        case DecayModel::int_2pe:
            res.model_name = "int_2pe";
            res.derived["T2"] = 4.0 / k;
            break;
        case DecayModel::pop_3pe:
            res.model_name = "pop_3pe";
            res.derived["T1"] = 1.0 / k;
            break;
        case DecayModel::hole:
            res.model_name = "hole";
            res.derived["T_h"] = 1.0 / k;
            break;
    }
    return res;
}

namespace {

// Single-exponential SSR of a sub-range, used by the breakpoint scan.
struct SegmentFit {
    double amp = 0.0, rate = 0.0, ssr = 0.0;
    bool ok = false;
};

SegmentFit fit_segment(const XY& s, std::size_t lo, std::size_t hi) {
    SegmentFit out;
    if (hi - lo < 4) return out;
    XY seg;
    seg.x.assign(s.x.begin() + lo, s.x.begin() + hi);
    seg.y.assign(s.y.begin() + lo, s.y.begin() + hi);
    try {
        FitResult f = fit_decay(seg, DecayModel::hole);
        out.amp = f.parameters[0];
        out.rate = f.parameters[1];
        out.ssr = f.residual_norm * f.residual_norm;
        out.ok = f.converged && f.parameters[1] > 0.0;
    } catch (const std::exception&) {
        out.ok = false;
    }
    return out;
}

}  // namespace

FitResult fit_two_stage_hole(const XY& series, std::optional<double> breakpoint,
                             HoleFitMode mode) {
    check_series(series, 8, "fit_two_stage_hole");

    if (mode == HoleFitMode::two_component_sum) {
        // Peeling initialization: tail fixes the slow component, the
        // remainder fixes the fast one.
        const std::size_t n = series.x.size();
        const std::size_t tail = n - n / 2;
        SegmentFit slow = fit_segment(series, tail, n);
        if (!slow.ok) slow = fit_segment(series, n / 2, n);
        XY rem;
        for (std::size_t i = 0; i < n / 2; ++i) {
            const double r =
                series.y[i] - slow.amp * std::exp(-slow.rate * series.x[i]);
            if (r > 0.0) {
                rem.x.push_back(series.x[i]);
                rem.y.push_back(r);
            }
        }
        double a1 = series.y.front() * 0.5, k1 = slow.rate * 3.0;
        if (rem.x.size() >= 4) {
            try {
                auto f = fit_decay(rem, DecayModel::hole);
                a1 = f.parameters[0];
                k1 = f.parameters[1];
            } catch (const std::exception&) {
            }
        }
        const int m = static_cast<int>(n);
        auto residual = [&](const std::vector<double>& p,
                            std::vector<double>& r) {
            for (int i = 0; i < m; ++i) {
                r[i] = p[0] * std::exp(-p[1] * series.x[i]) +
                       p[2] * std::exp(-p[3] * series.x[i]) - series.y[i];
            }
        };
        FitResult res =
            levenberg_fit(residual, {a1, k1, slow.amp, slow.rate}, m);
        res.model_name = "hole_two_component";
        res.parameter_names = {"amp_fast", "rate_fast", "amp_slow", "rate_slow"};
        double tf = 1.0 / res.parameters[1];
        double ts = 1.0 / res.parameters[3];
        if (tf > ts) std::swap(tf, ts);
        // Indistinguishable components: fall back to one exponential.
        if (!(tf > 0.0) || !(ts > 0.0) || ts / tf < 1.2 ||
            !std::isfinite(tf) || !std::isfinite(ts)) {
            FitResult single = fit_decay(series, DecayModel::hole);
            single.model_name = "hole_single_fallback";
            single.derived["T_h"] = single.derived["T_h"];
            return single;
        }
        res.derived["T_h_fast"] = tf;
        res.derived["T_h_slow"] = ts;
        return res;
    }

    // Piecewise sequential regimes with a fitted breakpoint.
    const std::size_t n = series.x.size();
    std::size_t best_split = 0;
    double best_ssr = std::numeric_limits<double>::infinity();
    SegmentFit best_a, best_b;
    std::size_t lo_split = 4, hi_split = n - 4;
    if (breakpoint) {
        // honor a user-supplied breakpoint: nearest admissible index
        std::size_t idx = 0;
        while (idx < n && series.x[idx] < *breakpoint) ++idx;
        lo_split = std::max<std::size_t>(4, std::min(idx, n - 4));
        hi_split = lo_split + 1;
    }
    for (std::size_t split = lo_split; split < hi_split; ++split) {
        SegmentFit fa = fit_segment(series, 0, split);
        SegmentFit fb = fit_segment(series, split, n);
        if (!fa.ok || !fb.ok) continue;
        const double ssr = fa.ssr + fb.ssr;
        if (ssr < best_ssr) {
            best_ssr = ssr;
            best_split = split;
            best_a = fa;
            best_b = fb;
        }
    }
    if (best_split == 0) {
        FitResult single = fit_decay(series, DecayModel::hole);
        single.model_name = "hole_single_fallback";
        return single;
    }
    FitResult res;
    res.model_name = "hole_piecewise";
    res.parameter_names = {"amp_early", "rate_early", "amp_late", "rate_late"};
    res.parameters = {best_a.amp, best_a.rate, best_b.amp, best_b.rate};
    res.residual_norm = std::sqrt(best_ssr);
    res.converged = true;
    res.n_iterations = 1;
    double tf = 1.0 / best_a.rate;
    double ts = 1.0 / best_b.rate;
    if (tf > ts) std::swap(tf, ts);
    if (ts / tf < 1.2) {
        FitResult single = fit_decay(series, DecayModel::hole);
        single.model_name = "hole_single_fallback";
        return single;
    }
    res.derived["T_h_fast"] = tf;
    res.derived["T_h_slow"] = ts;
    res.derived["breakpoint"] = series.x[best_split];
    return res;
}

FitResult fit_pi_pulse(const XY& series) {
    check_series(series, 5, "fit_pi_pulse");
    const std::size_t imax =
        std::max_element(series.y.begin(), series.y.end()) - series.y.begin();
    if (imax == 0 || imax + 1 == series.y.size()) {
        throw std::invalid_argument(
            "fit_pi_pulse: scan range has no interior maximum");
    }
    const double tau_max = series.x[imax];
    const double omega0 = constants_pi() / tau_max;
    const int m = static_cast<int>(series.x.size());
    auto residual = [&](const std::vector<double>& p, std::vector<double>& r) {
        for (int i = 0; i < m; ++i) {
            const double s = std::sin(0.5 * p[1] * series.x[i]);
            r[i] = p[0] * s * s - series.y[i];
        }
    };
    FitResult res = levenberg_fit(residual, {series.y[imax], omega0}, m);
    res.model_name = "pi_pulse";
    res.parameter_names = {"amplitude", "Omega"};
    res.derived["Omega"] = res.parameters[1];
    res.derived["tau_pi"] = constants_pi() / res.parameters[1];
    res.derived["tau_argmax"] = tau_max;
    return res;
}

FitResult fit_heating_quadratic(const XY& series) {
    check_series(series, 3, "fit_heating_quadratic");
    // require >= 3 distinct x
    {
        std::vector<double> xs = series.x;
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        if (xs.size() < 3) {
            throw std::invalid_argument(
                "fit_heating_quadratic: needs 3 distinct distances");
        }
    }
    const int m = static_cast<int>(series.x.size());
    // Normal equations for [a b c] on basis [x^2, x, 1].
    double s[5] = {0, 0, 0, 0, 0};  // sums of x^0..x^4
    double t[3] = {0, 0, 0};        // sums of y x^0..x^2
    for (int i = 0; i < m; ++i) {
        const double x = series.x[i], y = series.y[i];
        double xp = 1.0;
        for (int p = 0; p <= 4; ++p) {
            s[p] += xp;
            if (p <= 2) t[p] += y * xp;
            xp *= x;
        }
    }
    std::vector<double> a = {s[4], s[3], s[2], s[3], s[2], s[1], s[2], s[1], s[0]};
    std::vector<double> b = {t[2], t[1], t[0]};
    std::vector<double> coef;
    if (!solve_linear(a, b, 3, coef)) {
        throw std::invalid_argument("fit_heating_quadratic: rank-deficient design");
    }
    double ssr = 0.0, sst = 0.0;
    const double ymean = t[0] / m;
    for (int i = 0; i < m; ++i) {
        const double x = series.x[i];
        const double fit = coef[0] * x * x + coef[1] * x + coef[2];
        ssr += (series.y[i] - fit) * (series.y[i] - fit);
        sst += (series.y[i] - ymean) * (series.y[i] - ymean);
    }
    FitResult res;
    res.model_name = "heating_quadratic";
    res.parameter_names = {"a", "b", "c"};
    res.parameters = coef;
    res.residual_norm = std::sqrt(ssr);
    res.converged = true;
    res.n_iterations = 1;
    res.derived["r_squared"] = sst > 0.0 ? 1.0 - ssr / sst : 1.0;
    return res;
}

}  // namespace wgmlab::fitkit
