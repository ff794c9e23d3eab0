#include "otoclab/criticality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "otoclab/parallel.hpp"

namespace otoc {

double asymptotic_fbar(double w, double j_a) {
    if (j_a <= 0.0) throw std::domain_error("asymptotic_fbar: requires j_a > 0");
    const double ja2 = j_a * j_a;
    const double den = 4.0 * ja2 + w * w;
    return 8.0 * ja2 * (2.0 * ja2 - w * w) / (den * den);
}

// ---------------------------------------------------------------- sweeps

namespace {

SweepPoint sweep_point(const ModelParams& p, double axis, const SweepOptions& opts) {
    SweepPoint pt;
    pt.axis = axis;
    pt.params = p;
    try {
        const EigenDecomposition d = diagonalize_model(p);
        const OperatorMatrix sx = qubit_sigma_x(p.n);
        const LongTimeStats stats = long_time_average(d, sx, 0, opts.eps_omega);
        pt.f_bar = stats.f_bar;
        pt.f_bar_complex = stats.f_bar_complex;
        const QuantumState ref =
            normalized(apply_real(sx.mat, ground_state(d).amp), StateBasis::composite);
        pt.pr = participation_ratio(d, ref);
        if (opts.variance) {
            const LongTimeStats numeric = long_time_average_numeric(
                d, sx, ground_state(d), opts.variance->horizon, opts.variance->n_samples);
            pt.variance = numeric.variance;
        }
        pt.ok = true;
    } catch (const std::exception& e) {
        pt.ok = false;
        pt.error = e.what();
    }
    return pt;
}

} // namespace

SweepResult sweep_lambda(const ModelParams& params_template,
                         const std::vector<double>& lambdas, const SweepOptions& opts) {
    std::vector<double> axis = lambdas;
    std::sort(axis.begin(), axis.end());

    SweepResult out;
    out.axis_name = "lambda";
    out.points.resize(axis.size());
    parallel_for(axis.size(), opts.workers, [&](std::size_t i) {
        SweepPoint& pt = out.points[i];
        try {
            const ModelParams p = params_template.with_reduced_lambda(axis[i]);
            pt = sweep_point(p, axis[i], opts);
        } catch (const std::exception& e) {
            pt.axis = axis[i];
            pt.params = params_template;
            pt.ok = false;
            pt.error = e.what();
        }
    });
    return out;
}

// ------------------------------------------------------------ phase diagram

PhaseDiagramGrid phase_diagram(const std::vector<double>& capital_lambdas,
                               const std::vector<double>& ws,
                               const ModelParams& params_template,
                               const SweepOptions& opts) {
    if (capital_lambdas.empty() || ws.empty())
        throw std::invalid_argument("phase_diagram: empty grid");

    PhaseDiagramGrid out;
    out.capital_lambdas = capital_lambdas;
    out.ws = ws;
    out.c_half.setConstant(static_cast<Eigen::Index>(capital_lambdas.size()),
                           static_cast<Eigen::Index>(ws.size()),
                           std::numeric_limits<double>::quiet_NaN());
    for (double w : ws) {
        ModelParams p = params_template;
        p.w = w;
        out.critical_line.push_back(p.lambda_c());
    }

    const std::size_t cells = capital_lambdas.size() * ws.size();
    parallel_for(cells, opts.workers, [&](std::size_t cell) {
        const std::size_t il = cell % capital_lambdas.size();
        const std::size_t iw = cell / capital_lambdas.size();
        ModelParams p = params_template;
        p.w = ws[iw];
        try {
            p = p.with_capital_lambda(capital_lambdas[il]);
            const EigenDecomposition d = diagonalize_model(p);
            const OperatorMatrix sx = qubit_sigma_x(p.n);
            const double f_bar = long_time_average(d, sx, 0, opts.eps_omega).f_bar;
            out.c_half(static_cast<Eigen::Index>(il), static_cast<Eigen::Index>(iw)) =
                1.0 - f_bar;
        } catch (const std::exception&) {
            // cell stays NaN
        }
    });
    return out;
}

// ------------------------------------------------------------- scaling fits

ScalingFit fit_loglog(const std::vector<int>& ns, const std::vector<double>& ys) {
    if (ns.size() != ys.size())
        throw std::invalid_argument("fit_loglog: size mismatch");
    if (ns.size() < 5)
        throw std::invalid_argument("fit_loglog: need at least 5 points");

    const std::size_t m = ns.size();
    std::vector<double> x(m), y(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (ns[i] <= 0 || ys[i] <= 0.0)
            throw std::invalid_argument("fit_loglog: non-positive data");
        x[i] = std::log(static_cast<double>(ns[i]));
        y[i] = std::log(ys[i]);
    }

    double xm = 0, ym = 0;
    for (std::size_t i = 0; i < m; ++i) { xm += x[i]; ym += y[i]; }
    xm /= m; ym /= m;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (x[i] - xm) * (x[i] - xm);
        sxy += (x[i] - xm) * (y[i] - ym);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_loglog: degenerate abscissa");

    ScalingFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = ym - fit.slope * xm;
    fit.fit_window = ns;
    fit.residuals.resize(m);
    double ss = 0;
    for (std::size_t i = 0; i < m; ++i) {
        fit.residuals[i] = y[i] - (fit.intercept + fit.slope * x[i]);
        ss += fit.residuals[i] * fit.residuals[i];
    }
    fit.slope_stderr = std::sqrt(ss / (m - 2) / sxx);
    return fit;
}

BScalingResult scaling_b(const ModelParams& params_template, const std::vector<int>& n_list,
                         const ScalingRunOptions& opts) {
    BScalingResult out;
    std::vector<int> used;
    for (int n : n_list) {
        ModelParams p = params_template;
        p.n = n;
        p = p.with_u(u_for_lambda(0.0, p)); // Lambda = Lambda_c exactly
        const EigenDecomposition d =
            diagonalize_cached(p, HamiltonianKind::composite, opts.cache_dir);
        const OperatorMatrix sx = qubit_sigma_x(n);
        const double y = 1.0 - long_time_average(d, sx, 0, opts.eps_omega).f_bar;
        if (y > 0.0) {
            used.push_back(n);
            out.one_minus_fc.push_back(y);
        } else {
            out.skipped_n.push_back(n);
        }
    }
    out.fit = fit_loglog(used, out.one_minus_fc);
    out.b = -out.fit.slope;
    return out;
}

// --------------------------------------------------------- t_min detection

namespace {

// Golden-section minimization on [a, b] down to rel_tol relative width.
double golden_minimize(const std::function<double(double)>& f, double a, double b,
                       double rel_tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > rel_tol * std::max(std::abs(a), std::abs(b))) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

double t_min_detect(const std::function<double(double)>& re_f, const TminOptions& opts) {
    if (opts.t_guess <= 0.0 || opts.divisions < 2)
        throw std::invalid_argument("t_min_detect: bad options");
    const double h = opts.t_guess / opts.divisions;
    const double t_max = opts.max_factor * opts.t_guess;

    double f_prev2 = re_f(0.0);
    double f_prev = re_f(h);
    for (long k = 2; k * h <= t_max; ++k) {
        const double f_here = re_f(k * h);
        if (f_prev < f_prev2 && f_prev < f_here)
            return golden_minimize(re_f, (k - 2) * h, k * h, opts.rel_tol);
        f_prev2 = f_prev;
        f_prev = f_here;
    }
    throw std::runtime_error("t_min_detect: no local minimum before max_factor * t_guess");
}

double qubit_t_guess(const ModelParams& p) {
    return 2.0 * M_PI / (p.n * std::max({p.j_a, p.w, 1.0}));
}

namespace {

TminScalingResult tmin_fit(const std::vector<int>& n_list, std::vector<double> t_mins) {
    TminScalingResult out;
    out.t_mins = t_mins;
    out.fit = fit_loglog(n_list, t_mins);
    out.exponent = out.fit.slope;
    return out;
}

} // namespace

TminScalingResult scaling_d(OpTag tag, const ModelParams& params_template,
                            const std::vector<int>& n_list, const ScalingRunOptions& opts) {
    if (tag == OpTag::sz_over_n)
        throw std::invalid_argument("scaling_d: expects a qubit operator tag");
    std::vector<double> t_mins;
    for (int n : n_list) {
        ModelParams p = params_template;
        p.n = n;
        p = p.with_u(u_for_lambda(0.0, p));
        const EigenDecomposition d =
            diagonalize_cached(p, HamiltonianKind::composite, opts.cache_dir);
        const OperatorMatrix op = build_tagged_operator(tag, n, StateBasis::composite);
        const OtocEvaluator f(d, op, op, ground_state(d));
        TminOptions topts;
        topts.t_guess = qubit_t_guess(p);
        t_mins.push_back(t_min_detect([&](double t) { return f(t).real(); }, topts));
    }
    return tmin_fit(n_list, std::move(t_mins));
}

TminScalingResult scaling_z(bool with_qubit, const ModelParams& params_template,
                            const std::vector<int>& n_list, const ScalingRunOptions& opts) {
    std::vector<double> t_mins;
    for (int n : n_list) {
        ModelParams p = params_template;
        p.n = n;
        EigenDecomposition d;
        OperatorMatrix op{};
        if (with_qubit) {
            p = p.with_u(u_for_lambda(0.0, p));
            d = diagonalize_cached(p, HamiltonianKind::composite, opts.cache_dir);
            op = build_tagged_operator(OpTag::sz_over_n, n, StateBasis::composite);
        } else {
            p = p.with_capital_lambda(-1.0); // critical point of the bare boson model
            d = diagonalize_cached(p, HamiltonianKind::boson, opts.cache_dir);
            op = build_tagged_operator(OpTag::sz_over_n, n, StateBasis::boson);
        }
        const OtocEvaluator f(d, op, op, ground_state(d));
        TminOptions topts;
        // the collective OTOC softens with the critical gap, not the qubit
        // frequency, so take the grid scale from the spectrum itself
        topts.t_guess = 2.0 * M_PI / std::max(d.energies(1) - d.energies(0), 1e-12);
        t_mins.push_back(t_min_detect([&](double t) { return f(t).real(); }, topts));
    }
    return tmin_fit(n_list, std::move(t_mins));
}

// ----------------------------------------------------------------- ESQPT

EsqptScan esqpt_scan(const ModelParams& p, OpTag tag, double eps_omega) {
    const EigenDecomposition d = diagonalize_model(p);
    const OperatorMatrix op = build_tagged_operator(tag, p.n, StateBasis::composite);
    const Eigen::MatrixXd s = heisenberg_elements(op, d);

    EsqptScan out;
    out.e_c_lower = -p.n * (1.0 + p.j_a);
    out.e_c_upper = -p.n * (1.0 - p.j_a);
    out.levels.resize(d.dim());
    for (Eigen::Index n = 0; n < d.dim(); ++n) {
        out.levels[n].energy = d.energies(n);
        out.levels[n].parity = d.parities(n);
        out.levels[n].f_bar = gap_matched_average(d.energies, s, n, eps_omega);
    }
    detect_split_energies(out);
    return out;
}

void detect_split_energies(EsqptScan& scan, const SplitDetectOptions& opts) {
    const std::size_t n = scan.levels.size();
    scan.split_lower.reset();
    scan.split_upper.reset();
    if (n < 4) return;

    auto local_spacing = [&](std::size_t i) {
        const std::size_t lo = i >= static_cast<std::size_t>(opts.spacing_window)
                                   ? i - opts.spacing_window
                                   : 0;
        const std::size_t hi = std::min(n - 1, i + opts.spacing_window);
        return (scan.levels[hi].energy - scan.levels[lo].energy) /
               std::max<std::size_t>(1, hi - lo);
    };

    // greedy walk: adjacent opposite-parity levels closer than
    // threshold * local spacing form a degenerate doublet
    std::optional<double> first_split;
    std::optional<double> last_doublet;
    std::size_t i = 0;
    while (i + 1 < n) {
        const double split = scan.levels[i + 1].energy - scan.levels[i].energy;
        const bool opposite = scan.levels[i].parity * scan.levels[i + 1].parity == -1;
        if (opposite && split < opts.threshold * local_spacing(i)) {
            last_doublet = 0.5 * (scan.levels[i].energy + scan.levels[i + 1].energy);
            i += 2;
        } else {
            if (!first_split) first_split = scan.levels[i].energy;
            ++i;
        }
    }
    if (i == n - 1 && !first_split) first_split = scan.levels[i].energy;
    scan.split_lower = first_split;
    scan.split_upper = last_doublet;
}

// ------------------------------------------------------------------ PR max

namespace {

double pr_at_lambda(const ModelParams& params_template, double lambda) {
    const ModelParams p = params_template.with_reduced_lambda(lambda);
    const EigenDecomposition d = diagonalize_model(p);
    const OperatorMatrix sx = qubit_sigma_x(p.n);
    const QuantumState ref =
        normalized(apply_real(sx.mat, ground_state(d).amp), StateBasis::composite);
    return participation_ratio(d, ref);
}

} // namespace

std::vector<PrMaxPoint> pr_max_analysis(const std::vector<double>& w_list,
                                        const ModelParams& params_template,
                                        const PrMaxOptions& opts) {
    if (opts.coarse_points < 3)
        throw std::invalid_argument("pr_max_analysis: need at least 3 coarse points");

    std::vector<PrMaxPoint> out(w_list.size());
    for (std::size_t iw = 0; iw < w_list.size(); ++iw) {
        ModelParams tmpl = params_template;
        tmpl.w = w_list[iw];

        const auto grid = linspace(opts.lambda_lo, opts.lambda_hi, opts.coarse_points);
        std::vector<double> pr(grid.size());
        parallel_for(grid.size(), opts.workers,
                     [&](std::size_t i) { pr[i] = pr_at_lambda(tmpl, grid[i]); });

        std::size_t imax = 0;
        for (std::size_t i = 1; i < grid.size(); ++i)
            if (pr[i] > pr[imax]) imax = i;

        const double lo = grid[imax == 0 ? 0 : imax - 1];
        const double hi = grid[std::min(grid.size() - 1, imax + 1)];
        constexpr double inv_phi = 0.6180339887498949;
        double a = lo, b = hi;
        double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
        double f1 = -pr_at_lambda(tmpl, x1), f2 = -pr_at_lambda(tmpl, x2);
        while (b - a > opts.lambda_tol) {
            if (f1 < f2) {
                b = x2; x2 = x1; f2 = f1;
                x1 = b - inv_phi * (b - a);
                f1 = -pr_at_lambda(tmpl, x1);
            } else {
                a = x1; x1 = x2; f1 = f2;
                x2 = a + inv_phi * (b - a);
                f2 = -pr_at_lambda(tmpl, x2);
            }
        }
        const double lambda_star = 0.5 * (a + b);

        PrMaxPoint& pt = out[iw];
        pt.w = w_list[iw];
        pt.lambda_at_max = lambda_star;
        pt.pr_max = pr_at_lambda(tmpl, lambda_star);

        const ModelParams p_star = tmpl.with_reduced_lambda(lambda_star);
        const EigenDecomposition d = diagonalize_model(p_star);
        const OperatorMatrix sx = qubit_sigma_x(p_star.n);
        const LongTimeStats numeric = long_time_average_numeric(
            d, sx, ground_state(d), opts.variance.horizon, opts.variance.n_samples);
        pt.variance = *numeric.variance;
    }
    return out;
}

} // namespace otoc
