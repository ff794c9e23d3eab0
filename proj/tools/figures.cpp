#include "figures.hpp"

#include <cmath>
#include <fstream>

#include "otoclab/io.hpp"

namespace otoc::figures {

namespace {

namespace fs = std::filesystem;

std::vector<double> geometric_ints(double lo, double hi, int count, std::vector<int>& out) {
    out.clear();
    std::vector<double> raw;
    for (int k = 0; k < count; ++k) {
        const double v = lo * std::pow(hi / lo, double(k) / (count - 1));
        const int n = std::max(1, int(std::lround(v)));
        if (out.empty() || n != out.back()) out.push_back(n);
        raw.push_back(v);
    }
    return raw;
}

OTOCSeries ground_otoc_series(const ModelParams& p, double t_max, int points) {
    const EigenDecomposition d = diagonalize_model(p);
    const OperatorMatrix sx = qubit_sigma_x(p.n);
    return otoc_series(d, sx, sx, ground_state(d), linspace(0.0, t_max, points), "sigma_x",
                       "ground");
}

} // namespace

std::vector<fs::path> fig1(const Options& opt) {
    // qubit OTOC time traces on both sides of the transition
    const ModelParams base{.n = 50, .u = 0.0, .j = 1.0, .j_a = 1.0, .w = 1.0};
    std::vector<fs::path> files;
    const fs::path dir = opt.out / "fig1";
    // deep enough into the normal phase that Re F stays within 2% of unity
    const struct { const char* name; double lambda; } panels[] = {
        {"fig1a_normal.csv", 5.0},
        {"fig1b_broken.csv", -2.0},
    };
    for (const auto& panel : panels) {
        const ModelParams p = base.with_reduced_lambda(panel.lambda);
        const OTOCSeries series = ground_otoc_series(p, 200.0, 4000);
        write_series_csv(dir / panel.name, series);
        files.push_back(dir / panel.name);
    }
    return files;
}

std::vector<fs::path> fig2(const Options& opt) {
    std::vector<fs::path> files;
    const fs::path dir = opt.out / "fig2";
    SweepOptions sweep_opts;
    sweep_opts.workers = opt.workers;

    // (a) long-time average across the transition for growing N
    for (int n : {20, 50, 200}) {
        ModelParams tmpl{.n = n, .u = 0.0, .j = 1.0, .j_a = 1.0, .w = 1.0};
        const SweepResult sweep = sweep_lambda(tmpl, linspace(-5.0, 2.0, 57), sweep_opts);
        const fs::path path = dir / ("fig2a_sweep_n" + std::to_string(n) + ".csv");
        write_sweep_csv(path, sweep, tmpl);
        files.push_back(path);
    }

    // (b) deep-broken-phase average against the closed form
    {
        const int n = opt.reduced ? 60 : 200;
        std::ofstream os;
        const fs::path path = dir / "fig2b_asymptote.csv";
        fs::create_directories(dir);
        os.open(path, std::ios::trunc);
        if (!os) throw io_error("cannot write " + path.string());
        const ModelParams tmpl{.n = n, .u = 0.0, .j = 1.0, .j_a = 1.0, .w = 0.0};
        os << "# otoc-lab v1 kind=asymptote " << describe(tmpl)
           << " capital_lambda=-500\n";
        os << "w,f_bar_computed,f_bar_closed_form\n";
        for (double w : linspace(0.25, 8.0, 32)) {
            ModelParams p = tmpl;
            p.w = w;
            p = p.with_capital_lambda(-500.0);
            const EigenDecomposition d = diagonalize_model(p);
            const double fb = long_time_average(d, qubit_sigma_x(n), 0).f_bar;
            os << format_double(w) << ',' << format_double(fb) << ','
               << format_double(asymptotic_fbar(w, 1.0)) << '\n';
        }
        if (!os.flush()) throw io_error("write failed: " + path.string());
        files.push_back(path);

        // inset: the sweep at W = 2 sqrt(2), where the average turns negative
        ModelParams inset{.n = n, .u = 0.0, .j = 1.0, .j_a = 1.0,
                          .w = 2.0 * std::sqrt(2.0)};
        const SweepResult sweep = sweep_lambda(inset, linspace(-3.0, 1.0, 33), sweep_opts);
        const fs::path inset_path = dir / "fig2b_inset_wmin.csv";
        write_sweep_csv(inset_path, sweep, inset);
        files.push_back(inset_path);
    }

    // (c) phase diagram
    {
        const int n = opt.reduced ? 40 : 100;
        const int cells = opt.reduced ? 24 : 60;
        const ModelParams tmpl{.n = n, .u = 0.0, .j = 1.0, .j_a = 1.0, .w = 0.0};
        const PhaseDiagramGrid grid = phase_diagram(linspace(-4.0, 1.0, cells),
                                                    linspace(0.0, 3.0, cells), tmpl,
                                                    sweep_opts);
        write_phase_diagram_csv(dir / "fig2c_phase_diagram.csv", grid, tmpl);
        write_critical_line_csv(dir / "fig2c_critical_line.csv", grid, tmpl);
        files.push_back(dir / "fig2c_phase_diagram.csv");
        files.push_back(dir / "fig2c_critical_line.csv");
    }
    return files;
}

std::vector<fs::path> fig3(const Options& opt) {
    std::vector<fs::path> files;
    const fs::path dir = opt.out / "fig3";
    // defaults to a reduced size that keeps the dataset at minutes;
    // --full runs the original N = 1000 (about an hour)
    const int n = opt.full ? 1000 : (opt.reduced ? 120 : 300);
    SweepOptions sweep_opts;
    sweep_opts.workers = opt.workers;

    // (a) PR against lambda for several couplings
    for (double w : {1.0, 4.0, 7.0, 20.0, 50.0}) {
        ModelParams tmpl{.n = n, .u = 0.0, .j = 1.0, .j_a = 1.0, .w = w};
        const SweepResult sweep = sweep_lambda(tmpl, linspace(-6.0, 0.5, 40), sweep_opts);
        const fs::path path =
            dir / ("fig3a_pr_w" + std::to_string(int(std::lround(w))) + ".csv");
        write_sweep_csv(path, sweep, tmpl);
        files.push_back(path);
    }

    // (b) PR maxima and OTOC variance per coupling
    PrMaxOptions pr_opts;
    pr_opts.workers = opt.workers;
    pr_opts.variance = {opt.reduced ? 500.0 : 1000.0, opt.reduced ? 2000 : 4000};
    // no W = 2: Lambda_c vanishes there and the reduced sweep is undefined
    const std::vector<double> ws{1.0, 2.5, 4.0, 7.0, 12.0, 20.0, 35.0, 50.0};
    const ModelParams tmpl{.n = n, .u = 0.0, .j = 1.0, .j_a = 1.0, .w = 0.0};
    const auto points = pr_max_analysis(ws, tmpl, pr_opts);
    write_prmax_csv(dir / "fig3b_prmax.csv", points, tmpl);
    files.push_back(dir / "fig3b_prmax.csv");

    // (c) time traces at the PR-maximizing lambda for two couplings
    for (const PrMaxPoint& pt : points) {
        if (pt.w != 7.0 && pt.w != 50.0) continue;
        ModelParams p{.n = n, .u = 0.0, .j = 1.0, .j_a = 1.0, .w = pt.w};
        p = p.with_reduced_lambda(pt.lambda_at_max);
        const OTOCSeries series = ground_otoc_series(p, 200.0, 4000);
        const fs::path path =
            dir / ("fig3c_series_w" + std::to_string(int(std::lround(pt.w))) + ".csv");
        write_series_csv(path, series);
        files.push_back(path);
    }
    return files;
}

std::vector<fs::path> fig4(const Options& opt) {
    std::vector<fs::path> files;
    const fs::path dir = opt.out / "fig4";
    std::vector<int> n_list;
    geometric_ints(50, opt.reduced ? 400 : 1500, 8, n_list);
    ScalingRunOptions run;
    run.cache_dir = cache_dir_from_env();

    // (a) deviation of the critical-point average from unity
    for (double w : {0.5, 1.0, 2.0}) {
        const ModelParams tmpl{.n = 0, .u = 0.0, .j = 1.0, .j_a = 1.0, .w = w};
        const BScalingResult res = scaling_b(tmpl, n_list, run);
        std::string stem = "fig4a_b_w";
        stem += (w == 0.5 ? "05" : w == 1.0 ? "10" : "20");
        write_scaling_json(dir / (stem + ".json"), "b", res.b, res.fit, res.one_minus_fc);
        files.push_back(dir / (stem + ".json"));
    }

    // (b) first-minimum time of the qubit OTOC
    for (OpTag tag : {OpTag::sigma_x, OpTag::sigma_z}) {
        const ModelParams tmpl{.n = 0, .u = 0.0, .j = 1.0, .j_a = 1.0, .w = 1.0};
        const TminScalingResult res = scaling_d(tag, tmpl, n_list, run);
        const std::string stem =
            tag == OpTag::sigma_x ? "fig4b_d_sigma_x" : "fig4b_d_sigma_z";
        write_scaling_json(dir / (stem + ".json"), "d", res.exponent, res.fit, res.t_mins);
        files.push_back(dir / (stem + ".json"));
    }
    return files;
}

std::vector<fs::path> fig5(const Options& opt) {
    std::vector<fs::path> files;
    const fs::path dir = opt.out / "fig5";
    ModelParams p{.n = opt.reduced ? 60 : 100, .u = 0.0, .j = 1.0, .j_a = 1.0, .w = 1.0};
    p = p.with_capital_lambda(-10.0);
    for (OpTag tag : {OpTag::sigma_x, OpTag::sigma_z}) {
        const EsqptScan scan = esqpt_scan(p, tag);
        const fs::path path =
            dir / (tag == OpTag::sigma_x ? "fig5a_esqpt_sigma_x.csv"
                                         : "fig5b_esqpt_sigma_z.csv");
        write_esqpt_csv(path, scan, p, tag);
        files.push_back(path);
    }
    return files;
}

std::vector<fs::path> fig6(const Options& opt) {
    // product-state OTOC average against the two-point correlator average
    std::vector<fs::path> files;
    const fs::path dir = opt.out / "fig6";
    const int n = opt.reduced ? 60 : 200;
    const ModelParams tmpl{.n = n, .u = 0.0, .j = 1.0, .j_a = 1.0, .w = 1.0};

    fs::create_directories(dir);
    const fs::path path = dir / "fig6_otoc_vs_twopoint.csv";
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw io_error("cannot write " + path.string());
    os << "# otoc-lab v1 kind=twopoint_compare " << describe(tmpl) << " state=product\n";
    os << "lambda,f_bar_otoc,two_point_avg\n";
    const OperatorMatrix sx = qubit_sigma_x(n);
    for (double lambda : linspace(-4.0, 2.0, 37)) {
        const ModelParams p = tmpl.with_reduced_lambda(lambda);
        const EigenDecomposition d = diagonalize_model(p);
        const QuantumState psi = product_ground_xplus(p);
        const double fb = long_time_average_general(d, sx, psi).f_bar;
        const double tp = two_point_average(d, sx, psi).real();
        os << format_double(lambda) << ',' << format_double(fb) << ',' << format_double(tp)
           << '\n';
    }
    if (!os.flush()) throw io_error("write failed: " + path.string());
    files.push_back(path);
    return files;
}

} // namespace otoc::figures
