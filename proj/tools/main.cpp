// otoc-lab — exact-diagonalization OTOC toolkit for the fully connected
// boson + impurity-qubit model

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>

#include "figures.hpp"
#include "otoclab/io.hpp"
#include "otoclab/parallel.hpp"
#include "svg_plot.hpp"

namespace {

namespace fs = std::filesystem;
using namespace otoc;

constexpr const char* kVersion = "0.1.0";

struct ModelFlags {
    int n = 50;
    double u = 0.0;
    double j_a = 1.0;
    double w = 1.0;
    double lambda = 0.0;
    double capital_lambda = 0.0;
    CLI::Option* lambda_opt = nullptr;
    CLI::Option* capital_opt = nullptr;
    CLI::Option* u_opt = nullptr;

    void attach(CLI::App* cmd, int default_n, double default_w) {
        n = default_n;
        w = default_w;
        cmd->add_option("--n", n, "number of bosons")->capture_default_str();
        u_opt = cmd->add_option("--u", u, "boson-boson interaction (units of J)")
                    ->capture_default_str();
        cmd->add_option("--ja", j_a, "qubit transition energy (units of J)")
            ->capture_default_str();
        cmd->add_option("--w", w, "boson-qubit coupling (units of J)")
            ->capture_default_str();
        lambda_opt = cmd->add_option("--lambda", lambda,
                                     "reduced driving (Lambda-Lambda_c)/|Lambda_c|; "
                                     "sets --u");
        capital_opt = cmd->add_option("--capital-lambda", capital_lambda,
                                      "Lambda = u*N/(2J); sets --u");
        lambda_opt->excludes(u_opt)->excludes(capital_opt);
        capital_opt->excludes(u_opt);
    }

    ModelParams params() const {
        ModelParams p{.n = n, .u = u, .j = 1.0, .j_a = j_a, .w = w};
        if (lambda_opt && lambda_opt->count()) p = p.with_reduced_lambda(lambda);
        if (capital_opt && capital_opt->count()) p = p.with_capital_lambda(capital_lambda);
        validate(p);
        return p;
    }
};

struct RunContext {
    std::string command;
    fs::path out;
    std::vector<fs::path> files;
    nlohmann::json config;
    int exit_code = 0; // nonzero for partial failures whose outputs are kept
};

void write_manifest(const RunContext& ctx, double wall_seconds) {
    nlohmann::json manifest;
    manifest["tool"] = "otoc-lab";
    manifest["version"] = kVersion;
    manifest["command"] = ctx.command;
    manifest["config"] = ctx.config;
    manifest["wall_time_s"] = wall_seconds;
    manifest["outputs"] = nlohmann::json::array();
    for (const fs::path& f : ctx.files) {
        manifest["outputs"].push_back({{"path", fs::relative(f, ctx.out).string()},
                                       {"bytes", fs::file_size(f)},
                                       {"fnv1a64", file_checksum_hex(f)}});
    }
    fs::create_directories(ctx.out);
    const fs::path path = ctx.out / "manifest.json";
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw io_error("cannot write " + path.string());
    os << manifest.dump(2) << '\n';
    if (!os.flush()) throw io_error("write failed: " + path.string());
}

QuantumState make_state(const std::string& spec, const ModelParams& p,
                        const EigenDecomposition& d) {
    if (spec == "ground") return ground_state(d);
    if (spec == "product") return product_ground_xplus(p);
    if (spec == "cat") return cat_state(p.n);
    if (spec.rfind("eigen:", 0) == 0)
        return eigenstate(d, std::stol(spec.substr(6)));
    throw std::invalid_argument("unknown state: " + spec +
                                " (ground|product|cat|eigen:<k>)");
}

// ----------------------------------------------------------------- render

plot::Series column_series(const CsvTable& t, const std::string& xc, const std::string& yc,
                           const std::string& label) {
    const int ix = t.column(xc), iy = t.column(yc);
    if (ix < 0 || iy < 0) throw io_error("csv lacks column " + xc + " or " + yc);
    plot::Series s;
    s.label = label;
    for (const auto& row : t.rows) {
        s.x.push_back(row[ix]);
        s.y.push_back(row[iy]);
    }
    return s;
}

fs::path render_csv(const fs::path& input, const fs::path& out_dir) {
    const CsvTable t = read_csv(input);
    fs::create_directories(out_dir);
    const fs::path out = out_dir / (input.stem().string() + ".svg");
    plot::Axes axes;
    axes.title = input.stem().string();

    if (t.kind == "series") {
        axes.x_label = "t (1/J)";
        axes.y_label = "F(t)";
        auto re = column_series(t, "t", "re_F", "Re F");
        auto im = column_series(t, "t", "im_F", "Im F");
        im.color = "#d62728";
        re.color = "#1f77b4";
        plot::write_line_svg(out, axes, {re, im});
    } else if (t.kind == "sweep") {
        axes.x_label = "lambda";
        axes.y_label = "long-time average / PR";
        auto fb = column_series(t, "lambda", "f_bar", "F_bar");
        auto pr = column_series(t, "lambda", "pr", "PR");
        pr.color = "#2ca02c";
        axes.v_marks = {0.0};
        plot::write_line_svg(out, axes, {fb, pr});
    } else if (t.kind == "spectrum") {
        axes.x_label = "level";
        axes.y_label = "energy (J)";
        plot::write_line_svg(out, axes, {column_series(t, "level", "energy", "E_n")});
    } else if (t.kind == "esqpt") {
        axes.x_label = "E_n (J)";
        axes.y_label = "F_bar_n";
        plot::Series even, odd;
        even.label = "even";
        even.color = "#1f77b4";
        even.points_only = true;
        odd.label = "odd";
        odd.color = "#ff7f0e";
        odd.points_only = true;
        const int ie = t.column("energy"), ip = t.column("parity"), iv = t.column("f_bar");
        for (const auto& row : t.rows) {
            (row[ip] >= 0 ? even : odd).x.push_back(row[ie]);
            (row[ip] >= 0 ? even : odd).y.push_back(row[iv]);
        }
        if (t.meta.count("e_c_lower"))
            axes.v_marks.push_back(std::stod(t.meta.at("e_c_lower")));
        if (t.meta.count("e_c_upper"))
            axes.v_marks.push_back(std::stod(t.meta.at("e_c_upper")));
        plot::write_line_svg(out, axes, {even, odd});
    } else if (t.kind == "phase_diagram") {
        axes.x_label = "Lambda";
        axes.y_label = "W (J)";
        axes.title += "  (C_bar/2)";
        std::vector<double> xs, ys;
        for (const auto& row : t.rows) {
            if (xs.empty() || row[0] != xs.back()) {
                if (std::find(xs.begin(), xs.end(), row[0]) == xs.end())
                    xs.push_back(row[0]);
            }
            if (std::find(ys.begin(), ys.end(), row[1]) == ys.end()) ys.push_back(row[1]);
        }
        std::sort(xs.begin(), xs.end());
        std::sort(ys.begin(), ys.end());
        std::vector<std::vector<double>> grid(xs.size(),
                                              std::vector<double>(ys.size(), NAN));
        for (const auto& row : t.rows) {
            const auto ix = std::lower_bound(xs.begin(), xs.end(), row[0]) - xs.begin();
            const auto iy = std::lower_bound(ys.begin(), ys.end(), row[1]) - ys.begin();
            grid[ix][iy] = row[2];
        }
        plot::Series critical;
        if (t.meta.count("ja")) {
            const double ja = std::stod(t.meta.at("ja"));
            for (double w : ys) {
                critical.y.push_back(w);
                critical.x.push_back(w * w / (4.0 * ja) - 1.0);
            }
        }
        plot::write_heatmap_svg(out, axes, xs, ys, grid,
                                critical.x.empty() ? nullptr : &critical);
    } else if (t.kind == "critical_line") {
        axes.x_label = "W (J)";
        axes.y_label = "Lambda_c";
        plot::write_line_svg(out, axes,
                             {column_series(t, "w", "capital_lambda_c", "Lambda_c(W)")});
    } else if (t.kind == "prmax") {
        axes.x_label = "W (J)";
        axes.y_label = "PR_max / variance";
        axes.log_x = true;
        auto pr = column_series(t, "w", "pr_max", "PR_max");
        auto var = column_series(t, "w", "variance", "(dF)^2");
        var.color = "#d62728";
        plot::write_line_svg(out, axes, {pr, var});
    } else if (t.kind == "asymptote") {
        axes.x_label = "W (J)";
        axes.y_label = "F_bar";
        auto computed = column_series(t, "w", "f_bar_computed", "computed");
        computed.points_only = true;
        auto closed = column_series(t, "w", "f_bar_closed_form", "closed form");
        closed.color = "#333333";
        plot::write_line_svg(out, axes, {closed, computed});
    } else if (t.kind == "twopoint_compare") {
        axes.x_label = "lambda";
        axes.y_label = "long-time average";
        axes.v_marks = {0.0};
        auto otoc_avg = column_series(t, "lambda", "f_bar_otoc", "OTOC");
        auto two_pt = column_series(t, "lambda", "two_point_avg", "two-point");
        two_pt.color = "#333333";
        plot::write_line_svg(out, axes, {otoc_avg, two_pt});
    } else {
        throw io_error("no renderer for kind=" + t.kind);
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"otoc-lab: exact-diagonalization OTOC diagnostics of quantum phase "
                 "transitions in a fully connected boson + impurity-qubit model"};
    app.set_config("--config", "", "key = value config file; command-line flags win");
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    RunContext ctx;
    int workers = 0;
    std::string out_dir = "out";
    double eps_omega = kGapMatchTolerance;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_dir, "output directory")->capture_default_str();
        cmd->add_option("--workers", workers,
                        "worker threads for sweeps (0 = all cores)")
            ->capture_default_str();
    };
    auto add_eps = [&](CLI::App* cmd) {
        cmd->add_option("--eps-omega", eps_omega,
                        "frequency-matching tolerance for long-time averages (units of J)")
            ->capture_default_str();
    };

    // ------------------------------------------------------------ spectrum
    auto* spectrum = app.add_subcommand("spectrum", "energies and parity labels");
    ModelFlags spectrum_model;
    spectrum_model.attach(spectrum, 50, 1.0);
    add_common(spectrum);
    bool spectrum_boson = false;
    spectrum->add_flag("--boson-only", spectrum_boson, "drop the qubit (H_B alone)");
    spectrum->callback([&] {
        const ModelParams p = spectrum_model.params();
        const EigenDecomposition d =
            spectrum_boson ? diagonalize_boson(p) : diagonalize_model(p);
        const fs::path f = fs::path(out_dir) / "spectrum.csv";
        write_spectrum_csv(f, d);
        ctx.files.push_back(f);
    });

    // ---------------------------------------------------------------- otoc
    auto* otoc_cmd = app.add_subcommand("otoc", "OTOC time series F(t)");
    ModelFlags otoc_model;
    otoc_model.attach(otoc_cmd, 50, 1.0);
    add_common(otoc_cmd);
    std::string otoc_op = "sigma_x", otoc_state = "ground";
    double otoc_tmax = 200.0;
    int otoc_points = 4000;
    bool otoc_spectral_sum = false;
    otoc_cmd->add_option("--op", otoc_op, "sigma_x|sigma_z|sz_over_n")
        ->capture_default_str();
    otoc_cmd->add_option("--state", otoc_state, "ground|product|cat|eigen:<k>")
        ->capture_default_str();
    otoc_cmd->add_option("--tmax", otoc_tmax, "time horizon (1/J)")->capture_default_str();
    otoc_cmd->add_option("--points", otoc_points, "number of samples")
        ->capture_default_str();
    otoc_cmd->add_flag("--spectral-sum", otoc_spectral_sum,
                       "use the O(D^3) reference triple sum (eigen states only)");
    otoc_cmd->callback([&] {
        const ModelParams p = otoc_model.params();
        const EigenDecomposition d = diagonalize_model(p);
        const OperatorMatrix op =
            build_tagged_operator(op_tag_from_string(otoc_op), p.n, StateBasis::composite);
        const auto times = linspace(0.0, otoc_tmax, otoc_points);
        OTOCSeries series;
        if (otoc_spectral_sum) {
            const long level = otoc_state.rfind("eigen:", 0) == 0
                                   ? std::stol(otoc_state.substr(6))
                                   : 0;
            series = otoc_series_spectral_sum(d, level, op, times);
        } else {
            series = otoc_series(d, op, op, make_state(otoc_state, p, d), times, otoc_op,
                                 otoc_state);
        }
        const fs::path f = fs::path(out_dir) / "otoc.csv";
        write_series_csv(f, series);
        ctx.files.push_back(f);
    });

    // --------------------------------------------------------------- sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "lambda sweep of F_bar, PR, variance");
    ModelFlags sweep_model;
    sweep_model.attach(sweep_cmd, 200, 1.0);
    add_common(sweep_cmd);
    double sw_lo = -5.0, sw_hi = 2.0;
    int sw_points = 57;
    bool sw_variance = false;
    double sw_horizon = 1000.0;
    int sw_samples = 4000;
    sweep_cmd->add_option("--lambda-min", sw_lo, "")->capture_default_str();
    sweep_cmd->add_option("--lambda-max", sw_hi, "")->capture_default_str();
    sweep_cmd->add_option("--points", sw_points, "")->capture_default_str();
    sweep_cmd->add_flag("--variance", sw_variance, "also compute the finite-T variance");
    sweep_cmd->add_option("--horizon", sw_horizon, "variance averaging horizon (1/J)")
        ->capture_default_str();
    sweep_cmd->add_option("--samples", sw_samples, "variance quadrature samples")
        ->capture_default_str();
    add_eps(sweep_cmd);
    sweep_cmd->callback([&] {
        ModelParams tmpl{.n = sweep_model.n, .u = 0.0, .j = 1.0, .j_a = sweep_model.j_a,
                         .w = sweep_model.w};
        validate(tmpl);
        SweepOptions opts;
        opts.workers = workers;
        opts.eps_omega = eps_omega;
        if (sw_variance) opts.variance = VarianceSpec{sw_horizon, sw_samples};
        const SweepResult sweep = sweep_lambda(tmpl, linspace(sw_lo, sw_hi, sw_points), opts);
        const fs::path f = fs::path(out_dir) / "sweep.csv";
        write_sweep_csv(f, sweep, tmpl);
        ctx.files.push_back(f);
        std::size_t failed = 0;
        for (const auto& pt : sweep.points) failed += pt.ok ? 0 : 1;
        if (failed > 0) {
            std::cerr << failed << " sweep points failed (completed points kept)\n";
            ctx.exit_code = 3;
        }
    });

    // ------------------------------------------------------- phase-diagram
    auto* pd_cmd = app.add_subcommand("phase-diagram", "C_bar/2 over the Lambda-W plane");
    ModelFlags pd_model;
    pd_model.attach(pd_cmd, 100, 1.0);
    add_common(pd_cmd);
    double pd_l_lo = -4.0, pd_l_hi = 1.0, pd_w_lo = 0.0, pd_w_hi = 3.0;
    int pd_l_cells = 60, pd_w_cells = 60;
    pd_cmd->add_option("--lambda-min", pd_l_lo, "Lambda range")->capture_default_str();
    pd_cmd->add_option("--lambda-max", pd_l_hi, "")->capture_default_str();
    pd_cmd->add_option("--lambda-cells", pd_l_cells, "")->capture_default_str();
    pd_cmd->add_option("--w-min", pd_w_lo, "W range")->capture_default_str();
    pd_cmd->add_option("--w-max", pd_w_hi, "")->capture_default_str();
    pd_cmd->add_option("--w-cells", pd_w_cells, "")->capture_default_str();
    pd_cmd->callback([&] {
        ModelParams tmpl{.n = pd_model.n, .u = 0.0, .j = 1.0, .j_a = pd_model.j_a, .w = 0.0};
        validate(tmpl);
        SweepOptions opts;
        opts.workers = workers;
        const PhaseDiagramGrid grid =
            phase_diagram(linspace(pd_l_lo, pd_l_hi, pd_l_cells),
                          linspace(pd_w_lo, pd_w_hi, pd_w_cells), tmpl, opts);
        const fs::path f = fs::path(out_dir) / "phase_diagram.csv";
        const fs::path g = fs::path(out_dir) / "critical_line.csv";
        write_phase_diagram_csv(f, grid, tmpl);
        write_critical_line_csv(g, grid, tmpl);
        ctx.files.push_back(f);
        ctx.files.push_back(g);
    });

    // ------------------------------------------------------------- scaling
    auto* scaling_cmd =
        app.add_subcommand("scaling", "finite-size scaling exponents b, d, z");
    add_common(scaling_cmd);
    std::string scal_exponent = "b", scal_op = "sigma_x";
    double scal_w = 1.0, scal_ja = 1.0;
    int scal_n_lo = 50, scal_n_hi = 1500, scal_n_points = 8;
    bool scal_with_qubit = false;
    scaling_cmd->add_option("--exponent", scal_exponent, "b|d|z")
        ->check(CLI::IsMember({"b", "d", "z"}))
        ->capture_default_str();
    scaling_cmd->add_option("--w", scal_w, "boson-qubit coupling")->capture_default_str();
    scaling_cmd->add_option("--ja", scal_ja, "qubit transition energy")
        ->capture_default_str();
    scaling_cmd->add_option("--op", scal_op, "qubit operator for d: sigma_x|sigma_z")
        ->capture_default_str();
    scaling_cmd->add_flag("--with-qubit", scal_with_qubit,
                          "z: keep the qubit coupled (Sz/N OTOC)");
    scaling_cmd->add_option("--n-min", scal_n_lo, "")->capture_default_str();
    scaling_cmd->add_option("--n-max", scal_n_hi, "")->capture_default_str();
    scaling_cmd->add_option("--n-points", scal_n_points, "geometric N grid size")
        ->capture_default_str();
    add_eps(scaling_cmd);
    scaling_cmd->callback([&] {
        std::vector<int> n_list;
        for (int k = 0; k < scal_n_points; ++k) {
            const double v = scal_n_lo * std::pow(double(scal_n_hi) / scal_n_lo,
                                                  double(k) / (scal_n_points - 1));
            const int n = std::max(1, int(std::lround(v)));
            if (n_list.empty() || n != n_list.back()) n_list.push_back(n);
        }
        ScalingRunOptions run;
        run.cache_dir = cache_dir_from_env();
        run.eps_omega = eps_omega;
        const ModelParams tmpl{.n = 0, .u = 0.0, .j = 1.0, .j_a = scal_ja, .w = scal_w};
        const fs::path f = fs::path(out_dir) / ("scaling_" + scal_exponent + ".json");
        if (scal_exponent == "b") {
            const BScalingResult res = scaling_b(tmpl, n_list, run);
            for (int skipped : res.skipped_n)
                std::cerr << "warning: dropped N=" << skipped
                          << " (non-positive 1 - F_bar_c)\n";
            write_scaling_json(f, "b", res.b, res.fit, res.one_minus_fc);
        } else if (scal_exponent == "d") {
            const TminScalingResult res =
                scaling_d(op_tag_from_string(scal_op), tmpl, n_list, run);
            write_scaling_json(f, "d", res.exponent, res.fit, res.t_mins);
        } else {
            const TminScalingResult res = scaling_z(scal_with_qubit, tmpl, n_list, run);
            write_scaling_json(f, "z", res.exponent, res.fit, res.t_mins);
        }
        ctx.files.push_back(f);
    });

    // --------------------------------------------------------------- esqpt
    auto* esqpt_cmd =
        app.add_subcommand("esqpt", "per-eigenstate OTOC averages and parity labels");
    ModelFlags esqpt_model;
    esqpt_model.attach(esqpt_cmd, 100, 1.0);
    add_common(esqpt_cmd);
    std::string esqpt_op = "sigma_z";
    esqpt_cmd->add_option("--op", esqpt_op, "sigma_x|sigma_z")->capture_default_str();
    add_eps(esqpt_cmd);
    esqpt_cmd->callback([&] {
        ModelParams p = esqpt_model.params();
        if (!esqpt_model.lambda_opt->count() && !esqpt_model.capital_opt->count() &&
            !esqpt_model.u_opt->count())
            p = p.with_capital_lambda(-10.0); // deep broken phase default
        const EsqptScan scan = esqpt_scan(p, op_tag_from_string(esqpt_op), eps_omega);
        const fs::path f = fs::path(out_dir) / "esqpt.csv";
        write_esqpt_csv(f, scan, p, op_tag_from_string(esqpt_op));
        ctx.files.push_back(f);
    });

    // ---------------------------------------------------------------- echo
    auto* echo_cmd = app.add_subcommand(
        "echo", "echo-form OTOC <sigma_x(t)> from forward/backward evolution");
    ModelFlags echo_model;
    echo_model.attach(echo_cmd, 50, 1.0);
    add_common(echo_cmd);
    double echo_tmax = 200.0;
    int echo_points = 4000;
    echo_cmd->add_option("--tmax", echo_tmax, "")->capture_default_str();
    echo_cmd->add_option("--points", echo_points, "")->capture_default_str();
    echo_cmd->callback([&] {
        const ModelParams p = echo_model.params();
        const OTOCSeries series =
            echo_otoc(p, product_ground_xplus(p), linspace(0.0, echo_tmax, echo_points));
        const fs::path f = fs::path(out_dir) / "echo.csv";
        write_series_csv(f, series);
        ctx.files.push_back(f);
    });

    // ------------------------------------------------------------- figures
    auto* fig_cmd =
        app.add_subcommand("figures", "canned datasets for the standard figures");
    add_common(fig_cmd);
    std::string fig_which = "all";
    bool fig_reduced = false;
    bool fig_full = false;
    fig_cmd->add_option("--fig", fig_which, "all|1|2|3|4|5|6")->capture_default_str();
    auto* reduced_flag = fig_cmd->add_flag("--reduced", fig_reduced, "CI-scale system sizes");
    fig_cmd->add_flag("--full", fig_full, "paper-scale sizes for the reduced-by-default sets")
        ->excludes(reduced_flag);
    fig_cmd->callback([&] {
        figures::Options opt;
        opt.out = out_dir;
        opt.reduced = fig_reduced;
        opt.full = fig_full;
        opt.workers = workers;
        const std::map<std::string,
                       std::vector<fs::path> (*)(const figures::Options&)>
            gens{{"1", figures::fig1}, {"2", figures::fig2}, {"3", figures::fig3},
                 {"4", figures::fig4}, {"5", figures::fig5}, {"6", figures::fig6}};
        if (fig_which == "all") {
            for (const auto& [name, gen] : gens) {
                const auto files = gen(opt);
                ctx.files.insert(ctx.files.end(), files.begin(), files.end());
            }
        } else {
            if (!gens.count(fig_which))
                throw std::invalid_argument("--fig must be all|1|2|3|4|5|6");
            const auto files = gens.at(fig_which)(opt);
            ctx.files.insert(ctx.files.end(), files.begin(), files.end());
        }
    });

    // -------------------------------------------------------------- render
    auto* render_cmd = app.add_subcommand("render", "render produced CSVs to SVG plots");
    add_common(render_cmd);
    std::vector<std::string> render_inputs;
    render_cmd->add_option("--input", render_inputs, "CSV files produced by this tool")
        ->required()
        ->expected(-1);
    render_cmd->callback([&] {
        for (const std::string& input : render_inputs)
            ctx.files.push_back(render_csv(input, out_dir));
    });

    const auto t0 = std::chrono::steady_clock::now();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const io_error& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "bad arguments: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "bad arguments: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "compute error: " << e.what() << '\n';
        return 3;
    }

    try {
        CLI::App* active = app.get_subcommands().empty() ? nullptr
                                                         : app.get_subcommands().front();
        ctx.command = active ? active->get_name() : "";
        ctx.out = out_dir;
        for (int k = 0; k < argc; ++k) ctx.config["argv"].push_back(argv[k]);
        if (active) ctx.config["effective"] = active->config_to_str(true, false);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!ctx.files.empty()) write_manifest(ctx, wall);
    } catch (const io_error& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 4;
    }
    return ctx.exit_code;
}
