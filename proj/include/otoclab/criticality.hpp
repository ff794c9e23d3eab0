// criticality.hpp — parameter sweeps, phase diagrams, closed-form
// asymptotics, finite-size scaling fits, and ESQPT scans

#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "otoclab/cache.hpp"
#include "otoclab/otoc.hpp"

namespace otoc {

// Closed-form deep-broken-phase limit of the qubit OTOC average:
// 8 ja^2 (2 ja^2 - w^2) / (4 ja^2 + w^2)^2.
double asymptotic_fbar(double w, double j_a);

// ---------------------------------------------------------------- sweeps

struct VarianceSpec {
    double horizon = 1000.0;
    int n_samples = 4000;
};

struct SweepOptions {
    int workers = 0; // 0 = hardware default
    double eps_omega = kGapMatchTolerance;
    std::optional<VarianceSpec> variance;
};

struct SweepPoint {
    double axis = 0.0;
    ModelParams params;
    bool ok = false;
    std::string error;
    double f_bar = 0.0;
    std::complex<double> f_bar_complex{};
    double pr = 0.0;
    std::optional<double> variance;
};

struct SweepResult {
    std::string axis_name;
    std::vector<SweepPoint> points; // sorted by axis value
};

// Per lambda: set u, diagonalize, qubit sigma_x OTOC average (ground state),
// PR of sigma_x|psi_0>, optional finite-horizon variance. Failures are
// recorded per point and do not stop the sweep.
SweepResult sweep_lambda(const ModelParams& params_template,
                         const std::vector<double>& lambdas, const SweepOptions& opts = {});

// ------------------------------------------------------------ phase diagram

struct PhaseDiagramGrid {
    std::vector<double> capital_lambdas;
    std::vector<double> ws;
    Eigen::MatrixXd c_half;             // rows: Lambda, cols: W; NaN = failed cell
    std::vector<double> critical_line;  // Lambda_c(W) per column
};

PhaseDiagramGrid phase_diagram(const std::vector<double>& capital_lambdas,
                               const std::vector<double>& ws,
                               const ModelParams& params_template,
                               const SweepOptions& opts = {});

// ------------------------------------------------------------- scaling fits

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    std::vector<int> fit_window;   // the N values used
    std::vector<double> residuals; // in log space
};

// Least squares of log(y) against log(n); needs >= 5 usable points.
ScalingFit fit_loglog(const std::vector<int>& ns, const std::vector<double>& ys);

struct ScalingRunOptions {
    std::optional<std::filesystem::path> cache_dir; // decomposition cache
    double eps_omega = kGapMatchTolerance;
};

struct BScalingResult {
    double b = 0.0; // 1 - Fbar_c ~ N^-b, reported positive
    ScalingFit fit;
    std::vector<double> one_minus_fc; // per usable N
    std::vector<int> skipped_n;       // N with non-positive 1 - Fbar_c
};

// Long-time average at Lambda = Lambda_c exactly for each N, then the
// log-log fit of 1 - Fbar_c against N.
BScalingResult scaling_b(const ModelParams& params_template, const std::vector<int>& n_list,
                         const ScalingRunOptions& opts = {});

// --------------------------------------------------------- t_min detection

struct TminOptions {
    double t_guess = 1.0;      // initial grid spacing is t_guess / divisions
    int divisions = 200;
    double max_factor = 100.0; // fail beyond max_factor * t_guess
    double rel_tol = 1e-6;
};

// First strict local minimum of re_f for t > 0: grid scan at spacing
// t_guess/divisions, then golden-section refinement of the bracket.
// Throws std::runtime_error if no minimum appears before max_factor*t_guess.
double t_min_detect(const std::function<double(double)>& re_f, const TminOptions& opts);

// 2*pi/(N*max(j_a, w, 1)): the early-time scale of the qubit OTOC set by
// the Kac factor in the qubit term.
double qubit_t_guess(const ModelParams& p);

struct TminScalingResult {
    double exponent = 0.0; // raw log-log slope of t_min against N
    ScalingFit fit;
    std::vector<double> t_mins;
};

// t_min ~ N^d for the qubit OTOC (sigma_x or sigma_z) at Lambda = Lambda_c.
TminScalingResult scaling_d(OpTag tag, const ModelParams& params_template,
                            const std::vector<int>& n_list,
                            const ScalingRunOptions& opts = {});

// t_min ~ N^z for the Sz/N OTOC at the critical point, with or without the
// qubit (Lambda_c = -1 when the qubit is absent). The grid scale is set by
// the softening gap E_1 - E_0 rather than the qubit frequency.
TminScalingResult scaling_z(bool with_qubit, const ModelParams& params_template,
                            const std::vector<int>& n_list,
                            const ScalingRunOptions& opts = {});

// ----------------------------------------------------------------- ESQPT

struct EsqptLevel {
    double energy = 0.0;
    double f_bar = 0.0;
    int parity = 0;
};

struct EsqptScan {
    std::vector<EsqptLevel> levels;      // ascending energy
    double e_c_lower = 0.0;              // -N(1 + j_a)
    double e_c_upper = 0.0;              // -N(1 - j_a)
    std::optional<double> split_lower;   // detected degeneracy-breaking energies
    std::optional<double> split_upper;
};

// Per-level long-time OTOC averages with parity labels, plus the detected
// energies where the even/odd doublet structure dissolves.
EsqptScan esqpt_scan(const ModelParams& p, OpTag tag,
                     double eps_omega = kGapMatchTolerance);

// Doublets count as degenerate while their splitting stays below
// `threshold` times the local level spacing.
struct SplitDetectOptions {
    double threshold = 0.25;
    int spacing_window = 5;
};
void detect_split_energies(EsqptScan& scan, const SplitDetectOptions& opts = {});

// ------------------------------------------------------------------ PR max

struct PrMaxPoint {
    double w = 0.0;
    double lambda_at_max = 0.0;
    double pr_max = 0.0;
    double variance = 0.0; // OTOC variance at lambda_at_max
};

struct PrMaxOptions {
    double lambda_lo = -6.0;
    double lambda_hi = 0.5;
    int coarse_points = 40;
    double lambda_tol = 1e-3; // golden-section width
    VarianceSpec variance;
    int workers = 0;
};

// Maximize PR over lambda for each W (coarse scan + golden section), then
// the OTOC variance at the maximizing lambda.
std::vector<PrMaxPoint> pr_max_analysis(const std::vector<double>& w_list,
                                        const ModelParams& params_template,
                                        const PrMaxOptions& opts = {});

} // namespace otoc
