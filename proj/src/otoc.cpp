#include "otoclab/otoc.hpp"

#include <algorithm>
#include <cmath>

namespace otoc {

namespace {

using Complex = std::complex<double>;

void require_normalized(const QuantumState& s, const char* what) {
    if (std::abs(s.amp.norm() - 1.0) > 1e-9)
        throw std::invalid_argument(std::string(what) + ": state is not normalized");
}

void require_commuting(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (&a == &b) return;
    const double scale =
        std::max(1.0, a.mat.cwiseAbs().maxCoeff() * b.mat.cwiseAbs().maxCoeff());
    const double defect = (a.mat * b.mat - b.mat * a.mat).cwiseAbs().maxCoeff();
    if (defect > 1e-10 * scale)
        throw std::invalid_argument("otoc_series: A and B do not commute at t = 0");
}

Eigen::VectorXcd phases(const Eigen::VectorXd& energies, double t) {
    Eigen::VectorXcd ph(energies.size());
    for (Eigen::Index k = 0; k < energies.size(); ++k)
        ph(k) = std::polar(1.0, energies(k) * t);
    return ph;
}

// Indices [lo, hi) of sorted `values` lying within eps of x.
std::pair<Eigen::Index, Eigen::Index> window(const Eigen::VectorXd& values, double x,
                                             double eps) {
    const double* begin = values.data();
    const double* end = begin + values.size();
    return {std::lower_bound(begin, end, x - eps) - begin,
            std::upper_bound(begin, end, x + eps) - begin};
}

} // namespace

std::string to_string(OpTag tag) {
    switch (tag) {
        case OpTag::sigma_x: return "sigma_x";
        case OpTag::sigma_z: return "sigma_z";
        case OpTag::sz_over_n: return "Sz_over_N";
    }
    return "unknown";
}

OpTag op_tag_from_string(const std::string& s) {
    if (s == "sigma_x" || s == "sigma-x" || s == "sx") return OpTag::sigma_x;
    if (s == "sigma_z" || s == "sigma-z" || s == "sz") return OpTag::sigma_z;
    if (s == "Sz_over_N" || s == "sz_over_n" || s == "Sz/N") return OpTag::sz_over_n;
    throw std::invalid_argument("unknown operator tag: " + s);
}

OperatorMatrix build_tagged_operator(OpTag tag, int n_bosons, StateBasis basis) {
    if (basis == StateBasis::boson) {
        if (tag != OpTag::sz_over_n)
            throw std::invalid_argument("qubit operators need the composite space");
        return sz_over_n_boson(n_bosons);
    }
    switch (tag) {
        case OpTag::sigma_x: return qubit_sigma_x(n_bosons);
        case OpTag::sigma_z: return qubit_sigma_z(n_bosons);
        case OpTag::sz_over_n: return sz_over_n_composite(n_bosons);
    }
    throw std::invalid_argument("unknown operator tag");
}

std::vector<double> linspace(double a, double b, int n) {
    if (n < 2) throw std::invalid_argument("linspace: need at least 2 points");
    std::vector<double> t(n);
    for (int k = 0; k < n; ++k) t[k] = a + (b - a) * k / (n - 1);
    return t;
}

OtocEvaluator::OtocEvaluator(const EigenDecomposition& d, const OperatorMatrix& a,
                             const OperatorMatrix& b, const QuantumState& state) {
    if (a.dim() != d.dim() || b.dim() != d.dim() || state.dim() != d.dim())
        throw std::invalid_argument("otoc_series: dimension mismatch");
    require_normalized(state, "otoc_series");
    require_commuting(a, b);

    energies_ = d.energies;
    a_eig_ = heisenberg_elements(a, d);
    if (&a != &b) b_eig_ = heisenberg_elements(b, d);
    c_ = apply_real(d.states.transpose(), state.amp);
    ac_ = apply_real(a_eig_, c_);
}

std::complex<double> OtocEvaluator::operator()(double t) const {
    const Eigen::MatrixXd& b_eig = b_eig_.size() ? b_eig_ : a_eig_;
    const Eigen::VectorXcd ph = phases(energies_, t);
    // u = B(t) A |psi>,  B(t) = P(t) B P(-t) in the eigenbasis
    Eigen::VectorXcd u = ph.conjugate().cwiseProduct(ac_);
    u = apply_real(b_eig, u);
    u = ph.cwiseProduct(u);
    // v = A B(t) |psi>
    Eigen::VectorXcd v = ph.conjugate().cwiseProduct(c_);
    v = apply_real(b_eig, v);
    v = ph.cwiseProduct(v);
    v = apply_real(a_eig_, v);
    return v.dot(u); // <v|u>
}

OTOCSeries otoc_series(const EigenDecomposition& d, const OperatorMatrix& a,
                       const OperatorMatrix& b, const QuantumState& state,
                       const std::vector<double>& times, const std::string& operator_tag,
                       const std::string& state_tag) {
    const OtocEvaluator f(d, a, b, state);

    OTOCSeries out;
    out.times = times;
    out.values.resize(times.size());
    out.operator_tag = operator_tag;
    out.state_tag = state_tag;
    out.params = d.params;
    for (std::size_t k = 0; k < times.size(); ++k) out.values[k] = f(times[k]);
    return out;
}

OTOCSeries otoc_series_spectral_sum(const EigenDecomposition& d, Eigen::Index level,
                                    const OperatorMatrix& op,
                                    const std::vector<double>& times,
                                    Eigen::Index dim_cap) {
    const Eigen::Index n = d.dim();
    if (n > dim_cap)
        throw std::invalid_argument(
            "otoc_series_spectral_sum: dimension exceeds the O(D^3) cap");
    if (level < 0 || level >= n)
        throw std::invalid_argument("otoc_series_spectral_sum: level out of range");
    const Eigen::MatrixXd s = heisenberg_elements(op, d);

    OTOCSeries out;
    out.times = times;
    out.values.resize(times.size());
    out.operator_tag = "custom";
    out.state_tag = "eigen(" + std::to_string(level) + ")";
    out.params = d.params;

    // phase e^{i(E_n - E_gamma + E_gamma' - E_beta)t} per term, as dictated
    // by the operator expansion of F(t) = <n|B(t) A B(t) A|n>
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        const Eigen::VectorXcd ph = phases(d.energies, t);
        const Complex ph_n = std::polar(1.0, d.energies(level) * t);
        Complex total = 0.0;
        for (Eigen::Index beta = 0; beta < n; ++beta) {
            const Complex pre = s(beta, level) * std::conj(ph(beta)) * ph_n;
            if (pre == Complex(0.0)) continue;
            Complex acc = 0.0;
            for (Eigen::Index g = 0; g < n; ++g) {
                const Complex ag = s(level, g) * std::conj(ph(g));
                Complex inner = 0.0;
                for (Eigen::Index gp = 0; gp < n; ++gp)
                    inner += s(g, gp) * ph(gp) * s(gp, beta);
                acc += ag * inner;
            }
            total += acc * pre;
        }
        out.values[k] = total;
    }
    return out;
}

double gap_matched_average(const Eigen::VectorXd& e, const Eigen::MatrixXd& s,
                           Eigen::Index level, double eps_omega) {
    const Eigen::Index n = e.size();
    if (level < 0 || level >= n)
        throw std::invalid_argument("gap_matched_average: level out of range");

    // matched terms satisfy E_gamma' = E_gamma + (E_beta - E_level)
    double total = 0.0;
    for (Eigen::Index beta = 0; beta < n; ++beta) {
        const double w_beta = s(beta, level);
        if (w_beta == 0.0) continue;
        const double shift = e(beta) - e(level);
        double acc = 0.0;
        for (Eigen::Index g = 0; g < n; ++g) {
            const auto [lo, hi] = window(e, e(g) + shift, eps_omega);
            double inner = 0.0;
            for (Eigen::Index gp = lo; gp < hi; ++gp) inner += s(g, gp) * s(gp, beta);
            acc += s(level, g) * inner;
        }
        total += acc * w_beta;
    }
    return total;
}

LongTimeStats long_time_average(const EigenDecomposition& d, const OperatorMatrix& op,
                                Eigen::Index level, double eps_omega) {
    if (op.dim() != d.dim())
        throw std::invalid_argument("long_time_average: dimension mismatch");
    const Eigen::MatrixXd s = heisenberg_elements(op, d);
    const double total = gap_matched_average(d.energies, s, level, eps_omega);

    LongTimeStats out;
    out.f_bar = total;
    out.f_bar_complex = total; // all matrix elements are real in this basis
    out.method = "gap-matching";
    return out;
}

LongTimeStats long_time_average(const EigenDecomposition& d, const OperatorMatrix& op,
                                const QuantumState& state, double eps_omega) {
    require_normalized(state, "long_time_average");
    const Eigen::VectorXcd c = apply_real(d.states.transpose(), state.amp);
    Eigen::Index level = 0;
    c.cwiseAbs().maxCoeff(&level);
    if (std::abs(c(level)) < 1.0 - 1e-6)
        throw std::invalid_argument(
            "long_time_average: state is not an energy eigenstate; use "
            "long_time_average_general");
    return long_time_average(d, op, level, eps_omega);
}

LongTimeStats long_time_average_general(const EigenDecomposition& d, const OperatorMatrix& op,
                                        const QuantumState& state, double eps_omega,
                                        Eigen::Index dim_cap) {
    const Eigen::Index n = d.dim();
    if (n > dim_cap)
        throw std::invalid_argument(
            "long_time_average_general: dimension exceeds the O(D^2) scratch cap");
    require_normalized(state, "long_time_average_general");
    if (op.dim() != n)
        throw std::invalid_argument("long_time_average_general: dimension mismatch");

    const Eigen::MatrixXd s = heisenberg_elements(op, d);
    const Eigen::VectorXcd c = apply_real(d.states.transpose(), state.amp);
    const Eigen::VectorXcd b = apply_real(s, c); // b_beta = <beta|op|psi(0)>
    const Eigen::VectorXd& e = d.energies;

    struct Gap {
        double value;
        std::int32_t g, gp;
    };
    std::vector<Gap> gaps;
    gaps.reserve(static_cast<std::size_t>(n) * n);
    for (Eigen::Index g = 0; g < n; ++g)
        for (Eigen::Index gp = 0; gp < n; ++gp)
            gaps.push_back({e(gp) - e(g), static_cast<std::int32_t>(g),
                            static_cast<std::int32_t>(gp)});
    std::sort(gaps.begin(), gaps.end(),
              [](const Gap& x, const Gap& y) { return x.value < y.value; });

    // matched terms satisfy E_gamma' - E_gamma = E_beta - E_alpha
    Complex total = 0.0;
    for (Eigen::Index alpha = 0; alpha < n; ++alpha) {
        if (c(alpha) == Complex(0.0)) continue;
        for (Eigen::Index beta = 0; beta < n; ++beta) {
            const Complex pre = std::conj(c(alpha)) * b(beta);
            if (pre == Complex(0.0)) continue;
            const double target = e(beta) - e(alpha);
            auto lo = std::lower_bound(gaps.begin(), gaps.end(), target - eps_omega,
                                       [](const Gap& x, double v) { return x.value < v; });
            double acc = 0.0;
            for (; lo != gaps.end() && lo->value <= target + eps_omega; ++lo)
                acc += s(alpha, lo->g) * s(lo->g, lo->gp) * s(lo->gp, beta);
            total += pre * acc;
        }
    }

    LongTimeStats out;
    out.f_bar = total.real();
    out.f_bar_complex = total;
    out.method = "gap-matching";
    return out;
}

LongTimeStats long_time_average_numeric(const EigenDecomposition& d, const OperatorMatrix& op,
                                        const QuantumState& state, double horizon,
                                        int n_samples, VarianceMode mode) {
    if (horizon <= 0.0)
        throw std::invalid_argument("long_time_average_numeric: horizon must be > 0");
    if (n_samples < 1000)
        throw std::invalid_argument("long_time_average_numeric: need n_samples >= 1000");

    const auto times = linspace(0.0, horizon, n_samples + 1);
    const OTOCSeries series = otoc_series(d, op, op, state, times);

    auto trapezoid_mean = [&](auto value) {
        double sum = 0.0;
        for (std::size_t k = 0; k < series.values.size(); ++k) {
            const double w = (k == 0 || k + 1 == series.values.size()) ? 0.5 : 1.0;
            sum += w * value(k);
        }
        return sum / n_samples;
    };

    LongTimeStats out;
    out.f_bar = trapezoid_mean([&](std::size_t k) { return series.values[k].real(); });
    const double mean_im = trapezoid_mean([&](std::size_t k) { return series.values[k].imag(); });
    out.f_bar_complex = Complex(out.f_bar, mean_im);
    if (mode == VarianceMode::real_part) {
        out.variance = trapezoid_mean([&](std::size_t k) {
            const double r = out.f_bar - series.values[k].real();
            return r * r;
        });
    } else {
        out.variance = trapezoid_mean([&](std::size_t k) {
            return std::norm(out.f_bar_complex - series.values[k]);
        });
    }
    out.method = "finite-T";
    out.horizon = horizon;
    return out;
}

double participation_ratio(const EigenDecomposition& d, const QuantumState& reference) {
    if (reference.dim() != d.dim())
        throw std::invalid_argument("participation_ratio: dimension mismatch");
    require_normalized(reference, "participation_ratio");
    const Eigen::VectorXcd c = apply_real(d.states.transpose(), reference.amp);
    double sum4 = 0.0;
    for (Eigen::Index k = 0; k < c.size(); ++k) {
        const double p = std::norm(c(k));
        sum4 += p * p;
    }
    return 1.0 / sum4;
}

double eigenstate_otoc_average(const EigenDecomposition& d, Eigen::Index level,
                               const OperatorMatrix& op, double eps_omega) {
    return long_time_average(d, op, level, eps_omega).f_bar;
}

OTOCSeries echo_otoc(const EigenDecomposition& plus, const EigenDecomposition& minus,
                     const QuantumState& state0, const std::vector<double>& times) {
    const Eigen::Index n = plus.dim();
    if (minus.dim() != n || state0.dim() != n)
        throw std::invalid_argument("echo_otoc: dimension mismatch");
    require_normalized(state0, "echo_otoc");

    const int n_bosons = static_cast<int>(n / 2) - 1;
    const OperatorMatrix sx = qubit_sigma_x(n_bosons);
    if ((apply_real(sx.mat, state0.amp) - state0.amp).norm() > 1e-8)
        throw std::invalid_argument(
            "echo_otoc: state0 must be a sigma_x eigenstate with eigenvalue +1");

    OTOCSeries out;
    out.times = times;
    out.values.resize(times.size());
    out.operator_tag = "sigma_x";
    out.state_tag = "product";
    out.params = plus.params;

    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        QuantumState psi = evolve(state0, minus, t);        // e^{-i H_- t}
        psi = evolve(psi, plus, -t);                        // e^{+i H_+ t}
        const Eigen::VectorXcd sx_psi = apply_real(sx.mat, psi.amp);
        out.values[k] = psi.amp.dot(sx_psi);
    }
    return out;
}

OTOCSeries echo_otoc(const ModelParams& p, const QuantumState& state0,
                     const std::vector<double>& times) {
    return echo_otoc(diagonalize_model_pm(p, +1), diagonalize_model_pm(p, -1), state0, times);
}

std::vector<std::complex<double>> two_point(const EigenDecomposition& d,
                                            const OperatorMatrix& op,
                                            const QuantumState& state,
                                            const std::vector<double>& times) {
    if (op.dim() != d.dim() || state.dim() != d.dim())
        throw std::invalid_argument("two_point: dimension mismatch");
    require_normalized(state, "two_point");
    const Eigen::MatrixXd s = heisenberg_elements(op, d);
    const Eigen::VectorXcd c = apply_real(d.states.transpose(), state.amp);
    const Eigen::VectorXcd r = apply_real(s, c);

    std::vector<Complex> out(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        const Eigen::VectorXcd ph = phases(d.energies, times[k]);
        const Eigen::VectorXcd y = ph.conjugate().cwiseProduct(c);
        const Eigen::VectorXcd z = ph.conjugate().cwiseProduct(r);
        out[k] = y.dot(apply_real(s, z));
    }
    return out;
}

std::complex<double> two_point_average(const EigenDecomposition& d, const OperatorMatrix& op,
                                       const QuantumState& state, double eps_omega) {
    require_normalized(state, "two_point_average");
    const Eigen::MatrixXd s = heisenberg_elements(op, d);
    const Eigen::VectorXcd c = apply_real(d.states.transpose(), state.amp);
    const Eigen::VectorXcd r = apply_real(s, c);
    const Eigen::VectorXd& e = d.energies;

    Complex total = 0.0;
    for (Eigen::Index alpha = 0; alpha < d.dim(); ++alpha) {
        if (c(alpha) == Complex(0.0)) continue;
        const auto [lo, hi] = window(e, e(alpha), eps_omega);
        for (Eigen::Index beta = lo; beta < hi; ++beta)
            total += std::conj(c(alpha)) * s(alpha, beta) * r(beta);
    }
    return total;
}

QuantumState coherent_state(double theta, double phi, int n_bosons) {
    if (n_bosons < 1) throw std::invalid_argument("coherent_state: n_bosons must be >= 1");
    if (theta < 0.0 || theta > M_PI)
        throw std::invalid_argument("coherent_state: theta outside [0, pi]");
    const int dim = n_bosons + 1;
    const double s = 0.5 * n_bosons;
    const double c2 = std::cos(0.5 * theta);
    const double s2 = std::sin(0.5 * theta);

    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(dim);
    for (int k = 0; k < dim; ++k) {
        // amplitude on |S, m = -S + k>: sqrt(C(N,k)) cos^k sin^(N-k), in logs
        // to stay finite at large N
        if ((k > 0 && c2 == 0.0) || (k < n_bosons && s2 == 0.0)) continue;
        double log_amp = 0.5 * (std::lgamma(n_bosons + 1.0) - std::lgamma(k + 1.0) -
                                std::lgamma(n_bosons - k + 1.0));
        if (k > 0) log_amp += k * std::log(c2);
        if (k < n_bosons) log_amp += (n_bosons - k) * std::log(s2);
        const double m = -s + k;
        amp(k) = std::polar(std::exp(log_amp), -m * phi);
    }
    return normalized(std::move(amp), StateBasis::boson);
}

QuantumState product_ground_xplus(const ModelParams& p) {
    const EigenDecomposition boson = diagonalize_boson(p);
    const Eigen::VectorXd g = boson.states.col(0);
    Eigen::VectorXcd amp(2 * g.size());
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Eigen::Index b = 0; b < g.size(); ++b) {
        amp(2 * b) = g(b) * inv_sqrt2;
        amp(2 * b + 1) = g(b) * inv_sqrt2;
    }
    return {std::move(amp), StateBasis::composite};
}

QuantumState cat_state(int n_bosons) {
    if (n_bosons < 1) throw std::invalid_argument("cat_state: n_bosons must be >= 1");
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(2 * (n_bosons + 1));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    amp(2 * n_bosons + 1) = inv_sqrt2; // |m=+S>|->
    amp(0) = inv_sqrt2;                // |m=-S>|+>
    return {std::move(amp), StateBasis::composite};
}

} // namespace otoc
