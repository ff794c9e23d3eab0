// otoc.hpp — OTOC time series, long-time averages, participation ratios,
// the echo-form OTOC, and two-point correlators

#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "otoclab/spectral.hpp"

namespace otoc {

enum class OpTag { sigma_x, sigma_z, sz_over_n };
std::string to_string(OpTag tag);
OpTag op_tag_from_string(const std::string& s);

// The tagged operator on the composite (or, for sz_over_n, optionally the
// boson-only) space.
OperatorMatrix build_tagged_operator(OpTag tag, int n_bosons, StateBasis basis);

struct OTOCSeries {
    std::vector<double> times;
    std::vector<std::complex<double>> values;
    std::string operator_tag;
    std::string state_tag;
    ModelParams params;
};

struct LongTimeStats {
    double f_bar = 0.0;                    // long-time average of Re F
    std::complex<double> f_bar_complex{};  // average of F
    std::optional<double> variance;        // only for the finite-horizon method
    std::string method;                    // "gap-matching" | "finite-T"
    double horizon = 0.0;                  // T when finite-T
};

enum class VarianceMode { real_part, complex_modulus };

std::vector<double> linspace(double a, double b, int n);

// Point evaluator for F(t) = <v(t)|u(t)> with u = B(t) A |psi> and
// v = A B(t) |psi>, B(t) applied through eigenbasis phases. Costs O(D^2)
// per call after two one-off basis transforms. A and B must commute at
// t = 0 and the state must be normalized.
class OtocEvaluator {
  public:
    OtocEvaluator(const EigenDecomposition& d, const OperatorMatrix& a,
                  const OperatorMatrix& b, const QuantumState& state);

    std::complex<double> operator()(double t) const;
    Eigen::Index dim() const { return energies_.size(); }

  private:
    Eigen::VectorXd energies_;
    Eigen::MatrixXd a_eig_;
    Eigen::MatrixXd b_eig_; // empty when B is the same operator as A
    Eigen::VectorXcd c_;    // state in the eigenbasis
    Eigen::VectorXcd ac_;   // A|psi> in the eigenbasis
};

// F(t) over a time grid via OtocEvaluator.
OTOCSeries otoc_series(const EigenDecomposition& d, const OperatorMatrix& a,
                       const OperatorMatrix& b, const QuantumState& state,
                       const std::vector<double>& times,
                       const std::string& operator_tag = "custom",
                       const std::string& state_tag = "custom");

// Literal spectral triple sum over (gamma, gamma', beta) for an eigenstate
// reference; O(D^3) per time point. Reference route for cross-checks only,
// refuses dim > dim_cap.
OTOCSeries otoc_series_spectral_sum(const EigenDecomposition& d, Eigen::Index level,
                                    const OperatorMatrix& op,
                                    const std::vector<double>& times,
                                    Eigen::Index dim_cap = 500);

inline constexpr double kGapMatchTolerance = 1e-8; // units of J

// Diagonal-ensemble average: keeps spectral terms whose net phase frequency
// |E_beta - E_n + E_gamma - E_gamma'| < eps_omega. O(D^2 log D) via binary
// searches over the sorted energies.
LongTimeStats long_time_average(const EigenDecomposition& d, const OperatorMatrix& op,
                                Eigen::Index level, double eps_omega = kGapMatchTolerance);

// Same, reusing precomputed eigenbasis matrix elements (for per-level scans).
double gap_matched_average(const Eigen::VectorXd& energies, const Eigen::MatrixXd& op_eig,
                           Eigen::Index level, double eps_omega = kGapMatchTolerance);

// Same, resolving the given state to an eigenstate level (throws if the
// state is not an eigenstate up to 1e-6).
LongTimeStats long_time_average(const EigenDecomposition& d, const OperatorMatrix& op,
                                const QuantumState& state,
                                double eps_omega = kGapMatchTolerance);

// Diagonal-ensemble average for an arbitrary normalized state: matches the
// (alpha,beta) frequency against a sorted list of all (gamma,gamma') gaps.
// Needs O(D^2) scratch, refuses dim > dim_cap.
LongTimeStats long_time_average_general(const EigenDecomposition& d, const OperatorMatrix& op,
                                        const QuantumState& state,
                                        double eps_omega = kGapMatchTolerance,
                                        Eigen::Index dim_cap = 1024);

// Trapezoidal average of F over [0, T] on n_samples+1 uniform points plus
// the long-time variance of the chosen component.
LongTimeStats long_time_average_numeric(const EigenDecomposition& d, const OperatorMatrix& op,
                                        const QuantumState& state, double horizon,
                                        int n_samples,
                                        VarianceMode mode = VarianceMode::real_part);

// PR = (sum_n |<psi_n|ref>|^4)^{-1}, between 1 and D.
double participation_ratio(const EigenDecomposition& d, const QuantumState& reference);

// Long-time OTOC average with eigenstate n as the reference state.
double eigenstate_otoc_average(const EigenDecomposition& d, Eigen::Index level,
                               const OperatorMatrix& op,
                               double eps_omega = kGapMatchTolerance);

// F(t) = <Psi(t)|sigma_x|Psi(t)> with |Psi(t)> = e^{iH+t} e^{-iH-t}|Psi(0)>;
// |Psi(0)> must be a sigma_x eigenstate with eigenvalue +1.
OTOCSeries echo_otoc(const EigenDecomposition& plus, const EigenDecomposition& minus,
                     const QuantumState& state0, const std::vector<double>& times);
OTOCSeries echo_otoc(const ModelParams& p, const QuantumState& state0,
                     const std::vector<double>& times);

// <state| op(t) op |state> through eigenbasis phases.
std::vector<std::complex<double>> two_point(const EigenDecomposition& d,
                                            const OperatorMatrix& op,
                                            const QuantumState& state,
                                            const std::vector<double>& times);

// Diagonal-ensemble long-time average of the two-point correlator.
std::complex<double> two_point_average(const EigenDecomposition& d, const OperatorMatrix& op,
                                       const QuantumState& state,
                                       double eps_omega = kGapMatchTolerance);

// Spin coherent state |theta, phi> on the boson space, m-ascending.
QuantumState coherent_state(double theta, double phi, int n_bosons);

// |psi0>_B (x) (|+> + |->)/sqrt(2), the product state of the boson ground
// state and the qubit sigma_x eigenstate.
QuantumState product_ground_xplus(const ModelParams& p);

// (|m=+S>|-> + |m=-S>|+>)/sqrt(2), the W -> infinity cat ground state.
QuantumState cat_state(int n_bosons);

} // namespace otoc
