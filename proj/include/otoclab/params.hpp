// params.hpp — model couplings and the derived driving parameters

#pragma once

#include <stdexcept>
#include <string>

namespace otoc {

// Thrown when the reduced parameter lambda = (Lambda - Lambda_c)/|Lambda_c|
// is requested at Lambda_c = 0, which happens exactly at w = 2*sqrt(j_a).
struct critical_coupling_zero : std::domain_error {
    critical_coupling_zero()
        : std::domain_error(
              "Lambda_c = 0 (w = 2*sqrt(j_a)): reduced lambda is undefined") {}
};

// Couplings of the N-boson + impurity-qubit model. Energies are measured in
// units of the boson tunneling j (so j = 1 in normal use); time then carries
// units 1/j with hbar = 1. j = 0 is accepted only for the pure-interaction
// analytic limit.
struct ModelParams {
    int n = 1;        // number of bosons
    double u = 0.0;   // boson-boson interaction
    double j = 1.0;   // boson tunneling, the unit of energy
    double j_a = 1.0; // qubit transition energy
    double w = 0.0;   // boson-qubit coupling

    double total_spin() const { return 0.5 * n; }
    int dim_boson() const { return n + 1; }
    int dim_composite() const { return 2 * (n + 1); }

    // Lambda = u*N/(2*j), the interaction-to-hopping ratio driving the QPT.
    double capital_lambda() const;

    // Lambda_c = w^2/(4*j_a) - 1, where the qubit shifts the critical point.
    double lambda_c() const;

    // lambda = (Lambda - Lambda_c)/|Lambda_c|. Throws critical_coupling_zero
    // when Lambda_c = 0.
    double reduced_lambda() const;

    ModelParams with_u(double new_u) const;
    ModelParams with_capital_lambda(double cap_lambda) const;
    ModelParams with_reduced_lambda(double lambda) const;

    bool operator==(const ModelParams&) const = default;
};

// Rejects unusable parameter sets (n < 1, negative j, non-finite values).
void validate(const ModelParams& p);

// The u that realizes a requested reduced lambda at fixed n, j, j_a, w.
// lambda_target != 0 requires Lambda_c != 0.
double u_for_lambda(double lambda_target, const ModelParams& p);

// The u that realizes a requested Lambda = u*n/(2*j).
double u_for_capital_lambda(double cap_lambda, const ModelParams& p);

// One-line "n=.. u=.. j=.. ja=.. w=.." fragment used in CSV headers.
std::string describe(const ModelParams& p);

} // namespace otoc
