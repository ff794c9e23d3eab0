// operators.hpp — collective spin operators, qubit operators, Hamiltonians,
// and the Z2 parity of the boson + qubit model

#pragma once

#include <Eigen/Dense>
#include <utility>

#include "otoclab/params.hpp"

namespace otoc {

// Dense real operator on the boson or composite space. All operators that
// enter the Hamiltonian are real in the m-ascending (x) sigma_z product
// basis; the imaginary Sy is exposed separately for algebra checks.
struct OperatorMatrix {
    Eigen::MatrixXd mat;
    bool hermitian = true;

    Eigen::Index dim() const { return mat.rows(); }
};

// max|M - M^T|, the absolute hermiticity defect of a real operator.
double hermiticity_defect(const Eigen::MatrixXd& m);

// Throws unless defect <= 1e-12 * max|entry|.
void require_hermitian(const OperatorMatrix& op, const char* what);

// Index bookkeeping for the composite space: boson index b = 0..N maps to
// m = -N/2 + b, qubit index q = 0 (|+>_z) or 1 (|->_z), composite = 2*b + q.
struct SpinBasis {
    int n_bosons = 1;

    double total_spin() const { return 0.5 * n_bosons; }
    int dim_boson() const { return n_bosons + 1; }
    int dim_composite() const { return 2 * (n_bosons + 1); }
    double m_of(int boson_index) const { return -total_spin() + boson_index; }

    int composite_index(int boson_index, int qubit_index) const {
        return 2 * boson_index + qubit_index;
    }
    std::pair<int, int> split_index(int composite) const {
        return {composite / 2, composite % 2};
    }
};

struct SpinOperators {
    Eigen::MatrixXd sx;  // tridiagonal, <m+1|Sx|m> = sqrt(S(S+1)-m(m+1))/2
    Eigen::MatrixXd sz;  // diag(-S..S)
    Eigen::MatrixXcd sy; // (S+ - S-)/2i, purely imaginary
};

SpinOperators build_spin_operators(int n_bosons);

// Kronecker product, first factor = boson space, second = qubit.
Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// H = u*(Sz x 1)^2 - 2j*(Sx x 1) - n*j_a*(1 x sigma_x) + w*(Sz x sigma_z),
// real symmetric on the 2(N+1)-dimensional composite space.
OperatorMatrix build_hamiltonian(const ModelParams& p);

// Same with the interaction term multiplied by sign = +1 or -1.
OperatorMatrix build_hamiltonian_pm(const ModelParams& p, int sign);

// H_B = u*Sz^2 - 2j*Sx on the (N+1)-dimensional boson space.
OperatorMatrix build_boson_hamiltonian(const ModelParams& p);

// Parity Pi = R (x) sigma_x with R the phase-normalized pi rotation about
// the spin x axis; R reduces to the m -> -m exchange matrix, so Pi is real,
// Pi^2 = 1, and [Pi, H] = 0 for every parameter set.
OperatorMatrix build_parity(int n_bosons);

// Composite-space qubit Paulis and the scaled collective operator Sz/N.
OperatorMatrix qubit_sigma_x(int n_bosons);
OperatorMatrix qubit_sigma_z(int n_bosons);
OperatorMatrix sz_over_n_composite(int n_bosons);
OperatorMatrix sz_over_n_boson(int n_bosons);

Eigen::Matrix2d pauli_x();
Eigen::Matrix2d pauli_z();

} // namespace otoc
