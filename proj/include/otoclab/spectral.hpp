// spectral.hpp — dense real-symmetric diagonalization, parity labels,
// eigenbasis transforms, and time evolution

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "otoclab/operators.hpp"
#include "otoclab/params.hpp"

namespace otoc {

enum class StateBasis { boson, composite };

// Normalized pure state; composite amplitudes are ordered as 2*b + q.
struct QuantumState {
    Eigen::VectorXcd amp;
    StateBasis basis = StateBasis::composite;

    Eigen::Index dim() const { return amp.size(); }
};

QuantumState normalized(Eigen::VectorXcd amp, StateBasis basis);

// Full eigensystem of a real-symmetric operator. energies ascend, states
// are orthonormal columns with the largest-magnitude component made
// positive, parities hold +1/-1 per level (0 = not classified).
struct EigenDecomposition {
    ModelParams params;
    Eigen::VectorXd energies;
    Eigen::MatrixXd states;
    Eigen::VectorXi parities;

    Eigen::Index dim() const { return energies.size(); }
};

// Degeneracy tolerance used when grouping quasi-degenerate levels.
double degeneracy_tolerance(const Eigen::VectorXd& energies);

// LAPACK dsyevd behind the module contract. Throws std::runtime_error on
// non-convergence.
EigenDecomposition diagonalize(const OperatorMatrix& h);
EigenDecomposition diagonalize(const OperatorMatrix& h, const OperatorMatrix& parity_op);

// Composite Hamiltonian of p with parity labels attached.
EigenDecomposition diagonalize_model(const ModelParams& p);
// H_B alone on the boson space (no parity labels).
EigenDecomposition diagonalize_boson(const ModelParams& p);
// H_+ / H_- variants.
EigenDecomposition diagonalize_model_pm(const ModelParams& p, int sign);

// Labels every level by sign<psi|Pi|psi>. Quasi-degenerate groups are first
// rotated to exact parity eigenvectors in-place. Levels that still have
// |<Pi>| < 0.99 stay 0; their count is returned.
int parity_classify(EigenDecomposition& d, const OperatorMatrix& parity_op);

// Test-support bounds; production code relies on the solver's guarantees.
struct DecompositionChecks {
    double max_residual = 0.0;            // max_n ||H v_n - E_n v_n|| / max(1,|E_n|)
    double max_orthonormality_defect = 0.0; // max|V^T V - 1|
    bool energies_sorted = true;
};
DecompositionChecks check_decomposition(const EigenDecomposition& d, const OperatorMatrix& h);

QuantumState eigenstate(const EigenDecomposition& d, Eigen::Index level);
QuantumState ground_state(const EigenDecomposition& d);

// Real matrix times complex vector without promoting the matrix.
Eigen::VectorXcd apply_real(const Eigen::MatrixXd& m, const Eigen::VectorXcd& v);

// exp(-i H t)|psi> via eigenbasis phases.
QuantumState evolve(const QuantumState& state, const EigenDecomposition& d, double t);

// O_eig = V^T O V (real in this basis).
Eigen::MatrixXd heisenberg_elements(const OperatorMatrix& op, const EigenDecomposition& d);

// Heisenberg-picture matrix O(t)_{ag} = O_{ag} e^{i(E_a - E_g)t}.
Eigen::MatrixXcd phase_apply(const Eigen::MatrixXd& elements, const Eigen::VectorXd& energies,
                             double t);

} // namespace otoc
