#include "otoclab/operators.hpp"

#include <cmath>
#include <complex>

namespace otoc {

double hermiticity_defect(const Eigen::MatrixXd& m) {
    return (m - m.transpose()).cwiseAbs().maxCoeff();
}

void require_hermitian(const OperatorMatrix& op, const char* what) {
    const double scale = op.mat.cwiseAbs().maxCoeff();
    if (!op.hermitian || hermiticity_defect(op.mat) > 1e-12 * std::max(1.0, scale))
        throw std::invalid_argument(std::string(what) + ": operator is not hermitian");
}

SpinOperators build_spin_operators(int n_bosons) {
    if (n_bosons < 1)
        throw std::invalid_argument("build_spin_operators: n_bosons must be >= 1");
    const int dim = n_bosons + 1;
    const double s = 0.5 * n_bosons;

    Eigen::MatrixXd sp = Eigen::MatrixXd::Zero(dim, dim); // raising operator
    for (int k = 0; k + 1 < dim; ++k) {
        const double m = -s + k;
        sp(k + 1, k) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
    }

    SpinOperators out;
    out.sx = 0.5 * (sp + sp.transpose());
    out.sz = Eigen::VectorXd::LinSpaced(dim, -s, s).asDiagonal();
    out.sy = std::complex<double>(0.0, -0.5) * (sp - sp.transpose()).cast<std::complex<double>>();
    return out;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Eigen::Matrix2d pauli_x() {
    Eigen::Matrix2d m;
    m << 0, 1, 1, 0;
    return m;
}

Eigen::Matrix2d pauli_z() {
    Eigen::Matrix2d m;
    m << 1, 0, 0, -1;
    return m;
}

OperatorMatrix build_hamiltonian_pm(const ModelParams& p, int sign) {
    validate(p);
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("build_hamiltonian_pm: sign must be +1 or -1");
    const auto ops = build_spin_operators(p.n);
    const Eigen::MatrixXd id_b = Eigen::MatrixXd::Identity(p.dim_boson(), p.dim_boson());
    const Eigen::Matrix2d id_q = Eigen::Matrix2d::Identity();

    Eigen::MatrixXd h = p.u * kron(ops.sz * ops.sz, id_q);
    h.noalias() -= 2.0 * p.j * kron(ops.sx, id_q);
    h.noalias() -= static_cast<double>(p.n) * p.j_a * kron(id_b, pauli_x());
    h.noalias() += sign * p.w * kron(ops.sz, pauli_z());
    return {std::move(h), true};
}

OperatorMatrix build_hamiltonian(const ModelParams& p) {
    return build_hamiltonian_pm(p, +1);
}

OperatorMatrix build_boson_hamiltonian(const ModelParams& p) {
    validate(p);
    const auto ops = build_spin_operators(p.n);
    Eigen::MatrixXd h = p.u * (ops.sz * ops.sz);
    h.noalias() -= 2.0 * p.j * ops.sx;
    return {std::move(h), true};
}

OperatorMatrix build_parity(int n_bosons) {
    if (n_bosons < 1)
        throw std::invalid_argument("build_parity: n_bosons must be >= 1");
    const int dim = n_bosons + 1;
    // exp(-i pi Sx) sends |S,m> to (global phase) * |S,-m>; after phase
    // normalization R is exactly the exchange matrix.
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) r(dim - 1 - k, k) = 1.0;
    return {kron(r, pauli_x()), true};
}

OperatorMatrix qubit_sigma_x(int n_bosons) {
    const Eigen::MatrixXd id_b = Eigen::MatrixXd::Identity(n_bosons + 1, n_bosons + 1);
    return {kron(id_b, pauli_x()), true};
}

OperatorMatrix qubit_sigma_z(int n_bosons) {
    const Eigen::MatrixXd id_b = Eigen::MatrixXd::Identity(n_bosons + 1, n_bosons + 1);
    return {kron(id_b, pauli_z()), true};
}

OperatorMatrix sz_over_n_boson(int n_bosons) {
    const auto ops = build_spin_operators(n_bosons);
    return {ops.sz / static_cast<double>(n_bosons), true};
}

OperatorMatrix sz_over_n_composite(int n_bosons) {
    const auto ops = build_spin_operators(n_bosons);
    return {kron(ops.sz / static_cast<double>(n_bosons), Eigen::Matrix2d::Identity()), true};
}

} // namespace otoc
