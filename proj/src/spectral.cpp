#include "otoclab/spectral.hpp"

#include <lapacke.h>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace otoc {

QuantumState normalized(Eigen::VectorXcd amp, StateBasis basis) {
    const double n = amp.norm();
    if (n == 0.0) throw std::invalid_argument("normalized: zero vector");
    return {amp / n, basis};
}

double degeneracy_tolerance(const Eigen::VectorXd& energies) {
    const double emax = energies.size() ? energies.cwiseAbs().maxCoeff() : 0.0;
    return 1e-8 * std::max(1.0, emax);
}

namespace {

// Largest-magnitude component of each eigenvector made positive so matrix
// elements are reproducible across runs and platforms.
void fix_phases(Eigen::MatrixXd& v) {
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
        Eigen::Index imax = 0;
        v.col(c).cwiseAbs().maxCoeff(&imax);
        if (v(imax, c) < 0.0) v.col(c) = -v.col(c);
    }
}

StateBasis basis_of(const EigenDecomposition& d) {
    return d.dim() == d.params.dim_composite() ? StateBasis::composite : StateBasis::boson;
}

} // namespace

EigenDecomposition diagonalize(const OperatorMatrix& h) {
    require_hermitian(h, "diagonalize");
    const lapack_int n = static_cast<lapack_int>(h.dim());

    EigenDecomposition d;
    d.states = h.mat; // dsyevd overwrites with eigenvectors (column-major)
    d.energies.resize(n);
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                           d.states.data(), n, d.energies.data());
    if (info != 0)
        throw std::runtime_error("diagonalize: dsyevd failed to converge, info=" +
                                 std::to_string(info));
    fix_phases(d.states);
    d.parities = Eigen::VectorXi::Zero(n);
    return d;
}

EigenDecomposition diagonalize(const OperatorMatrix& h, const OperatorMatrix& parity_op) {
    EigenDecomposition d = diagonalize(h);
    parity_classify(d, parity_op);
    return d;
}

EigenDecomposition diagonalize_model(const ModelParams& p) {
    EigenDecomposition d = diagonalize(build_hamiltonian(p), build_parity(p.n));
    d.params = p;
    return d;
}

EigenDecomposition diagonalize_boson(const ModelParams& p) {
    EigenDecomposition d = diagonalize(build_boson_hamiltonian(p));
    d.params = p;
    return d;
}

EigenDecomposition diagonalize_model_pm(const ModelParams& p, int sign) {
    EigenDecomposition d = diagonalize(build_hamiltonian_pm(p, sign), build_parity(p.n));
    d.params = p;
    return d;
}

int parity_classify(EigenDecomposition& d, const OperatorMatrix& parity_op) {
    if (parity_op.dim() != d.dim())
        throw std::invalid_argument("parity_classify: dimension mismatch");
    const Eigen::Index n = d.dim();
    const double eps_deg = degeneracy_tolerance(d.energies);
    d.parities = Eigen::VectorXi::Zero(n);

    int unclassified = 0;
    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index stop = start + 1;
        while (stop < n && d.energies(stop) - d.energies(stop - 1) < eps_deg) ++stop;
        const Eigen::Index g = stop - start;

        bool pure = true;
        Eigen::VectorXd p_direct(g);
        for (Eigen::Index k = 0; k < g; ++k) {
            p_direct(k) =
                d.states.col(start + k).dot(parity_op.mat * d.states.col(start + k));
            pure = pure && std::abs(p_direct(k)) >= 1.0 - 1e-12;
        }

        if (pure || g == 1) {
            for (Eigen::Index k = 0; k < g; ++k) {
                if (std::abs(p_direct(k)) >= 0.99)
                    d.parities(start + k) = p_direct(k) > 0.0 ? 1 : -1;
                else
                    ++unclassified;
            }
        } else {
            // rotate the mixed quasi-degenerate block to exact parity
            // eigenvectors, keeping each rotated column associated with the
            // original it overlaps most (a near-no-op must not reorder)
            auto block = d.states.middleCols(start, g);
            const Eigen::MatrixXd pb = block.transpose() * parity_op.mat * block;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (pb + pb.transpose()));
            Eigen::MatrixXd w = es.eigenvectors();
            Eigen::VectorXd pvals = es.eigenvalues();

            std::vector<Eigen::Index> order(g);
            std::vector<bool> taken(g, false);
            for (Eigen::Index col = 0; col < g; ++col) {
                Eigen::Index best = -1;
                for (Eigen::Index cand = 0; cand < g; ++cand)
                    if (!taken[cand] &&
                        (best < 0 || std::abs(w(col, cand)) > std::abs(w(col, best))))
                        best = cand;
                taken[best] = true;
                order[col] = best;
            }
            Eigen::MatrixXd w_ordered(g, g);
            Eigen::VectorXd p_ordered(g);
            for (Eigen::Index col = 0; col < g; ++col) {
                w_ordered.col(col) = w.col(order[col]);
                p_ordered(col) = pvals(order[col]);
            }

            Eigen::MatrixXd rotated = block * w_ordered;
            fix_phases(rotated);
            d.states.middleCols(start, g) = rotated;
            for (Eigen::Index k = 0; k < g; ++k) {
                if (std::abs(p_ordered(k)) >= 0.99)
                    d.parities(start + k) = p_ordered(k) > 0.0 ? 1 : -1;
                else
                    ++unclassified;
            }
        }
        start = stop;
    }
    return unclassified;
}

DecompositionChecks check_decomposition(const EigenDecomposition& d, const OperatorMatrix& h) {
    DecompositionChecks out;
    const Eigen::MatrixXd hv = h.mat * d.states;
    for (Eigen::Index k = 0; k < d.dim(); ++k) {
        const double res = (hv.col(k) - d.energies(k) * d.states.col(k)).norm() /
                           std::max(1.0, std::abs(d.energies(k)));
        out.max_residual = std::max(out.max_residual, res);
        if (k > 0 && d.energies(k) < d.energies(k - 1)) out.energies_sorted = false;
    }
    const Eigen::MatrixXd gram = d.states.transpose() * d.states;
    out.max_orthonormality_defect =
        (gram - Eigen::MatrixXd::Identity(d.dim(), d.dim())).cwiseAbs().maxCoeff();
    return out;
}

QuantumState eigenstate(const EigenDecomposition& d, Eigen::Index level) {
    if (level < 0 || level >= d.dim())
        throw std::invalid_argument("eigenstate: level index out of range");
    return {d.states.col(level).cast<std::complex<double>>(), basis_of(d)};
}

QuantumState ground_state(const EigenDecomposition& d) { return eigenstate(d, 0); }

Eigen::VectorXcd apply_real(const Eigen::MatrixXd& m, const Eigen::VectorXcd& v) {
    Eigen::VectorXcd out(m.rows());
    out.real() = m * v.real();
    out.imag() = m * v.imag();
    return out;
}

QuantumState evolve(const QuantumState& state, const EigenDecomposition& d, double t) {
    if (state.dim() != d.dim()) throw std::invalid_argument("evolve: dimension mismatch");
    Eigen::VectorXcd c = apply_real(d.states.transpose(), state.amp);
    for (Eigen::Index k = 0; k < c.size(); ++k)
        c(k) *= std::polar(1.0, -d.energies(k) * t);
    return {apply_real(d.states, c), state.basis};
}

Eigen::MatrixXd heisenberg_elements(const OperatorMatrix& op, const EigenDecomposition& d) {
    if (op.dim() != d.dim())
        throw std::invalid_argument("heisenberg_elements: dimension mismatch");
    return d.states.transpose() * op.mat * d.states;
}

Eigen::MatrixXcd phase_apply(const Eigen::MatrixXd& elements, const Eigen::VectorXd& energies,
                             double t) {
    if (elements.rows() != energies.size())
        throw std::invalid_argument("phase_apply: dimension mismatch");
    Eigen::VectorXcd ph(energies.size());
    for (Eigen::Index k = 0; k < energies.size(); ++k)
        ph(k) = std::polar(1.0, energies(k) * t);
    return ph.asDiagonal() * elements.cast<std::complex<double>>() *
           ph.conjugate().asDiagonal();
}

} // namespace otoc
