#include "ssbsim/qcore.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace ssbsim {

Ket::Ket(Vec amps) : amps_(std::move(amps)) {
    if (amps_.size() == 0) {
        throw ContractViolation("Ket: amplitude vector is empty");
    }
    if (!amps_.allFinite()) {
        throw ContractViolation("Ket: non-finite amplitude");
    }
}

Ket Ket::basis(int dim, int index) {
    if (dim <= 0) {
        throw ContractViolation("Ket::basis: dimension must be positive");
    }
    if (index < 0 || index >= dim) {
        throw ContractViolation("Ket::basis: index out of range");
    }
    Vec v = Vec::Zero(dim);
    v(index) = Cx(1.0, 0.0);
    return Ket(std::move(v));
}

bool Ket::is_normalized(double tol) const {
    return std::abs(amps_.squaredNorm() - 1.0) <= tol;
}

Ket Ket::normalized() const {
    const double n = norm();
    if (n <= 0.0) {
        throw ContractViolation("Ket::normalized: zero vector");
    }
    return Ket(amps_ / n);
}

Operator::Operator(Mat entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
        throw ContractViolation("Operator: matrix must be square and nonempty");
    }
    if (!entries_.allFinite()) {
        throw ContractViolation("Operator: non-finite entry");
    }
}

Operator Operator::identity(int dim) {
    return Operator(Mat::Identity(dim, dim));
}

Operator operator*(const Operator& a, const Operator& b) {
    if (a.dim() != b.dim()) {
        throw ContractViolation("Operator product: dimension mismatch");
    }
    return Operator(a.matrix() * b.matrix());
}

Operator operator+(const Operator& a, const Operator& b) {
    if (a.dim() != b.dim()) {
        throw ContractViolation("Operator sum: dimension mismatch");
    }
    return Operator(a.matrix() + b.matrix());
}

DensityMatrix DensityMatrix::from_matrix(Mat entries) {
    if (entries.rows() == 0 || entries.rows() != entries.cols()) {
        throw ContractViolation("DensityMatrix: matrix must be square and nonempty");
    }
    if (!entries.allFinite()) {
        throw ContractViolation("DensityMatrix: non-finite entry");
    }
    if (max_abs(entries - entries.adjoint()) > kHermTol) {
        throw ContractViolation("DensityMatrix: not Hermitian within tolerance");
    }
    if (std::abs(entries.trace() - Cx(1.0, 0.0)) > kHermTol) {
        throw ContractViolation("DensityMatrix: trace deviates from 1");
    }
    Eigen::SelfAdjointEigenSolver<Mat> solver(entries);
    if (solver.eigenvalues().minCoeff() < kPsdFloor) {
        throw ContractViolation("DensityMatrix: negative eigenvalue beyond tolerance");
    }
    return DensityMatrix(std::move(entries));
}

DensityMatrix DensityMatrix::pure(const Ket& psi) {
    if (!psi.is_normalized()) {
        throw ContractViolation("DensityMatrix::pure: state not normalized");
    }
    return from_matrix(psi.amps() * psi.amps().adjoint());
}

Ket apply_operator(const Operator& op, const Ket& ket) {
    if (op.dim() != ket.dim()) {
        throw ContractViolation("apply_operator: dimension mismatch");
    }
    return Ket(op.matrix() * ket.amps());
}

Ket tensor_product(const Ket& a, const Ket& b) {
    const int da = a.dim();
    const int db = b.dim();
    Vec out(da * db);
    for (int i = 0; i < da; ++i) {
        for (int j = 0; j < db; ++j) {
            out(i * db + j) = a.amp(i) * b.amp(j);
        }
    }
    return Ket(std::move(out));
}

Operator tensor_product(const Operator& a, const Operator& b) {
    const int da = a.dim();
    const int db = b.dim();
    Mat out(da * db, da * db);
    for (int i = 0; i < da; ++i) {
        for (int k = 0; k < da; ++k) {
            for (int j = 0; j < db; ++j) {
                for (int l = 0; l < db; ++l) {
                    out(i * db + j, k * db + l) = a.matrix()(i, k) * b.matrix()(j, l);
                }
            }
        }
    }
    return Operator(std::move(out));
}

Cx inner_product(const Ket& a, const Ket& b) {
    if (a.dim() != b.dim()) {
        throw ContractViolation("inner_product: dimension mismatch");
    }
    return a.amps().dot(b.amps());
}

double ray_fidelity(const Ket& a, const Ket& b) {
    const double na = a.amps().squaredNorm();
    const double nb = b.amps().squaredNorm();
    if (na <= 0.0 || nb <= 0.0) {
        throw ContractViolation("ray_fidelity: zero-norm state");
    }
    return std::norm(inner_product(a, b)) / (na * nb);
}

double purity(const DensityMatrix& rho) {
    const Cx tr = (rho.matrix() * rho.matrix()).trace();
    return tr.real();
}

double fidelity_pure(const Ket& psi, const DensityMatrix& rho) {
    if (psi.dim() != rho.dim()) {
        throw ContractViolation("fidelity_pure: dimension mismatch");
    }
    if (!psi.is_normalized()) {
        throw ContractViolation("fidelity_pure: target state not normalized");
    }
    const Cx v = (psi.amps().adjoint() * rho.matrix() * psi.amps()).value();
    return v.real();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) {
        throw ContractViolation("trace_distance: dimension mismatch");
    }
    Eigen::SelfAdjointEigenSolver<Mat> solver(a.matrix() - b.matrix());
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

bool assert_unitary(const Operator& op, double tol) {
    if (tol <= 0.0) {
        throw ContractViolation("assert_unitary: tolerance must be positive");
    }
    const Mat residual =
        op.matrix().adjoint() * op.matrix() - Mat::Identity(op.dim(), op.dim());
    return max_abs(residual) <= tol;
}

double max_abs(const Mat& m) {
    return m.cwiseAbs().maxCoeff();
}

}  // namespace ssbsim
