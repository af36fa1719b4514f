#pragma once

#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "ssbsim/errors.hpp"

namespace ssbsim {

using Cx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

// Shared numerical tolerances. Statistical reconstructions may dip slightly
// below zero before PSD projection, hence the looser eigenvalue floor.
inline constexpr double kNormTol = 1e-12;
inline constexpr double kHermTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-12;
inline constexpr double kPsdFloor = -1e-10;

/// State vector over a 2- or 4-dimensional Hilbert space. Construction only
/// requires finite amplitudes; normalization is asserted where an operation
/// needs it, because intermediate products (projections) are unnormalized.
class Ket {
public:
    explicit Ket(Vec amps);

    static Ket basis(int dim, int index);

    int dim() const { return static_cast<int>(amps_.size()); }
    const Vec& amps() const { return amps_; }
    Cx amp(int k) const { return amps_(k); }

    double norm() const { return amps_.norm(); }
    bool is_normalized(double tol = kNormTol) const;
    Ket normalized() const;

private:
    Vec amps_;
};

/// Square complex matrix acting on kets of matching dimension.
class Operator {
public:
    explicit Operator(Mat entries);

    static Operator identity(int dim);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const Mat& matrix() const { return entries_; }
    Operator adjoint() const { return Operator(entries_.adjoint()); }

private:
    Mat entries_;
};

Operator operator*(const Operator& a, const Operator& b);
Operator operator+(const Operator& a, const Operator& b);

/// Hermitian, unit-trace, PSD matrix. Validation happens once at
/// construction; every instance in flight satisfies the invariants.
class DensityMatrix {
public:
    static DensityMatrix from_matrix(Mat entries);
    static DensityMatrix pure(const Ket& psi);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const Mat& matrix() const { return entries_; }

private:
    explicit DensityMatrix(Mat entries) : entries_(std::move(entries)) {}
    Mat entries_;
};

/// Matrix-vector product, deliberately not normalized: the unitary path must
/// never renormalize, the projective path must do so explicitly.
Ket apply_operator(const Operator& op, const Ket& ket);

/// Kronecker products in basis order {|00>, |01>, |10>, |11>}.
Ket tensor_product(const Ket& a, const Ket& b);
Operator tensor_product(const Operator& a, const Operator& b);

Cx inner_product(const Ket& a, const Ket& b);

/// |<a|b>|^2 scaled by both squared norms: global-phase and norm insensitive.
double ray_fidelity(const Ket& a, const Ket& b);

/// Tr(rho^2), in [1/dim, 1].
double purity(const DensityMatrix& rho);

/// <psi|rho|psi> for a normalized pure target.
double fidelity_pure(const Ket& psi, const DensityMatrix& rho);

/// (1/2) * sum of |eigenvalues| of (a - b).
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// True iff the max-entry deviation of op^dagger * op from identity is <= tol.
bool assert_unitary(const Operator& op, double tol);

/// Largest entrywise magnitude.
double max_abs(const Mat& m);

}  // namespace ssbsim
