#pragma once

// Finite-dimensional Hilbert-space arithmetic: kets, dense operators,
// density matrices, tensor products, fidelity and partial traces.
//
// Composite spaces use first-factor-major (Kronecker) ordering: the
// amplitude of |i> (x) |j> in a (d_A x d_B) space sits at index i * d_B + j.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace statecopy {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kDefaultTol = 1e-10;

/// Operand shapes do not agree (kets of different dimension, matrix/ket
/// mismatch, subsystem dims that do not factor a composite dimension).
class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A value violates a structural invariant (non-normalizable ket, non-unitary
/// matrix flagged unitary, non-orthonormal basis, ...).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// State vector in a labeled finite-dimensional space. Not necessarily
/// normalized; call normalized() to obtain a unit-norm copy.
class Ket {
public:
    Ket(std::string space_label, CVector amplitudes);
    Ket(std::string space_label, std::span<const cplx> amplitudes);
    Ket(std::string space_label, std::initializer_list<cplx> amplitudes);

    static Ket basis(std::string space_label, std::size_t dim, std::size_t index);

    const std::string& space_label() const noexcept { return label_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }
    const CVector& amplitudes() const noexcept { return amps_; }
    cplx operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

    double norm() const { return amps_.norm(); }
    bool is_normalized(double tol = kDefaultTol) const;

    /// Throws ValidationError when the norm is zero (or not finite).
    Ket normalized() const;

    Ket relabeled(std::string space_label) const { return Ket(std::move(space_label), amps_); }

private:
    std::string label_;
    CVector amps_;
};

Ket operator*(cplx scale, const Ket& k);
Ket operator+(const Ket& a, const Ket& b);

/// Dense dim_out x dim_in complex matrix. The unitary/hermitian flags are
/// only set by the checked factories, so a flagged operator always satisfies
/// the corresponding property to the tolerance it was checked at.
class OperatorMatrix {
public:
    explicit OperatorMatrix(CMatrix entries);

    static OperatorMatrix identity(std::size_t dim);
    /// Throws ValidationError unless ||M^dagger M - I||_max < tol.
    static OperatorMatrix unitary(CMatrix entries, double tol = kDefaultTol);
    /// Throws ValidationError unless ||M - M^dagger||_max < tol.
    static OperatorMatrix hermitian(CMatrix entries, double tol = kDefaultTol);

    std::size_t dim_out() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    std::size_t dim_in() const noexcept { return static_cast<std::size_t>(m_.cols()); }
    const CMatrix& entries() const noexcept { return m_; }
    cplx operator()(std::size_t r, std::size_t c) const {
        return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }

    bool flagged_unitary() const noexcept { return unitary_; }
    bool flagged_hermitian() const noexcept { return hermitian_; }

    /// max |(M^dagger M - I)_ij|; +inf for non-square matrices.
    double unitarity_error() const;
    /// max |(M - M^dagger)_ij|; +inf for non-square matrices.
    double hermiticity_error() const;

    OperatorMatrix adjoint() const;

private:
    CMatrix m_;
    bool unitary_ = false;
    bool hermitian_ = false;
};

/// Unit-trace, Hermitian, positive semidefinite matrix.
class DensityMatrix {
public:
    /// Validates Hermiticity, trace and eigenvalue bounds to `tol`.
    explicit DensityMatrix(CMatrix entries, double tol = kDefaultTol);

    static DensityMatrix pure(const Ket& k);
    /// Probability-weighted mixture of pure states; weights must sum to one.
    static DensityMatrix mixture(std::span<const Ket> kets, std::span<const double> weights);
    static DensityMatrix maximally_mixed(std::size_t dim);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    const CMatrix& entries() const noexcept { return m_; }
    cplx operator()(std::size_t r, std::size_t c) const {
        return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }

    cplx trace() const { return m_.trace(); }
    double purity() const { return (m_ * m_).trace().real(); }

private:
    CMatrix m_;
};

enum class Subsystem { A, B };

Ket tensor_product(const Ket& a, const Ket& b);
OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b);

/// <a|b>, antilinear in the first argument.
cplx inner_product(const Ket& a, const Ket& b);

/// |<a|b>|^2. Inputs are expected to be normalized.
double fidelity(const Ket& a, const Ket& b);

Ket apply(const OperatorMatrix& m, const Ket& k);

/// Reduced state on the kept factor of a (d_A x d_B) composite.
DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t dim_a, std::size_t dim_b,
                            Subsystem keep);

/// max_ij |a_ij - b_ij|; throws DimensionMismatch when shapes differ.
double max_abs_diff(const CMatrix& a, const CMatrix& b);
double max_abs_diff(const Ket& a, const Ket& b);

}  // namespace statecopy
