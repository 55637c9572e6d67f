#include "statecopy/state.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace statecopy {

namespace {

std::string dims_message(const char* op, std::size_t a, std::size_t b) {
    std::ostringstream os;
    os << op << ": incompatible dimensions " << a << " and " << b;
    return os.str();
}

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

}  // namespace

// ---------------------------------------------------------------- Ket

Ket::Ket(std::string space_label, CVector amplitudes)
    : label_(std::move(space_label)), amps_(std::move(amplitudes)) {
    if (amps_.size() < 1) throw ValidationError("Ket: dimension must be at least 1");
    for (Eigen::Index i = 0; i < amps_.size(); ++i) {
        if (!std::isfinite(amps_(i).real()) || !std::isfinite(amps_(i).imag()))
            throw ValidationError("Ket: non-finite amplitude");
    }
}

Ket::Ket(std::string space_label, std::span<const cplx> amplitudes)
    : Ket(std::move(space_label),
          CVector(Eigen::Map<const CVector>(amplitudes.data(), idx(amplitudes.size())))) {}

Ket::Ket(std::string space_label, std::initializer_list<cplx> amplitudes)
    : Ket(std::move(space_label), std::span<const cplx>(amplitudes.begin(), amplitudes.size())) {}

Ket Ket::basis(std::string space_label, std::size_t dim, std::size_t index) {
    if (index >= dim) throw DimensionMismatch("Ket::basis: index out of range");
    CVector v = CVector::Zero(idx(dim));
    v(idx(index)) = 1.0;
    return Ket(std::move(space_label), std::move(v));
}

bool Ket::is_normalized(double tol) const { return std::abs(amps_.squaredNorm() - 1.0) < tol; }

Ket Ket::normalized() const {
    const double n = amps_.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw ValidationError("Ket: cannot normalize zero vector");
    return Ket(label_, CVector(amps_ / n));
}

Ket operator*(cplx scale, const Ket& k) { return Ket(k.space_label(), CVector(scale * k.amplitudes())); }

Ket operator+(const Ket& a, const Ket& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch(dims_message("Ket +", a.dim(), b.dim()));
    return Ket(a.space_label(), CVector(a.amplitudes() + b.amplitudes()));
}

// ---------------------------------------------------------------- OperatorMatrix

OperatorMatrix::OperatorMatrix(CMatrix entries) : m_(std::move(entries)) {
    if (m_.rows() < 1 || m_.cols() < 1) throw ValidationError("OperatorMatrix: empty matrix");
}

OperatorMatrix OperatorMatrix::identity(std::size_t dim) {
    return unitary(CMatrix::Identity(idx(dim), idx(dim)));
}

OperatorMatrix OperatorMatrix::unitary(CMatrix entries, double tol) {
    OperatorMatrix op(std::move(entries));
    const double err = op.unitarity_error();
    if (!(err < tol)) {
        std::ostringstream os;
        os << "OperatorMatrix: not unitary (max deviation " << err << ")";
        throw ValidationError(os.str());
    }
    op.unitary_ = true;
    op.hermitian_ = op.hermiticity_error() < tol;
    return op;
}

OperatorMatrix OperatorMatrix::hermitian(CMatrix entries, double tol) {
    OperatorMatrix op(std::move(entries));
    const double err = op.hermiticity_error();
    if (!(err < tol)) {
        std::ostringstream os;
        os << "OperatorMatrix: not hermitian (max deviation " << err << ")";
        throw ValidationError(os.str());
    }
    op.hermitian_ = true;
    return op;
}

double OperatorMatrix::unitarity_error() const {
    if (m_.rows() != m_.cols()) return std::numeric_limits<double>::infinity();
    const CMatrix d = m_.adjoint() * m_ - CMatrix::Identity(m_.rows(), m_.cols());
    return d.cwiseAbs().maxCoeff();
}

double OperatorMatrix::hermiticity_error() const {
    if (m_.rows() != m_.cols()) return std::numeric_limits<double>::infinity();
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

OperatorMatrix OperatorMatrix::adjoint() const {
    OperatorMatrix out(CMatrix(m_.adjoint()));
    out.unitary_ = unitary_;
    out.hermitian_ = hermitian_;
    return out;
}

// ---------------------------------------------------------------- DensityMatrix

DensityMatrix::DensityMatrix(CMatrix entries, double tol) : m_(std::move(entries)) {
    if (m_.rows() < 1 || m_.rows() != m_.cols())
        throw ValidationError("DensityMatrix: must be a non-empty square matrix");
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() >= tol)
        throw ValidationError("DensityMatrix: not hermitian");
    if (std::abs(m_.trace() - cplx(1.0)) >= tol) throw ValidationError("DensityMatrix: trace is not 1");
    // Symmetrize before the eigen-solve; the solver reads only one triangle.
    const CMatrix h = 0.5 * (m_ + m_.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol) throw ValidationError("DensityMatrix: negative eigenvalue");
}

DensityMatrix DensityMatrix::pure(const Ket& k) {
    const Ket n = k.normalized();
    return DensityMatrix(n.amplitudes() * n.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::mixture(std::span<const Ket> kets, std::span<const double> weights) {
    if (kets.empty() || kets.size() != weights.size())
        throw ValidationError("DensityMatrix::mixture: need one weight per ket");
    const std::size_t d = kets.front().dim();
    CMatrix acc = CMatrix::Zero(idx(d), idx(d));
    for (std::size_t i = 0; i < kets.size(); ++i) {
        if (kets[i].dim() != d) throw DimensionMismatch(dims_message("mixture", d, kets[i].dim()));
        if (weights[i] < 0.0) throw ValidationError("DensityMatrix::mixture: negative weight");
        const Ket n = kets[i].normalized();
        acc += weights[i] * (n.amplitudes() * n.amplitudes().adjoint());
    }
    return DensityMatrix(std::move(acc));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    if (dim < 1) throw ValidationError("DensityMatrix: dimension must be at least 1");
    return DensityMatrix(CMatrix(CMatrix::Identity(idx(dim), idx(dim)) / static_cast<double>(dim)));
}

// ---------------------------------------------------------------- operations

Ket tensor_product(const Ket& a, const Ket& b) {
    const auto da = a.amplitudes().size();
    const auto db = b.amplitudes().size();
    CVector out(da * db);
    for (Eigen::Index i = 0; i < da; ++i) out.segment(i * db, db) = a.amplitudes()(i) * b.amplitudes();
    return Ket(a.space_label() + "⊗" + b.space_label(), std::move(out));
}

OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b) {
    const CMatrix& x = a.entries();
    const CMatrix& y = b.entries();
    CMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index r = 0; r < x.rows(); ++r)
        for (Eigen::Index c = 0; c < x.cols(); ++c)
            out.block(r * y.rows(), c * y.cols(), y.rows(), y.cols()) = x(r, c) * y;
    return OperatorMatrix(std::move(out));
}

cplx inner_product(const Ket& a, const Ket& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch(dims_message("inner_product", a.dim(), b.dim()));
    return a.amplitudes().dot(b.amplitudes());  // Eigen's dot conjugates the left operand
}

double fidelity(const Ket& a, const Ket& b) { return std::norm(inner_product(a, b)); }

Ket apply(const OperatorMatrix& m, const Ket& k) {
    if (m.dim_in() != k.dim()) throw DimensionMismatch(dims_message("apply", m.dim_in(), k.dim()));
    return Ket(k.space_label(), CVector(m.entries() * k.amplitudes()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t dim_a, std::size_t dim_b,
                            Subsystem keep) {
    if (dim_a < 1 || dim_b < 1 || dim_a * dim_b != rho.dim())
        throw DimensionMismatch(dims_message("partial_trace", dim_a * dim_b, rho.dim()));
    const auto da = idx(dim_a);
    const auto db = idx(dim_b);
    const CMatrix& m = rho.entries();
    CMatrix out;
    if (keep == Subsystem::A) {
        out = CMatrix::Zero(da, da);
        for (Eigen::Index i = 0; i < da; ++i)
            for (Eigen::Index j = 0; j < da; ++j)
                for (Eigen::Index k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
    } else {
        out = CMatrix::Zero(db, db);
        for (Eigen::Index i = 0; i < db; ++i)
            for (Eigen::Index j = 0; j < db; ++j)
                for (Eigen::Index k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
    }
    return DensityMatrix(std::move(out));
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("max_abs_diff: shapes differ");
    return (a - b).cwiseAbs().maxCoeff();
}

double max_abs_diff(const Ket& a, const Ket& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch(dims_message("max_abs_diff", a.dim(), b.dim()));
    return (a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff();
}

}  // namespace statecopy
