#include "statecopy/cloner.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace statecopy {

namespace {

void check_orthonormal(const std::vector<Ket>& basis, std::size_t n, const char* which, double tol) {
    if (basis.size() != n) {
        std::ostringstream os;
        os << "CopyBasis: " << which << " basis has " << basis.size() << " elements, expected " << n;
        throw ValidationError(os.str());
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (basis[i].dim() != n) {
            std::ostringstream os;
            os << "CopyBasis: " << which << " basis element " << i << " has dimension " << basis[i].dim()
               << ", expected " << n;
            throw ValidationError(os.str());
        }
        for (std::size_t j = 0; j < n; ++j) {
            const cplx g = inner_product(basis[i], basis[j]);
            const double expected = i == j ? 1.0 : 0.0;
            if (std::abs(g - expected) >= tol) {
                std::ostringstream os;
                os << "CopyBasis: " << which << " basis is not orthonormal (Gram[" << i << "," << j
                   << "] = " << g << ")";
                throw ValidationError(os.str());
            }
        }
    }
}

std::vector<Ket> columns(const OperatorMatrix& m, const std::string& label) {
    std::vector<Ket> out;
    out.reserve(m.dim_in());
    for (Eigen::Index c = 0; c < m.entries().cols(); ++c) out.emplace_back(label, CVector(m.entries().col(c)));
    return out;
}

}  // namespace

CopyBasis::CopyBasis(std::vector<Ket> system_basis, std::vector<Ket> ancilla_basis, double tol)
    : system_(std::move(system_basis)), ancilla_(std::move(ancilla_basis)) {
    const std::size_t n = system_.size();
    if (n == 0) throw ValidationError("CopyBasis: empty basis");
    check_orthonormal(system_, n, "system", tol);
    check_orthonormal(ancilla_, n, "ancilla", tol);
}

CopyBasis CopyBasis::computational(std::size_t n) {
    return from_ancilla_unitary(OperatorMatrix::identity(n));
}

CopyBasis CopyBasis::from_ancilla_unitary(const OperatorMatrix& w) {
    return from_columns(OperatorMatrix::identity(w.dim_in()), w);
}

CopyBasis CopyBasis::from_columns(const OperatorMatrix& s, const OperatorMatrix& a) {
    return CopyBasis(columns(s, "S"), columns(a, "A"));
}

OperatorMatrix ancilla_prep_map(const CopyBasis& basis) {
    const auto n = static_cast<Eigen::Index>(basis.dim());
    CMatrix v = CMatrix::Zero(n, n);
    for (std::size_t i = 0; i < basis.dim(); ++i)
        v += basis.ancilla_basis()[i].amplitudes() * basis.system_basis()[i].amplitudes().adjoint();
    return OperatorMatrix::unitary(std::move(v));
}

OperatorMatrix build_copy_unitary(const CopyBasis& basis) {
    const std::size_t n = basis.dim();
    const auto n2 = static_cast<Eigen::Index>(n * n);
    CMatrix u = CMatrix::Zero(n2, n2);
    const auto& s = basis.system_basis();
    const auto& a = basis.ancilla_basis();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Ket in = tensor_product(s[i], a[j]);
            const Ket out = tensor_product(s[i], s[j]);
            u += out.amplitudes() * in.amplitudes().adjoint();
        }
    }
    return OperatorMatrix::unitary(std::move(u));
}

// ---------------------------------------------------------------- copier

StateDependentCopier::StateDependentCopier(CopyBasis basis)
    : basis_(std::move(basis)), v_(ancilla_prep_map(basis_)), u_(build_copy_unitary(basis_)) {}

CloneReport StateDependentCopier::run(const Ket& input, const Ket& ancilla, bool matched, double norm,
                                      std::vector<std::string> warnings) const {
    Ket output = apply(u_, tensor_product(input, ancilla)).relabeled("S⊗S");
    Ket target = tensor_product(input, input).relabeled("S⊗S");
    const double f = fidelity(target, output);
    return CloneReport{input, ancilla, std::move(output), std::move(target), f, matched, norm, std::move(warnings)};
}

namespace {

struct Prepared {
    Ket ket;
    double norm;
    std::vector<std::string> warnings;
};

Prepared prepare_input(const Ket& input, std::size_t n) {
    if (input.dim() != n) {
        std::ostringstream os;
        os << "clone: input dimension " << input.dim() << " does not match basis dimension " << n;
        throw DimensionMismatch(os.str());
    }
    const double norm = input.norm();
    std::vector<std::string> warnings;
    if (std::abs(norm - 1.0) > kRenormalizeWarnThreshold) {
        std::ostringstream os;
        os << "input norm " << norm << " renormalized to 1";
        warnings.push_back(os.str());
    }
    return {input.normalized(), norm, std::move(warnings)};
}

}  // namespace

CloneReport StateDependentCopier::clone(const Ket& input) const {
    auto p = prepare_input(input, basis_.dim());
    Ket ancilla = apply(v_, p.ket).relabeled("A");
    return run(p.ket, ancilla, true, p.norm, std::move(p.warnings));
}

CloneReport StateDependentCopier::clone_with_ancilla(const Ket& input, const Ket& ancilla, double tol) const {
    auto p = prepare_input(input, basis_.dim());
    if (ancilla.dim() != basis_.dim()) {
        std::ostringstream os;
        os << "clone_with_ancilla: ancilla dimension " << ancilla.dim() << " does not match basis dimension "
           << basis_.dim();
        throw DimensionMismatch(os.str());
    }
    const Ket a = ancilla.normalized().relabeled("A");
    const bool matched = fidelity(apply(v_, p.ket), a) > 1.0 - tol;
    return run(p.ket, a, matched, p.norm, std::move(p.warnings));
}

CloneReport StateDependentCopier::clone_with_fixed_ancilla(const Ket& input, std::size_t k) const {
    if (k >= basis_.dim()) {
        std::ostringstream os;
        os << "clone_with_fixed_ancilla: index " << k << " out of range for dimension " << basis_.dim();
        throw std::out_of_range(os.str());
    }
    auto p = prepare_input(input, basis_.dim());
    return run(p.ket, basis_.ancilla_basis()[k].relabeled("A"), false, p.norm, std::move(p.warnings));
}

CloneReport clone(const Ket& input, const CopyBasis& basis) { return StateDependentCopier(basis).clone(input); }

CloneReport clone_with_fixed_ancilla(const Ket& input, std::size_t fixed_ancilla_index, const CopyBasis& basis) {
    return StateDependentCopier(basis).clone_with_fixed_ancilla(input, fixed_ancilla_index);
}

// ---------------------------------------------------------------- witness

OverlapWitness no_cloning_overlap_witness(cplx s, double tol) {
    if (std::abs(s) > 1.0 + tol) throw std::invalid_argument("no_cloning_overlap_witness: |s| must be <= 1");
    const double residual = std::abs(s - s * s);
    return {s, residual, residual < tol ? WitnessVerdict::Consistent : WitnessVerdict::Contradiction};
}

const char* to_string(WitnessVerdict v) noexcept {
    return v == WitnessVerdict::Consistent ? "CONSISTENT" : "CONTRADICTION";
}

}  // namespace statecopy
