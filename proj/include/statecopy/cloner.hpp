#pragma once

// State-dependent copying.
//
// Given orthonormal bases {|psi_i>} of the system space and {|A_i>} of an
// equally sized ancilla space, the copy unitary U is fixed by
//
//     U (|psi_i> (x) |A_j>) = |psi_i> (x) |psi_j>     for all i, j.
//
// With the ancilla preparation map V|psi_i> = |A_i>, an input |Psi> is copied
// exactly when the ancilla is prepared as V|Psi>:
//
//     U (|Psi> (x) V|Psi>) = |Psi> (x) |Psi>.
//
// Structurally U = I (x) V^dagger, so the copying content lives entirely in
// the state-dependent ancilla. A fixed ancilla |A_k> instead produces
// |Psi> (x) |psi_k>, which is a copy only when |Psi> ~ |psi_k>.

#include <string>
#include <vector>

#include "statecopy/state.hpp"

namespace statecopy {

class CopyBasis {
public:
    /// Throws ValidationError unless both lists hold n orthonormal kets of
    /// dimension n (Gram matrix within `tol` of the identity).
    CopyBasis(std::vector<Ket> system_basis, std::vector<Ket> ancilla_basis, double tol = kDefaultTol);

    /// Computational basis for both factors (V = I).
    static CopyBasis computational(std::size_t n);
    /// System basis = computational, ancilla basis = columns of `w` (V = W).
    static CopyBasis from_ancilla_unitary(const OperatorMatrix& w);
    /// System basis = columns of `s`, ancilla basis = columns of `a`.
    static CopyBasis from_columns(const OperatorMatrix& s, const OperatorMatrix& a);

    std::size_t dim() const noexcept { return system_.size(); }
    const std::vector<Ket>& system_basis() const noexcept { return system_; }
    const std::vector<Ket>& ancilla_basis() const noexcept { return ancilla_; }

private:
    std::vector<Ket> system_;
    std::vector<Ket> ancilla_;
};

struct CloneReport {
    Ket input;
    Ket ancilla;
    Ket output;
    Ket target;
    double fidelity = 0.0;
    bool matched = false;
    /// Norm of the caller's input before renormalization.
    double input_norm = 1.0;
    std::vector<std::string> warnings;
};

/// Inputs whose norm deviates from one by more than this are renormalized
/// with a warning attached to the report.
inline constexpr double kRenormalizeWarnThreshold = 1e-6;

/// V = sum_i |A_i><psi_i|.
OperatorMatrix ancilla_prep_map(const CopyBasis& basis);

/// U = sum_ij |psi_i psi_j><psi_i A_j|, checked unitary.
OperatorMatrix build_copy_unitary(const CopyBasis& basis);

/// Holds V and U for one basis so repeated clones avoid rebuilding them.
class StateDependentCopier {
public:
    explicit StateDependentCopier(CopyBasis basis);

    const CopyBasis& basis() const noexcept { return basis_; }
    const OperatorMatrix& prep_map() const noexcept { return v_; }
    const OperatorMatrix& copy_unitary() const noexcept { return u_; }

    /// Prepares |A_Psi> = V|Psi> and applies U to |Psi> (x) |A_Psi>.
    CloneReport clone(const Ket& input) const;

    /// Applies U to |Psi> (x) |ancilla> for an externally prepared ancilla;
    /// `matched` reports whether it coincides with V|Psi> up to phase.
    CloneReport clone_with_ancilla(const Ket& input, const Ket& ancilla, double tol = kDefaultTol) const;

    /// Applies U to |Psi> (x) |A_k> with the ancilla held fixed.
    /// Throws std::out_of_range when k >= n.
    CloneReport clone_with_fixed_ancilla(const Ket& input, std::size_t k) const;

private:
    CloneReport run(const Ket& input, const Ket& ancilla, bool matched, double norm,
                    std::vector<std::string> warnings) const;

    CopyBasis basis_;
    OperatorMatrix v_;
    OperatorMatrix u_;
};

CloneReport clone(const Ket& input, const CopyBasis& basis);
CloneReport clone_with_fixed_ancilla(const Ket& input, std::size_t fixed_ancilla_index,
                                     const CopyBasis& basis);

enum class WitnessVerdict { Consistent, Contradiction };

struct OverlapWitness {
    cplx overlap;
    double residual;  // |s - s^2|
    WitnessVerdict verdict;
};

/// If one unitary with a fixed ancilla cloned two states with overlap s, then
/// unitarity would force s = s^2, i.e. s in {0, 1}. Reports which case holds.
/// Throws std::invalid_argument when |s| > 1.
OverlapWitness no_cloning_overlap_witness(cplx s, double tol = 1e-12);

const char* to_string(WitnessVerdict v) noexcept;

}  // namespace statecopy
