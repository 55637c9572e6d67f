#pragma once

// Atom-photon layer: dipole transition amplitudes, the interaction
// Hamiltonian on a truncated Fock space, the clonable polarization domain,
// the adaptive (excited-manifold) ancilla and the spontaneous-emission
// contrast.
//
// Conventions
//   * Spherical polarization vectors: e_0 = z, e_{+1} = -(x + i y)/sqrt 2,
//     e_{-1} = (x - i y)/sqrt 2.
//   * The amplitude for |e> -> |g> with emission into mode q is the angular
//     matrix element <g| conj(e_q) . r_hat |e> times the radial factor of e.
//     It is nonzero iff l_e = l_g +- 1 and m_e - m_g = q.
//   * Atom basis order: ground first, then the excited levels in the order
//     given. Fock multi-index: first mode most significant.

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "statecopy/cloner.hpp"
#include "statecopy/state.hpp"
#include "statecopy/symmetry.hpp"

namespace statecopy {

/// The photon has amplitude on a component the atom cannot emit into.
class DomainViolation : public std::runtime_error {
public:
    DomainViolation(const std::string& message, std::string component)
        : std::runtime_error(message), component_(std::move(component)) {}
    const std::string& component() const noexcept { return component_; }

private:
    std::string component_;
};

/// Threshold below which an amplitude counts as zero.
inline constexpr double kAmplitudeZeroTol = 1e-12;
/// A photon lies in the clonable domain iff its norm outside the domain span
/// is below this.
inline constexpr double kDomainTol = 1e-9;

class AtomicLevel {
public:
    /// Throws ValidationError for l < 0 or |m| > l.
    AtomicLevel(std::string label, int l, int m, double energy = 0.0);

    const std::string& label() const noexcept { return label_; }
    int l() const noexcept { return l_; }
    int m() const noexcept { return m_; }
    double energy() const noexcept { return energy_; }
    Parity parity() const noexcept { return l_ % 2 == 0 ? Parity::Even : Parity::Odd; }
    IrrepLabel irrep() const { return IrrepLabel(l_, parity()); }

    friend bool operator==(const AtomicLevel&, const AtomicLevel&) = default;

private:
    std::string label_;
    int l_;
    int m_;
    double energy_;
};

class AtomicSystem {
public:
    /// Missing radial factors default to 1. Throws ValidationError for an
    /// empty manifold, duplicate labels, non-positive radial factors, or
    /// radial factors keyed by unknown labels.
    AtomicSystem(AtomicLevel ground, std::vector<AtomicLevel> excited,
                 std::map<std::string, double> radial_factors = {});

    const AtomicLevel& ground() const noexcept { return ground_; }
    const std::vector<AtomicLevel>& excited() const noexcept { return excited_; }
    const std::map<std::string, double>& radial_factors() const noexcept { return radial_; }

    std::size_t excited_count() const noexcept { return excited_.size(); }
    /// Throws std::out_of_range for an unknown label.
    std::size_t excited_index(const std::string& label) const;
    const AtomicLevel& excited_level(const std::string& label) const { return excited_[excited_index(label)]; }
    double radial_factor(const std::string& label) const { return radial_.at(label); }

private:
    AtomicLevel ground_;
    std::vector<AtomicLevel> excited_;
    std::map<std::string, double> radial_;
};

class PolarizationMode {
public:
    static PolarizationMode sigma_minus();
    static PolarizationMode pi();
    static PolarizationMode sigma_plus();
    /// q in {-1, 0, +1}; throws std::invalid_argument otherwise.
    static PolarizationMode from_component(int q);
    /// "sigma-", "pi", "sigma+"; throws std::invalid_argument otherwise.
    static PolarizationMode from_label(const std::string& label);

    const std::string& label() const noexcept { return label_; }
    int q() const noexcept { return q_; }
    const std::array<cplx, 3>& cartesian() const noexcept { return vec_; }

    friend bool operator==(const PolarizationMode& a, const PolarizationMode& b) { return a.q_ == b.q_; }

private:
    PolarizationMode(std::string label, int q, std::array<cplx, 3> vec)
        : label_(std::move(label)), q_(q), vec_(vec) {}

    std::string label_;
    int q_;
    std::array<cplx, 3> vec_;
};

/// {sigma-, pi, sigma+}.
std::vector<PolarizationMode> spherical_basis();

/// <l_g m_g| conj(e_q) . r_hat |l_e m_e> over the unit sphere, from the
/// Wigner-Eckart factorization
///   (-1)^q sqrt((2 l_e + 1)/(2 l_g + 1)) <l_e 0; 1 0|l_g 0> <l_e m_e; 1 -q|l_g m_g>.
double dipole_angular_factor(int l_g, int m_g, int l_e, int m_e, int q);

/// Emission amplitude for e -> g into `pol`. Throws std::out_of_range when
/// `e` is not in the excited manifold.
cplx transition_amplitude(const AtomicSystem& system, const AtomicLevel& e, const PolarizationMode& pol);

/// Rows: modes, columns: excited levels.
CMatrix amplitude_matrix(const AtomicSystem& system, const std::vector<PolarizationMode>& modes);

// ---------------------------------------------------------------- Fock space

/// Occupations per mode, each in [0, n_max].
struct FockLabel {
    std::map<std::string, int> occupations;
};

class FockSpace {
public:
    /// Throws std::invalid_argument for empty modes or n_max < 1.
    FockSpace(std::vector<PolarizationMode> modes, int n_max);

    const std::vector<PolarizationMode>& modes() const noexcept { return modes_; }
    int n_max() const noexcept { return n_max_; }
    std::size_t dim() const noexcept { return dim_; }

    std::size_t index(const FockLabel& label) const;
    FockLabel label(std::size_t index) const;
    std::vector<int> occupations(std::size_t index) const;
    std::size_t index(const std::vector<int>& occupations) const;

private:
    std::vector<PolarizationMode> modes_;
    int n_max_;
    std::size_t dim_;
};

enum class CouplingScheme {
    /// Keeps only excitation-conserving terms: M sigma_ge a^dagger + h.c.
    RotatingWave,
    /// -(M sigma_ge + M^* sigma_eg) (x) (a + a^dagger) per mode.
    Full,
};

struct InteractionHamiltonian {
    OperatorMatrix matrix;
    std::vector<std::string> atom_labels;  // ground first
    FockSpace fock;

    std::size_t index(std::size_t atom_index, const std::vector<int>& occupations) const {
        return atom_index * fock.dim() + fock.index(occupations);
    }
    /// Diagonal (atom excitation + total photon number) on the same basis.
    CMatrix excitation_number() const;
};

/// Default Fock truncation.
inline constexpr int kDefaultNMax = 2;

InteractionHamiltonian build_interaction_hamiltonian(const AtomicSystem& system,
                                                     const std::vector<PolarizationMode>& modes,
                                                     int n_max = kDefaultNMax,
                                                     CouplingScheme scheme = CouplingScheme::RotatingWave);

// ---------------------------------------------------------------- domain

struct ClonableDomain {
    /// Polarization space the domain is expressed in.
    std::vector<PolarizationMode> space;
    /// Modes with at least one nonzero amplitude.
    std::vector<PolarizationMode> modes;
    /// Orthonormal basis of span(modes), as kets over `space`.
    std::vector<Ket> basis;

    std::size_t dimension() const noexcept { return basis.size(); }
    /// Norm of the component of `photon` orthogonal to the domain span.
    double outside_norm(const Ket& photon) const;
    bool contains(const Ket& photon, double tol = kDomainTol) const { return outside_norm(photon) < tol; }
};

ClonableDomain clonable_domain(const AtomicSystem& system,
                               const std::vector<PolarizationMode>& space = spherical_basis());

// ---------------------------------------------------------------- adaptive ancilla

/// Photon basis plus the excited level each photon mode drives.
struct ModeMap {
    std::vector<PolarizationMode> modes;
    std::map<std::size_t, std::string> targets;

    /// Throws ValidationError when indices are out of range, labels are
    /// unknown, or two modes share a target.
    void validate(const AtomicSystem& system) const;

    /// Greedy map: each mode, in order, takes the first unused excited level
    /// with a nonzero amplitude for it; modes with none stay unmapped.
    static ModeMap matching(const AtomicSystem& system, std::vector<PolarizationMode> modes = spherical_basis());
};

/// |A_gamma> = sum_j alpha_j |e_j>, a ket over the whole excited manifold.
/// Throws DomainViolation (naming the mode) when the photon carries weight
/// >= kDomainTol on modes that are unmapped or whose mapped transition is
/// forbidden; DimensionMismatch when the photon does not match the mode list.
Ket adaptive_ancilla(const Ket& photon, const AtomicSystem& system, const ModeMap& map);

struct StimulatedCloneReport {
    CloneReport clone;
    /// Physical ancilla over the full excited manifold.
    Ket manifold_ancilla;
    /// Modes and levels spanning the copy space, in copy-basis order.
    std::vector<std::string> active_modes;
    std::vector<std::string> active_levels;
    /// Copy basis used (system: active modes, ancilla: active levels).
    CopyBasis basis;
    /// Photon restricted to the active modes.
    Ket photon;
};

/// Forms the adaptive ancilla and applies the copy unitary of the basis
/// {mode_i} / {|e_map(i)>} restricted to the active (mapped, allowed) modes.
StimulatedCloneReport stimulated_clone(const Ket& photon, const AtomicSystem& system, const ModeMap& map);

// ---------------------------------------------------------------- spontaneous emission

/// Uniform mixture over the excited manifold.
DensityMatrix isotropic_ensemble(const AtomicSystem& system);

/// Photon polarization state after decay into the vacuum, which couples to
/// every mode in `modes` with equal weight:
///   rho_photon = M rho_atom M^dagger / tr(M rho_atom M^dagger).
/// Throws DomainViolation when no decay channel is open.
DensityMatrix spontaneous_emission_output(const AtomicSystem& system, const DensityMatrix& excited_state,
                                          const std::vector<PolarizationMode>& modes = spherical_basis());
DensityMatrix spontaneous_emission_output(const AtomicSystem& system, const Ket& excited_state,
                                          const std::vector<PolarizationMode>& modes = spherical_basis());

}  // namespace statecopy
