#include "statecopy/emission.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace statecopy {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

}  // namespace

// ---------------------------------------------------------------- levels

AtomicLevel::AtomicLevel(std::string label, int l, int m, double energy)
    : label_(std::move(label)), l_(l), m_(m), energy_(energy) {
    if (label_.empty()) throw ValidationError("AtomicLevel: empty label");
    if (l_ < 0) throw ValidationError("AtomicLevel " + label_ + ": l must be non-negative");
    if (std::abs(m_) > l_) throw ValidationError("AtomicLevel " + label_ + ": |m| must not exceed l");
    if (!std::isfinite(energy_)) throw ValidationError("AtomicLevel " + label_ + ": non-finite energy");
}

AtomicSystem::AtomicSystem(AtomicLevel ground, std::vector<AtomicLevel> excited,
                           std::map<std::string, double> radial_factors)
    : ground_(std::move(ground)), excited_(std::move(excited)), radial_(std::move(radial_factors)) {
    if (excited_.empty()) throw ValidationError("AtomicSystem: excited manifold is empty");
    std::set<std::string> labels{ground_.label()};
    for (const auto& e : excited_)
        if (!labels.insert(e.label()).second) throw ValidationError("AtomicSystem: duplicate label " + e.label());
    for (const auto& [label, value] : radial_) {
        if (label == ground_.label() || !labels.contains(label))
            throw ValidationError("AtomicSystem: radial factor for unknown excited level " + label);
        if (!(value > 0.0) || !std::isfinite(value))
            throw ValidationError("AtomicSystem: radial factor for " + label + " must be positive");
    }
    for (const auto& e : excited_) radial_.try_emplace(e.label(), 1.0);
}

std::size_t AtomicSystem::excited_index(const std::string& label) const {
    for (std::size_t i = 0; i < excited_.size(); ++i)
        if (excited_[i].label() == label) return i;
    throw std::out_of_range("AtomicSystem: no excited level labeled " + label);
}

// ---------------------------------------------------------------- polarization

PolarizationMode PolarizationMode::sigma_minus() {
    const double s = 1.0 / std::numbers::sqrt2;
    return {"sigma-", -1, {cplx(s, 0), cplx(0, -s), cplx(0, 0)}};
}

PolarizationMode PolarizationMode::pi() { return {"pi", 0, {cplx(0, 0), cplx(0, 0), cplx(1, 0)}}; }

PolarizationMode PolarizationMode::sigma_plus() {
    const double s = 1.0 / std::numbers::sqrt2;
    return {"sigma+", 1, {cplx(-s, 0), cplx(0, -s), cplx(0, 0)}};
}

PolarizationMode PolarizationMode::from_component(int q) {
    switch (q) {
        case -1: return sigma_minus();
        case 0: return pi();
        case 1: return sigma_plus();
        default: break;
    }
    throw std::invalid_argument("PolarizationMode: spherical component must be -1, 0 or +1");
}

PolarizationMode PolarizationMode::from_label(const std::string& label) {
    if (label == "sigma-") return sigma_minus();
    if (label == "pi") return pi();
    if (label == "sigma+") return sigma_plus();
    throw std::invalid_argument("PolarizationMode: unknown label '" + label + "'");
}

std::vector<PolarizationMode> spherical_basis() {
    return {PolarizationMode::sigma_minus(), PolarizationMode::pi(), PolarizationMode::sigma_plus()};
}

// ---------------------------------------------------------------- amplitudes

double dipole_angular_factor(int l_g, int m_g, int l_e, int m_e, int q) {
    if (q < -1 || q > 1) throw std::invalid_argument("dipole_angular_factor: q must be -1, 0 or +1");
    const double reduced = clebsch_gordan(l_e, 0, 1, 0, l_g, 0);
    if (reduced == 0.0) return 0.0;
    const double coupling = clebsch_gordan(l_e, m_e, 1, -q, l_g, m_g);
    if (coupling == 0.0) return 0.0;
    const double sign = (q % 2 == 0) ? 1.0 : -1.0;
    return sign * std::sqrt((2.0 * l_e + 1.0) / (2.0 * l_g + 1.0)) * reduced * coupling;
}

cplx transition_amplitude(const AtomicSystem& system, const AtomicLevel& e, const PolarizationMode& pol) {
    const AtomicLevel& known = system.excited_level(e.label());
    if (!(known == e)) throw std::out_of_range("transition_amplitude: level " + e.label() + " differs from the system's");
    const AtomicLevel& g = system.ground();
    return system.radial_factor(e.label()) * dipole_angular_factor(g.l(), g.m(), e.l(), e.m(), pol.q());
}

CMatrix amplitude_matrix(const AtomicSystem& system, const std::vector<PolarizationMode>& modes) {
    CMatrix m(idx(modes.size()), idx(system.excited_count()));
    for (std::size_t r = 0; r < modes.size(); ++r)
        for (std::size_t c = 0; c < system.excited_count(); ++c)
            m(idx(r), idx(c)) = transition_amplitude(system, system.excited()[c], modes[r]);
    return m;
}

// ---------------------------------------------------------------- Fock space

FockSpace::FockSpace(std::vector<PolarizationMode> modes, int n_max) : modes_(std::move(modes)), n_max_(n_max) {
    if (modes_.empty()) throw std::invalid_argument("FockSpace: no modes");
    if (n_max_ < 1) throw std::invalid_argument("FockSpace: n_max must be at least 1");
    std::set<std::string> seen;
    for (const auto& m : modes_)
        if (!seen.insert(m.label()).second) throw std::invalid_argument("FockSpace: duplicate mode " + m.label());
    dim_ = 1;
    for (std::size_t i = 0; i < modes_.size(); ++i) dim_ *= static_cast<std::size_t>(n_max_ + 1);
}

std::size_t FockSpace::index(const std::vector<int>& occupations) const {
    if (occupations.size() != modes_.size()) throw DimensionMismatch("FockSpace: one occupation per mode required");
    std::size_t out = 0;
    for (int n : occupations) {
        if (n < 0 || n > n_max_) throw std::out_of_range("FockSpace: occupation outside [0, n_max]");
        out = out * static_cast<std::size_t>(n_max_ + 1) + static_cast<std::size_t>(n);
    }
    return out;
}

std::vector<int> FockSpace::occupations(std::size_t index) const {
    if (index >= dim_) throw std::out_of_range("FockSpace: index out of range");
    std::vector<int> occ(modes_.size());
    for (std::size_t k = modes_.size(); k-- > 0;) {
        occ[k] = static_cast<int>(index % static_cast<std::size_t>(n_max_ + 1));
        index /= static_cast<std::size_t>(n_max_ + 1);
    }
    return occ;
}

std::size_t FockSpace::index(const FockLabel& label) const {
    std::vector<int> occ(modes_.size(), 0);
    for (const auto& [name, n] : label.occupations) {
        auto it = std::find_if(modes_.begin(), modes_.end(), [&](const auto& m) { return m.label() == name; });
        if (it == modes_.end()) throw std::out_of_range("FockSpace: unknown mode " + name);
        occ[static_cast<std::size_t>(it - modes_.begin())] = n;
    }
    return index(occ);
}

FockLabel FockSpace::label(std::size_t index) const {
    FockLabel out;
    const auto occ = occupations(index);
    for (std::size_t k = 0; k < modes_.size(); ++k) out.occupations[modes_[k].label()] = occ[k];
    return out;
}

// ---------------------------------------------------------------- Hamiltonian

CMatrix InteractionHamiltonian::excitation_number() const {
    const std::size_t n_atom = atom_labels.size();
    CMatrix n = CMatrix::Zero(idx(n_atom * fock.dim()), idx(n_atom * fock.dim()));
    for (std::size_t a = 0; a < n_atom; ++a)
        for (std::size_t f = 0; f < fock.dim(); ++f) {
            const auto occ = fock.occupations(f);
            int total = a == 0 ? 0 : 1;
            for (int o : occ) total += o;
            n(idx(a * fock.dim() + f), idx(a * fock.dim() + f)) = static_cast<double>(total);
        }
    return n;
}

InteractionHamiltonian build_interaction_hamiltonian(const AtomicSystem& system,
                                                     const std::vector<PolarizationMode>& modes, int n_max,
                                                     CouplingScheme scheme) {
    FockSpace fock(modes, n_max);
    const std::size_t n_atom = 1 + system.excited_count();
    const std::size_t fd = fock.dim();
    CMatrix h = CMatrix::Zero(idx(n_atom * fd), idx(n_atom * fd));
    const CMatrix amps = amplitude_matrix(system, modes);

    for (std::size_t f = 0; f < fd; ++f) {
        const auto occ = fock.occupations(f);
        for (std::size_t k = 0; k < modes.size(); ++k) {
            const int n = occ[k];
            if (n >= n_max) continue;
            // a_k^dagger |.., n, ..> = sqrt(n+1) |.., n+1, ..>
            auto raised = occ;
            raised[k] = n + 1;
            const std::size_t f_up = fock.index(raised);
            const double ladder = std::sqrt(static_cast<double>(n + 1));
            for (std::size_t j = 0; j < system.excited_count(); ++j) {
                const cplx m = amps(idx(k), idx(j));
                if (m == cplx(0.0)) continue;
                const std::size_t e = 1 + j;
                // Emission: |e, n> -> |g, n+1> with amplitude M.
                const auto g_up = idx(0 * fd + f_up);
                const auto e_n = idx(e * fd + f);
                h(g_up, e_n) += -m * ladder;
                h(e_n, g_up) += -std::conj(m) * ladder;
                if (scheme == CouplingScheme::Full) {
                    // Counter-rotating: |g, n> -> |e, n+1> via sigma_eg a^dagger.
                    const auto e_up = idx(e * fd + f_up);
                    const auto g_n = idx(0 * fd + f);
                    h(e_up, g_n) += -std::conj(m) * ladder;
                    h(g_n, e_up) += -m * ladder;
                }
            }
        }
    }

    std::vector<std::string> labels{system.ground().label()};
    for (const auto& e : system.excited()) labels.push_back(e.label());
    return {OperatorMatrix::hermitian(std::move(h), 1e-12), std::move(labels), std::move(fock)};
}

// ---------------------------------------------------------------- domain

double ClonableDomain::outside_norm(const Ket& photon) const {
    if (photon.dim() != space.size())
        throw DimensionMismatch("ClonableDomain: photon dimension does not match the polarization space");
    CVector inside = CVector::Zero(photon.amplitudes().size());
    for (const auto& b : basis) inside += inner_product(b, photon) * b.amplitudes();
    return (photon.amplitudes() - inside).norm();
}

ClonableDomain clonable_domain(const AtomicSystem& system, const std::vector<PolarizationMode>& space) {
    ClonableDomain d{space, {}, {}};
    for (std::size_t k = 0; k < space.size(); ++k) {
        const bool allowed = std::any_of(system.excited().begin(), system.excited().end(), [&](const auto& e) {
            return std::abs(transition_amplitude(system, e, space[k])) > kAmplitudeZeroTol;
        });
        if (!allowed) continue;
        d.modes.push_back(space[k]);
        d.basis.push_back(Ket::basis("polarization", space.size(), k));
    }
    return d;
}

// ---------------------------------------------------------------- adaptive ancilla

void ModeMap::validate(const AtomicSystem& system) const {
    std::set<std::string> used;
    for (const auto& [k, label] : targets) {
        if (k >= modes.size()) throw ValidationError("ModeMap: mode index out of range");
        try {
            (void)system.excited_index(label);
        } catch (const std::out_of_range&) {
            throw ValidationError("ModeMap: unknown excited level " + label);
        }
        if (!used.insert(label).second) throw ValidationError("ModeMap: level " + label + " mapped twice");
    }
}

ModeMap ModeMap::matching(const AtomicSystem& system, std::vector<PolarizationMode> modes) {
    ModeMap map{std::move(modes), {}};
    std::set<std::string> used;
    for (std::size_t k = 0; k < map.modes.size(); ++k)
        for (const auto& e : system.excited()) {
            if (used.contains(e.label())) continue;
            if (std::abs(transition_amplitude(system, e, map.modes[k])) <= kAmplitudeZeroTol) continue;
            map.targets[k] = e.label();
            used.insert(e.label());
            break;
        }
    return map;
}

namespace {

// Modes that are mapped and whose mapped transition is allowed, in mode order.
std::vector<std::size_t> active_modes(const AtomicSystem& system, const ModeMap& map) {
    std::vector<std::size_t> out;
    for (const auto& [k, label] : map.targets) {
        const auto& e = system.excited_level(label);
        if (std::abs(transition_amplitude(system, e, map.modes[k])) > kAmplitudeZeroTol) out.push_back(k);
    }
    return out;
}

void check_domain(const Ket& photon, const AtomicSystem& system, const ModeMap& map,
                  const std::vector<std::size_t>& active) {
    if (photon.dim() != map.modes.size()) {
        std::ostringstream os;
        os << "photon dimension " << photon.dim() << " does not match the " << map.modes.size()
           << "-mode polarization basis";
        throw DimensionMismatch(os.str());
    }
    double outside = 0.0;
    std::size_t worst = map.modes.size();
    for (std::size_t k = 0; k < map.modes.size(); ++k) {
        if (std::find(active.begin(), active.end(), k) != active.end()) continue;
        const double w = std::norm(photon[k]);
        outside += w;
        if (worst == map.modes.size() || w > std::norm(photon[worst])) worst = k;
    }
    if (std::sqrt(outside) < kDomainTol) return;

    const std::string& name = map.modes[worst].label();
    std::ostringstream os;
    os << "photon component '" << name << "' lies outside the clonable domain";
    if (auto t = map.targets.find(worst); t != map.targets.end())
        os << " (transition " << t->second << " -> " << system.ground().label() << " is dipole-forbidden for "
           << name << ")";
    else
        os << " (no excited level is mapped to it)";
    throw DomainViolation(os.str(), name);
}

}  // namespace

Ket adaptive_ancilla(const Ket& photon, const AtomicSystem& system, const ModeMap& map) {
    map.validate(system);
    const auto active = active_modes(system, map);
    check_domain(photon, system, map, active);
    CVector a = CVector::Zero(idx(system.excited_count()));
    for (std::size_t k : active) a(idx(system.excited_index(map.targets.at(k)))) = photon[k];
    return Ket("excited", std::move(a)).normalized();
}

StimulatedCloneReport stimulated_clone(const Ket& photon, const AtomicSystem& system, const ModeMap& map) {
    Ket manifold = adaptive_ancilla(photon, system, map);
    const auto active = active_modes(system, map);
    const std::size_t k = active.size();

    // Copy-space coordinates: photon side in mode order, ancilla side in the
    // order the active levels appear in the excited manifold.
    std::vector<std::size_t> level_rows;
    for (std::size_t m : active) level_rows.push_back(system.excited_index(map.targets.at(m)));
    std::vector<std::size_t> sorted_rows = level_rows;
    std::sort(sorted_rows.begin(), sorted_rows.end());
    auto rank = [&](std::size_t row) {
        return static_cast<std::size_t>(std::lower_bound(sorted_rows.begin(), sorted_rows.end(), row) -
                                        sorted_rows.begin());
    };

    std::vector<Ket> sys_basis, anc_basis;
    CVector restricted(idx(k)), anc(idx(k));
    std::vector<std::string> mode_labels, level_labels;
    for (std::size_t i = 0; i < k; ++i) {
        sys_basis.push_back(Ket::basis("polarization", k, i));
        anc_basis.push_back(Ket::basis("excited", k, rank(level_rows[i])));
        restricted(idx(i)) = photon[active[i]];
        mode_labels.push_back(map.modes[active[i]].label());
        level_labels.push_back(map.targets.at(active[i]));
    }
    for (std::size_t r = 0; r < k; ++r) anc(idx(r)) = manifold[sorted_rows[r]];

    CopyBasis basis(std::move(sys_basis), std::move(anc_basis));
    Ket restricted_photon = Ket("polarization", std::move(restricted)).normalized();
    StateDependentCopier copier(basis);
    CloneReport report = copier.clone_with_ancilla(restricted_photon, Ket("excited", std::move(anc)));
    return {std::move(report), std::move(manifold), std::move(mode_labels), std::move(level_labels),
            std::move(basis), std::move(restricted_photon)};
}

// ---------------------------------------------------------------- spontaneous emission

DensityMatrix isotropic_ensemble(const AtomicSystem& system) {
    return DensityMatrix::maximally_mixed(system.excited_count());
}

DensityMatrix spontaneous_emission_output(const AtomicSystem& system, const DensityMatrix& excited_state,
                                          const std::vector<PolarizationMode>& modes) {
    if (excited_state.dim() != system.excited_count())
        throw DimensionMismatch("spontaneous_emission_output: state does not match the excited manifold");
    if (modes.empty()) throw std::invalid_argument("spontaneous_emission_output: no modes");
    const CMatrix m = amplitude_matrix(system, modes);
    const CMatrix out = m * excited_state.entries() * m.adjoint();
    const double total = out.trace().real();
    if (!(total > kAmplitudeZeroTol * kAmplitudeZeroTol))
        throw DomainViolation("no allowed decay channel into the selected polarization modes", "");
    return DensityMatrix(CMatrix(out / total));
}

DensityMatrix spontaneous_emission_output(const AtomicSystem& system, const Ket& excited_state,
                                          const std::vector<PolarizationMode>& modes) {
    return spontaneous_emission_output(system, DensityMatrix::pure(excited_state), modes);
}

}  // namespace statecopy
