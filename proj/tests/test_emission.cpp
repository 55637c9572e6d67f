#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "statecopy/cloner.hpp"
#include "statecopy/emission.hpp"
#include "statecopy/random.hpp"

using namespace statecopy;

namespace {

AtomicSystem p_manifold() {
    return AtomicSystem(AtomicLevel("1s", 0, 0), {AtomicLevel("2p-1", 1, -1), AtomicLevel("2p0", 1, 0), AtomicLevel("2p+1", 1, 1)});
}

std::vector<std::string> labels(const std::vector<PolarizationMode>& modes) {
    std::vector<std::string> out;
    for (const auto& m : modes) out.push_back(m.label());
    return out;
}

}  // namespace

// ---------- polarization / amplitudes ----------

TEST(Polarization, LabelsAndComponents) {
    EXPECT_EQ(PolarizationMode::from_label("sigma+").q(), 1);
    EXPECT_EQ(PolarizationMode::from_component(-1).label(), "sigma-");
    EXPECT_THROW(PolarizationMode::from_label("circular"), std::invalid_argument);
    EXPECT_THROW(PolarizationMode::from_component(2), std::invalid_argument);
    // Spherical unit vectors are orthonormal.
    const auto basis = spherical_basis();
    for (const auto& a : basis)
        for (const auto& b : basis) {
            cplx dot = 0.0;
            for (int c = 0; c < 3; ++c) dot += std::conj(a.cartesian()[c]) * b.cartesian()[c];
            EXPECT_NEAR(std::abs(dot - (a == b ? 1.0 : 0.0)), 0.0, 1e-15);
        }
}

TEST(TransitionAmplitude, Examples) {
    const AtomicSystem sys = p_manifold();
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    EXPECT_NEAR(std::abs(transition_amplitude(sys, sys.excited_level("2p+1"), PolarizationMode::sigma_plus())), inv_sqrt3, 1e-12);
    EXPECT_NEAR(std::abs(transition_amplitude(sys, sys.excited_level("2p0"), PolarizationMode::pi())), inv_sqrt3, 1e-12);
    EXPECT_EQ(transition_amplitude(sys, sys.excited_level("2p+1"), PolarizationMode::pi()), cplx(0.0));
    const AtomicSystem s_to_s(AtomicLevel("1s", 0, 0), {AtomicLevel("2s", 0, 0)});
    for (const auto& q : spherical_basis())
        EXPECT_EQ(transition_amplitude(s_to_s, s_to_s.excited_level("2s"), q), cplx(0.0));
    EXPECT_THROW(transition_amplitude(sys, AtomicLevel("3d", 2, 0), PolarizationMode::pi()), std::out_of_range);
}

TEST(TransitionAmplitude, RadialFactorScales) {
    const AtomicSystem sys(AtomicLevel("1s", 0, 0), {AtomicLevel("2p0", 1, 0)}, {{"2p0", 2.5}});
    EXPECT_NEAR(std::abs(transition_amplitude(sys, sys.excited_level("2p0"), PolarizationMode::pi())), 2.5 / std::sqrt(3.0), 1e-12);
    EXPECT_THROW(AtomicSystem(AtomicLevel("1s", 0, 0), {AtomicLevel("2p0", 1, 0)}, {{"2p0", -1.0}}), ValidationError);
}

TEST(TransitionAmplitude, AngularFactorMatchesQuadratureOracle) {
    for (int lg = 0; lg <= 2; ++lg)
        for (int le = 0; le <= 3; ++le)
            for (int mg = -lg; mg <= lg; ++mg)
                for (int me = -le; me <= le; ++me)
                    for (const auto& pol : spherical_basis()) {
                        const cplx ref = oracle::sphere_dipole_element(lg, mg, le, me, pol.cartesian());
                        const double got = dipole_angular_factor(lg, mg, le, me, pol.q());
                        EXPECT_NEAR(std::abs(got - ref), 0.0, 1e-10)
                            << "lg=" << lg << " mg=" << mg << " le=" << le << " me=" << me << " q=" << pol.q();
                    }
}

TEST(TransitionAmplitude, SelectionRuleBiconditional) {
    int mismatches = 0;
    for (int lg = 0; lg <= 3; ++lg)
        for (int le = 0; le <= 3; ++le)
            for (int mg = -lg; mg <= lg; ++mg)
                for (int me = -le; me <= le; ++me)
                    for (const auto& pol : spherical_basis()) {
                        const AtomicSystem sys(AtomicLevel("g", lg, mg), {AtomicLevel("e", le, me)});
                        const bool zero = std::abs(transition_amplitude(sys, sys.excited_level("e"), pol)) <= kAmplitudeZeroTol;
                        const auto& g = sys.ground();
                        const auto& e = sys.excited_level("e");
                        const bool allowed = contains_weight(g.irrep(), g.m(), e.irrep(), e.m(), photon_irrep(), -pol.q());
                        if (zero == allowed) ++mismatches;
                        // Nonzero requires Delta m = q and Delta l = +-1.
                        if (!zero) {
                            EXPECT_EQ(me - mg, pol.q());
                            EXPECT_EQ(std::abs(le - lg), 1);
                        }
                    }
    EXPECT_EQ(mismatches, 0);
}

TEST(AmplitudeMatrix, ShapeRowsModesColumnsLevels) {
    const AtomicSystem sys = p_manifold();
    const CMatrix m = amplitude_matrix(sys, spherical_basis());
    ASSERT_EQ(m.rows(), 3);
    ASSERT_EQ(m.cols(), 3);
    for (Eigen::Index r = 0; r < 3; ++r)
        for (Eigen::Index c = 0; c < 3; ++c) EXPECT_EQ(std::abs(m(r, c)) > 0.0, r == c) << r << c;
}

// ---------- Fock space / Hamiltonian ----------

TEST(FockSpace, IndexRoundTrip) {
    const FockSpace f(spherical_basis(), 2);
    EXPECT_EQ(f.dim(), 27u);
    for (std::size_t i = 0; i < f.dim(); ++i) {
        EXPECT_EQ(f.index(f.occupations(i)), i);
        EXPECT_EQ(f.index(f.label(i)), i);
    }
    EXPECT_EQ(f.index(std::vector<int>{1, 0, 0}), 9u);  // first mode most significant
    EXPECT_THROW(FockSpace(spherical_basis(), 0), std::invalid_argument);
}

TEST(Hamiltonian, SingleModeExampleIsFourByFour) {
    const AtomicSystem sys(AtomicLevel("1s", 0, 0), {AtomicLevel("2p0", 1, 0)});
    const auto h = build_interaction_hamiltonian(sys, {PolarizationMode::pi()}, 1);
    ASSERT_EQ(h.matrix.dim_out(), 4u);
    const double m = 1.0 / std::sqrt(3.0);
    // |e,0> <-> |g,1> with magnitude |M|, nothing else.
    EXPECT_NEAR(std::abs(h.matrix(h.index(0, {1}), h.index(1, {0}))), m, 1e-12);
    double other = 0.0;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            const bool coupled = (r == h.index(0, {1}) && c == h.index(1, {0})) || (c == h.index(0, {1}) && r == h.index(1, {0}));
            if (!coupled) other = std::max(other, std::abs(h.matrix(r, c)));
        }
    EXPECT_EQ(other, 0.0);
}

TEST(Hamiltonian, StimulatedLadderFactor) {
    const AtomicSystem sys(AtomicLevel("1s", 0, 0), {AtomicLevel("2p0", 1, 0)});
    const auto h = build_interaction_hamiltonian(sys, {PolarizationMode::pi()});
    const double single = std::abs(h.matrix(h.index(0, {1}), h.index(1, {0})));
    const double stimulated = std::abs(h.matrix(h.index(0, {2}), h.index(1, {1})));
    EXPECT_NEAR(stimulated, std::sqrt(2.0) * single, 1e-12);
}

TEST(Hamiltonian, HermitianForRandomSystems) {
    StateRng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const int lg = trial % 3;
        std::vector<AtomicLevel> excited;
        std::map<std::string, double> radial;
        for (int le = std::max(0, lg - 1); le <= lg + 1; ++le)
            for (int me = -le; me <= le; ++me) {
                const std::string label = "e" + std::to_string(le) + "_" + std::to_string(me);
                excited.emplace_back(label, le, me);
                radial[label] = 0.2 + rng.uniform();
            }
        const AtomicSystem sys(AtomicLevel("g", lg, 0), excited, radial);
        for (auto scheme : {CouplingScheme::RotatingWave, CouplingScheme::Full}) {
            const auto h = build_interaction_hamiltonian(sys, spherical_basis(), 2, scheme);
            EXPECT_LT(h.matrix.hermiticity_error(), 1e-12);
        }
    }
}

TEST(Hamiltonian, RotatingWaveConservesExcitations) {
    const AtomicSystem sys = p_manifold();
    const auto h = build_interaction_hamiltonian(sys, spherical_basis(), 2);
    const CMatrix n = h.excitation_number();
    const CMatrix comm = h.matrix.entries() * n - n * h.matrix.entries();
    EXPECT_LT(comm.cwiseAbs().maxCoeff(), 1e-10);

    // The full coupling does not commute, but its conserving part is exactly the RWA matrix.
    const auto full = build_interaction_hamiltonian(sys, spherical_basis(), 2, CouplingScheme::Full);
    const CMatrix full_comm = full.matrix.entries() * n - n * full.matrix.entries();
    EXPECT_GT(full_comm.cwiseAbs().maxCoeff(), 0.1);
    CMatrix conserving = full.matrix.entries();
    for (Eigen::Index r = 0; r < n.rows(); ++r)
        for (Eigen::Index c = 0; c < n.cols(); ++c)
            if (n(r, r) != n(c, c)) {
                if (std::abs(conserving(r, c)) > 0.0) EXPECT_EQ(std::abs(n(r, r) - n(c, c)), 2.0);
                conserving(r, c) = 0.0;
            }
    EXPECT_LT(max_abs_diff(conserving, h.matrix.entries()), 1e-12);
}

// ---------- clonable domain ----------

TEST(Domain, Examples) {
    EXPECT_EQ(labels(clonable_domain(p_manifold()).modes), (std::vector<std::string>{"sigma-", "pi", "sigma+"}));
    const AtomicSystem pi_only(AtomicLevel("1s", 0, 0), {AtomicLevel("2p0", 1, 0)});
    EXPECT_EQ(labels(clonable_domain(pi_only).modes), (std::vector<std::string>{"pi"}));
    const AtomicSystem plus_only(AtomicLevel("1s", 0, 0), {AtomicLevel("2p+1", 1, 1)});
    EXPECT_EQ(labels(clonable_domain(plus_only).modes), (std::vector<std::string>{"sigma+"}));
    const AtomicSystem s_to_s(AtomicLevel("1s", 0, 0), {AtomicLevel("2s", 0, 0)});
    EXPECT_EQ(clonable_domain(s_to_s).dimension(), 0u);
}

TEST(Domain, SpanMembership) {
    const AtomicSystem pair(AtomicLevel("1s", 0, 0), {AtomicLevel("2p+1", 1, 1), AtomicLevel("2p-1", 1, -1)});
    const ClonableDomain d = clonable_domain(pair);
    EXPECT_EQ(d.dimension(), 2u);
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_TRUE(d.contains(Ket("polarization", {r, 0.0, cplx(0.0, r)})));
    EXPECT_FALSE(d.contains(Ket("polarization", {0.0, 1.0, 0.0})));
    EXPECT_NEAR(d.outside_norm(Ket("polarization", {0.6, 0.8, 0.0})), 0.8, 1e-15);
}

// ---------- adaptive ancilla / stimulated clone ----------

TEST(AdaptiveAncilla, TransplantsAmplitudes) {
    const AtomicSystem sys = p_manifold();
    const ModeMap map = ModeMap::matching(sys);
    ASSERT_EQ(map.targets.size(), 3u);
    const Ket photon("polarization", {0.6, cplx(0.0, 0.8), 0.0});
    const Ket a = adaptive_ancilla(photon, sys, map);
    EXPECT_LT(max_abs_diff(a, Ket("excited", {0.6, cplx(0.0, 0.8), 0.0})), 1e-15);
}

TEST(AdaptiveAncilla, DomainViolationNamesComponent) {
    const AtomicSystem pi_only(AtomicLevel("1s", 0, 0), {AtomicLevel("2p0", 1, 0)});
    const ModeMap map = ModeMap::matching(pi_only);
    try {
        adaptive_ancilla(Ket("polarization", {0.0, 0.6, 0.8}), pi_only, map);
        FAIL() << "expected DomainViolation";
    } catch (const DomainViolation& e) {
        EXPECT_EQ(e.component(), "sigma+");
    }
    // A mapped but forbidden transition is also outside the domain.
    ModeMap wrong{spherical_basis(), {{0, "2p0"}}};
    EXPECT_THROW(adaptive_ancilla(Ket("polarization", {1.0, 0.0, 0.0}), pi_only, wrong), DomainViolation);
    EXPECT_THROW(adaptive_ancilla(Ket("polarization", {1.0, 0.0}), pi_only, map), DimensionMismatch);
}

TEST(ModeMap, ValidateRejectsBadMaps) {
    const AtomicSystem sys = p_manifold();
    EXPECT_THROW((ModeMap{spherical_basis(), {{5, "2p0"}}}.validate(sys)), ValidationError);
    EXPECT_THROW((ModeMap{spherical_basis(), {{0, "3d"}}}.validate(sys)), ValidationError);
    EXPECT_THROW((ModeMap{spherical_basis(), {{0, "2p0"}, {1, "2p0"}}}.validate(sys)), ValidationError);
}

TEST(StimulatedClone, CoincidesWithAbstractCloner) {
    // Excited levels listed out of mode order so the level permutation matters.
    const AtomicSystem sys(AtomicLevel("1s", 0, 0), {AtomicLevel("2p+1", 1, 1), AtomicLevel("2p-1", 1, -1), AtomicLevel("2p0", 1, 0)});
    const ModeMap map = ModeMap::matching(sys);
    StateRng rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const Ket photon = rng.ket(3, "polarization");
        const StimulatedCloneReport r = stimulated_clone(photon, sys, map);
        EXPECT_NEAR(r.clone.fidelity, 1.0, 1e-10);
        EXPECT_TRUE(r.clone.matched);
        const CloneReport abstract = clone(r.photon, r.basis);
        EXPECT_LT(max_abs_diff(r.clone.output, abstract.output), 1e-12);
        EXPECT_LT(max_abs_diff(r.clone.output, tensor_product(photon, photon)), 1e-12);
    }
}

TEST(StimulatedClone, SubdomainPhotonOnPartialManifold) {
    const AtomicSystem pair(AtomicLevel("1s", 0, 0), {AtomicLevel("2p+1", 1, 1), AtomicLevel("2p-1", 1, -1)});
    const ModeMap map = ModeMap::matching(pair);
    const double r = 1.0 / std::sqrt(2.0);
    const StimulatedCloneReport rep = stimulated_clone(Ket("polarization", {r, 0.0, -r}), pair, map);
    EXPECT_EQ(rep.active_modes, (std::vector<std::string>{"sigma-", "sigma+"}));
    EXPECT_EQ(rep.active_levels, (std::vector<std::string>{"2p-1", "2p+1"}));
    EXPECT_NEAR(rep.clone.fidelity, 1.0, 1e-10);
}

// ---------- spontaneous emission ----------

TEST(Spontaneous, IsotropicManifoldGivesMaximallyMixed) {
    const AtomicSystem sys = p_manifold();
    const DensityMatrix out = spontaneous_emission_output(sys, isotropic_ensemble(sys));
    EXPECT_LT(max_abs_diff(out.entries(), DensityMatrix::maximally_mixed(3).entries()), 1e-10);
    const DensityMatrix two = spontaneous_emission_output(sys, isotropic_ensemble(sys),
                                                          {PolarizationMode::sigma_plus(), PolarizationMode::sigma_minus()});
    EXPECT_LT(max_abs_diff(two.entries(), DensityMatrix::maximally_mixed(2).entries()), 1e-10);
}

TEST(Spontaneous, SingleLevelIsDeterministic) {
    const AtomicSystem pi_only(AtomicLevel("1s", 0, 0), {AtomicLevel("2p0", 1, 0)});
    const DensityMatrix out = spontaneous_emission_output(pi_only, Ket("excited", {1.0}));
    EXPECT_LT(max_abs_diff(out.entries(), DensityMatrix::pure(Ket::basis("polarization", 3, 1)).entries()), 1e-12);
    EXPECT_NEAR(out.purity(), 1.0, 1e-12);
}

TEST(Spontaneous, NoChannelThrows) {
    const AtomicSystem s_to_s(AtomicLevel("1s", 0, 0), {AtomicLevel("2s", 0, 0)});
    EXPECT_THROW(spontaneous_emission_output(s_to_s, isotropic_ensemble(s_to_s)), DomainViolation);
}

TEST(Spontaneous, RandomInputsGiveValidStates) {
    StateRng rng(31);
    const AtomicSystem sys(AtomicLevel("1s", 0, 0), {AtomicLevel("2p-1", 1, -1), AtomicLevel("2p0", 1, 0), AtomicLevel("2p+1", 1, 1)},
                           {{"2p-1", 0.5}, {"2p0", 1.0}, {"2p+1", 2.0}});
    for (int trial = 0; trial < 100; ++trial) {
        const DensityMatrix out = spontaneous_emission_output(sys, rng.ket(3, "excited"));
        EXPECT_NEAR(std::abs(out.trace() - 1.0), 0.0, 1e-12);
        EXPECT_LT((out.entries() - out.entries().adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    }
}
