#include "statecopy/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "statecopy/cloner.hpp"
#include "statecopy/config.hpp"
#include "statecopy/emission.hpp"
#include "statecopy/random.hpp"
#include "statecopy/symmetry.hpp"

namespace statecopy {

using nlohmann::json;

namespace {

constexpr double kFidelityTol = 1e-10;
constexpr double kStructureTol = 1e-12;

// ---------------------------------------------------------------- json helpers

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

json ket_json(const Ket& k) {
    json a = json::array();
    for (std::size_t i = 0; i < k.dim(); ++i) a.push_back(cjson(k[i]));
    return a;
}

json matrix_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(cjson(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

struct Checks {
    json items = json::array();
    bool all = true;

    void add(const std::string& name, bool passed, double value, double tolerance) {
        items.push_back({{"name", name}, {"passed", passed}, {"value", value}, {"tolerance", tolerance}});
        all = all && passed;
    }
    void add_flag(const std::string& name, bool passed) {
        items.push_back({{"name", name}, {"passed", passed}});
        all = all && passed;
    }
};

json make_report(const ExperimentSpec& spec, json inputs, json results, const Checks& checks, json table) {
    json r = {{"schema_version", kReportSchemaVersion},
              {"tool", "statecopy"},
              {"experiment", to_string(spec.kind)},
              {"inputs", std::move(inputs)},
              {"results", std::move(results)},
              {"checks", checks.items},
              {"passed", checks.all},
              {"table", std::move(table)}};
    if (spec.timestamp) {
        const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm tm{};
        gmtime_r(&now, &tm);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
        r["generated_at"] = buf;
    }
    return r;
}

json base_inputs(const ExperimentSpec& spec) {
    json in = {{"seed", spec.seed}};
    in["state"] = spec.state ? json(*spec.state) : json(nullptr);
    return in;
}

// ---------------------------------------------------------------- state parsing

std::string trim(std::string_view s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

double parse_real(const std::string& s, std::string_view whole) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last)
        throw UsageError("cannot parse complex number '" + std::string(whole) + "'");
    return v;
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

/// Named states ("uniform", "basis:K") or an amplitude list. Not normalized.
Ket parse_state(const std::string& text, std::size_t dim_hint, const std::string& label) {
    if (text == "uniform") return Ket(label, CVector(CVector::Ones(static_cast<Eigen::Index>(dim_hint))));
    if (text.rfind("basis:", 0) == 0) {
        std::size_t k = 0;
        const std::string num = text.substr(6);
        auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), k);
        if (ec != std::errc() || ptr != num.data() + num.size()) throw UsageError("bad basis state '" + text + "'");
        if (k >= dim_hint) throw DimensionMismatch("basis index " + std::to_string(k) + " out of range");
        return Ket::basis(label, dim_hint, k);
    }
    return parse_amplitudes(text, label);
}

// ---------------------------------------------------------------- system selection

SystemConfig load_system(const ExperimentSpec& spec, const char* default_preset) {
    if (spec.config_path) return load_system_config(*spec.config_path);
    return preset_system(spec.preset.value_or(default_preset));
}

json system_inputs(const ExperimentSpec& spec, const SystemConfig& cfg) {
    json in = base_inputs(spec);
    in["system"] = cfg.to_json();
    return in;
}

// ---------------------------------------------------------------- copy basis

OperatorMatrix ancilla_unitary(const std::string& kind, std::size_t n, StateRng& rng) {
    if (kind == "identity") return OperatorMatrix::identity(n);
    if (kind == "swap") {
        CMatrix p = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) p(static_cast<Eigen::Index>(n - 1 - i), static_cast<Eigen::Index>(i)) = 1.0;
        return OperatorMatrix::unitary(std::move(p));
    }
    if (kind == "random") return rng.unitary(n);
    throw UsageError("unknown ancilla basis '" + kind + "' (identity, swap, random)");
}

json amplitude_table(const Ket& output, const Ket& target, std::size_t n) {
    json rows = json::array();
    for (std::size_t idx = 0; idx < output.dim(); ++idx) {
        rows.push_back({idx / n, idx % n, output[idx].real(), output[idx].imag(), target[idx].real(),
                        target[idx].imag()});
    }
    return {{"columns", {"i", "j", "output_re", "output_im", "target_re", "target_im"}}, {"rows", rows}};
}

json clone_report_json(const CloneReport& r) {
    return {{"input", ket_json(r.input)},     {"ancilla", ket_json(r.ancilla)}, {"output", ket_json(r.output)},
            {"target", ket_json(r.target)},   {"fidelity", r.fidelity},         {"matched", r.matched},
            {"input_norm", r.input_norm},     {"warnings", r.warnings}};
}

struct CopySetup {
    StateDependentCopier copier;
    Ket input;
    json inputs;
};

CopySetup copy_setup(const ExperimentSpec& spec) {
    StateRng rng(spec.seed);
    std::optional<Ket> input;
    if (spec.state) input = parse_state(*spec.state, spec.dim, "S");
    const std::size_t n = input ? input->dim() : spec.dim;
    if (n < 1) throw ValidationError("dimension must be at least 1");
    OperatorMatrix w = ancilla_unitary(spec.ancilla_basis, n, rng);
    if (!input) input = rng.ket(n, "S");
    json inputs = base_inputs(spec);
    inputs["dim"] = n;
    inputs["ancilla_basis"] = spec.ancilla_basis;
    return {StateDependentCopier(CopyBasis::from_ancilla_unitary(w)), *input, std::move(inputs)};
}

// ---------------------------------------------------------------- experiments

json run_clone_demo(const ExperimentSpec& spec) {
    auto setup = copy_setup(spec);
    const auto& c = setup.copier;
    const std::size_t n = c.basis().dim();
    const CloneReport r = c.clone(setup.input);

    const OperatorMatrix expected = kron(OperatorMatrix::identity(n), c.prep_map().adjoint());
    const double unitarity = c.copy_unitary().unitarity_error();
    const double structure = max_abs_diff(c.copy_unitary().entries(), expected.entries());

    json results = clone_report_json(r);
    results["prep_map"] = matrix_json(c.prep_map().entries());
    results["copy_unitary_unitarity_error"] = unitarity;
    results["copy_unitary_structure_error"] = structure;

    Checks checks;
    checks.add("fidelity_is_one", std::abs(r.fidelity - 1.0) < kFidelityTol, r.fidelity, kFidelityTol);
    checks.add("copy_unitary_unitary", unitarity < kStructureTol, unitarity, kStructureTol);
    checks.add("copy_unitary_equals_identity_kron_prep_adjoint", structure < kStructureTol, structure, kStructureTol);
    return make_report(spec, setup.inputs, results, checks, amplitude_table(r.output, r.target, n));
}

json run_fixed_ancilla(const ExperimentSpec& spec) {
    auto setup = copy_setup(spec);
    const auto& c = setup.copier;
    const std::size_t n = c.basis().dim();
    setup.inputs["index"] = spec.index;
    const CloneReport r = c.clone_with_fixed_ancilla(setup.input, spec.index);
    const Ket& psi_k = c.basis().system_basis()[spec.index];
    const double predicted = fidelity(r.input, psi_k);
    const Ket expected_output = tensor_product(r.input, psi_k);
    const double output_err = max_abs_diff(r.output.amplitudes(), expected_output.amplitudes());
    const CloneReport matched = c.clone(setup.input);

    json results = clone_report_json(r);
    results["predicted_fidelity"] = predicted;
    results["matched_ancilla_fidelity"] = matched.fidelity;

    Checks checks;
    checks.add("fidelity_equals_overlap_with_fixed_basis_state", std::abs(r.fidelity - predicted) < kFidelityTol,
               std::abs(r.fidelity - predicted), kFidelityTol);
    checks.add("output_is_input_times_fixed_basis_state", output_err < kStructureTol, output_err, kStructureTol);
    checks.add("matched_ancilla_fidelity_is_one", std::abs(matched.fidelity - 1.0) < kFidelityTol, matched.fidelity,
               kFidelityTol);
    return make_report(spec, setup.inputs, results, checks, amplitude_table(r.output, r.target, n));
}

json run_no_cloning_witness(const ExperimentSpec& spec) {
    std::vector<cplx> overlaps;
    const bool grid = !spec.overlaps.has_value();
    if (grid) {
        if (spec.samples < 1) throw UsageError("samples must be positive");
        const int steps = spec.samples + 1;
        for (int k = 0; k <= steps; ++k) overlaps.emplace_back(static_cast<double>(k) / steps, 0.0);
    } else {
        for (const auto& piece : split(*spec.overlaps, ',')) overlaps.push_back(parse_complex(piece));
    }

    json rows = json::array();
    json witnesses = json::array();
    Checks checks;
    bool grid_ok = true;
    for (std::size_t i = 0; i < overlaps.size(); ++i) {
        const auto w = no_cloning_overlap_witness(overlaps[i]);
        witnesses.push_back(
            {{"overlap", cjson(w.overlap)}, {"residual", w.residual}, {"verdict", to_string(w.verdict)}});
        rows.push_back({w.overlap.real(), w.overlap.imag(), std::abs(w.overlap), w.residual, to_string(w.verdict)});
        if (grid) {
            const bool endpoint = i == 0 || i + 1 == overlaps.size();
            const auto want = endpoint ? WitnessVerdict::Consistent : WitnessVerdict::Contradiction;
            grid_ok = grid_ok && w.verdict == want;
        }
    }
    json inputs = base_inputs(spec);
    inputs["overlaps"] = spec.overlaps ? json(*spec.overlaps) : json(nullptr);
    inputs["samples"] = grid ? json(spec.samples) : json(nullptr);
    if (grid) checks.add_flag("interior_overlaps_contradict_and_endpoints_consistent", grid_ok);

    json results = {{"witnesses", witnesses}};
    json table = {{"columns", {"s_re", "s_im", "abs_s", "residual", "verdict"}}, {"rows", rows}};
    return make_report(spec, inputs, results, checks, table);
}

json run_selection_rules(const ExperimentSpec& spec) {
    const SystemConfig cfg = load_system(spec, "hydrogen-n2");
    const AtomicSystem& sys = cfg.system;
    const AtomicLevel& g = sys.ground();
    const IrrepLabel gamma = photon_irrep();

    json rows = json::array();
    json transitions = json::array();
    json by_mode = json::object();
    Checks checks;
    int mismatches = 0;
    for (const auto& mode : spherical_basis()) by_mode[mode.label()] = false;
    for (const auto& e : sys.excited()) {
        json channels = json::array();
        const bool irrep_ok = contains(g.irrep(), e.irrep(), gamma);
        for (const auto& mode : spherical_basis()) {
            const cplx amp = transition_amplitude(sys, e, mode);
            const bool allowed = std::abs(amp) > kAmplitudeZeroTol;
            const bool weight_ok = contains_weight(g.irrep(), g.m(), e.irrep(), e.m(), gamma, -mode.q());
            if (allowed != weight_ok) ++mismatches;
            if (allowed) {
                channels.push_back(mode.label());
                by_mode[mode.label()] = true;
            }
            rows.push_back({e.label(), e.l(), e.m(), mode.label(), mode.q(), amp.real(), amp.imag(), std::abs(amp),
                            allowed ? "allowed" : "forbidden", irrep_ok, weight_ok});
        }
        transitions.push_back({{"level", e.label()},
                               {"allowed", !channels.empty()},
                               {"channels", channels},
                               {"irrep_contains", irrep_ok}});
    }
    checks.add("amplitude_zero_iff_symmetry_forbids", mismatches == 0, mismatches, 0.0);

    json results = {{"ground", g.label()}, {"transitions", transitions}, {"by_mode", by_mode}};
    json table = {{"columns",
                   {"level", "l", "m", "mode", "q", "amp_re", "amp_im", "abs_amp", "status", "irrep_contains",
                    "weight_contains"}},
                  {"rows", rows}};
    return make_report(spec, system_inputs(spec, cfg), results, checks, table);
}

json run_domain(const ExperimentSpec& spec) {
    const SystemConfig cfg = load_system(spec, "p-manifold");
    const ClonableDomain d = clonable_domain(cfg.system, cfg.modes);

    json modes = json::array();
    for (const auto& m : d.modes) modes.push_back(m.label());
    json basis = json::array();
    for (const auto& b : d.basis) basis.push_back(ket_json(b));
    json rows = json::array();
    double gram_err = 0.0;
    for (std::size_t i = 0; i < d.basis.size(); ++i)
        for (std::size_t j = 0; j < d.basis.size(); ++j)
            gram_err = std::max(gram_err, std::abs(inner_product(d.basis[i], d.basis[j]) - cplx(i == j ? 1.0 : 0.0)));
    for (const auto& mode : cfg.modes) {
        double best = 0.0;
        for (const auto& e : cfg.system.excited()) best = std::max(best, std::abs(transition_amplitude(cfg.system, e, mode)));
        const bool in = std::find(d.modes.begin(), d.modes.end(), mode) != d.modes.end();
        rows.push_back({mode.label(), mode.q(), in, best});
    }
    Checks checks;
    checks.add("domain_basis_orthonormal", gram_err < kFidelityTol, gram_err, kFidelityTol);

    json space = json::array();
    for (const auto& m : d.space) space.push_back(m.label());
    json results = {{"space", space}, {"modes", modes}, {"dimension", d.dimension()}, {"basis", basis},
                    {"covers_full_space", d.dimension() == d.space.size()}};
    json table = {{"columns", {"mode", "q", "in_domain", "max_abs_amplitude"}}, {"rows", rows}};
    return make_report(spec, system_inputs(spec, cfg), results, checks, table);
}

json run_stimulated_clone(const ExperimentSpec& spec) {
    const SystemConfig cfg = load_system(spec, "p-manifold");
    const ModeMap map = cfg.effective_mode_map();
    Ket photon = [&] {
        if (spec.state) return parse_state(*spec.state, map.modes.size(), "polarization");
        // Random photon over the mapped, allowed modes only.
        StateRng rng(spec.seed);
        CVector v = CVector::Zero(static_cast<Eigen::Index>(map.modes.size()));
        for (const auto& [k, label] : map.targets) {
            const auto& e = cfg.system.excited_level(label);
            if (std::abs(transition_amplitude(cfg.system, e, map.modes[k])) > kAmplitudeZeroTol)
                v(static_cast<Eigen::Index>(k)) = rng.complex_gaussian();
        }
        if (v.norm() == 0.0) throw DomainViolation("the atom has no allowed mapped transition", "");
        return Ket("polarization", v).normalized();
    }();

    const StimulatedCloneReport r = stimulated_clone(photon, cfg.system, map);
    const CloneReport abstract = clone(r.photon, r.basis);
    const double path_diff = max_abs_diff(r.clone.output, abstract.output);

    json results = clone_report_json(r.clone);
    results["manifold_ancilla"] = ket_json(r.manifold_ancilla);
    results["active_modes"] = r.active_modes;
    results["active_levels"] = r.active_levels;
    results["abstract_path_max_abs_diff"] = path_diff;

    Checks checks;
    checks.add("fidelity_is_one", std::abs(r.clone.fidelity - 1.0) < kFidelityTol, r.clone.fidelity, kFidelityTol);
    checks.add("physical_and_abstract_paths_coincide", path_diff < kStructureTol, path_diff, kStructureTol);
    checks.add_flag("adaptive_ancilla_matches_prep_map", r.clone.matched);

    json inputs = system_inputs(spec, cfg);
    inputs["photon"] = ket_json(photon);
    return make_report(spec, inputs, results, checks,
                       amplitude_table(r.clone.output, r.clone.target, r.active_modes.size()));
}

json run_spontaneous(const ExperimentSpec& spec) {
    const SystemConfig cfg = load_system(spec, "p-manifold");
    const AtomicSystem& sys = cfg.system;
    const bool isotropic = !spec.state || *spec.state == "isotropic";
    const DensityMatrix atom = isotropic ? isotropic_ensemble(sys)
                                         : DensityMatrix::pure(parse_state(*spec.state, sys.excited_count(), "excited"));
    const DensityMatrix photon = spontaneous_emission_output(sys, atom, cfg.modes);

    const std::size_t d = photon.dim();
    const double mixed_dist = max_abs_diff(photon.entries(), DensityMatrix::maximally_mixed(d).entries());
    const double herm = (photon.entries() - photon.entries().adjoint()).cwiseAbs().maxCoeff();
    const double trace_err = std::abs(photon.trace() - cplx(1.0));

    Checks checks;
    checks.add("trace_is_one", trace_err < kFidelityTol, trace_err, kFidelityTol);
    checks.add("hermitian", herm < kFidelityTol, herm, kFidelityTol);
    if (isotropic) {
        // Equal vacuum weighting: diagonal with weights sum_j |M_qj|^2.
        const CMatrix m = amplitude_matrix(sys, cfg.modes);
        CMatrix expected = CMatrix::Zero(m.rows(), m.rows());
        for (Eigen::Index q = 0; q < m.rows(); ++q) expected(q, q) = m.row(q).squaredNorm();
        expected /= expected.trace();
        const double err = max_abs_diff(photon.entries(), expected);
        checks.add("isotropic_output_is_weighted_diagonal", err < kFidelityTol, err, kFidelityTol);
    }

    json rows = json::array();
    for (std::size_t r = 0; r < d; ++r) {
        json row = {cfg.modes[r].label()};
        for (std::size_t c = 0; c < d; ++c) row.push_back(std::abs(photon(r, c)));
        rows.push_back(row);
    }
    json columns = {"mode"};
    for (const auto& m : cfg.modes) columns.push_back("abs_" + m.label());

    json results = {{"modes", json::array()},
                    {"density_matrix", matrix_json(photon.entries())},
                    {"purity", photon.purity()},
                    {"max_abs_diff_from_maximally_mixed", mixed_dist},
                    {"maximally_mixed", mixed_dist < kFidelityTol},
                    {"isotropic", isotropic}};
    for (const auto& m : cfg.modes) results["modes"].push_back(m.label());
    return make_report(spec, system_inputs(spec, cfg), results, checks, {{"columns", columns}, {"rows", rows}});
}

// ---------------------------------------------------------------- rendering

std::string cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    if (v.is_number_float()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.10g", v.get<double>());
        return buf;
    }
    if (v.is_null()) return "";
    return v.dump();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    return out + "\"";
}

std::string render_csv(const json& report) {
    std::ostringstream os;
    const json& t = report.at("table");
    bool first = true;
    for (const auto& c : t.at("columns")) {
        os << (first ? "" : ",") << csv_escape(c.get<std::string>());
        first = false;
    }
    os << "\n";
    for (const auto& row : t.at("rows")) {
        first = true;
        for (const auto& v : row) {
            os << (first ? "" : ",") << csv_escape(cell(v));
            first = false;
        }
        os << "\n";
    }
    return os.str();
}

std::string render_table(const json& report) {
    const json& t = report.at("table");
    std::vector<std::vector<std::string>> grid;
    std::vector<std::string> header;
    for (const auto& c : t.at("columns")) header.push_back(c.get<std::string>());
    grid.push_back(header);
    for (const auto& row : t.at("rows")) {
        std::vector<std::string> r;
        for (const auto& v : row) r.push_back(cell(v));
        grid.push_back(r);
    }
    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& r : grid)
        for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());

    std::ostringstream os;
    os << "experiment: " << report.at("experiment").get<std::string>() << "\n";
    for (std::size_t r = 0; r < grid.size(); ++r) {
        for (std::size_t i = 0; i < grid[r].size(); ++i)
            os << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << grid[r][i];
        os << "\n";
        if (r == 0) {
            std::size_t total = 0;
            for (std::size_t w : width) total += w;
            os << std::string(total + 2 * (width.empty() ? 0 : width.size() - 1), '-') << "\n";
        }
    }
    os << "\n";
    for (const auto& c : report.at("checks")) {
        os << (c.at("passed").get<bool>() ? "[PASS] " : "[FAIL] ") << c.at("name").get<std::string>();
        if (c.contains("value")) os << "  (value " << cell(c.at("value")) << ", tolerance " << cell(c.at("tolerance")) << ")";
        os << "\n";
    }
    os << (report.at("passed").get<bool>() ? "all checks passed" : "some checks FAILED") << "\n";
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------- public

const char* to_string(ExperimentKind k) noexcept {
    switch (k) {
        case ExperimentKind::CloneDemo: return "clone-demo";
        case ExperimentKind::FixedAncilla: return "fixed-ancilla";
        case ExperimentKind::NoCloningWitness: return "no-cloning-witness";
        case ExperimentKind::SelectionRules: return "selection-rules";
        case ExperimentKind::Domain: return "domain";
        case ExperimentKind::StimulatedClone: return "stimulated-clone";
        case ExperimentKind::Spontaneous: return "spontaneous";
    }
    return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
    for (auto k : {ExperimentKind::CloneDemo, ExperimentKind::FixedAncilla, ExperimentKind::NoCloningWitness,
                   ExperimentKind::SelectionRules, ExperimentKind::Domain, ExperimentKind::StimulatedClone,
                   ExperimentKind::Spontaneous})
        if (name == to_string(k)) return k;
    throw UsageError("unknown experiment '" + std::string(name) + "'");
}

OutputFormat parse_output_format(std::string_view name) {
    if (name == "json") return OutputFormat::Json;
    if (name == "csv") return OutputFormat::Csv;
    if (name == "table") return OutputFormat::Table;
    throw UsageError("unknown format '" + std::string(name) + "' (json, csv, table)");
}

cplx parse_complex(std::string_view text) {
    const std::string s = trim(text);
    if (s.empty()) throw UsageError("empty complex number");
    if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, text), 0.0};

    const std::string body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not the leading one or part of an exponent.
    std::size_t split_at = std::string::npos;
    for (std::size_t p = body.size(); p-- > 1;) {
        if ((body[p] == '+' || body[p] == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
            split_at = p;
            break;
        }
    }
    const std::string re_txt = split_at == std::string::npos ? "" : body.substr(0, split_at);
    std::string im_txt = split_at == std::string::npos ? body : body.substr(split_at);
    double im = 0.0;
    if (im_txt.empty() || im_txt == "+") im = 1.0;
    else if (im_txt == "-") im = -1.0;
    else im = parse_real(im_txt, text);
    const double re = re_txt.empty() ? 0.0 : parse_real(re_txt, text);
    return {re, im};
}

Ket parse_amplitudes(std::string_view text, std::string space_label) {
    std::vector<cplx> amps;
    for (const auto& piece : split(text, ',')) amps.push_back(parse_complex(piece));
    return Ket(std::move(space_label), std::span<const cplx>(amps));
}

json run(const ExperimentSpec& spec) {
    switch (spec.kind) {
        case ExperimentKind::CloneDemo: return run_clone_demo(spec);
        case ExperimentKind::FixedAncilla: return run_fixed_ancilla(spec);
        case ExperimentKind::NoCloningWitness: return run_no_cloning_witness(spec);
        case ExperimentKind::SelectionRules: return run_selection_rules(spec);
        case ExperimentKind::Domain: return run_domain(spec);
        case ExperimentKind::StimulatedClone: return run_stimulated_clone(spec);
        case ExperimentKind::Spontaneous: return run_spontaneous(spec);
    }
    throw UsageError("unknown experiment");
}

std::string render(const json& report, OutputFormat format) {
    switch (format) {
        case OutputFormat::Json: return report.dump(2) + "\n";
        case OutputFormat::Csv: return render_csv(report);
        case OutputFormat::Table: return render_table(report);
    }
    return {};
}

int exit_code_for(const std::exception& e) noexcept {
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const UsageError*>(&e)) return 2;
    if (dynamic_cast<const DomainViolation*>(&e)) return 3;
    if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::out_of_range*>(&e)) return 4;
    return 1;
}

json error_document(const std::exception& e) {
    const int code = exit_code_for(e);
    const char* kind = code == 2 ? "invalid_input" : code == 3 ? "domain_violation" : code == 4 ? "validation" : "internal";
    json err = {{"kind", kind}, {"message", e.what()}, {"exit_code", code}};
    if (const auto* dv = dynamic_cast<const DomainViolation*>(&e)) err["component"] = dv->component();
    return {{"schema_version", kReportSchemaVersion}, {"tool", "statecopy"}, {"error", err}};
}

json strip_volatile(json report) {
    report.erase("generated_at");
    return report;
}

}  // namespace statecopy
