// statecopy: run the canned state-dependent copying experiments and emit
// JSON, CSV or aligned-text reports.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "statecopy/config.hpp"
#include "statecopy/experiment.hpp"

namespace {

struct Options {
    std::string config;
    std::string preset;
    std::string state;
    std::string overlaps;
    std::string format = "json";
    std::string out;
    std::string ancilla_basis = "identity";
    std::uint64_t seed = 0;
    std::size_t dim = 2;
    std::size_t index = 0;
    int samples = 99;
    bool timestamp = false;
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--seed", o.seed, "Seed for random states and bases");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("--out", o.out, "Write the report to PATH instead of stdout");
    sub->add_flag("--timestamp", o.timestamp, "Add a generated_at field to the report");
}

void add_state(CLI::App* sub, Options& o, const char* help) { sub->add_option("--state", o.state, help); }

void add_system(CLI::App* sub, Options& o) {
    auto* cfg = sub->add_option("--config", o.config, "Atomic-system config file (JSON)");
    sub->add_option("--preset", o.preset, "Built-in atomic system")
        ->check(CLI::IsMember(statecopy::preset_names()))
        ->excludes(cfg);
}

void add_copy(CLI::App* sub, Options& o) {
    sub->add_option("--dim", o.dim, "Dimension n for a random input state")->check(CLI::Range(1, 64));
    sub->add_option("--ancilla-basis", o.ancilla_basis, "Ancilla basis: identity, swap or random")
        ->check(CLI::IsMember({"identity", "swap", "random"}));
}

}  // namespace

int main(int argc, char** argv) {
    using namespace statecopy;

    CLI::App app{"State-dependent quantum copying experiments"};
    app.require_subcommand(1);
    Options o;

    auto* clone_demo = app.add_subcommand("clone-demo", "Copy a state with a matched ancilla");
    add_state(clone_demo, o, "Amplitudes \"a+bi,c+di,...\", \"uniform\" or \"basis:K\"");
    add_copy(clone_demo, o);

    auto* fixed = app.add_subcommand("fixed-ancilla", "Copy with the ancilla fixed to one basis element");
    add_state(fixed, o, "Amplitudes \"a+bi,c+di,...\", \"uniform\" or \"basis:K\"");
    add_copy(fixed, o);
    fixed->add_option("--index", o.index, "Fixed ancilla basis index (0-based)");

    auto* witness = app.add_subcommand("no-cloning-witness", "Overlap consistency s = s^2");
    witness->add_option("--overlaps", o.overlaps, "Comma-separated overlaps (default: grid on [0, 1])");
    witness->add_option("--samples", o.samples, "Interior grid points")->check(CLI::PositiveNumber);

    auto* rules = app.add_subcommand("selection-rules", "Dipole amplitudes and symmetry verdicts per transition");
    auto* domain = app.add_subcommand("domain", "Clonable polarization domain of an atom");
    auto* stim = app.add_subcommand("stimulated-clone", "Copy a photon polarization through the excited manifold");
    add_state(stim, o, "Photon amplitudes over the configured polarization modes");
    auto* spont = app.add_subcommand("spontaneous", "Polarization statistics of spontaneous emission");
    add_state(spont, o, "Excited-manifold amplitudes, or \"isotropic\" (default)");

    for (auto* sub : {clone_demo, fixed, witness, rules, domain, stim, spont}) add_common(sub, o);
    for (auto* sub : {rules, domain, stim, spont}) add_system(sub, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    ExperimentSpec spec;
    try {
        spec.kind = parse_experiment_kind(app.get_subcommands().front()->get_name());
        if (!o.config.empty()) spec.config_path = o.config;
        if (!o.preset.empty()) spec.preset = o.preset;
        if (!o.state.empty()) spec.state = o.state;
        if (!o.overlaps.empty()) spec.overlaps = o.overlaps;
        spec.seed = o.seed;
        spec.format = parse_output_format(o.format);
        spec.dim = o.dim;
        spec.index = o.index;
        spec.ancilla_basis = o.ancilla_basis;
        spec.samples = o.samples;
        spec.timestamp = o.timestamp;

        const nlohmann::json report = run(spec);
        const std::string text = render(report, spec.format);
        if (o.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(o.out, std::ios::binary);
            if (!f) throw UsageError("cannot write " + o.out);
            f << text;
        }
        return report.at("passed").get<bool>() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << error_document(e).dump(2) << "\n";
        return exit_code_for(e);
    }
}
