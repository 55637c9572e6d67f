#pragma once

// Canned experiments behind the command-line runner. Each run produces a
// JSON report (docs/report-schema.json); render() turns it into CSV or an
// aligned text table.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "statecopy/state.hpp"

namespace statecopy {

inline constexpr const char* kReportSchemaVersion = "1.0";

/// Malformed command-line input (state strings, experiment names, ...).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class ExperimentKind {
    CloneDemo,
    FixedAncilla,
    NoCloningWitness,
    SelectionRules,
    Domain,
    StimulatedClone,
    Spontaneous,
};

enum class OutputFormat { Json, Csv, Table };

const char* to_string(ExperimentKind k) noexcept;
/// Throws UsageError for unknown names.
ExperimentKind parse_experiment_kind(std::string_view name);
OutputFormat parse_output_format(std::string_view name);

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::CloneDemo;
    std::optional<std::filesystem::path> config_path;
    /// Built-in system used when no config path is given.
    std::optional<std::string> preset;
    /// Amplitude list "a+bi,c+di,..." or a named state ("uniform", "basis:K",
    /// "isotropic" for the spontaneous experiment). Random when absent.
    std::optional<std::string> state;
    std::uint64_t seed = 0;
    OutputFormat format = OutputFormat::Json;
    /// Hilbert-space dimension for clone-demo / fixed-ancilla with a random state.
    std::size_t dim = 2;
    /// Fixed ancilla index (0-based) for fixed-ancilla.
    std::size_t index = 0;
    /// "identity", "swap" (index reversal) or "random" (seeded Haar unitary).
    std::string ancilla_basis = "identity";
    /// Comma-separated overlaps for no-cloning-witness; grid when absent.
    std::optional<std::string> overlaps;
    /// Interior grid points for no-cloning-witness.
    int samples = 99;
    bool timestamp = false;
};

/// Throws ConfigError, DomainViolation, DimensionMismatch, ValidationError
/// or std::invalid_argument; exit_code_for() maps these to process status.
nlohmann::json run(const ExperimentSpec& spec);

std::string render(const nlohmann::json& report, OutputFormat format);

/// 2: configuration or usage error, 3: domain violation, 4: dimension or
/// validation failure, 1: anything else.
int exit_code_for(const std::exception& e) noexcept;
nlohmann::json error_document(const std::exception& e);

/// Parses "a+bi,c+di,..." (also "a", "bi", "-i", exponents). Throws
/// UsageError on malformed input.
Ket parse_amplitudes(std::string_view text, std::string space_label = "S");
cplx parse_complex(std::string_view text);

/// Report with the volatile generated_at field removed.
nlohmann::json strip_volatile(nlohmann::json report);

}  // namespace statecopy
