#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "json.hpp"

#include "zpfbell/source.hpp"

namespace zpfbell {

enum class Engine { Exact, Mc, Oracle, All };
enum class OutputFormat { Json, Csv };

/// Inclusive linear grid along one sweep axis; steps is the point count.
struct SweepAxis {
    double start = 0.0;
    double stop = 0.0;
    std::size_t steps = 1;

    double value(std::size_t i) const;
};

/// Invalid option combinations; the CLI maps this to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::optional<BellState> state;
    std::optional<double> beta;
    std::optional<double> kappa;
    Engine engine = Engine::Exact;
    std::uint64_t samples = 200000;
    std::uint64_t seed = 1;
    double coupling = 0.1;
    std::optional<double> epsilon;
    OutputFormat format = OutputFormat::Json;
    std::optional<SweepAxis> sweep_beta;
    std::optional<SweepAxis> sweep_kappa;
};

const char* to_string(Engine engine);
const char* to_string(OutputFormat format);
std::optional<Engine> parse_engine(const std::string& text);
std::optional<OutputFormat> parse_format(const std::string& text);

/// Parses "beta=start:stop:steps,kappa=start:stop:steps"; the axes may
/// appear in either order but both must appear. Throws UsageError.
std::pair<SweepAxis, SweepAxis> parse_sweep_spec(const std::string& text);

/// Point-run report. Always carries config, beta, kappa, table,
/// normalized_table and classification; the mc engine adds stderr, oracle
/// adds pattern, and all adds mc_table, stderr and pattern.
nlohmann::ordered_json run_report(const RunConfig& config);

/// Sweep document: config echo plus one row per grid point (beta outer,
/// kappa inner), each with its table, classification and closed-form
/// residuals.
nlohmann::ordered_json sweep_report(const RunConfig& config);

/// Validates the config, runs the point or sweep, and renders the requested
/// format as newline-terminated text.
std::string execute(const RunConfig& config);

}  // namespace zpfbell
