#include "zpfbell/runner.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "zpfbell/analyzer.hpp"
#include "zpfbell/experiment.hpp"
#include "zpfbell/hilbert.hpp"
#include "zpfbell/mc.hpp"

namespace zpfbell {

namespace {

using nlohmann::ordered_json;

constexpr double kExactEpsilon = 1e-9;
constexpr double kMcEpsilon = 0.05;
constexpr double kStateMatchTolerance = 1e-12;

/// Everything validation resolves before any engine runs.
struct Prepared {
    double epsilon = kExactEpsilon;
    bool is_sweep = false;
    EncoderSettings settings;
    std::optional<BellState> state;
};

std::optional<BellState> match_state(const EncoderSettings& s) {
    for (const BellState state : {BellState::PsiPlus, BellState::PsiMinus, BellState::PhiPlus,
                                  BellState::PhiMinus}) {
        const EncoderSettings canonical = encode_settings(state);
        if (std::abs(s.beta - canonical.beta) <= kStateMatchTolerance &&
            std::abs(s.kappa - canonical.kappa) <= kStateMatchTolerance) {
            return state;
        }
    }
    return std::nullopt;
}

Prepared prepare(const RunConfig& config) {
    if (!(config.coupling > 0.0)) {
        throw UsageError("--coupling must be positive");
    }
    if ((config.engine == Engine::Mc || config.engine == Engine::All) && config.samples < 2) {
        throw UsageError("--samples must be at least 2");
    }
    if (config.epsilon && !(*config.epsilon > 0.0 && *config.epsilon < 1.0)) {
        throw UsageError("--epsilon must lie in (0, 1)");
    }
    if (config.format == OutputFormat::Csv &&
        (config.engine == Engine::Oracle || config.engine == Engine::All)) {
        throw UsageError("csv output supports the exact and mc engines");
    }
    Prepared out;
    out.epsilon = config.epsilon.value_or(config.engine == Engine::Mc ? kMcEpsilon
                                                                      : kExactEpsilon);
    out.is_sweep = config.sweep_beta.has_value() || config.sweep_kappa.has_value();
    if (out.is_sweep) {
        if (!config.sweep_beta || !config.sweep_kappa) {
            throw UsageError("--sweep needs both a beta and a kappa axis");
        }
        if (config.sweep_beta->steps == 0 || config.sweep_kappa->steps == 0) {
            throw UsageError("sweep axes need at least one step");
        }
        if (config.state || config.beta || config.kappa) {
            throw UsageError("--sweep excludes --state, --beta and --kappa");
        }
        if (config.engine != Engine::Exact && config.engine != Engine::Mc) {
            throw UsageError("--sweep supports the exact and mc engines");
        }
        return out;
    }
    if (config.state && (config.beta || config.kappa)) {
        throw UsageError("give either --state or --beta with --kappa, not both");
    }
    if (!config.state && !(config.beta && config.kappa)) {
        throw UsageError("give either --state or --beta with --kappa");
    }
    if (config.state) {
        out.state = config.state;
        out.settings = encode_settings(*config.state);
    } else {
        out.settings = {*config.beta, *config.kappa};
        out.state = match_state(out.settings);
    }
    if ((config.engine == Engine::Oracle || config.engine == Engine::All) && !out.state) {
        throw UsageError("the oracle engine needs --state or angles matching a Bell state");
    }
    return out;
}

ordered_json entries_json(const std::array<double, 6>& entries) {
    ordered_json out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        out[kDetectorPairNames[i]] = entries[i];
    }
    return out;
}

ordered_json table_json(const CoincidenceTable& table) {
    ordered_json out = entries_json(table.p);
    out["scale"] = table.scale;
    return out;
}

ordered_json config_echo(const RunConfig& config, const Prepared& prepared) {
    ordered_json echo;
    echo["state"] = config.state ? ordered_json(to_string(*config.state)) : ordered_json(nullptr);
    echo["beta"] = config.beta ? ordered_json(*config.beta) : ordered_json(nullptr);
    echo["kappa"] = config.kappa ? ordered_json(*config.kappa) : ordered_json(nullptr);
    echo["engine"] = to_string(config.engine);
    echo["samples"] = config.samples;
    echo["seed"] = config.seed;
    echo["coupling"] = config.coupling;
    echo["epsilon"] = prepared.epsilon;
    echo["format"] = to_string(config.format);
    if (config.sweep_beta && config.sweep_kappa) {
        ordered_json sweep;
        for (const auto& [name, axis] :
             {std::pair{"beta", *config.sweep_beta}, {"kappa", *config.sweep_kappa}}) {
            sweep[name] = {{"start", axis.start}, {"stop", axis.stop}, {"steps", axis.steps}};
        }
        echo["sweep"] = sweep;
    }
    return echo;
}

/// One computed grid point, shared by sweep rows and csv point runs.
struct Row {
    double beta = 0.0;
    double kappa = 0.0;
    CoincidenceTable table;
    std::optional<std::array<double, 6>> errors;
    Classification classification = Classification::Ambiguous;
    double residual_cross = 0.0;
    double residual_same = 0.0;
};

Row compute_row(const RunConfig& config, double epsilon, double beta, double kappa) {
    Row row;
    row.beta = beta;
    row.kappa = kappa;
    const EncoderSettings settings{beta, kappa};
    const SourceConfig cfg{config.coupling};
    if (config.engine == Engine::Mc) {
        McCoincidenceTable mct = mc_coincidence_table(settings, cfg, config.seed, config.samples);
        row.table = mct.table;
        row.errors = mct.standard_error;
    } else {
        row.table = coincidence_table(build_experiment(cfg, settings).fields);
    }
    row.classification = classify(row.table, epsilon);
    const double cos2 = std::cos(beta) * std::cos(beta);
    const double closed_cross = 0.5 * cos2 * (1.0 + std::cos(kappa + std::numbers::pi));
    const double closed_same = 0.5 * cos2 * (1.0 + std::cos(kappa));
    row.residual_cross =
        std::abs(row.table.at(DetectorPair::DH1_DV2) / row.table.scale - closed_cross);
    row.residual_same =
        std::abs(row.table.at(DetectorPair::DH1_DV1) / row.table.scale - closed_same);
    return row;
}

ordered_json row_json(const Row& row) {
    ordered_json out;
    out["beta"] = row.beta;
    out["kappa"] = row.kappa;
    out["table"] = table_json(row.table);
    if (row.errors) {
        out["stderr"] = entries_json(*row.errors);
    }
    out["classification"] = to_string(row.classification);
    out["residuals"] = {{"cross", row.residual_cross}, {"same", row.residual_same}};
    return out;
}

std::string format_double(double value) {
    std::array<char, 32> buffer;
    const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), result.ptr);
}

std::string render_csv(const std::vector<Row>& rows) {
    std::string out =
        "beta,kappa,DH1_DH2,DV1_DV2,DH1_DV2,DV1_DH2,DH1_DV1,DH2_DV2,"
        "classification,cross_residual,same_residual\n";
    for (const Row& row : rows) {
        out += format_double(row.beta);
        out += ',';
        out += format_double(row.kappa);
        out += ',';
        for (double entry : row.table.p) {
            out += format_double(entry / row.table.scale);
            out += ',';
        }
        out += to_string(row.classification);
        out += ',';
        out += format_double(row.residual_cross);
        out += ',';
        out += format_double(row.residual_same);
        out += '\n';
    }
    return out;
}

std::vector<Row> sweep_rows(const RunConfig& config, const Prepared& prepared) {
    const SweepAxis& beta_axis = *config.sweep_beta;
    const SweepAxis& kappa_axis = *config.sweep_kappa;
    std::vector<Row> rows;
    rows.reserve(beta_axis.steps * kappa_axis.steps);
    for (std::size_t i = 0; i < beta_axis.steps; ++i) {
        for (std::size_t j = 0; j < kappa_axis.steps; ++j) {
            rows.push_back(
                compute_row(config, prepared.epsilon, beta_axis.value(i), kappa_axis.value(j)));
        }
    }
    return rows;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t begin = 0;
    while (true) {
        const std::size_t end = text.find(sep, begin);
        parts.push_back(text.substr(begin, end - begin));
        if (end == std::string::npos) break;
        begin = end + 1;
    }
    return parts;
}

double parse_real(const std::string& text) {
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used != text.size()) throw UsageError("");
        return value;
    } catch (const std::exception&) {
        throw UsageError("bad number '" + text + "' in --sweep");
    }
}

SweepAxis parse_axis(const std::string& body) {
    const std::vector<std::string> parts = split(body, ':');
    if (parts.size() != 3) {
        throw UsageError("sweep axis must be start:stop:steps, got '" + body + "'");
    }
    SweepAxis axis;
    axis.start = parse_real(parts[0]);
    axis.stop = parse_real(parts[1]);
    try {
        std::size_t used = 0;
        const unsigned long steps = std::stoul(parts[2], &used);
        if (used != parts[2].size() || steps == 0) throw UsageError("");
        axis.steps = steps;
    } catch (const std::exception&) {
        throw UsageError("sweep steps must be a positive integer, got '" + parts[2] + "'");
    }
    return axis;
}

}  // namespace

double SweepAxis::value(std::size_t i) const {
    if (steps <= 1) return start;
    return start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

const char* to_string(Engine engine) {
    switch (engine) {
        case Engine::Exact: return "exact";
        case Engine::Mc: return "mc";
        case Engine::Oracle: return "oracle";
        case Engine::All: return "all";
    }
    throw std::invalid_argument("unknown engine");
}

const char* to_string(OutputFormat format) {
    return format == OutputFormat::Json ? "json" : "csv";
}

std::optional<Engine> parse_engine(const std::string& text) {
    if (text == "exact") return Engine::Exact;
    if (text == "mc") return Engine::Mc;
    if (text == "oracle") return Engine::Oracle;
    if (text == "all") return Engine::All;
    return std::nullopt;
}

std::optional<OutputFormat> parse_format(const std::string& text) {
    if (text == "json") return OutputFormat::Json;
    if (text == "csv") return OutputFormat::Csv;
    return std::nullopt;
}

std::pair<SweepAxis, SweepAxis> parse_sweep_spec(const std::string& text) {
    const std::vector<std::string> parts = split(text, ',');
    if (parts.size() != 2) {
        throw UsageError("--sweep must name a beta and a kappa axis");
    }
    std::optional<SweepAxis> beta;
    std::optional<SweepAxis> kappa;
    for (const std::string& part : parts) {
        const std::size_t eq = part.find('=');
        if (eq == std::string::npos) {
            throw UsageError("sweep axis must look like name=start:stop:steps, got '" + part +
                             "'");
        }
        const std::string name = part.substr(0, eq);
        const SweepAxis axis = parse_axis(part.substr(eq + 1));
        if (name == "beta" && !beta) {
            beta = axis;
        } else if (name == "kappa" && !kappa) {
            kappa = axis;
        } else {
            throw UsageError("unknown or repeated sweep axis '" + name + "'");
        }
    }
    if (!beta || !kappa) {
        throw UsageError("--sweep must name a beta and a kappa axis");
    }
    return {*beta, *kappa};
}

nlohmann::ordered_json run_report(const RunConfig& config) {
    const Prepared prepared = prepare(config);
    if (prepared.is_sweep) {
        throw UsageError("run reports take a single point; use sweep_report");
    }
    const EncoderSettings& settings = prepared.settings;
    const SourceConfig cfg{config.coupling};
    ordered_json doc;
    doc["config"] = config_echo(config, prepared);
    doc["beta"] = settings.beta;
    doc["kappa"] = settings.kappa;

    if (config.engine == Engine::Oracle) {
        const auto pattern = coincidence_pattern(bs_transform(bell_polynomial(*prepared.state)));
        CoincidenceTable table;
        table.p = pattern;
        table.scale = 1.0;
        doc["table"] = table_json(table);
        doc["normalized_table"] = entries_json(table.normalized());
        doc["pattern"] = entries_json(pattern);
        doc["classification"] = to_string(classify(table, prepared.epsilon));
        return doc;
    }
    if (config.engine == Engine::Mc) {
        const McCoincidenceTable mct =
            mc_coincidence_table(settings, cfg, config.seed, config.samples);
        doc["table"] = table_json(mct.table);
        doc["normalized_table"] = entries_json(mct.table.normalized());
        doc["stderr"] = entries_json(mct.standard_error);
        doc["classification"] = to_string(classify(mct.table, prepared.epsilon));
        return doc;
    }

    const CoincidenceTable table = coincidence_table(build_experiment(cfg, settings).fields);
    doc["table"] = table_json(table);
    doc["normalized_table"] = entries_json(table.normalized());
    if (config.engine == Engine::All) {
        const McCoincidenceTable mct =
            mc_coincidence_table(settings, cfg, config.seed, config.samples);
        doc["mc_table"] = table_json(mct.table);
        doc["stderr"] = entries_json(mct.standard_error);
        doc["pattern"] =
            entries_json(coincidence_pattern(bs_transform(bell_polynomial(*prepared.state))));
    }
    doc["classification"] = to_string(classify(table, prepared.epsilon));
    return doc;
}

nlohmann::ordered_json sweep_report(const RunConfig& config) {
    const Prepared prepared = prepare(config);
    if (!prepared.is_sweep) {
        throw UsageError("sweep reports need --sweep axes");
    }
    ordered_json doc;
    doc["config"] = config_echo(config, prepared);
    doc["rows"] = ordered_json::array();
    for (const Row& row : sweep_rows(config, prepared)) {
        doc["rows"].push_back(row_json(row));
    }
    return doc;
}

std::string execute(const RunConfig& config) {
    const Prepared prepared = prepare(config);
    if (config.format == OutputFormat::Json) {
        const ordered_json doc = prepared.is_sweep ? sweep_report(config) : run_report(config);
        return doc.dump(2) + "\n";
    }
    std::vector<Row> rows;
    if (prepared.is_sweep) {
        rows = sweep_rows(config, prepared);
    } else {
        rows.push_back(compute_row(config, prepared.epsilon, prepared.settings.beta,
                                   prepared.settings.kappa));
    }
    return render_csv(rows);
}

}  // namespace zpfbell
