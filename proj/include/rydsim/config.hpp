#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rydsim/analysis.hpp"
#include "rydsim/geometry.hpp"
#include "rydsim/hamiltonian.hpp"

namespace rydsim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GeometryConfig {
    // either a transformation family + value, or an explicit atom list
    std::optional<TransformationParam> param;
    std::optional<AtomArrangement> atoms;
};

struct DriveConfig {
    double omega_mhz = 1.0;
    std::optional<double> c6;      // rad um^6/us
    std::optional<double> r_b_um;  // mutually exclusive with c6
    double detuning_mhz = 0.0;

    DriveParams resolve() const;  // c6 defaults to default_c6
};

struct AnalysisConfig {
    std::optional<WindowKind> window;  // default: hann when noise present, else rect
    int zero_pad_factor = 8;
    double min_prominence = default_min_prominence;
    double tol_frac = default_match_tol;
    double eps_bright = default_eps_bright;

    WindowKind resolve_window(bool noisy) const {
        return window ? *window : (noisy ? WindowKind::hann : WindowKind::rect);
    }
};

struct OutputConfig {
    std::string directory;  // empty: $RYDSIM_OUT or "."
    bool csv = true;
    bool json = true;
    bool svg = false;

    std::string resolve_directory() const;
};

struct SweepConfig {
    int n_steps = 21;
    std::optional<double> param_min;
    std::optional<double> param_max;
};

struct ExperimentConfig {
    std::string preset;  // informational
    GeometryConfig geometry;
    DriveConfig drive;
    ModelKind model = ModelKind::full;
    std::optional<NoiseParams> noise;
    TimeGrid grid;
    AnalysisConfig analysis;
    OutputConfig output;
    SweepConfig sweep;

    AtomArrangement arrangement() const;
};

// Strict parser: unknown keys are rejected with their JSON path; all
// defaults are materialized into the echoed form.
ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);  // full echo
uint64_t config_hash(const ExperimentConfig& cfg);

std::vector<std::string> preset_names();
ExperimentConfig preset_config(const std::string& name);

}  // namespace rydsim
