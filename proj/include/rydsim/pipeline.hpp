#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rydsim/config.hpp"

namespace rydsim {

// In-memory result of a single-configuration run.
struct SpectrumRun {
    ExperimentConfig config;          // with all defaults materialized
    HamiltonianMatrix hamiltonian;
    SpectralDecomposition decomposition;
    std::vector<TransitionLine> lines;
    TimeSeries ideal;
    std::optional<TimeSeries> measured;  // lindblad + SPAM + shots
    Spectrum spectrum;                   // of measured when present, else ideal
    PeakSet peaks;
    MatchReport report;
};

SpectrumRun run_spectrum(const ExperimentConfig& cfg, uint64_t rng_stream = 0);

// Writes timeseries/spectrum/peaks artifacts into cfg.output; returns the
// list of files written.  Artifacts are byte-deterministic for equal
// (config, seed).
std::vector<std::string> cmd_spectrum(const ExperimentConfig& cfg);

// Spectrogram + theoretical-line overlay artifacts for a transformation
// sweep (the hexagon family runs the full model over z in [0, 3d/2]).
std::vector<std::string> cmd_sweep(const ExperimentConfig& cfg);

}  // namespace rydsim
