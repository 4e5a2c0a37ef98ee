#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rydsim/dynamics.hpp"

namespace rydsim {

enum class WindowKind { rect, hann };

// One-sided power spectrum of a P0(t) series.  The DFT treats [0, t_max)
// as one period: the first n-1 samples are mean-subtracted, windowed and
// zero-padded to length zero_pad_factor*(n-1), so the bin spacing is
// exactly 1/(zero_pad_factor * t_max).  With a rect window and no padding
// the total PSD equals the signal variance (one-sided normalization).
struct Spectrum {
    std::vector<double> freqs_mhz;  // uniform from 0
    std::vector<double> psd;
    WindowKind window = WindowKind::rect;
    int zero_pad_factor = 1;

    double bin_width_mhz() const { return freqs_mhz.size() > 1 ? freqs_mhz[1] : 0.0; }
};

Spectrum fourier_spectrum(const TimeSeries& series, WindowKind window = WindowKind::rect,
                          int zero_pad_factor = 8);

struct Peak {
    double freq_mhz = 0.0;    // sub-bin refined
    double height = 0.0;      // refined PSD height
    double prominence = 0.0;  // absolute prominence at the grid maximum
};

struct PeakSet {
    std::vector<Peak> peaks;   // sorted by frequency
    double bin_width_mhz = 0.0;
    double max_psd = 0.0;      // over non-DC bins
};

inline constexpr double default_min_prominence = 0.05;

// Local PSD maxima (DC excluded) with prominence >= min_prominence_frac *
// max(psd); frequencies refined by quadratic interpolation over the
// 3-point neighborhood.
PeakSet detect_peaks(const Spectrum& spec, double min_prominence_frac = default_min_prominence);

struct LineMatch {
    double line_freq_mhz = 0.0;
    double peak_freq_mhz = 0.0;
    double rel_err = 0.0;  // |f_peak - f_line| / f_line
    double weight = 0.0;
};

struct MissedLine {
    double freq_mhz = 0.0;
    double weight = 0.0;
};

struct MatchReport {
    std::vector<LineMatch> matches;
    std::vector<MissedLine> missed;
    std::vector<double> spurious_peaks_mhz;
};

inline constexpr double default_match_tol = 0.10;

// Greedy nearest-frequency assignment between detected peaks and
// theoretical lines (zero-frequency lines dropped, lines merged within one
// bin); a pair is accepted only if rel_err <= tol_frac.
MatchReport match_lines(const PeakSet& peaks, const std::vector<TransitionLine>& lines,
                        double tol_frac = default_match_tol);

std::string match_report_to_json(const MatchReport& report, const PeakSet& peaks);

// --- transformation sweeps -------------------------------------------------

enum class ModelKind { full, truncated, pxp, ising };

const char* model_name(ModelKind m);
ModelKind model_from_name(const std::string& name);

struct SweepPoint {
    double param = 0.0;
    Spectrum spectrum;
    std::vector<TransitionLine> lines;  // theoretical, from the same model
};

struct SweepResult {
    TransformationFamily family;
    std::vector<SweepPoint> points;  // strictly increasing param
};

// Hamiltonian for one model choice; truncated/pxp/ising derive the
// blockade graph from the drive's blockade radius.
HamiltonianMatrix build_model(const AtomArrangement& arr, const DriveParams& drive,
                              ModelKind model);

struct SweepSettings {
    int n_steps = 21;
    std::optional<double> param_min;  // default: family domain
    std::optional<double> param_max;
    ModelKind model = ModelKind::full;
    double scale_um = 8.0;
    std::optional<NoiseParams> noise;  // sampled spectra when present
    TimeGrid grid;
    WindowKind window = WindowKind::rect;
    int zero_pad_factor = 8;
    double eps_bright = default_eps_bright;
    uint64_t seed = 1;
    int n_threads = 0;  // 0 = hardware concurrency
};

// For each parameter value: arrangement -> Hamiltonian -> spectral
// decomposition -> P0 series (noisy chain when noise is set, stream =
// point index) -> spectrum + theoretical lines.  Per-point failures are
// rethrown with the point index and parameter value.
SweepResult sweep(TransformationFamily family, const DriveParams& drive,
                  const SweepSettings& settings);

// z sweep of the six-atom family with the full (untruncated) model.
SweepResult hexagon_sweep(const std::vector<double>& z_values_um, double d_um,
                          const DriveParams& drive, SweepSettings settings);

// long-format CSV "param,freq_MHz,psd"
std::string spectrogram_to_csv(const SweepResult& r);
// overlay CSV "param,freq_MHz,weight"
std::string sweep_lines_to_csv(const SweepResult& r);

// CSV "freq_MHz,psd"
std::string spectrum_to_csv(const Spectrum& s);

}  // namespace rydsim
