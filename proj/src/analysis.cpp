#include "rydsim/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "rydsim/units.hpp"

namespace rydsim {

Spectrum fourier_spectrum(const TimeSeries& series, WindowKind window, int zero_pad_factor) {
    const int n = static_cast<int>(series.values.size());
    if (n < 8) throw std::invalid_argument("need at least 8 samples, got " + std::to_string(n));
    if (zero_pad_factor < 1) throw std::invalid_argument("zero_pad_factor must be >= 1");

    // One period is [0, t_max): the final sample is the periodic wrap of
    // t = 0 and is excluded, which makes the bin spacing exactly
    // 1/(zero_pad_factor * t_max).
    const int n0 = n - 1;
    std::vector<double> x(series.values.begin(), series.values.begin() + n0);
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n0;
    for (auto& v : x) v -= mean;
    if (window == WindowKind::hann)
        for (int m = 0; m < n0; ++m)
            x[m] *= 0.5 - 0.5 * std::cos(two_pi * m / n0);

    const int len = zero_pad_factor * n0;
    const int n_bins = len / 2 + 1;
    Spectrum out;
    out.window = window;
    out.zero_pad_factor = zero_pad_factor;
    out.freqs_mhz.resize(n_bins);
    out.psd.resize(n_bins);
    const double df = 1.0 / (len * series.grid.dt);  // MHz (cycles per us)
    for (int k = 0; k < n_bins; ++k) {
        double re = 0.0, im = 0.0;
        const double w = two_pi * k / len;
        for (int m = 0; m < n0; ++m) {
            re += x[m] * std::cos(w * m);
            im -= x[m] * std::sin(w * m);
        }
        double scale = (k == 0 || (len % 2 == 0 && k == len / 2)) ? 1.0 : 2.0;
        out.freqs_mhz[k] = k * df;
        out.psd[k] = scale * (re * re + im * im) / (static_cast<double>(len) * n0);
    }
    return out;
}

PeakSet detect_peaks(const Spectrum& spec, double min_prominence_frac) {
    PeakSet out;
    out.bin_width_mhz = spec.bin_width_mhz();
    const auto& psd = spec.psd;
    const int n = static_cast<int>(psd.size());
    if (n < 3) return out;
    out.max_psd = *std::max_element(psd.begin() + 1, psd.end());
    const double threshold = min_prominence_frac * out.max_psd;

    for (int i = 1; i + 1 < n; ++i) {
        if (!(psd[i] > psd[i - 1] && psd[i] >= psd[i + 1])) continue;
        // topographic prominence: walk outwards until a higher bin or the edge
        double left_min = psd[i], right_min = psd[i];
        for (int j = i - 1; j >= 0; --j) {
            if (psd[j] > psd[i]) break;
            left_min = std::min(left_min, psd[j]);
        }
        for (int j = i + 1; j < n; ++j) {
            if (psd[j] > psd[i]) break;
            right_min = std::min(right_min, psd[j]);
        }
        const double prominence = psd[i] - std::max(left_min, right_min);
        if (prominence < threshold) continue;

        Peak p;
        const double ym = psd[i - 1], y0 = psd[i], yp = psd[i + 1];
        const double den = ym - 2.0 * y0 + yp;
        const double delta = den != 0.0 ? 0.5 * (ym - yp) / den : 0.0;
        p.freq_mhz = (i + delta) * out.bin_width_mhz;
        p.height = y0 - 0.25 * (ym - yp) * delta;
        p.prominence = prominence;
        out.peaks.push_back(p);
    }
    return out;
}

MatchReport match_lines(const PeakSet& peaks, const std::vector<TransitionLine>& lines,
                        double tol_frac) {
    // merge theoretical lines within one bin; drop zero-frequency lines
    struct MergedLine {
        double freq_mhz;
        double weight;
    };
    std::vector<MergedLine> merged;
    std::vector<TransitionLine> sorted = lines;
    std::sort(sorted.begin(), sorted.end(),
              [](const TransitionLine& a, const TransitionLine& b) {
                  return a.frequency < b.frequency;
              });
    const double bin = peaks.bin_width_mhz;
    for (const auto& line : sorted) {
        const double f = rad_per_us_to_mhz(line.frequency);
        if (f <= bin * 0.5) continue;  // indistinguishable from DC
        if (!merged.empty() && f - merged.back().freq_mhz <= bin) {
            const double w = merged.back().weight + line.weight;
            merged.back().freq_mhz =
                (merged.back().freq_mhz * merged.back().weight + f * line.weight) / w;
            merged.back().weight = w;
        } else {
            merged.push_back({f, line.weight});
        }
    }

    // greedy exclusive assignment, smallest frequency gap first
    struct Cand {
        double gap;
        size_t peak, line;
    };
    std::vector<Cand> cands;
    for (size_t p = 0; p < peaks.peaks.size(); ++p)
        for (size_t l = 0; l < merged.size(); ++l)
            cands.push_back({std::abs(peaks.peaks[p].freq_mhz - merged[l].freq_mhz), p, l});
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.gap != b.gap) return a.gap < b.gap;
        return std::tie(a.peak, a.line) < std::tie(b.peak, b.line);
    });

    MatchReport report;
    std::vector<bool> peak_used(peaks.peaks.size(), false), line_used(merged.size(), false);
    for (const auto& c : cands) {
        if (peak_used[c.peak] || line_used[c.line]) continue;
        const double rel = c.gap / merged[c.line].freq_mhz;
        if (rel > tol_frac) continue;
        peak_used[c.peak] = true;
        line_used[c.line] = true;
        report.matches.push_back({merged[c.line].freq_mhz, peaks.peaks[c.peak].freq_mhz, rel,
                                  merged[c.line].weight});
    }
    std::sort(report.matches.begin(), report.matches.end(),
              [](const LineMatch& a, const LineMatch& b) {
                  return a.line_freq_mhz < b.line_freq_mhz;
              });
    for (size_t l = 0; l < merged.size(); ++l)
        if (!line_used[l]) report.missed.push_back({merged[l].freq_mhz, merged[l].weight});
    for (size_t p = 0; p < peaks.peaks.size(); ++p)
        if (!peak_used[p]) report.spurious_peaks_mhz.push_back(peaks.peaks[p].freq_mhz);
    return report;
}

std::string match_report_to_json(const MatchReport& report, const PeakSet& peaks) {
    nlohmann::ordered_json j;
    j["peaks"] = nlohmann::ordered_json::array();
    for (const auto& p : peaks.peaks)
        j["peaks"].push_back({{"freq_MHz", p.freq_mhz},
                              {"height", p.height},
                              {"prominence", p.prominence}});
    j["matches"] = nlohmann::ordered_json::array();
    for (const auto& m : report.matches)
        j["matches"].push_back({{"line_freq_MHz", m.line_freq_mhz},
                                {"peak_freq_MHz", m.peak_freq_mhz},
                                {"rel_err", m.rel_err},
                                {"weight", m.weight}});
    j["missed"] = nlohmann::ordered_json::array();
    for (const auto& m : report.missed)
        j["missed"].push_back({{"freq_MHz", m.freq_mhz}, {"weight", m.weight}});
    j["spurious"] = report.spurious_peaks_mhz;
    return j.dump(2) + "\n";
}

const char* model_name(ModelKind m) {
    switch (m) {
        case ModelKind::full: return "full";
        case ModelKind::truncated: return "truncated";
        case ModelKind::pxp: return "pxp";
        case ModelKind::ising: return "ising";
    }
    return "?";
}

ModelKind model_from_name(const std::string& name) {
    if (name == "full") return ModelKind::full;
    if (name == "truncated") return ModelKind::truncated;
    if (name == "pxp") return ModelKind::pxp;
    if (name == "ising") return ModelKind::ising;
    throw std::invalid_argument("unknown model '" + name + "'");
}

HamiltonianMatrix build_model(const AtomArrangement& arr, const DriveParams& drive,
                              ModelKind model) {
    switch (model) {
        case ModelKind::full:
            return build_full(arr, drive);
        case ModelKind::truncated:
            return build_full_truncated(arr, drive, blockade_graph(arr, drive.blockade_radius()));
        case ModelKind::pxp:
            return build_pxp(blockade_graph(arr, drive.blockade_radius()), drive.omega);
        case ModelKind::ising: {
            const auto graph = blockade_graph(arr, drive.blockade_radius());
            return build_ising(graph, ising_params_from(drive, graph).params);
        }
    }
    throw std::invalid_argument("bad model");
}

namespace {

SweepPoint run_point(double param, TransformationFamily family, const DriveParams& drive,
                     const SweepSettings& s, uint64_t stream) {
    TransformationParam tp{family, param, s.scale_um};
    const auto arr = make_arrangement(tp);
    const auto h = build_model(arr, drive, s.model);
    const auto sd = diagonalize(h);

    SweepPoint point;
    point.param = param;
    point.lines = bright_lines(sd, s.eps_bright);
    TimeSeries series = p0_closed_form(sd, s.grid);
    if (s.noise) {
        NoiseParams noise = *s.noise;
        noise.rng_seed = s.seed;
        TimeSeries damped = p0_lindblad(h, noise, s.grid);
        damped = apply_spam(damped, noise);
        series = sample_shots(damped, noise, stream);
    }
    point.spectrum = fourier_spectrum(series, s.window, s.zero_pad_factor);
    return point;
}

}  // namespace

SweepResult sweep(TransformationFamily family, const DriveParams& drive,
                  const SweepSettings& settings) {
    if (settings.n_steps < 2)
        throw std::invalid_argument("sweep needs n_steps >= 2, got " +
                                    std::to_string(settings.n_steps));
    auto [lo, hi] = family_domain(family);
    if (settings.param_min) lo = *settings.param_min;
    if (settings.param_max) hi = *settings.param_max;
    if (!(hi > lo)) throw std::invalid_argument("sweep range is empty");

    std::vector<double> params(settings.n_steps);
    for (int i = 0; i < settings.n_steps; ++i)
        params[i] = lo + (hi - lo) * i / (settings.n_steps - 1);

    // points are independent; run them concurrently, with the per-point
    // RNG stream fixed by the point index so assembly order is irrelevant
    unsigned n_threads = settings.n_threads > 0
                             ? static_cast<unsigned>(settings.n_threads)
                             : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, params.size());

    SweepResult result;
    result.family = family;
    result.points.resize(params.size());
    std::vector<std::string> errors(params.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t i = next.fetch_add(1); i < params.size(); i = next.fetch_add(1)) {
            try {
                result.points[i] = run_point(params[i], family, drive, settings, i);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (size_t i = 0; i < errors.size(); ++i)
        if (!errors[i].empty())
            throw NumericalError("sweep point " + std::to_string(i) + " (param " +
                                 std::to_string(params[i]) + ") failed: " + errors[i]);
    return result;
}

SweepResult hexagon_sweep(const std::vector<double>& z_values_um, double d_um,
                          const DriveParams& drive, SweepSettings settings) {
    if (z_values_um.size() < 2)
        throw std::invalid_argument("hexagon sweep needs at least 2 z values");
    for (size_t i = 1; i < z_values_um.size(); ++i)
        if (!(z_values_um[i] > z_values_um[i - 1]))
            throw std::invalid_argument("z values must be strictly increasing");
    settings.model = ModelKind::full;  // the regime structure needs every pair
    settings.scale_um = d_um;

    SweepResult result;
    result.family = TransformationFamily::hexagon_to_antiprism;
    result.points.resize(z_values_um.size());
    for (size_t i = 0; i < z_values_um.size(); ++i) {
        try {
            result.points[i] = run_point(z_values_um[i] / d_um,
                                         TransformationFamily::hexagon_to_antiprism, drive,
                                         settings, i);
            result.points[i].param = z_values_um[i];
        } catch (const std::exception& e) {
            throw NumericalError("sweep point " + std::to_string(i) + " (z " +
                                 std::to_string(z_values_um[i]) + " um) failed: " + e.what());
        }
    }
    return result;
}

std::string spectrogram_to_csv(const SweepResult& r) {
    std::ostringstream os;
    os << "param,freq_MHz,psd\n";
    os.precision(12);
    for (const auto& pt : r.points)
        for (size_t k = 0; k < pt.spectrum.psd.size(); ++k)
            os << pt.param << "," << pt.spectrum.freqs_mhz[k] << "," << pt.spectrum.psd[k]
               << "\n";
    return os.str();
}

std::string sweep_lines_to_csv(const SweepResult& r) {
    std::ostringstream os;
    os << "param,freq_MHz,weight\n";
    os.precision(12);
    for (const auto& pt : r.points)
        for (const auto& line : pt.lines)
            os << pt.param << "," << rad_per_us_to_mhz(line.frequency) << "," << line.weight
               << "\n";
    return os.str();
}

std::string spectrum_to_csv(const Spectrum& s) {
    std::ostringstream os;
    os << "freq_MHz,psd\n";
    os.precision(12);
    for (size_t k = 0; k < s.psd.size(); ++k)
        os << s.freqs_mhz[k] << "," << s.psd[k] << "\n";
    return os.str();
}

}  // namespace rydsim
