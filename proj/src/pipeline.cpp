#include "rydsim/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rydsim/svg.hpp"
#include "rydsim/units.hpp"

namespace rydsim {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

std::string hash_hex(uint64_t h) {
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

std::string csv_header(const ExperimentConfig& cfg, uint64_t seed) {
    std::ostringstream os;
    os << "# rydsim " << tool_version << "\n"
       << "# config_hash=" << hash_hex(config_hash(cfg)) << "\n"
       << "# seed=" << seed << "\n";
    return os.str();
}

ojson meta_json(const ExperimentConfig& cfg, uint64_t seed) {
    return ojson{{"tool", "rydsim"},
                 {"version", tool_version},
                 {"config_hash", hash_hex(config_hash(cfg))},
                 {"seed", seed}};
}

std::string write_file(const fs::path& dir, const std::string& name,
                       const std::string& content) {
    fs::create_directories(dir);
    const fs::path path = dir / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << content;
    return path.string();
}

uint64_t effective_seed(const ExperimentConfig& cfg) {
    return cfg.noise ? cfg.noise->rng_seed : 0;
}

}  // namespace

SpectrumRun run_spectrum(const ExperimentConfig& cfg, uint64_t rng_stream) {
    SpectrumRun run;
    run.config = cfg;
    const auto arr = cfg.arrangement();
    const DriveParams drive = cfg.drive.resolve();
    run.hamiltonian = build_model(arr, drive, cfg.model);
    run.decomposition = diagonalize(run.hamiltonian);
    run.lines = bright_lines(run.decomposition, cfg.analysis.eps_bright);
    run.ideal = p0_closed_form(run.decomposition, cfg.grid);
    if (cfg.noise) {
        TimeSeries damped = p0_lindblad(run.hamiltonian, *cfg.noise, cfg.grid);
        damped = apply_spam(damped, *cfg.noise);
        run.measured = sample_shots(damped, *cfg.noise, rng_stream);
    }
    const TimeSeries& observed = run.measured ? *run.measured : run.ideal;
    run.spectrum = fourier_spectrum(observed, cfg.analysis.resolve_window(cfg.noise.has_value()),
                                    cfg.analysis.zero_pad_factor);
    run.peaks = detect_peaks(run.spectrum, cfg.analysis.min_prominence);
    run.report = match_lines(run.peaks, run.lines, cfg.analysis.tol_frac);
    return run;
}

std::vector<std::string> cmd_spectrum(const ExperimentConfig& cfg) {
    const auto run = run_spectrum(cfg);
    const uint64_t seed = effective_seed(cfg);
    const fs::path dir = cfg.output.resolve_directory();
    const std::string header = csv_header(cfg, seed);
    std::vector<std::string> files;

    if (cfg.output.csv) {
        const TimeSeries& observed = run.measured ? *run.measured : run.ideal;
        files.push_back(write_file(dir, "timeseries.csv", header + timeseries_to_csv(observed)));
        if (run.measured)
            files.push_back(
                write_file(dir, "timeseries_ideal.csv", header + timeseries_to_csv(run.ideal)));
        files.push_back(write_file(dir, "spectrum.csv", header + spectrum_to_csv(run.spectrum)));
        files.push_back(
            write_file(dir, "eigenvalues.csv", header + spectrum_to_csv(run.decomposition)));
        files.push_back(write_file(dir, "lines.csv", header + lines_to_csv(run.lines)));
        files.push_back(
            write_file(dir, "arrangement.csv", header + arrangement_to_csv(cfg.arrangement())));
    }
    if (cfg.output.json) {
        ojson peaks = ojson::parse(match_report_to_json(run.report, run.peaks));
        ojson out;
        out["meta"] = meta_json(cfg, seed);
        out["bin_width_MHz"] = run.peaks.bin_width_mhz;
        out.update(peaks);
        files.push_back(write_file(dir, "peaks.json", out.dump(2) + "\n"));

        ojson envelope;
        envelope["meta"] = meta_json(cfg, seed);
        envelope["config"] = ojson::parse(config_to_json(cfg));
        const auto regime = regime_report(cfg.arrangement(), cfg.drive.resolve());
        envelope["results"] = {
            {"n_bright",
             bright_eigenvalues(run.decomposition, cfg.analysis.eps_bright).size()},
            {"n_lines", run.lines.size()},
            {"n_peaks", run.peaks.peaks.size()},
            {"regime", regime.summary}};
        files.push_back(write_file(dir, "run.json", envelope.dump(2) + "\n"));
    }
    if (cfg.output.svg) {
        const TimeSeries& observed = run.measured ? *run.measured : run.ideal;
        svg::Series ts{observed.grid.times(), observed.values, "#1f6fb5"};
        std::vector<svg::Series> series{ts};
        if (run.measured)
            series.push_back({run.ideal.grid.times(), run.ideal.values, "#c44e52"});
        files.push_back(write_file(dir, "timeseries.svg",
                                   svg::line_plot(series, "t (us)", "P0", "return probability")));
        svg::Series sp{run.spectrum.freqs_mhz, run.spectrum.psd, "#1f6fb5"};
        files.push_back(write_file(
            dir, "spectrum.svg", svg::line_plot({sp}, "f (MHz)", "PSD", "Fourier spectrum")));
    }
    return files;
}

std::vector<std::string> cmd_sweep(const ExperimentConfig& cfg) {
    if (!cfg.geometry.param)
        throw ConfigError("sweep requires a transformation family geometry");
    const DriveParams drive = cfg.drive.resolve();
    const uint64_t seed = effective_seed(cfg);

    SweepSettings settings;
    settings.n_steps = cfg.sweep.n_steps;
    settings.param_min = cfg.sweep.param_min;
    settings.param_max = cfg.sweep.param_max;
    settings.model = cfg.model;
    settings.scale_um = cfg.geometry.param->scale_um;
    settings.noise = cfg.noise;
    settings.grid = cfg.grid;
    settings.window = cfg.analysis.resolve_window(cfg.noise.has_value());
    settings.zero_pad_factor = cfg.analysis.zero_pad_factor;
    settings.eps_bright = cfg.analysis.eps_bright;
    settings.seed = seed;

    const auto family = cfg.geometry.param->family;
    SweepResult result;
    if (family == TransformationFamily::hexagon_to_antiprism) {
        if (settings.n_steps < 2) throw std::invalid_argument("sweep needs n_steps >= 2");
        auto [lo, hi] = family_domain(family);
        if (settings.param_min) lo = *settings.param_min;
        if (settings.param_max) hi = *settings.param_max;
        std::vector<double> z(settings.n_steps);
        for (int i = 0; i < settings.n_steps; ++i)
            z[i] = (lo + (hi - lo) * i / (settings.n_steps - 1)) * settings.scale_um;
        result = hexagon_sweep(z, settings.scale_um, drive, settings);
    } else {
        result = sweep(family, drive, settings);
    }

    const fs::path dir = cfg.output.resolve_directory();
    const std::string header = csv_header(cfg, seed);
    std::vector<std::string> files;
    if (cfg.output.csv) {
        files.push_back(
            write_file(dir, "spectrogram.csv", header + spectrogram_to_csv(result)));
        files.push_back(
            write_file(dir, "lines_overlay.csv", header + sweep_lines_to_csv(result)));
    }
    if (cfg.output.json) {
        ojson envelope;
        envelope["meta"] = meta_json(cfg, seed);
        envelope["config"] = ojson::parse(config_to_json(cfg));
        envelope["results"] = {{"family", family_name(result.family)},
                               {"n_points", result.points.size()}};
        files.push_back(write_file(dir, "run.json", envelope.dump(2) + "\n"));
    }
    if (cfg.output.svg) {
        std::vector<double> xs;
        std::vector<std::vector<double>> grid;
        for (const auto& pt : result.points) {
            xs.push_back(pt.param);
            grid.push_back(pt.spectrum.psd);
        }
        const auto& freqs = result.points.front().spectrum.freqs_mhz;
        files.push_back(write_file(dir, "spectrogram.svg",
                                   svg::heatmap(xs, freqs, grid, "parameter", "f (MHz)",
                                                "power spectral density")));
    }
    return files;
}

}  // namespace rydsim
