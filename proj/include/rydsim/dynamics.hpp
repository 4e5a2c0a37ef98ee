#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rydsim/spectral.hpp"

namespace rydsim {

struct TimeGrid {
    double t_max = 5.0;  // us
    double dt = 0.1;     // us

    int n_samples() const;                 // floor(t_max/dt) + 1
    double time(int i) const { return i * dt; }
    std::vector<double> times() const;
    void validate() const;
};

struct NoiseParams {
    double gamma_phi = 0.1;       // per-atom dephasing rate, 1/us
    double eps_prep = 0.01;       // per-atom preparation error
    double eps_det_0to1 = 0.01;   // ground atom misread as excited
    double eps_det_1to0 = 0.05;   // excited atom misread as ground
    long n_shots = 150;
    uint64_t rng_seed = 1;

    void validate() const;
};

enum class SeriesKind { ideal, lindblad, sampled };

struct TimeSeries {
    TimeGrid grid;
    std::vector<double> values;  // P0 samples
    SeriesKind kind = SeriesKind::ideal;
    int n_qubits = 0;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// P0(t) = sum_j |A_j|^4 + sum_{j<k} B_jk cos(lambda_jk t), evaluated exactly.
TimeSeries p0_closed_form(const SpectralDecomposition& sd, const TimeGrid& grid);

// |<W0| e^{-iHt} |W0>|^2 via full state evolution in the eigenbasis
// (exact exponentiation; no time-stepping error).
TimeSeries p0_unitary(const HamiltonianMatrix& h, const TimeGrid& grid);

// Master equation with per-atom Rydberg-population dephasing,
//   drho/dt = -i[H,rho] + gamma_phi sum_j (n_j rho n_j - {n_j, rho}/2),
// integrated with fixed-substep RK4 (substep <= dt/20 and <= 0.002/max|H_ij|).
// Returns <W0|rho(t)|W0>.  Throws NumericalError if the trace drifts by
// more than 1e-4.  If min_rho_eigenvalue is non-null it receives the most
// negative density-matrix eigenvalue seen at any sample time.
TimeSeries p0_lindblad(const HamiltonianMatrix& h, const NoiseParams& noise,
                       const TimeGrid& grid, double* min_rho_eigenvalue = nullptr,
                       double substep_scale = 1.0);

// State-preparation-and-measurement model, affine per sample:
//   P_meas = a P + b,
//   a = (1-ep)^N [(1-e01)^N - e10 (1-e01)^(N-1)],
//   b = (1-ep)^N e10 (1-e01)^(N-1).
// A run counts as a W0 return iff every atom was prepared, the state
// collapsed to W0 and every atom read 0, or the state left W0 and the
// excited population was misread as 0 (truncated at single excitations).
TimeSeries apply_spam(const TimeSeries& series, const NoiseParams& noise);

// Per-sample binomial(n_shots, P) / n_shots with a counter RNG; sample i
// of stream `stream` is reproducible independently of evaluation order.
TimeSeries sample_shots(const TimeSeries& series, const NoiseParams& noise,
                        uint64_t stream = 0);

// CSV "t_us,p0"
std::string timeseries_to_csv(const TimeSeries& s);

}  // namespace rydsim
