#include "rydsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rydsim/rng.hpp"

namespace rydsim {

int TimeGrid::n_samples() const {
    return static_cast<int>(std::floor(t_max / dt + 1e-9)) + 1;
}

std::vector<double> TimeGrid::times() const {
    std::vector<double> t(n_samples());
    for (int i = 0; i < n_samples(); ++i) t[i] = time(i);
    return t;
}

void TimeGrid::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    if (!(t_max >= dt)) throw std::invalid_argument("t_max must be >= dt");
}

void NoiseParams::validate() const {
    auto prob = [](double p, const char* name) {
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
    };
    if (!(gamma_phi >= 0.0)) throw std::invalid_argument("gamma_phi must be >= 0");
    prob(eps_prep, "eps_prep");
    prob(eps_det_0to1, "eps_det_0to1");
    prob(eps_det_1to0, "eps_det_1to0");
    if (n_shots < 1) throw std::invalid_argument("n_shots must be >= 1");
}

TimeSeries p0_closed_form(const SpectralDecomposition& sd, const TimeGrid& grid) {
    grid.validate();
    const int n = sd.dim();
    std::vector<double> probs(n);
    double constant = 0.0;
    for (int j = 0; j < n; ++j) {
        probs[j] = sd.bright_prob(j);
        constant += probs[j] * probs[j];
    }
    TimeSeries out;
    out.grid = grid;
    out.kind = SeriesKind::ideal;
    out.n_qubits = static_cast<int>(std::round(std::log2(n)));
    out.values.assign(grid.n_samples(), constant);
    for (int j = 0; j < n; ++j) {
        if (probs[j] == 0.0) continue;
        for (int k = j + 1; k < n; ++k) {
            const double b_jk = 2.0 * probs[j] * probs[k];
            if (b_jk == 0.0) continue;
            const double freq = sd.eigenvalues[k] - sd.eigenvalues[j];
            for (int i = 0; i < grid.n_samples(); ++i)
                out.values[i] += b_jk * std::cos(freq * grid.time(i));
        }
    }
    return out;
}

TimeSeries p0_unitary(const HamiltonianMatrix& h, const TimeGrid& grid) {
    grid.validate();
    const auto sd = diagonalize(h);
    const int dim = sd.dim();
    // initial state |W0> expressed in the eigenbasis
    Eigen::VectorXcd coeffs(dim);
    for (int j = 0; j < dim; ++j) coeffs(j) = std::conj(sd.eigenvectors(0, j));

    TimeSeries out;
    out.grid = grid;
    out.kind = SeriesKind::ideal;
    out.n_qubits = h.n_qubits;
    out.values.resize(grid.n_samples());
    Eigen::VectorXcd phased(dim);
    for (int i = 0; i < grid.n_samples(); ++i) {
        const double t = grid.time(i);
        for (int j = 0; j < dim; ++j)
            phased(j) = coeffs(j) * std::polar(1.0, -sd.eigenvalues[j] * t);
        const Eigen::VectorXcd psi = sd.eigenvectors * phased;
        const double norm = psi.norm();
        if (std::abs(norm - 1.0) > 1e-10)
            throw NumericalError("state norm drifted to " + std::to_string(norm));
        out.values[i] = std::norm(psi(0));
    }
    return out;
}

TimeSeries p0_lindblad(const HamiltonianMatrix& h, const NoiseParams& noise,
                       const TimeGrid& grid, double* min_rho_eigenvalue,
                       double substep_scale) {
    grid.validate();
    noise.validate();
    h.validate();
    const int dim = h.dim();
    const int n = h.n_qubits;
    const double gamma = noise.gamma_phi;

    // dissipator for per-atom Rydberg-population jumps n_j: elementwise
    // decay of rho_ab at rate (gamma/2) * (Hamming distance of a and b)
    MatrixC decay(dim, dim);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            decay(a, b) = -(gamma / 2.0) * __builtin_popcount(static_cast<unsigned>(a ^ b));

    const double hmax = h.entries.cwiseAbs().maxCoeff();
    double target = std::min(grid.dt / 20.0, hmax > 0.0 ? 0.002 / hmax : grid.dt / 20.0);
    target *= substep_scale;
    const int n_sub = std::max(1, static_cast<int>(std::ceil(grid.dt / target)));
    const double step = grid.dt / n_sub;

    MatrixC rho = MatrixC::Zero(dim, dim);
    rho(0, 0) = 1.0;

    auto liouvillian = [&](const MatrixC& r) -> MatrixC {
        MatrixC commutator = h.entries * r;
        commutator -= r * h.entries;
        return cplx(0.0, -1.0) * commutator + decay.cwiseProduct(r);
    };

    TimeSeries out;
    out.grid = grid;
    out.kind = SeriesKind::lindblad;
    out.n_qubits = n;
    out.values.resize(grid.n_samples());
    double min_eig = 0.0;

    auto record = [&](int i) {
        out.values[i] = rho(0, 0).real();
        const double trace = rho.trace().real();
        if (std::abs(trace - 1.0) > 1e-4)
            throw NumericalError("density-matrix trace drifted to " + std::to_string(trace) +
                                 " at t = " + std::to_string(grid.time(i)) + " us (substep " +
                                 std::to_string(step) + " us)");
        if (min_rho_eigenvalue) {
            Eigen::SelfAdjointEigenSolver<MatrixC> es(rho, Eigen::EigenvaluesOnly);
            min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
        }
    };

    record(0);
    for (int i = 1; i < grid.n_samples(); ++i) {
        for (int s = 0; s < n_sub; ++s) {
            const MatrixC k1 = liouvillian(rho);
            const MatrixC k2 = liouvillian(rho + (step / 2.0) * k1);
            const MatrixC k3 = liouvillian(rho + (step / 2.0) * k2);
            const MatrixC k4 = liouvillian(rho + step * k3);
            rho += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        record(i);
    }
    if (min_rho_eigenvalue) *min_rho_eigenvalue = min_eig;
    return out;
}

TimeSeries apply_spam(const TimeSeries& series, const NoiseParams& noise) {
    noise.validate();
    const int n = series.n_qubits;
    if (n < 1) throw std::invalid_argument("series carries no qubit count");
    const double prep = std::pow(1.0 - noise.eps_prep, n);
    const double read0 = std::pow(1.0 - noise.eps_det_0to1, n);
    const double read0_rest = std::pow(1.0 - noise.eps_det_0to1, n - 1);
    const double a = prep * (read0 - noise.eps_det_1to0 * read0_rest);
    const double b = prep * noise.eps_det_1to0 * read0_rest;
    TimeSeries out = series;
    for (auto& v : out.values) v = std::clamp(a * v + b, 0.0, 1.0);
    return out;
}

TimeSeries sample_shots(const TimeSeries& series, const NoiseParams& noise, uint64_t stream) {
    noise.validate();
    TimeSeries out = series;
    out.kind = SeriesKind::sampled;
    CounterRng base(noise.rng_seed, stream);
    for (size_t i = 0; i < out.values.size(); ++i) {
        CounterRng rng = base.split(i);
        const double p = std::clamp(series.values[i], 0.0, 1.0);
        out.values[i] = static_cast<double>(rng.binomial(noise.n_shots, p)) /
                        static_cast<double>(noise.n_shots);
    }
    return out;
}

std::string timeseries_to_csv(const TimeSeries& s) {
    std::ostringstream os;
    os << "t_us,p0\n";
    os.precision(12);
    for (int i = 0; i < static_cast<int>(s.values.size()); ++i)
        os << s.grid.time(i) << "," << s.values[i] << "\n";
    return os.str();
}

}  // namespace rydsim
