#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "rydsim/hamiltonian.hpp"

namespace rydsim {

// Eigensystem with ascending eigenvalues and deterministic eigenvectors:
// within any degenerate cluster (gap < 1e-9 rad/us) the basis is rebuilt
// by Gram-Schmidt over projected canonical basis vectors in index order,
// then every vector's largest-magnitude component is made real positive.
// Since basis index 0 is |0...0>, each cluster concentrates its entire
// ground-state overlap in its first eigenvector.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;       // ascending, rad/us
    MatrixC eigenvectors;                  // columns
    std::vector<cplx> bright_amplitudes;   // A_j = <00..0|lambda_j>
    std::string source;

    int dim() const { return static_cast<int>(eigenvalues.size()); }
    double bright_prob(int j) const { return std::norm(bright_amplitudes[j]); }
    // checks sum|A|^2 = 1, unitarity, reconstruction
    void validate(const HamiltonianMatrix& h) const;
};

SpectralDecomposition diagonalize(const HamiltonianMatrix& h);

// A transition between bright eigenstates j < k (energy order, 1-based
// over the full spectrum).  frequency = lambda_k - lambda_j >= 0.
struct TransitionLine {
    int j = 0, k = 0;
    double frequency = 0.0;  // rad/us
    double weight = 0.0;     // B_jk = 2|A_j|^2|A_k|^2, summed over merged lines
};

inline constexpr double default_eps_bright = 1e-6;

// All pairs with |A_j|^2, |A_k|^2 > eps_bright, sorted by frequency;
// frequencies equal within 1e-9 rad/us are merged with summed weights
// (j,k of the first member are kept).
std::vector<TransitionLine> bright_lines(const SpectralDecomposition& sd,
                                         double eps_bright = default_eps_bright);

std::vector<double> bright_eigenvalues(const SpectralDecomposition& sd,
                                       double eps_bright = default_eps_bright);

// --- reference bright eigensystems for the four 4-vertex graphs ----------

// One bright eigenstate expanded over the 2^4 product basis.
struct BrightState {
    double eigenvalue_over_omega = 0.0;
    Eigen::VectorXcd amplitudes;
};

// Reference data for a named 4-vertex graph class, in the canonical vertex
// labelling of BlockadeGraph::{star,complete,cycle,diamond}.
//
// `tabulated_values` are the catalogued closed-form eigenvalues in units
// of omega (the diamond's positive partner symmetrized to +sqrt(13/10));
// `blockade_limit` is the eigensystem computed from the symmetric-subspace
// reduction of the perfect-blockade model, which is the authoritative
// regression target.  Where the two disagree beyond 1e-10 the discrepancy
// is described in `notes`.
struct BrightReference {
    GraphKind kind = GraphKind::other;
    std::vector<double> tabulated_values;
    std::vector<BrightState> blockade_limit;
    std::vector<std::string> notes;
};

// graph_class must be one of star/complete/cycle (n=4) or diamond.
BrightReference bright_reference(const GraphClass& graph_class);

// --- pairwise coupling regimes -------------------------------------------

enum class PairRegime { blockaded, intermediate, decoupled };

struct PairCoupling {
    int a = 0, b = 0;           // 0-based atom indices
    double distance_um = 0.0;
    double u_over_omega = 0.0;
    PairRegime regime = PairRegime::decoupled;
};

struct RegimeReport {
    std::vector<PairCoupling> pairs;
    bool super_atom = false;  // every pair blockaded
    std::string summary;
};

// Labels each pair by U/omega: blockaded (>1), intermediate (1e-2,1],
// decoupled (<=1e-2).  Diagnostic only.
RegimeReport regime_report(const AtomArrangement& arr, const DriveParams& drive);

// --- exports ---------------------------------------------------------------

// CSV "index,eigenvalue_rad_per_us,bright_prob" (1-based index)
std::string spectrum_to_csv(const SpectralDecomposition& sd);
// CSV "j,k,freq_MHz,weight"
std::string lines_to_csv(const std::vector<TransitionLine>& lines);

}  // namespace rydsim
