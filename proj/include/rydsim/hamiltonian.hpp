#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "rydsim/geometry.hpp"

namespace rydsim {

using cplx = std::complex<double>;
using MatrixC = Eigen::MatrixXcd;

// Global drive and interaction parameters, rad/us and rad um^6/us.
struct DriveParams {
    double omega = 0.0;     // Rabi angular frequency
    double c6 = 0.0;        // van der Waals coefficient, > 0 (repulsive)
    double detuning = 0.0;  // global offset; adds -detuning per excitation

    double interaction(double r_um) const { return c6 / std::pow(r_um, 6); }
    double blockade_radius() const;
    void validate() const;
};

struct IsingParams {
    double j_coupling = 0.0;
    double h_x = 0.0;
    std::vector<double> h_z;
};

// Quantum-Ising parameters for a graph plus the uniform energy offset that
// makes H_truncated = H_ising + offset * I an exact identity.
struct IsingMapping {
    IsingParams params;
    double offset = 0.0;
};

// Convention switch for the longitudinal field derived from a graph.
// `quarter` (-deg_j * U/4) is the value obtained by expanding the
// interaction term with n = (1 - sigma_z)/2 and is consistent with the
// offset identity; `half` (-deg_j * U/2) reproduces a commonly quoted but
// inconsistent factor and is kept for comparison only.
enum class HzConvention { quarter, half };

// Dense Hermitian operator on the 2^N product basis.  Basis index b
// encodes the bitstring b1 b2 ... bN with atom 1 as the most significant
// bit; bit value 1 means the Rydberg state.  Index 0 is |0...0>.
struct HamiltonianMatrix {
    int n_qubits = 0;
    MatrixC entries;
    std::string source;  // "full" | "truncated" | "ising" | "pxp"

    int dim() const { return 1 << n_qubits; }
    static bool excited(int basis_index, int atom, int n_qubits) {
        return (basis_index >> (n_qubits - 1 - atom)) & 1;
    }
    double hermiticity_defect() const;
    void validate() const;  // Hermitian within 1e-12, dimension check
};

inline constexpr int max_qubits = 12;  // dense-matrix guard

// Eq.-1-style Hamiltonian: omega/2 single-atom flips plus the van der
// Waals diagonal summed over ALL pairs.
HamiltonianMatrix build_full(const AtomArrangement& arr, const DriveParams& drive);

// Same, but with the interaction sum restricted to graph edges.
HamiltonianMatrix build_full_truncated(const AtomArrangement& arr, const DriveParams& drive,
                                       const BlockadeGraph& graph);

// J sum_edges sz sz + sum_j (h_x sx + h_z[j] sz), with sz|0> = +|0>.
HamiltonianMatrix build_ising(const BlockadeGraph& graph, const IsingParams& params);

// J = U(d)/4, h_x = omega/2, h_z[j] = -deg_j U(d)/4 (or /2 under
// HzConvention::half), offset = |E| U(d)/4.  Requires graph.edge_length
// unless the graph has no edges.
IsingMapping ising_params_from(const DriveParams& drive, const BlockadeGraph& graph,
                               HzConvention convention = HzConvention::quarter);

// Perfect-blockade limit: H = (omega/2) sum_j [prod_{k in nbr(j)} (1-n_k)] sx_j.
// Supported on the independent-set sector containing |0...0>.
HamiltonianMatrix build_pxp(const BlockadeGraph& graph, double omega);

// CSV dump of nonzero entries: "row,col,re,im" (0-based indices).
std::string hamiltonian_to_csv(const HamiltonianMatrix& h, double tol = 0.0);

}  // namespace rydsim
