#include "rydsim/hamiltonian.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rydsim/units.hpp"

namespace rydsim {

double DriveParams::blockade_radius() const { return blockade_radius_um(c6, omega); }

void DriveParams::validate() const {
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be > 0");
    if (!(c6 > 0.0)) throw std::invalid_argument("c6 must be > 0");
}

double HamiltonianMatrix::hermiticity_defect() const {
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
}

void HamiltonianMatrix::validate() const {
    if (entries.rows() != dim() || entries.cols() != dim())
        throw std::invalid_argument("Hamiltonian dimension mismatch");
    if (hermiticity_defect() > 1e-12)
        throw std::invalid_argument("Hamiltonian is not Hermitian");
}

namespace {

void check_capacity(int n) {
    if (n < 1) throw std::invalid_argument("need at least one atom");
    if (n > max_qubits)
        throw std::invalid_argument("dense build capped at " + std::to_string(max_qubits) +
                                    " qubits, got " + std::to_string(n));
}

HamiltonianMatrix drive_skeleton(int n, double omega, double detuning, const char* source) {
    HamiltonianMatrix h;
    h.n_qubits = n;
    h.source = source;
    const int dim = 1 << n;
    h.entries = MatrixC::Zero(dim, dim);
    for (int b = 0; b < dim; ++b) {
        for (int a = 0; a < n; ++a) {
            const int b2 = b ^ (1 << (n - 1 - a));
            h.entries(b2, b) += omega / 2.0;
        }
        if (detuning != 0.0)
            h.entries(b, b) -= detuning * __builtin_popcount(static_cast<unsigned>(b));
    }
    return h;
}

}  // namespace

HamiltonianMatrix build_full(const AtomArrangement& arr, const DriveParams& drive) {
    drive.validate();
    arr.validate();
    const int n = arr.size();
    check_capacity(n);
    auto h = drive_skeleton(n, drive.omega, drive.detuning, "full");
    for (int b = 0; b < h.dim(); ++b) {
        double diag = 0.0;
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                if (HamiltonianMatrix::excited(b, j, n) && HamiltonianMatrix::excited(b, k, n))
                    diag += drive.interaction(arr.distance(j, k));
        h.entries(b, b) += diag;
    }
    return h;
}

HamiltonianMatrix build_full_truncated(const AtomArrangement& arr, const DriveParams& drive,
                                       const BlockadeGraph& graph) {
    drive.validate();
    arr.validate();
    if (graph.n_vertices != arr.size())
        throw std::invalid_argument("graph has " + std::to_string(graph.n_vertices) +
                                    " vertices but arrangement has " + std::to_string(arr.size()));
    const int n = arr.size();
    check_capacity(n);
    auto h = drive_skeleton(n, drive.omega, drive.detuning, "truncated");
    for (int b = 0; b < h.dim(); ++b) {
        double diag = 0.0;
        for (const auto& e : graph.edges)
            if (HamiltonianMatrix::excited(b, e.a, n) && HamiltonianMatrix::excited(b, e.b, n))
                diag += drive.interaction(arr.distance(e.a, e.b));
        h.entries(b, b) += diag;
    }
    return h;
}

HamiltonianMatrix build_ising(const BlockadeGraph& graph, const IsingParams& params) {
    const int n = graph.n_vertices;
    check_capacity(n);
    if (static_cast<int>(params.h_z.size()) != n)
        throw std::invalid_argument("h_z has " + std::to_string(params.h_z.size()) +
                                    " entries for " + std::to_string(n) + " vertices");
    auto h = drive_skeleton(n, 2.0 * params.h_x, 0.0, "ising");
    // sz|0> = +|0>: basis bit 0 -> +1, bit 1 -> -1
    auto sz = [&](int b, int v) { return HamiltonianMatrix::excited(b, v, n) ? -1.0 : 1.0; };
    for (int b = 0; b < h.dim(); ++b) {
        double diag = 0.0;
        for (const auto& e : graph.edges) diag += params.j_coupling * sz(b, e.a) * sz(b, e.b);
        for (int v = 0; v < n; ++v) diag += params.h_z[v] * sz(b, v);
        h.entries(b, b) += diag;
    }
    return h;
}

IsingMapping ising_params_from(const DriveParams& drive, const BlockadeGraph& graph,
                               HzConvention convention) {
    drive.validate();
    IsingMapping m;
    m.params.h_x = drive.omega / 2.0;
    m.params.h_z.assign(graph.n_vertices, 0.0);
    if (graph.n_edges() == 0) return m;  // J arbitrary (0), no offset
    if (!graph.edge_length)
        throw std::invalid_argument(
            "graph has no common edge length; cannot map to Ising parameters");
    const double u = drive.interaction(*graph.edge_length);
    const double hz_factor = convention == HzConvention::quarter ? 0.25 : 0.5;
    m.params.j_coupling = u / 4.0;
    for (int v = 0; v < graph.n_vertices; ++v)
        m.params.h_z[v] = -graph.degree(v) * u * hz_factor;
    m.offset = graph.n_edges() * u / 4.0;
    return m;
}

HamiltonianMatrix build_pxp(const BlockadeGraph& graph, double omega) {
    const int n = graph.n_vertices;
    check_capacity(n);
    HamiltonianMatrix h;
    h.n_qubits = n;
    h.source = "pxp";
    const int dim = 1 << n;
    h.entries = MatrixC::Zero(dim, dim);
    std::vector<int> nbr_mask(n, 0);
    for (const auto& e : graph.edges) {
        nbr_mask[e.a] |= 1 << (n - 1 - e.b);
        nbr_mask[e.b] |= 1 << (n - 1 - e.a);
    }
    for (int b = 0; b < dim; ++b) {
        for (int a = 0; a < n; ++a) {
            if ((b & nbr_mask[a]) == 0) {  // all neighbors in the ground state
                const int b2 = b ^ (1 << (n - 1 - a));
                h.entries(b2, b) += omega / 2.0;
            }
        }
    }
    return h;
}

std::string hamiltonian_to_csv(const HamiltonianMatrix& h, double tol) {
    std::ostringstream os;
    os << "row,col,re,im\n";
    os.precision(15);
    for (int r = 0; r < h.dim(); ++r)
        for (int c = 0; c < h.dim(); ++c) {
            const cplx v = h.entries(r, c);
            if (std::abs(v) > tol) os << r << "," << c << "," << v.real() << "," << v.imag() << "\n";
        }
    return os.str();
}

}  // namespace rydsim
