#pragma once

#include <Eigen/Dense>
#include <optional>
#include <set>
#include <string>
#include <vector>
#include <iosfwd>

namespace rydsim {

using Vec3 = Eigen::Vector3d;

// Labelled 3D atom positions, um.  Atom labels are 1..N in storage order;
// label order fixes the qubit/bit order everywhere downstream (atom 1 is
// the most significant bit of a basis index).
struct AtomArrangement {
    std::vector<Vec3> positions;

    int size() const { return static_cast<int>(positions.size()); }
    double distance(int j, int k) const { return (positions[j] - positions[k]).norm(); }

    // all pairwise distances, sorted ascending (congruence fingerprint)
    std::vector<double> distance_multiset() const;
    void validate() const;  // throws std::invalid_argument on coincident atoms
};

struct Edge {
    int a, b;  // 0-based vertex indices, a < b
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Vertices are 0-based; atom with label l is vertex l-1.
struct BlockadeGraph {
    int n_vertices = 0;
    std::set<Edge> edges;
    // common edge length in um, present when all edge distances agree
    // within 1% relative spread
    std::optional<double> edge_length;

    bool has_edge(int a, int b) const;
    int degree(int v) const;
    int n_edges() const { return static_cast<int>(edges.size()); }
    std::vector<int> neighbors(int v) const;

    static BlockadeGraph from_edges(int n, std::vector<std::pair<int, int>> e,
                                    std::optional<double> edge_length = {});
    // canonical reference graphs
    static BlockadeGraph path(int n, std::optional<double> edge_length = {});
    static BlockadeGraph cycle(int n, std::optional<double> edge_length = {});
    static BlockadeGraph star(int n, std::optional<double> edge_length = {});
    static BlockadeGraph complete(int n, std::optional<double> edge_length = {});
    // complete graph on 4 vertices minus the edge (0,2)
    static BlockadeGraph diamond(std::optional<double> edge_length = {});
};

enum class TransformationFamily {
    three_atom_bend,      // value: bending angle, degrees
    star_to_tetrahedron,  // value: xi in [0,1]
    tetra_to_square,      // value: eta in [0,1]
    square_to_diamond,    // value: zeta in [0,1]
    hexagon_to_antiprism, // value: z in units of d
};

struct TransformationParam {
    TransformationFamily family;
    double value = 0.0;
    double scale_um = 8.0;  // d
};

const char* family_name(TransformationFamily f);
TransformationFamily family_from_name(const std::string& name);
// inclusive parameter domain used by sweeps
std::pair<double, double> family_domain(TransformationFamily f);

// --- arrangement constructors -------------------------------------------

// A(-d,0,0), B(0,0,0), C(-d cos(theta), d sin(theta), 0); AB = BC = d.
AtomArrangement three_atom_bend(double theta_deg, double d_um);

// Variant switch for the leaf radius law of the star->tetrahedron family.
// `equal_edge` shrinks the leaf circumradius as rho(xi) = 1 - (1-1/sqrt3)xi
// so that xi=1 is a regular tetrahedron with all six edges equal to d.
// `legacy_coefficient` keeps the coefficient 2/sqrt3 found in older notes;
// it grows the base triangle and does not end on a regular tetrahedron.
enum class StarTetraVariant { equal_edge, legacy_coefficient };

// Atom 1 is the center (lifted to height sqrt(2/3) xi d), atoms 2..4 the
// leaves at polar angles 0, 2pi/3, 4pi/3.
AtomArrangement star_to_tetrahedron(double xi, double d_um,
                                    StarTetraVariant variant = StarTetraVariant::equal_edge);

// Regular tetrahedron (eta=0) flattening into a square of side d (eta=1).
AtomArrangement tetra_to_square(double eta, double d_um);

// Square of side d (zeta=0) deforming into the diamond configuration
// (zeta=1) where the y-pair separates to d*sqrt3.
AtomArrangement square_to_diamond(double zeta, double d_um);

// Two concentric triangles of side d (circumradius d/sqrt3) at polar
// angles j*pi/3; even-labelled atoms lifted to height z.  The adjacent
// distance obeys AB(z) = sqrt(d^2/3 + z^2).
AtomArrangement hexagon_to_antiprism(double z_um, double d_um);

AtomArrangement make_arrangement(const TransformationParam& p,
                                 StarTetraVariant variant = StarTetraVariant::equal_edge);

// --- blockade graph extraction -------------------------------------------

// Edge (j,k) present iff |r_j - r_k| < r_b.  Throws std::invalid_argument
// if any pairwise distance is within 1e-9 relative of r_b (ambiguous
// boundary), naming the offending pair.
BlockadeGraph blockade_graph(const AtomArrangement& arr, double r_b_um);

// --- classification -------------------------------------------------------

enum class GraphKind { path, cycle, star, complete, diamond, other };

struct GraphClass {
    GraphKind kind = GraphKind::other;
    int n_vertices = 0;
    std::string certificate;  // canonical adjacency form, always populated

    std::string to_string() const;  // "star_4", "diamond", "other(<cert>)"
    friend bool operator==(const GraphClass&, const GraphClass&) = default;
};

// Brute-force classification over all vertex permutations (n <= 8).
GraphClass classify_graph(const BlockadeGraph& g);

// Lexicographically minimal upper-triangle adjacency bitstring over all
// vertex permutations, rendered as hex.
std::string canonical_certificate(const BlockadeGraph& g);

// --- import/export --------------------------------------------------------

std::string arrangement_to_json(const AtomArrangement& arr);
AtomArrangement arrangement_from_json(const std::string& text);
std::string arrangement_to_csv(const AtomArrangement& arr);

}  // namespace rydsim
