#include "rydsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rydsim {

namespace {

constexpr double pi = 3.14159265358979323846;

[[noreturn]] void param_error(const std::string& msg) {
    throw std::invalid_argument(msg);
}

void require_unit_interval(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
        param_error(std::string(name) + " must lie in [0,1], got " + std::to_string(v));
}

void require_positive(double v, const char* name) {
    if (!(v > 0.0))
        param_error(std::string(name) + " must be > 0, got " + std::to_string(v));
}

}  // namespace

std::vector<double> AtomArrangement::distance_multiset() const {
    std::vector<double> d;
    for (int j = 0; j < size(); ++j)
        for (int k = j + 1; k < size(); ++k)
            d.push_back(distance(j, k));
    std::sort(d.begin(), d.end());
    return d;
}

void AtomArrangement::validate() const {
    for (int j = 0; j < size(); ++j)
        for (int k = j + 1; k < size(); ++k)
            if (!(distance(j, k) > 0.0))
                param_error("atoms " + std::to_string(j + 1) + " and " + std::to_string(k + 1) +
                            " coincide");
}

bool BlockadeGraph::has_edge(int a, int b) const {
    if (a > b) std::swap(a, b);
    return edges.count(Edge{a, b}) > 0;
}

int BlockadeGraph::degree(int v) const {
    int d = 0;
    for (const auto& e : edges)
        if (e.a == v || e.b == v) ++d;
    return d;
}

std::vector<int> BlockadeGraph::neighbors(int v) const {
    std::vector<int> out;
    for (const auto& e : edges) {
        if (e.a == v) out.push_back(e.b);
        if (e.b == v) out.push_back(e.a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

BlockadeGraph BlockadeGraph::from_edges(int n, std::vector<std::pair<int, int>> e,
                                        std::optional<double> edge_length) {
    BlockadeGraph g;
    g.n_vertices = n;
    g.edge_length = edge_length;
    for (auto [a, b] : e) {
        if (a == b) param_error("self-loop at vertex " + std::to_string(a));
        if (a < 0 || b < 0 || a >= n || b >= n) param_error("edge vertex out of range");
        if (a > b) std::swap(a, b);
        g.edges.insert(Edge{a, b});
    }
    return g;
}

BlockadeGraph BlockadeGraph::path(int n, std::optional<double> len) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return from_edges(n, e, len);
}

BlockadeGraph BlockadeGraph::cycle(int n, std::optional<double> len) {
    if (n < 3) param_error("cycle needs at least 3 vertices");
    auto g = path(n, len);
    g.edges.insert(Edge{0, n - 1});
    return g;
}

BlockadeGraph BlockadeGraph::star(int n, std::optional<double> len) {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i < n; ++i) e.emplace_back(0, i);
    return from_edges(n, e, len);
}

BlockadeGraph BlockadeGraph::complete(int n, std::optional<double> len) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return from_edges(n, e, len);
}

BlockadeGraph BlockadeGraph::diamond(std::optional<double> len) {
    auto g = complete(4, len);
    g.edges.erase(Edge{0, 2});
    return g;
}

const char* family_name(TransformationFamily f) {
    switch (f) {
        case TransformationFamily::three_atom_bend: return "three_atom_bend";
        case TransformationFamily::star_to_tetrahedron: return "star_to_tetrahedron";
        case TransformationFamily::tetra_to_square: return "tetra_to_square";
        case TransformationFamily::square_to_diamond: return "square_to_diamond";
        case TransformationFamily::hexagon_to_antiprism: return "hexagon_to_antiprism";
    }
    return "?";
}

TransformationFamily family_from_name(const std::string& name) {
    // accept both snake_case and the kebab-case CLI spellings
    auto norm = name;
    std::replace(norm.begin(), norm.end(), '-', '_');
    if (norm == "three_atom_bend" || norm == "bend") return TransformationFamily::three_atom_bend;
    if (norm == "star_to_tetrahedron" || norm == "star_to_tetra")
        return TransformationFamily::star_to_tetrahedron;
    if (norm == "tetra_to_square") return TransformationFamily::tetra_to_square;
    if (norm == "square_to_diamond") return TransformationFamily::square_to_diamond;
    if (norm == "hexagon_to_antiprism" || norm == "hexagon_antiprism")
        return TransformationFamily::hexagon_to_antiprism;
    param_error("unknown transformation family '" + name + "'");
}

std::pair<double, double> family_domain(TransformationFamily f) {
    switch (f) {
        case TransformationFamily::three_atom_bend: return {60.0, 180.0};
        case TransformationFamily::hexagon_to_antiprism: return {0.0, 1.5};  // z/d
        default: return {0.0, 1.0};
    }
}

AtomArrangement three_atom_bend(double theta_deg, double d_um) {
    if (!(theta_deg > 0.0 && theta_deg <= 180.0))
        param_error("bend angle must lie in (0, 180], got " + std::to_string(theta_deg));
    require_positive(d_um, "d");
    const double th = theta_deg * pi / 180.0;
    AtomArrangement arr;
    arr.positions = {
        Vec3(-d_um, 0.0, 0.0),
        Vec3(0.0, 0.0, 0.0),
        Vec3(-d_um * std::cos(th), d_um * std::sin(th), 0.0),
    };
    arr.validate();
    return arr;
}

AtomArrangement star_to_tetrahedron(double xi, double d_um, StarTetraVariant variant) {
    require_unit_interval(xi, "xi");
    require_positive(d_um, "d");
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    const double coeff = variant == StarTetraVariant::equal_edge ? 1.0 - inv_sqrt3
                                                                 : 1.0 - 2.0 * inv_sqrt3;
    const double rho = 1.0 - coeff * xi;
    const double height = std::sqrt(2.0 / 3.0) * xi;
    AtomArrangement arr;
    arr.positions.push_back(Vec3(0.0, 0.0, height * d_um));
    for (int i = 0; i < 3; ++i) {
        const double th = 2.0 * pi * i / 3.0;
        arr.positions.push_back(Vec3(rho * std::cos(th), rho * std::sin(th), 0.0) * d_um);
    }
    arr.validate();
    return arr;
}

AtomArrangement tetra_to_square(double eta, double d_um) {
    require_unit_interval(eta, "eta");
    require_positive(d_um, "d");
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
    AtomArrangement arr;
    arr.positions = {
        Vec3(-eta / s2, 0.0, std::sqrt(2.0 / 3.0) * (1.0 - eta)),
        Vec3(1.0 / s3 + (1.0 / s2 - 1.0 / s3) * eta, 0.0, 0.0),
        Vec3(-(1.0 - eta) / (2.0 * s3), 0.5 + (1.0 / s2 - 0.5) * eta, 0.0),
        Vec3(-(1.0 - eta) / (2.0 * s3), -0.5 + (-1.0 / s2 + 0.5) * eta, 0.0),
    };
    for (auto& p : arr.positions) p *= d_um;
    arr.validate();
    return arr;
}

AtomArrangement square_to_diamond(double zeta, double d_um) {
    require_unit_interval(zeta, "zeta");
    require_positive(d_um, "d");
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
    const double x = 1.0 / s2 + (0.5 - 1.0 / s2) * zeta;
    const double y = 1.0 / s2 + (s3 / 2.0 - 1.0 / s2) * zeta;
    AtomArrangement arr;
    arr.positions = {
        Vec3(-x, 0.0, 0.0),
        Vec3(x, 0.0, 0.0),
        Vec3(0.0, y, 0.0),
        Vec3(0.0, -y, 0.0),
    };
    for (auto& p : arr.positions) p *= d_um;
    arr.validate();
    return arr;
}

AtomArrangement hexagon_to_antiprism(double z_um, double d_um) {
    if (!(z_um >= 0.0)) param_error("z must be >= 0, got " + std::to_string(z_um));
    require_positive(d_um, "d");
    const double radius = d_um / std::sqrt(3.0);
    AtomArrangement arr;
    for (int j = 1; j <= 6; ++j) {
        const double th = j * pi / 3.0;
        const double z = (j % 2 == 0) ? z_um : 0.0;
        arr.positions.push_back(Vec3(radius * std::cos(th), radius * std::sin(th), z));
    }
    arr.validate();
    return arr;
}

AtomArrangement make_arrangement(const TransformationParam& p, StarTetraVariant variant) {
    switch (p.family) {
        case TransformationFamily::three_atom_bend:
            return three_atom_bend(p.value, p.scale_um);
        case TransformationFamily::star_to_tetrahedron:
            return star_to_tetrahedron(p.value, p.scale_um, variant);
        case TransformationFamily::tetra_to_square:
            return tetra_to_square(p.value, p.scale_um);
        case TransformationFamily::square_to_diamond:
            return square_to_diamond(p.value, p.scale_um);
        case TransformationFamily::hexagon_to_antiprism:
            return hexagon_to_antiprism(p.value * p.scale_um, p.scale_um);
    }
    param_error("bad transformation family");
}

BlockadeGraph blockade_graph(const AtomArrangement& arr, double r_b_um) {
    require_positive(r_b_um, "r_b");
    arr.validate();
    const int n = arr.size();
    BlockadeGraph g;
    g.n_vertices = n;
    std::vector<double> lengths;
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            const double r = arr.distance(j, k);
            if (std::abs(r - r_b_um) <= 1e-9 * r_b_um)
                param_error("pair (" + std::to_string(j + 1) + "," + std::to_string(k + 1) +
                            ") sits on the blockade radius: distance " + std::to_string(r) +
                            " um vs r_b " + std::to_string(r_b_um) + " um");
            if (r < r_b_um) {
                g.edges.insert(Edge{j, k});
                lengths.push_back(r);
            }
        }
    }
    if (!lengths.empty()) {
        const auto [mn, mx] = std::minmax_element(lengths.begin(), lengths.end());
        const double mean = std::accumulate(lengths.begin(), lengths.end(), 0.0) / lengths.size();
        if ((*mx - *mn) <= 0.01 * mean) g.edge_length = mean;
    }
    return g;
}

namespace {

// upper-triangle adjacency bits under a vertex relabelling
uint64_t adjacency_bits(const BlockadeGraph& g, const std::vector<int>& perm) {
    uint64_t bits = 0;
    int pos = 0;
    for (int i = 0; i < g.n_vertices; ++i)
        for (int j = i + 1; j < g.n_vertices; ++j, ++pos)
            if (g.has_edge(perm[i], perm[j])) bits |= (uint64_t(1) << pos);
    return bits;
}

uint64_t canonical_bits(const BlockadeGraph& g) {
    std::vector<int> perm(g.n_vertices);
    std::iota(perm.begin(), perm.end(), 0);
    uint64_t best = ~uint64_t(0);
    do {
        best = std::min(best, adjacency_bits(g, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

std::string canonical_certificate(const BlockadeGraph& g) {
    std::ostringstream os;
    os << "n" << g.n_vertices << ":" << std::hex << canonical_bits(g);
    return os.str();
}

GraphClass classify_graph(const BlockadeGraph& g) {
    if (g.n_vertices < 1 || g.n_vertices > 8)
        param_error("classify_graph handles 1..8 vertices, got " + std::to_string(g.n_vertices));
    GraphClass out;
    out.n_vertices = g.n_vertices;
    out.certificate = canonical_certificate(g);
    const int n = g.n_vertices;

    auto matches = [&](const BlockadeGraph& ref) {
        return canonical_certificate(ref) == out.certificate;
    };

    // Small-n aliases (K2 = P2 = S2, C3 = K3, S3 = P3, ...) resolve in this
    // order; the 3-atom chain reports path_3 and the triangle complete_3.
    if (matches(BlockadeGraph::complete(n))) {
        out.kind = GraphKind::complete;
    } else if (n >= 3 && matches(BlockadeGraph::cycle(n))) {
        out.kind = GraphKind::cycle;
    } else if (n == 4 && matches(BlockadeGraph::diamond())) {
        out.kind = GraphKind::diamond;
    } else if (n >= 2 && matches(BlockadeGraph::path(n))) {
        out.kind = GraphKind::path;
    } else if (n >= 4 && matches(BlockadeGraph::star(n))) {
        out.kind = GraphKind::star;
    } else {
        out.kind = GraphKind::other;
    }
    return out;
}

std::string GraphClass::to_string() const {
    switch (kind) {
        case GraphKind::path: return "path_" + std::to_string(n_vertices);
        case GraphKind::cycle: return "cycle_" + std::to_string(n_vertices);
        case GraphKind::star: return "star_" + std::to_string(n_vertices);
        case GraphKind::complete: return "complete_" + std::to_string(n_vertices);
        case GraphKind::diamond: return "diamond";
        case GraphKind::other: return "other(" + certificate + ")";
    }
    return "?";
}

std::string arrangement_to_json(const AtomArrangement& arr) {
    nlohmann::ordered_json j;
    j["atoms"] = nlohmann::ordered_json::array();
    for (int i = 0; i < arr.size(); ++i) {
        nlohmann::ordered_json a;
        a["label"] = i + 1;
        a["xyz_um"] = {arr.positions[i].x(), arr.positions[i].y(), arr.positions[i].z()};
        j["atoms"].push_back(a);
    }
    return j.dump(2) + "\n";
}

AtomArrangement arrangement_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        param_error(std::string("arrangement JSON parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array())
        param_error("arrangement JSON must be an object with an 'atoms' array");
    const auto& atoms = j["atoms"];
    std::vector<std::pair<int, Vec3>> listed;
    for (const auto& a : atoms) {
        if (!a.contains("label") || !a.contains("xyz_um") || a["xyz_um"].size() != 3)
            param_error("each atom needs 'label' and a 3-element 'xyz_um'");
        listed.emplace_back(a["label"].get<int>(),
                            Vec3(a["xyz_um"][0].get<double>(), a["xyz_um"][1].get<double>(),
                                 a["xyz_um"][2].get<double>()));
    }
    std::sort(listed.begin(), listed.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    AtomArrangement arr;
    for (int i = 0; i < static_cast<int>(listed.size()); ++i) {
        if (listed[i].first != i + 1)
            param_error("atom labels must be consecutive 1..N");
        arr.positions.push_back(listed[i].second);
    }
    arr.validate();
    return arr;
}

std::string arrangement_to_csv(const AtomArrangement& arr) {
    std::ostringstream os;
    os << "label,x_um,y_um,z_um\n";
    os.precision(12);
    for (int i = 0; i < arr.size(); ++i)
        os << (i + 1) << "," << arr.positions[i].x() << "," << arr.positions[i].y() << ","
           << arr.positions[i].z() << "\n";
    return os.str();
}

}  // namespace rydsim
