#pragma once

// Interaction graphs for spin-chain batteries.
//
// Supercube labeling: vertex v <-> binary(v - 1), bit 1 most significant.
// Hamming distance between labels classifies a pair: 1 = cube edge,
// 2 = face diagonal, 3 = body diagonal.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qbattery/errors.hpp"

namespace qbattery {

enum class EdgeClass { Edge, FaceDiagonal, BodyDiagonal };

inline const char* to_string(EdgeClass c) {
    switch (c) {
        case EdgeClass::Edge: return "edge";
        case EdgeClass::FaceDiagonal: return "face_diagonal";
        case EdgeClass::BodyDiagonal: return "body_diagonal";
    }
    return "?";
}

inline EdgeClass parse_edge_class(const std::string& s) {
    if (s == "edge") return EdgeClass::Edge;
    if (s == "face_diagonal") return EdgeClass::FaceDiagonal;
    if (s == "body_diagonal") return EdgeClass::BodyDiagonal;
    throw DomainError("unknown edge class '" + s + "'");
}

struct Edge {
    int i = 0;
    int j = 0;
    EdgeClass kind = EdgeClass::Edge;

    friend bool operator==(const Edge&, const Edge&) = default;
};

using SitePair = std::pair<int, int>;

/// Immutable interaction graph on sites 1..n. Edges are stored with i < j.
class SpinTopology {
public:
    SpinTopology(int n, std::vector<Edge> edges, std::string name)
        : n_(n), edges_(std::move(edges)), name_(std::move(name)) {
        if (n_ < 1) throw DomainError("topology needs at least one site, got n = " + std::to_string(n_));
        std::set<SitePair> seen;
        for (auto& e : edges_) {
            if (e.i > e.j) std::swap(e.i, e.j);
            if (e.i < 1 || e.j > n_) {
                throw DomainError("edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                                  ") has an endpoint outside [1, " + std::to_string(n_) + "]");
            }
            if (e.i == e.j) throw DomainError("self-loop at site " + std::to_string(e.i));
            if (!seen.insert({e.i, e.j}).second) {
                throw DomainError("duplicate edge (" + std::to_string(e.i) + "," + std::to_string(e.j) + ")");
            }
        }
        if (!connected()) throw DomainError("topology '" + name_ + "' is not connected");
    }

    int n() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::string& name() const { return name_; }
    std::size_t edge_count() const { return edges_.size(); }

    bool has_edge(int a, int b) const {
        if (a > b) std::swap(a, b);
        return std::any_of(edges_.begin(), edges_.end(), [&](const Edge& e) { return e.i == a && e.j == b; });
    }

    /// degree()[k] is the degree of site k + 1.
    std::vector<int> degrees() const {
        std::vector<int> d(static_cast<std::size_t>(n_), 0);
        for (const auto& e : edges_) {
            ++d[static_cast<std::size_t>(e.i - 1)];
            ++d[static_cast<std::size_t>(e.j - 1)];
        }
        return d;
    }

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_) + 1);
        for (const auto& e : edges_) {
            adj[static_cast<std::size_t>(e.i)].push_back(e.j);
            adj[static_cast<std::size_t>(e.j)].push_back(e.i);
        }
        for (auto& row : adj) std::sort(row.begin(), row.end());
        return adj;
    }

    std::set<SitePair> edge_set() const {
        std::set<SitePair> s;
        for (const auto& e : edges_) s.insert({e.i, e.j});
        return s;
    }

private:
    bool connected() const {
        const auto adj = adjacency();
        std::vector<bool> seen(static_cast<std::size_t>(n_) + 1, false);
        std::vector<int> stack{1};
        seen[1] = true;
        int visited = 0;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            ++visited;
            for (int w : adj[static_cast<std::size_t>(v)]) {
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = true;
                    stack.push_back(w);
                }
            }
        }
        return visited == n_;
    }

    int n_;
    std::vector<Edge> edges_;
    std::string name_;
};

inline SpinTopology open_chain(int n) {
    if (n < 2) throw DomainError("open chain needs n >= 2, got " + std::to_string(n));
    std::vector<Edge> edges;
    for (int i = 1; i < n; ++i) edges.push_back({i, i + 1, EdgeClass::Edge});
    return {n, std::move(edges), "open"};
}

inline SpinTopology closed_chain(int n) {
    if (n < 3) throw DomainError("closed chain needs n >= 3, got " + std::to_string(n));
    std::vector<Edge> edges;
    for (int i = 1; i < n; ++i) edges.push_back({i, i + 1, EdgeClass::Edge});
    edges.push_back({1, n, EdgeClass::Edge});
    return {n, std::move(edges), "closed"};
}

inline int cube_hamming(int a, int b) { return std::popcount(static_cast<unsigned>((a - 1) ^ (b - 1))); }

/// The 12 cube edges in the order of the three coupling families (i,i+1), (i,i+2), (i,i+4).
inline SpinTopology supercube() {
    std::vector<Edge> edges;
    for (int i : {1, 3, 5, 7}) edges.push_back({i, i + 1, EdgeClass::Edge});
    for (int i : {1, 2, 5, 6}) edges.push_back({i, i + 2, EdgeClass::Edge});
    for (int i : {1, 2, 3, 4}) edges.push_back({i, i + 4, EdgeClass::Edge});
    return {8, std::move(edges), "supercube"};
}

/// Bit-complement pairs (1,8), (2,7), (3,6), (4,5).
inline std::vector<SitePair> canonical_body_diagonals() {
    std::vector<SitePair> out;
    for (int a = 1; a <= 8; ++a)
        for (int b = a + 1; b <= 8; ++b)
            if (cube_hamming(a, b) == 3) out.emplace_back(a, b);
    return out;
}

/// The 12 pairs whose labels differ in exactly two bits.
inline std::vector<SitePair> canonical_face_diagonals() {
    std::vector<SitePair> out;
    for (int a = 1; a <= 8; ++a)
        for (int b = a + 1; b <= 8; ++b)
            if (cube_hamming(a, b) == 2) out.emplace_back(a, b);
    return out;
}

/// Two cross-body diagonals used by the default augmentation preset.
inline std::vector<SitePair> preset_body_diagonals() { return {{1, 8}, {2, 7}}; }

/// Face diagonals of the top face {5,6,7,8} (leading bit 1).
inline std::vector<SitePair> preset_top_face_diagonals() { return {{5, 8}, {6, 7}}; }

inline SpinTopology supercube_augmented(const std::vector<SitePair>& body_diagonals,
                                        const std::vector<SitePair>& face_diagonals,
                                        std::string name = "supercube-augmented") {
    auto edges = supercube().edges();
    auto add = [&](const std::vector<SitePair>& requested, int distance, EdgeClass kind) {
        for (auto [a, b] : requested) {
            if (a > b) std::swap(a, b);
            if (a < 1 || b > 8 || cube_hamming(a, b) != distance) {
                throw DomainError("(" + std::to_string(a) + "," + std::to_string(b) + ") is not a canonical " +
                                  to_string(kind) + " of the supercube");
            }
            edges.push_back({a, b, kind});
        }
    };
    add(body_diagonals, 3, EdgeClass::BodyDiagonal);
    add(face_diagonals, 2, EdgeClass::FaceDiagonal);
    return {8, std::move(edges), std::move(name)};
}

/// Two unit cubes sharing the face {5,6,7,8}; new vertices 9..12 sit opposite 5..8.
inline SpinTopology cube_extension_12() {
    auto edges = supercube().edges();
    for (int k = 0; k < 4; ++k) edges.push_back({5 + k, 9 + k, EdgeClass::Edge});
    for (auto [a, b] : {SitePair{9, 10}, SitePair{11, 12}, SitePair{9, 11}, SitePair{10, 12}}) {
        edges.push_back({a, b, EdgeClass::Edge});
    }
    return {12, std::move(edges), "cube12"};
}

namespace detail {

using Point3 = std::array<double, 3>;

inline std::vector<Edge> edges_at_distance(const std::vector<Point3>& pts, double squared_distance) {
    std::vector<Edge> edges;
    for (std::size_t a = 0; a < pts.size(); ++a) {
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            double d2 = 0.0;
            for (int c = 0; c < 3; ++c) d2 += (pts[a][c] - pts[b][c]) * (pts[a][c] - pts[b][c]);
            if (std::abs(d2 - squared_distance) < 1e-9) {
                edges.push_back({static_cast<int>(a) + 1, static_cast<int>(b) + 1, EdgeClass::Edge});
            }
        }
    }
    return edges;
}

}  // namespace detail

/// Vertex order: nonzero coordinate slots (0,1), (0,2), (1,2), each with signs ++, +-, -+, --.
inline std::vector<detail::Point3> cuboctahedron_vertices() {
    std::vector<detail::Point3> pts;
    const std::array<std::pair<int, int>, 3> slots{{{0, 1}, {0, 2}, {1, 2}}};
    for (auto [p, q] : slots) {
        for (double s1 : {1.0, -1.0}) {
            for (double s2 : {1.0, -1.0}) {
                detail::Point3 v{0.0, 0.0, 0.0};
                v[static_cast<std::size_t>(p)] = s1;
                v[static_cast<std::size_t>(q)] = s2;
                pts.push_back(v);
            }
        }
    }
    return pts;
}

/// Vertex order: for signs (s1, s2) in ++, +-, -+, --, cyclic shifts of (0, s1, s2*phi).
inline std::vector<detail::Point3> icosahedron_vertices() {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<detail::Point3> pts;
    for (double s1 : {1.0, -1.0}) {
        for (double s2 : {1.0, -1.0}) {
            const detail::Point3 base{0.0, s1, s2 * phi};
            for (int k = 0; k < 3; ++k) {
                detail::Point3 v{};
                for (int c = 0; c < 3; ++c) v[static_cast<std::size_t>(c)] = base[static_cast<std::size_t>((c - k + 3) % 3)];
                pts.push_back(v);
            }
        }
    }
    return pts;
}

inline SpinTopology cuboctahedron_12() {
    return {12, detail::edges_at_distance(cuboctahedron_vertices(), 2.0), "cuboctahedron"};
}

inline SpinTopology icosahedron_12() {
    return {12, detail::edges_at_distance(icosahedron_vertices(), 4.0), "icosahedron"};
}

inline std::vector<std::string> topology_names() {
    return {"open",           "closed",           "supercube",     "supercube-body2",
            "supercube-body4", "supercube-topface", "supercube-allface", "supercube-body4-allface",
            "cube12",         "cuboctahedron",    "icosahedron"};
}

/// Catalog lookup. `n` applies to the chains only.
inline SpinTopology topology_by_name(const std::string& name, int n = 8) {
    if (name == "open") return open_chain(n);
    if (name == "closed") return closed_chain(n);
    if (name == "supercube") return supercube();
    if (name == "supercube-body2") return supercube_augmented(preset_body_diagonals(), {}, name);
    if (name == "supercube-body4") return supercube_augmented(canonical_body_diagonals(), {}, name);
    if (name == "supercube-topface") return supercube_augmented({}, preset_top_face_diagonals(), name);
    if (name == "supercube-allface") return supercube_augmented({}, canonical_face_diagonals(), name);
    if (name == "supercube-body4-allface") {
        return supercube_augmented(canonical_body_diagonals(), canonical_face_diagonals(), name);
    }
    if (name == "cube12") return cube_extension_12();
    if (name == "cuboctahedron") return cuboctahedron_12();
    if (name == "icosahedron") return icosahedron_12();
    std::string known;
    for (const auto& k : topology_names()) known += (known.empty() ? "" : ", ") + k;
    throw DomainError("unknown topology '" + name + "' (available: " + known + ")");
}

// Plain-text edge list: "n <count>" then one "i j class" line per edge.

inline void write_edge_list(std::ostream& os, const SpinTopology& topo) {
    os << "n " << topo.n() << '\n';
    for (const auto& e : topo.edges()) os << e.i << ' ' << e.j << ' ' << to_string(e.kind) << '\n';
}

inline std::string to_edge_list(const SpinTopology& topo) {
    std::ostringstream os;
    write_edge_list(os, topo);
    return os.str();
}

inline SpinTopology read_edge_list(std::istream& is, std::string name = "edge-list") {
    std::string line;
    int lineno = 0;
    int n = -1;
    std::vector<Edge> edges;
    auto fail = [&](const std::string& msg) -> DomainError {
        return DomainError("edge list line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (n < 0) {
            if (first != "n" || !(ls >> n) || n < 1) throw fail("expected header 'n <count>'");
            continue;
        }
        Edge e;
        std::string kind;
        try {
            std::size_t used = 0;
            e.i = std::stoi(first, &used);
            if (used != first.size()) throw fail("bad site index '" + first + "'");
        } catch (const std::logic_error&) {
            throw fail("bad site index '" + first + "'");
        }
        if (!(ls >> e.j >> kind)) throw fail("expected 'i j class'");
        std::string extra;
        if (ls >> extra) throw fail("trailing token '" + extra + "'");
        try {
            e.kind = parse_edge_class(kind);
        } catch (const DomainError& err) {
            throw fail(err.what());
        }
        edges.push_back(e);
    }
    if (n < 0) throw DomainError("edge list is empty (missing 'n <count>' header)");
    return {n, std::move(edges), std::move(name)};
}

inline SpinTopology parse_edge_list(const std::string& text, std::string name = "edge-list") {
    std::istringstream is(text);
    return read_edge_list(is, std::move(name));
}

}  // namespace qbattery
