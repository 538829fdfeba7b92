#include <gtest/gtest.h>

#include <array>
#include <fstream>
#include <map>
#include <sstream>

#include "qbattery/topology.hpp"

namespace qb = qbattery;

namespace {

std::multiset<int> degree_multiset(const qb::SpinTopology& t) {
    const auto d = t.degrees();
    return {d.begin(), d.end()};
}

std::string read_golden(const std::string& name) {
    std::ifstream is(std::string(QBATTERY_TEST_DATA) + "/golden/" + name);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

int triangle_count(const qb::SpinTopology& t) {
    int count = 0;
    for (int a = 1; a <= t.n(); ++a)
        for (int b = a + 1; b <= t.n(); ++b)
            for (int c = b + 1; c <= t.n(); ++c)
                if (t.has_edge(a, b) && t.has_edge(b, c) && t.has_edge(a, c)) ++count;
    return count;
}

// Independent construction: points of an integer/real coordinate set joined at a squared distance.
template <typename Point>
std::set<qb::SitePair> distance_graph(const std::vector<Point>& pts, double d2) {
    std::set<qb::SitePair> edges;
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            double s = 0;
            for (std::size_t c = 0; c < 3; ++c) s += (pts[a][c] - pts[b][c]) * (pts[a][c] - pts[b][c]);
            if (std::abs(s - d2) < 1e-9) edges.insert({static_cast<int>(a) + 1, static_cast<int>(b) + 1});
        }
    return edges;
}

}  // namespace

TEST(OpenChain, SmallCases) {
    EXPECT_EQ(qb::open_chain(2).edge_set(), (std::set<qb::SitePair>{{1, 2}}));
    EXPECT_EQ(qb::open_chain(3).edge_set(), (std::set<qb::SitePair>{{1, 2}, {2, 3}}));
}

TEST(OpenChain, EightSitesIsPathGraph) {
    const auto t = qb::open_chain(8);
    EXPECT_EQ(t.edge_count(), 7u);
    EXPECT_EQ(t.degrees(), (std::vector<int>{1, 2, 2, 2, 2, 2, 2, 1}));
}

TEST(OpenChain, RejectsSingleSite) { EXPECT_THROW(qb::open_chain(1), qb::DomainError); }

TEST(ClosedChain, Triangle) {
    EXPECT_EQ(qb::closed_chain(3).edge_set(), (std::set<qb::SitePair>{{1, 2}, {2, 3}, {1, 3}}));
}

TEST(ClosedChain, EightSitesIsCycle) {
    const auto t = qb::closed_chain(8);
    EXPECT_EQ(t.edge_count(), 8u);
    for (int d : t.degrees()) EXPECT_EQ(d, 2);
    auto edges = t.edge_set();
    edges.erase({1, 8});
    EXPECT_EQ(edges, qb::open_chain(8).edge_set());
}

TEST(ClosedChain, InvariantUnderCyclicRelabeling) {
    for (int n : {3, 5, 8}) {
        const auto t = qb::closed_chain(n);
        std::set<qb::SitePair> shifted;
        for (auto [i, j] : t.edge_set()) {
            int a = i % n + 1, b = j % n + 1;
            shifted.insert({std::min(a, b), std::max(a, b)});
        }
        EXPECT_EQ(shifted, t.edge_set());
    }
}

TEST(ClosedChain, RejectsTwoSites) { EXPECT_THROW(qb::closed_chain(2), qb::DomainError); }

TEST(Supercube, ExactEdgeSet) {
    const std::set<qb::SitePair> expected{{1, 2}, {3, 4}, {5, 6}, {7, 8}, {1, 3}, {2, 4},
                                          {5, 7}, {6, 8}, {1, 5}, {2, 6}, {3, 7}, {4, 8}};
    const auto t = qb::supercube();
    EXPECT_EQ(t.edge_set(), expected);
    EXPECT_EQ(t.edge_count(), 12u);
    for (int d : t.degrees()) EXPECT_EQ(d, 3);
    EXPECT_FALSE(t.has_edge(1, 8));
}

TEST(Supercube, EdgesDifferInOneBit) {
    const auto cube = qb::supercube();
    for (const auto& e : cube.edges()) EXPECT_EQ(std::popcount(unsigned((e.i - 1) ^ (e.j - 1))), 1);
}

TEST(Supercube, BipartiteByBitParity) {
    const auto cube = qb::supercube();
    for (const auto& e : cube.edges()) {
        EXPECT_NE(std::popcount(unsigned(e.i - 1)) % 2, std::popcount(unsigned(e.j - 1)) % 2);
    }
}

TEST(Supercube, InvariantUnderBitFlips) {
    const auto edges = qb::supercube().edge_set();
    for (unsigned flip : {1u, 2u, 4u}) {
        std::set<qb::SitePair> mapped;
        for (auto [i, j] : edges) {
            int a = int(((i - 1) ^ flip) + 1), b = int(((j - 1) ^ flip) + 1);
            mapped.insert({std::min(a, b), std::max(a, b)});
        }
        EXPECT_EQ(mapped, edges) << "flip " << flip;
    }
}

TEST(SupercubeAugmented, CanonicalSetsMatchBitEnumeration) {
    std::set<qb::SitePair> body, face;
    for (int a = 1; a <= 8; ++a)
        for (int b = a + 1; b <= 8; ++b) {
            const unsigned x = unsigned(a - 1) ^ unsigned(b - 1);
            if (x == 7u) body.insert({a, b});
            if (x == 3u || x == 5u || x == 6u) face.insert({a, b});
        }
    const auto cb = qb::canonical_body_diagonals();
    const auto cf = qb::canonical_face_diagonals();
    EXPECT_EQ(std::set<qb::SitePair>(cb.begin(), cb.end()), body);
    EXPECT_EQ(std::set<qb::SitePair>(cf.begin(), cf.end()), face);
    EXPECT_EQ(body.size(), 4u);
    EXPECT_EQ(face.size(), 12u);
}

TEST(SupercubeAugmented, TwoBodyDiagonals) {
    const auto t = qb::supercube_augmented({{1, 8}, {2, 7}}, {});
    EXPECT_EQ(t.edge_count(), 14u);
    EXPECT_TRUE(t.has_edge(1, 8));
    int body = 0;
    for (const auto& e : t.edges()) body += e.kind == qb::EdgeClass::BodyDiagonal;
    EXPECT_EQ(body, 2);
}

TEST(SupercubeAugmented, AllBodyDiagonals) {
    const auto t = qb::supercube_augmented(qb::canonical_body_diagonals(), {});
    EXPECT_EQ(t.edge_count(), 16u);
    for (int d : t.degrees()) EXPECT_EQ(d, 4);
}

TEST(SupercubeAugmented, AllFaceDiagonals) {
    const auto t = qb::supercube_augmented({}, qb::canonical_face_diagonals());
    EXPECT_EQ(t.edge_count(), 24u);
    for (int d : t.degrees()) EXPECT_EQ(d, 6);
}

TEST(SupercubeAugmented, TopFacePreset) {
    for (auto [a, b] : qb::preset_top_face_diagonals()) {
        EXPECT_GE(a, 5);
        EXPECT_GE(b, 5);
        EXPECT_EQ(qb::cube_hamming(a, b), 2);
    }
}

TEST(SupercubeAugmented, RejectsNonCanonicalPairs) {
    EXPECT_THROW(qb::supercube_augmented({{1, 2}}, {}), qb::DomainError);
    EXPECT_THROW(qb::supercube_augmented({}, {{1, 8}}), qb::DomainError);
    EXPECT_THROW(qb::supercube_augmented({{1, 8}, {8, 1}}, {}), qb::DomainError);
}

TEST(CubeExtension, MatchesFaceSharingCubesOracle) {
    // Oracle: lattice points (x, y, z), x, y in {0,1}, z in {0,1,2}, joined at unit distance.
    std::vector<std::array<double, 3>> pts;
    std::map<std::array<int, 3>, int> index;
    // Label sites as the implementation does: v-1 = b1 b2 b3 -> (x, y, z) = (b2, b3, b1); 9..12 -> z = 2.
    for (int v = 1; v <= 12; ++v) {
        const int base = v <= 8 ? v - 1 : v - 5;
        const int z = v <= 8 ? (base >> 2) : 2;
        pts.push_back({double((base >> 1) & 1), double(base & 1), double(z)});
    }
    const auto oracle = distance_graph(pts, 1.0);
    const auto t = qb::cube_extension_12();
    EXPECT_EQ(oracle.size(), 20u);
    EXPECT_EQ(t.edge_set(), oracle);
    EXPECT_EQ(t.n(), 12);
    EXPECT_EQ(degree_multiset(t), (std::multiset<int>{3, 3, 3, 3, 3, 3, 3, 3, 4, 4, 4, 4}));
}

TEST(CubeExtension, RemovingNewCubeRecoversSupercube) {
    std::set<qb::SitePair> kept;
    for (auto [i, j] : qb::cube_extension_12().edge_set())
        if (i <= 8 && j <= 8) kept.insert({i, j});
    EXPECT_EQ(kept, qb::supercube().edge_set());
}

TEST(Cuboctahedron, MatchesDistanceOracle) {
    std::vector<std::array<double, 3>> pts;
    for (int x = -1; x <= 1; ++x)
        for (int y = -1; y <= 1; ++y)
            for (int z = -1; z <= 1; ++z)
                if ((x != 0) + (y != 0) + (z != 0) == 2) pts.push_back({double(x), double(y), double(z)});
    ASSERT_EQ(pts.size(), 12u);
    const auto oracle = distance_graph(pts, 2.0);
    const auto t = qb::cuboctahedron_12();
    EXPECT_EQ(oracle.size(), 24u);
    EXPECT_EQ(t.edge_count(), 24u);
    for (int d : t.degrees()) EXPECT_EQ(d, 4);
    EXPECT_EQ(triangle_count(t), 8);
}

TEST(Icosahedron, RegularDegreeFive) {
    const auto t = qb::icosahedron_12();
    EXPECT_EQ(t.n(), 12);
    EXPECT_EQ(t.edge_count(), 30u);
    for (int d : t.degrees()) EXPECT_EQ(d, 5);
    EXPECT_EQ(triangle_count(t), 20);
}

TEST(Icosahedron, NeighborhoodsArePentagons) {
    const auto t = qb::icosahedron_12();
    const auto adj = t.adjacency();
    for (int v = 1; v <= 12; ++v) {
        const auto& nb = adj[std::size_t(v)];
        ASSERT_EQ(nb.size(), 5u);
        // Induced subgraph: 2-regular on 5 vertices and connected, i.e. a 5-cycle.
        int induced_edges = 0;
        for (int a : nb) {
            int inside = 0;
            for (int b : nb) inside += t.has_edge(a, b);
            EXPECT_EQ(inside, 2);
            induced_edges += inside;
        }
        EXPECT_EQ(induced_edges / 2, 5);
        std::set<int> seen{nb[0]};
        std::vector<int> stack{nb[0]};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : nb)
                if (t.has_edge(x, y) && seen.insert(y).second) stack.push_back(y);
        }
        EXPECT_EQ(seen.size(), 5u);
    }
}

TEST(SpinTopology, RejectsInvalidGraphs) {
    using E = qb::Edge;
    EXPECT_THROW(qb::SpinTopology(3, {E{1, 4}}, "x"), qb::DomainError);
    EXPECT_THROW(qb::SpinTopology(3, {E{2, 2}}, "x"), qb::DomainError);
    EXPECT_THROW(qb::SpinTopology(3, {E{1, 2}, E{2, 1}, E{2, 3}}, "x"), qb::DomainError);
    EXPECT_THROW(qb::SpinTopology(4, {E{1, 2}, E{3, 4}}, "x"), qb::DomainError);
}

TEST(SpinTopology, NormalizesEdgeOrientation) {
    const qb::SpinTopology t(3, {qb::Edge{2, 1}, qb::Edge{3, 2}}, "x");
    EXPECT_EQ(t.edges()[0].i, 1);
    EXPECT_EQ(t.edges()[0].j, 2);
}

TEST(Catalog, AllTopologiesConnectedAndNormalized) {
    for (const auto& name : qb::topology_names()) {
        const auto t = qb::topology_by_name(name);
        for (const auto& e : t.edges()) EXPECT_LT(e.i, e.j) << name;
        EXPECT_EQ(t.name(), name);
    }
    EXPECT_THROW(qb::topology_by_name("torus"), qb::DomainError);
}

TEST(EdgeList, SupercubeMatchesGolden) {
    EXPECT_EQ(qb::to_edge_list(qb::supercube()), read_golden("supercube.edges"));
}

TEST(EdgeList, PolyhedraMatchGolden) {
    EXPECT_EQ(qb::to_edge_list(qb::cuboctahedron_12()), read_golden("cuboctahedron.edges"));
    EXPECT_EQ(qb::to_edge_list(qb::icosahedron_12()), read_golden("icosahedron.edges"));
    EXPECT_EQ(qb::to_edge_list(qb::cube_extension_12()), read_golden("cube12.edges"));
}

TEST(EdgeList, RoundTripPreservesEveryCatalogTopology) {
    for (const auto& name : qb::topology_names()) {
        const auto t = qb::topology_by_name(name);
        const auto back = qb::parse_edge_list(qb::to_edge_list(t), name);
        EXPECT_EQ(back.n(), t.n());
        EXPECT_EQ(back.edges(), t.edges()) << name;
    }
}

TEST(EdgeList, DiagnosticsCarryLineNumbers) {
    try {
        qb::parse_edge_list("n 3\n1 2 edge\n2 3 spoke\n");
        FAIL() << "expected DomainError";
    } catch (const qb::DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
    EXPECT_THROW(qb::parse_edge_list("1 2 edge\n"), qb::DomainError);
    EXPECT_THROW(qb::parse_edge_list(""), qb::DomainError);
    EXPECT_THROW(qb::parse_edge_list("n 3\n1 x edge\n"), qb::DomainError);
    EXPECT_THROW(qb::parse_edge_list("n 3\n1 2 edge extra\n"), qb::DomainError);
}
