#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "epco/graph.hpp"

using namespace epco;

namespace {

// two-cycle: e0 from v1 to v0, e1 from v0 to v1
GraphPtr two_cycle() {
    return Graph::make({"v0", "v1"}, {{"e0", 0, 1}, {"e1", 1, 0}});
}

} // namespace

TEST_CASE("path composability and composition") {
    auto g = two_cycle();
    Path v0(g, 0);
    CHECK(v0.length() == 0);
    CHECK(v0.range() == 0);
    CHECK(v0.source() == 0);

    Path p(g, std::vector<int>{0, 1});  // e0.e1: r=v0, s=v0
    CHECK(p.range() == 0);
    CHECK(p.source() == 0);
    CHECK(p.str() == "e0.e1");

    CHECK((v0 * p) == p);
    CHECK((p * v0) == p);
    Path pp = p * p;
    CHECK(pp.length() == 4);
    CHECK(pp.edges() == std::vector<int>{0, 1, 0, 1});

    // e0.e0 is not composable: s(e0)=v1 != r(e0)=v0
    CHECK_THROWS_AS(Path(g, std::vector<int>{0, 0}), error);
    Path e1(g, std::vector<int>{1});
    CHECK_THROWS_AS((void)(p * p * e1 * e1), error);
}

TEST_CASE("prefix and remainder") {
    auto g = two_cycle();
    Path p(g, std::vector<int>{0, 1, 0});
    Path head(g, std::vector<int>{0});
    Path head2(g, std::vector<int>{0, 1});
    CHECK(head.prefix_of(p));
    CHECK(head2.prefix_of(p));
    CHECK(p.prefix_of(p));
    CHECK_FALSE(Path(g, std::vector<int>{1}).prefix_of(p));
    CHECK(Path(g, 0).prefix_of(p));       // vertex prefix iff r(p) = v
    CHECK_FALSE(Path(g, 1).prefix_of(p));

    CHECK(head.remainder_of(p) == Path(g, std::vector<int>{1, 0}));
    CHECK(head2.remainder_of(p) == Path(g, std::vector<int>{0}));
    CHECK(p.remainder_of(p) == Path(g, 1));  // s(p) = v1
    CHECK((head * head.remainder_of(p)) == p);
}

TEST_CASE("path enumeration") {
    auto g = two_cycle();
    // per length: 2 vertices, then exactly one path from each vertex
    auto paths = g->paths_up_to(3);
    CHECK(paths.size() == 8);
    for (const auto& p : paths) CHECK(p.length() <= 3);

    // bouquet with two loops: 1 + 2 + 4 + 8 paths up to length 3
    auto b = Graph::make({"v"}, {{"a", 0, 0}, {"b", 0, 0}});
    CHECK(b->paths_up_to(3).size() == 15);
    CHECK(b->paths_up_to(0).size() == 1);
}

TEST_CASE("vertex classification and lookups") {
    // w is a source feeding v; v carries a loop
    auto g = Graph::make({"v", "w"}, {{"loop", 0, 0}, {"in", 0, 1}});
    auto [regular, sources] = g->classify_vertices();
    CHECK(regular == std::set<int>{0});
    CHECK(sources == std::set<int>{1});
    CHECK(g->is_row_finite());
    CHECK(g->incoming(0) == std::vector<int>{0, 1});
    CHECK(g->incoming(1).empty());
    CHECK(g->vertex_index("w") == 1);
    CHECK(g->edge_index("loop") == 0);
    CHECK_THROWS_AS(g->vertex_index("nope"), error);
}
