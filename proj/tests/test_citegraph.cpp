#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support/memory_provider.hpp"
#include "support/oracles.hpp"
#include "xidx/citegraph.hpp"

using namespace xidx;
using testing_support::MemoryProvider;

namespace {

// Random citation graph: node ids N000..N(n-1), seed N000, plus extra
// random edges. allow_cycles adds back-edges.
std::vector<std::pair<std::string, std::string>> random_graph(std::mt19937& rng, int nodes,
                                                              int edges, bool allow_cycles) {
  auto name = [](int i) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "N%03d", i);
    return std::string(buf);
  };
  std::vector<std::pair<std::string, std::string>> out;
  // spanning chain of citations so most nodes are reachable
  for (int i = 1; i < nodes; ++i) {
    const int target = static_cast<int>(rng() % static_cast<unsigned>(i));
    out.emplace_back(name(i), name(target));
  }
  for (int e = nodes - 1; e < edges; ++e) {
    int a = static_cast<int>(rng() % static_cast<unsigned>(nodes));
    int b = static_cast<int>(rng() % static_cast<unsigned>(nodes));
    if (a == b) continue;
    if (!allow_cycles && a < b) std::swap(a, b);  // citer must be the later node
    out.emplace_back(name(a), name(b));
  }
  return out;
}

}  // namespace

TEST_CASE("layers of a seed with no citers are empty") {
  MemoryProvider src;
  src.citers_of["A"] = {};
  auto layering = graph::build_layers("A", {}, src);
  CHECK(layering.depth_counts == std::vector<std::int64_t>{0, 0, 0, 0});
  CHECK_FALSE(layering.truncated);
}

TEST_CASE("chain counts one work per level and drops beyond the cap") {
  // A <- B <- C <- D <- E <- F: F sits at depth 5 and is excluded
  MemoryProvider src;
  src.citers_of = testing_support::graph_from_edges(
      {{"B", "A"}, {"C", "B"}, {"D", "C"}, {"E", "D"}, {"F", "E"}});
  auto layering = graph::build_layers("A", {}, src);
  CHECK(layering.depth_counts == std::vector<std::int64_t>{1, 1, 1, 1});
  auto dist = oracle::layer_counts(testing_support::id_graph_from_edges(
                                       {{"B", "A"}, {"C", "B"}, {"D", "C"}, {"E", "D"}, {"F", "E"}}),
                                   "A", 4);
  CHECK(layering.depth_counts == dist);
}

TEST_CASE("diamond: a work reachable two ways counts once at minimal depth") {
  const std::vector<std::pair<std::string, std::string>> edges{
      {"B", "A"}, {"C", "A"}, {"D", "B"}, {"D", "C"}};
  MemoryProvider src;
  src.citers_of = testing_support::graph_from_edges(edges);
  auto layering = graph::build_layers("A", {}, src);
  CHECK(layering.depth_counts == std::vector<std::int64_t>{2, 1, 0, 0});
  CHECK(layering.depth_counts ==
        oracle::layer_counts(testing_support::id_graph_from_edges(edges), "A", 4));
}

TEST_CASE("cycles terminate and nothing is double counted") {
  // B cites A, C cites B, A "cites" C (citation loop), D cites C
  const std::vector<std::pair<std::string, std::string>> edges{
      {"B", "A"}, {"C", "B"}, {"A", "C"}, {"D", "C"}};
  MemoryProvider src;
  src.citers_of = testing_support::graph_from_edges(edges);
  auto layering = graph::build_layers("A", {}, src);
  CHECK(layering.depth_counts ==
        oracle::layer_counts(testing_support::id_graph_from_edges(edges), "A", 4));
  CHECK(layering.total() == 3);  // B, C, D once each; the seed never re-enters
}

TEST_CASE("missing seed raises SeedNotFound") {
  MemoryProvider src;
  CHECK_THROWS_AS(graph::build_layers("W-MISSING", {}, src), SeedNotFoundError);
}

TEST_CASE("random graphs match the brute-force shortest-path oracle") {
  std::mt19937 rng(424242);
  for (int iter = 0; iter < 100; ++iter) {
    const int nodes = 2 + static_cast<int>(rng() % 199);
    const int edges = nodes - 1 + static_cast<int>(rng() % 800);
    const bool cycles = iter % 2 == 0;
    auto edge_list = random_graph(rng, nodes, edges, cycles);

    MemoryProvider src;
    src.citers_of = testing_support::graph_from_edges(edge_list);
    graph::TraversalParams params;
    params.depth_cap = 1 + static_cast<int>(rng() % 6);

    auto layering = graph::build_layers("N000", params, src);
    auto expected = oracle::layer_counts(testing_support::id_graph_from_edges(edge_list), "N000",
                                         params.depth_cap);
    REQUIRE(layering.depth_counts == expected);
  }
}

TEST_CASE("adding an edge never increases depths or decreases the decay sum") {
  std::mt19937 rng(77);
  graph::TraversalParams params;
  for (int iter = 0; iter < 200; ++iter) {
    const int nodes = 5 + static_cast<int>(rng() % 60);
    auto edges = random_graph(rng, nodes, nodes + 40, true);

    auto id_graph = testing_support::id_graph_from_edges(edges);
    auto before_dist = oracle::shortest_distances(id_graph, "N000");

    // new random edge
    char a_buf[8], b_buf[8];
    std::snprintf(a_buf, sizeof(a_buf), "N%03d", static_cast<int>(rng() % static_cast<unsigned>(nodes)));
    std::snprintf(b_buf, sizeof(b_buf), "N%03d", static_cast<int>(rng() % static_cast<unsigned>(nodes)));
    if (std::string(a_buf) == b_buf) continue;
    auto grown = edges;
    grown.emplace_back(a_buf, b_buf);

    auto after_dist = oracle::shortest_distances(testing_support::id_graph_from_edges(grown), "N000");
    for (const auto& [node, d] : before_dist) {
      REQUIRE(after_dist.contains(node));
      REQUIRE(after_dist.at(node) <= d);
    }

    MemoryProvider before_src, after_src;
    before_src.citers_of = testing_support::graph_from_edges(edges);
    after_src.citers_of = testing_support::graph_from_edges(grown);
    const double sum_before =
        graph::decay_weighted_sum(graph::build_layers("N000", params, before_src), params);
    const double sum_after =
        graph::decay_weighted_sum(graph::build_layers("N000", params, after_src), params);
    REQUIRE(sum_after >= sum_before - 1e-12);
  }
}

TEST_CASE("decay weighted sum: frozen example and edge cases") {
  graph::TraversalParams params;
  CitationLayering l;
  l.depth_cap = 4;

  l.depth_counts = {10, 4, 2, 1};
  CHECK(graph::decay_weighted_sum(l, params) == 12.625);
  l.depth_counts = {0, 0, 0, 0};
  CHECK(graph::decay_weighted_sum(l, params) == 0.0);
  l.depth_counts = {7, 0, 0, 0};
  CHECK(graph::decay_weighted_sum(l, params) == 7.0);

  l.depth_counts = {1, 2};
  CHECK_THROWS_AS(graph::decay_weighted_sum(l, params), DimensionMismatchError);
}

TEST_CASE("decay base 1 degenerates to the plain total") {
  std::mt19937 rng(3);
  graph::TraversalParams params;
  params.decay_base = 1.0;
  for (int iter = 0; iter < 100; ++iter) {
    CitationLayering l;
    l.depth_cap = 4;
    for (int d = 0; d < 4; ++d) l.depth_counts.push_back(static_cast<std::int64_t>(rng() % 50));
    if (l.depth_counts[0] == 0) l.depth_counts = {0, 0, 0, 0};
    CHECK(graph::decay_weighted_sum(l, params) == static_cast<double>(l.total()));
  }
}

TEST_CASE("budget exhaustion yields a truncated partial layering") {
  std::mt19937 rng(11);
  auto edges = random_graph(rng, 120, 400, false);
  MemoryProvider src;
  src.citers_of = testing_support::graph_from_edges(edges);
  src.budget = 10;  // tiny budget: traversal cannot finish
  auto layering = graph::build_layers("N000", {}, src);
  CHECK(layering.truncated);
}

TEST_CASE("per-node truncation marks the layering truncated") {
  MemoryProvider src;
  std::vector<Work> many;
  for (int i = 0; i < 50; ++i) many.push_back(Work{"C" + std::to_string(i), {}, {}});
  src.citers_of["A"] = many;
  for (const auto& w : many) src.citers_of[w.work_id] = {};
  src.per_node_cap = 20;
  auto layering = graph::build_layers("A", {}, src);
  CHECK(layering.depth_counts[0] == 20);
  CHECK(layering.truncated);
}

TEST_CASE("coauthor pool dedupes authors and resolves modal fields") {
  MemoryProvider src;
  src.author_fields = {{"A1", "medicine"}, {"A2", "medicine"}, {"A3", "biology"}};

  SUBCASE("shared author across three works counts once") {
    std::vector<Work> works{Work{"W1", {}, {{"A1", "unknown"}}},
                            Work{"W2", {}, {{"A1", "unknown"}}},
                            Work{"W3", {}, {{"A1", "unknown"}}}};
    auto dist = graph::coauthor_pool(works, src);
    CHECK(dist.counts == std::map<std::string, std::int64_t>{{"medicine", 1}});
    CHECK(dist.unique_fields() == 1);
    CHECK(dist.unknown_authors == 0);
  }

  SUBCASE("unknown authors are tracked outside the counts") {
    std::vector<Work> works{
        Work{"W1", {}, {{"A1", "unknown"}, {"A2", "unknown"}}},
        Work{"W2", {}, {{"A3", "unknown"}, {"A9", "unknown"}}},  // A9 unresolvable
    };
    auto dist = graph::coauthor_pool(works, src);
    CHECK(dist.counts ==
          std::map<std::string, std::int64_t>{{"biology", 1}, {"medicine", 2}});
    CHECK(dist.unique_fields() == 2);
    CHECK(dist.unknown_authors == 1);
  }

  SUBCASE("no citing works yields an empty pool") {
    auto dist = graph::coauthor_pool({}, src);
    CHECK(dist.counts.empty());
    CHECK(dist.unique_fields() == 0);
  }
}

TEST_CASE("traversal params are validated") {
  graph::TraversalParams params;
  params.depth_cap = 0;
  CHECK_THROWS_AS(params.validate(), DomainError);
  params.depth_cap = 4;
  params.decay_base = 0.0;
  CHECK_THROWS_AS(params.validate(), DomainError);
  params.decay_base = 1.5;
  CHECK_THROWS_AS(params.validate(), DomainError);
}
