#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "support/oracles.hpp"
#include "xidx/metrics.hpp"

using namespace xidx;
using namespace xidx::metrics;

namespace {

DisciplineDistribution dist_of(std::map<std::string, std::int64_t> counts) {
  DisciplineDistribution d;
  d.counts = std::move(counts);
  return d;
}

CitationLayering layering_of(std::vector<std::int64_t> counts) {
  CitationLayering l;
  l.depth_counts = std::move(counts);
  l.depth_cap = static_cast<int>(l.depth_counts.size());
  return l;
}

}  // namespace

TEST_CASE("normalized entropy: uniform two-field distribution is maximal") {
  CHECK(normalized_entropy(dist_of({{"a", 1}, {"b", 1}})) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("normalized entropy: single field is degenerate") {
  CHECK(normalized_entropy(dist_of({{"a", 7}})) == 0.0);
  CHECK(normalized_entropy(dist_of({})) == 0.0);
}

TEST_CASE("normalized entropy: frozen skewed example") {
  // counts {2,1,1}: H2 = 1.5 bits over log2(3) = 1.58496...
  const auto d = dist_of({{"a", 2}, {"b", 1}, {"c", 1}});
  CHECK(normalized_entropy(d) == doctest::Approx(0.946394630357186).epsilon(1e-12));
  CHECK(normalized_entropy(d) == doctest::Approx(oracle::normalized_entropy(d.counts)).epsilon(1e-12));
}

TEST_CASE("normalized entropy matches the brute-force oracle on random distributions") {
  std::mt19937 rng(1234);
  for (int iter = 0; iter < 500; ++iter) {
    std::map<std::string, std::int64_t> counts;
    const int u = static_cast<int>(rng() % 12);
    for (int f = 0; f < u; ++f)
      counts["field" + std::to_string(f)] = static_cast<std::int64_t>(rng() % 50) + 1;
    const auto d = dist_of(counts);
    const double mine = normalized_entropy(d);
    const double ref = oracle::normalized_entropy(counts);
    CHECK(mine == doctest::Approx(ref).epsilon(1e-12));
    CHECK(mine >= 0.0);
    CHECK(mine <= 1.0);
  }
}

TEST_CASE("entropy invariance under label permutation and count scaling") {
  std::mt19937 rng(99);
  for (int iter = 0; iter < 500; ++iter) {
    std::map<std::string, std::int64_t> counts;
    const int u = static_cast<int>(rng() % 8) + 1;
    for (int f = 0; f < u; ++f)
      counts["f" + std::to_string(f)] = static_cast<std::int64_t>(rng() % 30) + 1;

    std::map<std::string, std::int64_t> permuted;
    for (const auto& [k, v] : counts) permuted["z" + k] = v;  // new labels, same multiset

    const std::int64_t scale = static_cast<std::int64_t>(rng() % 9) + 1;
    std::map<std::string, std::int64_t> scaled;
    for (const auto& [k, v] : counts) scaled[k] = v * scale;

    const double base = normalized_entropy(dist_of(counts));
    CHECK(normalized_entropy(dist_of(permuted)) == doctest::Approx(base).epsilon(1e-12));
    CHECK(normalized_entropy(dist_of(scaled)) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("breadth: fallback, uniform and floored cases") {
  MetricParams params;
  CHECK(breadth(dist_of({}), params) == doctest::Approx(0.1).epsilon(1e-12));
  // uniform over two fields: 1.0 * (1 + log2(3))
  CHECK(breadth(dist_of({{"a", 3}, {"b", 3}}), params) ==
        doctest::Approx(2.584962500721156).epsilon(1e-12));
  // single field: entropy 0 -> floor 0.1, richness (1 + log2 2) = 2
  CHECK(breadth(dist_of({{"a", 5}}), params) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("breadth lower bounds") {
  std::mt19937 rng(31);
  MetricParams params;
  for (int iter = 0; iter < 500; ++iter) {
    std::map<std::string, std::int64_t> counts;
    const int u = static_cast<int>(rng() % 10);
    for (int f = 0; f < u; ++f)
      counts["f" + std::to_string(f)] = static_cast<std::int64_t>(rng() % 40) + 1;
    const auto d = dist_of(counts);
    const double x = breadth(d, params);
    if (u == 0) {
      CHECK(x == doctest::Approx(params.entropy_floor));
    } else {
      const double bound =
          params.entropy_floor * (1.0 + std::log2(1.0 + static_cast<double>(u)));
      CHECK(x >= bound - 1e-12);
    }
  }
}

TEST_CASE("quality is strictly binary") {
  CHECK(quality(true) == 1.0);
  CHECK(quality(false) == 0.0);
}

TEST_CASE("reuse depth: frozen decay examples") {
  graph::TraversalParams t;
  CHECK(reuse_depth(layering_of({10, 4, 2, 1}), t) == doctest::Approx(1.2625).epsilon(1e-12));
  CHECK(reuse_depth(layering_of({7, 0, 0, 0}), t) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(reuse_depth(layering_of({0, 0, 0, 0}), t) == 0.0);
}

TEST_CASE("reuse depth >= 1 iff cited, equality iff no deeper layers") {
  std::mt19937 rng(47);
  graph::TraversalParams t;
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<std::int64_t> n(4);
    n[0] = static_cast<std::int64_t>(rng() % 20);
    for (int d = 1; d < 4; ++d)
      n[static_cast<std::size_t>(d)] =
          n[0] == 0 ? 0 : static_cast<std::int64_t>(rng() % 15);
    const double d = reuse_depth(layering_of(n), t);
    if (n[0] == 0) {
      CHECK(d == 0.0);
    } else {
      CHECK(d >= 1.0);
      const bool deeper = n[1] + n[2] + n[3] > 0;
      if (!deeper) CHECK(d == doctest::Approx(1.0).epsilon(1e-12));
      if (deeper) CHECK(d > 1.0);
    }
  }
}

TEST_CASE("raw-sum mode skips normalization") {
  graph::TraversalParams t;
  MetricParams params;
  params.reuse_depth_mode = ReuseDepthMode::raw_sum;
  CHECK(reuse_depth(layering_of({10, 4, 2, 1}), t, params) ==
        doctest::Approx(12.625).epsilon(1e-12));
}

TEST_CASE("citation count source precedence") {
  const auto l = layering_of({12, 3, 0, 0});
  CHECK(citation_count(&l, std::nullopt, CitationMode::graph) == 12);
  CHECK(citation_count(&l, 40, CitationMode::override_if_present) == 40);
  CHECK(citation_count(&l, 40, CitationMode::graph) == 12);
  CHECK(citation_count(&l, std::nullopt, CitationMode::override_if_present) == 12);
  const auto uncited = layering_of({0, 0, 0, 0});
  CHECK(citation_count(&uncited, std::nullopt, CitationMode::override_if_present) == 0);
  CHECK_THROWS_AS(citation_count(nullptr, std::nullopt, CitationMode::override_if_present),
                  NoSourceError);
  CHECK_THROWS_AS(citation_count(nullptr, 40, CitationMode::graph), NoSourceError);
}

TEST_CASE("vscore point checks") {
  CHECK(vscore(1.0, 1.0, 0, 0.0).value_v == 2.0);
  CHECK(vscore(1.0, 1.0, 100, 1.2625).value_v ==
        doctest::Approx(7.82658965251209).epsilon(1e-10));
  // C at the top of the fixture range
  CHECK(vscore(2.585, 1.0, 8553, 1.5).value_v ==
        doctest::Approx(2.585 + 1.0 + 1.5 * std::log(8554.0)).epsilon(1e-12));
}

TEST_CASE("vscore identity holds for random inputs") {
  std::mt19937 rng(2025);
  std::uniform_real_distribution<double> xd(0.0, 5.0), dd(0.0, 3.0);
  for (int iter = 0; iter < 500; ++iter) {
    const double x = xd(rng);
    const double y = rng() % 2 ? 1.0 : 0.0;
    const std::int64_t c = static_cast<std::int64_t>(rng() % 10000);
    const double d = dd(rng);
    const auto b = vscore(x, y, c, d);
    CHECK(std::abs(b.value_v - (x + y + d * std::log(1.0 + static_cast<double>(c)))) < 1e-12);
  }
}

TEST_CASE("vscore rejects out-of-domain inputs") {
  CHECK_THROWS_AS(vscore(-0.1, 1.0, 0, 0.0), DomainError);
  CHECK_THROWS_AS(vscore(1.0, 0.5, 0, 0.0), DomainError);
  CHECK_THROWS_AS(vscore(1.0, 1.0, -1, 0.0), DomainError);
  CHECK_THROWS_AS(vscore(1.0, 1.0, 0, -0.2), DomainError);
}

TEST_CASE("vscore monotonicity in C") {
  std::mt19937 rng(555);
  std::uniform_real_distribution<double> xd(0.0, 4.0), dd(0.01, 3.0);
  for (int iter = 0; iter < 500; ++iter) {
    const double x = xd(rng);
    const double y = rng() % 2 ? 1.0 : 0.0;
    const double d = dd(rng);
    const std::int64_t c1 = static_cast<std::int64_t>(rng() % 5000);
    const std::int64_t c2 = c1 + 1 + static_cast<std::int64_t>(rng() % 5000);
    CHECK(vscore(x, y, c2, d).value_v > vscore(x, y, c1, d).value_v);
    // D = 0 makes V flat in C
    CHECK(vscore(x, y, c2, 0.0).value_v == vscore(x, y, c1, 0.0).value_v);
  }
}

TEST_CASE("alternate form applies the log after scaling") {
  const auto b = vscore(1.0, 1.0, 100, 2.0, VScoreForm::log_after_scaling);
  CHECK(b.value_v == doctest::Approx(2.0 + std::log1p(200.0)).epsilon(1e-12));
}

TEST_CASE("xindex sums full credit over co-authored datasets") {
  DatasetRecord d1, d2, d3;
  d1.dataset_id = "ds1";
  d1.author_ids = {"A", "B"};
  d2.dataset_id = "ds2";
  d2.author_ids = {"A"};
  d3.dataset_id = "ds3";
  d3.author_ids = {"C"};
  VScoreBreakdown v1, v2, v3;
  v1.value_v = 3.0;
  v2.value_v = 4.5;
  v3.value_v = 9.0;
  std::vector<std::pair<DatasetRecord, VScoreBreakdown>> all{{d1, v1}, {d2, v2}, {d3, v3}};

  CHECK(xindex("A", all) == doctest::Approx(7.5).epsilon(1e-12));
  CHECK(xindex("B", all) == doctest::Approx(3.0).epsilon(1e-12));  // shared dataset, full credit
  CHECK(xindex("nobody", all) == 0.0);
}

TEST_CASE("xindex additivity over disjoint dataset lists") {
  std::mt19937 rng(808);
  std::uniform_real_distribution<double> vd(0.0, 20.0);
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<std::pair<DatasetRecord, VScoreBreakdown>> first, second, joined;
    const auto author = "A" + std::to_string(rng() % 5);
    for (int i = 0; i < 12; ++i) {
      DatasetRecord rec;
      rec.dataset_id = "ds" + std::to_string(i) + "_" + std::to_string(iter);
      if (rng() % 2) rec.author_ids.push_back(author);
      rec.author_ids.push_back("filler" + std::to_string(rng() % 7));
      VScoreBreakdown score;
      score.value_v = vd(rng);
      auto& side = i < 6 ? first : second;
      side.emplace_back(rec, score);
      joined.emplace_back(rec, score);
    }
    const double split = xindex(author, first) + xindex(author, second);
    CHECK(xindex(author, joined) == doctest::Approx(split).epsilon(1e-12));
  }
}

TEST_CASE("vscore ranking is invariant under a common breadth shift") {
  std::mt19937 rng(12321);
  std::uniform_real_distribution<double> xd(0.0, 3.0), dd(0.0, 2.0), shift_d(0.0, 5.0);
  for (int iter = 0; iter < 200; ++iter) {
    const int n = 12;
    std::vector<double> base(n), shifted(n);
    const double shift = shift_d(rng);
    for (int i = 0; i < n; ++i) {
      const double x = xd(rng);
      const double y = rng() % 2 ? 1.0 : 0.0;
      const std::int64_t c = static_cast<std::int64_t>(rng() % 9000);
      const double d = dd(rng);
      base[static_cast<std::size_t>(i)] = vscore(x, y, c, d).value_v;
      shifted[static_cast<std::size_t>(i)] = vscore(x + shift, y, c, d).value_v;
    }
    // argsort oracle: descending index order must match
    std::vector<int> ord_a(n), ord_b(n);
    std::iota(ord_a.begin(), ord_a.end(), 0);
    std::iota(ord_b.begin(), ord_b.end(), 0);
    auto by = [](const std::vector<double>& v) {
      return [&v](int a, int b) {
        if (v[static_cast<std::size_t>(a)] != v[static_cast<std::size_t>(b)])
          return v[static_cast<std::size_t>(a)] > v[static_cast<std::size_t>(b)];
        return a < b;
      };
    };
    std::sort(ord_a.begin(), ord_a.end(), by(base));
    std::sort(ord_b.begin(), ord_b.end(), by(shifted));
    CHECK(ord_a == ord_b);
  }
}
