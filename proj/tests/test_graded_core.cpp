#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "support.hpp"

#include <set>

using namespace kap;
using testing::Gen;

namespace {

std::vector<int> compose_perm(const std::vector<int>& s, const std::vector<int>& t) {
  std::vector<int> out(s.size());
  for (size_t i = 0; i < s.size(); ++i) out[i] = s[t[i]];
  return out;
}

std::vector<int> pull_back(const std::vector<int>& d, const std::vector<int>& s) {
  std::vector<int> out(d.size());
  for (size_t i = 0; i < d.size(); ++i) out[i] = d[s[i]];
  return out;
}

long stirling2(int n, int k) {
  if (n == 0 && k == 0) return 1;
  if (n == 0 || k == 0) return 0;
  return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1);
}

}  // namespace

TEST_CASE("rationals parse and print canonically") {
  CHECK(to_string(parse_scalar("6/4")) == "3/2");
  CHECK(to_string(parse_scalar("-2/1")) == "-2");
  CHECK(to_string(parse_scalar("+7")) == "7");
  CHECK(to_string(parse_scalar("0/5")) == "0");
  CHECK_THROWS_AS(parse_scalar("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar("1/-2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar(""), std::invalid_argument);
}

TEST_CASE("rational round trip") {
  Gen g(11);
  for (int i = 0; i < 200; ++i) {
    Scalar s(g.uniform(-1000, 1000), g.uniform(1, 97));
    s.canonicalize();
    CHECK(parse_scalar(to_string(s)) == s);
  }
}

TEST_CASE("graded basis lookup") {
  GradedBasis b({{"a", 1}, {"b", -1}, {"c", 0}});
  CHECK(b.size() == 3);
  CHECK(b.index_of("b") == 1);
  CHECK(b.index_of("z") == -1);
  CHECK(b.degree(1) == -1);
  Element v;
  v.add(0, 2);
  v.add(0, -2);
  CHECK(v.is_zero());
  v.add(1, 3);
  CHECK(element_degree(b, v) == -1);
  v.add(2, 1);
  CHECK_FALSE(element_degree(b, v).has_value());
}

TEST_CASE("koszul signs agree with the bubble-sort oracle") {
  for (const auto& c : oracle::koszul_cases) CHECK(koszul_sign(c.sigma, c.degs) == c.sign);
}

TEST_CASE("koszul sign of a transposition of two odd symbols is -1") {
  CHECK(koszul_sign({1, 0}, {1, 1}) == -1);
  CHECK(koszul_sign({1, 0}, {1, 2}) == 1);
  CHECK(koszul_sign({1, 0}, {0, 0}) == 1);
  CHECK(koszul_sign({}, {}) == 1);
}

TEST_CASE("koszul composition law") {
  Gen g(3);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = g.uniform(1, 6);
    auto s = g.permutation(n), t = g.permutation(n);
    auto d = g.degrees(n);
    CHECK(koszul_sign(compose_perm(s, t), d) == koszul_sign(s, d) * koszul_sign(t, pull_back(d, s)));
  }
}

TEST_CASE("the composition law with the two permutations swapped does not hold in general") {
  Gen g(4);
  bool counterexample = false;
  for (int trial = 0; trial < 500 && !counterexample; ++trial) {
    auto s = g.permutation(3), t = g.permutation(3);
    auto d = g.degrees(3);
    if (koszul_sign(compose_perm(s, t), d) != koszul_sign(t, d) * koszul_sign(s, pull_back(d, t))) counterexample = true;
  }
  CHECK(counterexample);
}

TEST_CASE("shuffles") {
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; q <= 4; ++q) {
      auto sh = shuffles(p, q);
      CHECK(static_cast<long>(sh.size()) == binomial(p + q, p));
      std::set<std::vector<int>> distinct(sh.begin(), sh.end());
      CHECK(distinct.size() == sh.size());
      for (const auto& s : sh) {
        CHECK(std::is_sorted(s.begin(), s.begin() + p));
        CHECK(std::is_sorted(s.begin() + p, s.end()));
        std::vector<int> sorted = s;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < p + q; ++i) CHECK(sorted[i] == i);
      }
    }
  CHECK(shuffles(1, 2) == std::vector<std::vector<int>>{{0, 1, 2}, {1, 0, 2}, {2, 0, 1}});
  CHECK_THROWS_AS(shuffles(-1, 2), std::invalid_argument);
}

TEST_CASE("ordered partitions with increasing maxima are counted by Stirling numbers") {
  for (int n = 1; n <= 6; ++n)
    for (int q = 1; q <= n; ++q) {
      auto parts = ordered_partitions(n, q);
      CHECK(static_cast<long>(parts.size()) == stirling2(n, q));
      for (const auto& P : parts) {
        for (size_t j = 0; j + 1 < P.size(); ++j) CHECK(P[j].back() < P[j + 1].back());
        CHECK(P.back().back() == n - 1);
      }
    }
  CHECK(ordered_partitions(3, 0).empty());
  CHECK(ordered_partitions(2, 3).empty());
}

TEST_CASE("partition sign is the koszul sign of the concatenation") {
  Gen g(5);
  for (int n = 1; n <= 5; ++n)
    for (int q = 1; q <= n; ++q)
      for (const auto& P : ordered_partitions(n, q)) {
        auto d = g.degrees(n);
        std::vector<int> concat;
        for (const auto& b : P) concat.insert(concat.end(), b.begin(), b.end());
        CHECK(partition_sign(P, d) == koszul_sign(concat, d));
      }
  CHECK(partition_sign({{0, 1, 2}}, {1, 1, 1}) == 1);
  CHECK(partition_sign({{1}, {0, 2}}, {1, 1, 0}) == -1);
}

TEST_CASE("multilinear evaluation is linear in each slot") {
  MultilinearMap m{2, 0, {}};
  Element e;
  e.add(0, 1);
  m.table[{0, 1}] = e;
  Element e2;
  e2.add(1, parse_scalar("1/2"));
  m.table[{1, 1}] = e2;
  Element x, y;
  x.add(0, 2);
  x.add(1, 4);
  y.add(1, 3);
  Element out = eval_multilinear(m, {x, y});
  CHECK(out.coeffs.at(0) == 6);
  CHECK(out.coeffs.at(1) == 6);
}

TEST_CASE("binomial coefficients") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(6, 0) == 1);
  CHECK(binomial(3, 4) == 0);
}
