#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>
#include <vector>

#include "ybe/abelian.hpp"
#include "ybe/parallel.hpp"
#include "ybe/union_find.hpp"
#include "ybe/zmod.hpp"

using namespace ybe;

namespace {
  // Every vector of Z/m^w, in lexicographic order.
  std::vector<std::vector<std::int64_t>> all_vectors(std::int64_t m, std::size_t w) {
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> v(w, 0);
    for (;;) {
      out.push_back(v);
      std::size_t i = 0;
      while (i < w && ++v[i] == m) {
        v[i++] = 0;
      }
      if (i == w) {
        return out;
      }
    }
  }

  // Additive span of rows over Z/m by saturation.
  std::set<std::vector<std::int64_t>> brute_span(std::vector<std::vector<std::int64_t>> const& rows,
                                                 std::int64_t m,
                                                 std::size_t w) {
    std::set<std::vector<std::int64_t>> span{std::vector<std::int64_t>(w, 0)};
    bool grew = true;
    while (grew) {
      grew = false;
      for (auto v : std::vector<std::vector<std::int64_t>>(span.begin(), span.end())) {
        for (auto const& r : rows) {
          std::vector<std::int64_t> s(w);
          for (std::size_t i = 0; i < w; ++i) {
            s[i] = ((v[i] + r[i]) % m + m) % m;
          }
          grew = span.insert(s).second || grew;
        }
      }
    }
    return span;
  }
}  // namespace

TEST_CASE("group literals parse and print", "[abelian]") {
  auto z6 = AbGroup::parse("6");
  CHECK(z6.order() == 6);
  CHECK(z6.rank() == 1);
  CHECK(z6.literal() == "6");
  auto v4 = AbGroup::parse("2, 2");
  CHECK(v4.order() == 4);
  CHECK(v4.literal() == "2,2");
  CHECK(v4.exponent() == 2);
  CHECK(AbGroup::parse("4,6").exponent() == 12);
  CHECK(AbGroup::parse("").is_trivial());
  CHECK_THROWS_AS(AbGroup::parse("x"), StructuralError);
  CHECK_THROWS_AS(AbGroup::parse("6,"), StructuralError);
  CHECK_THROWS_AS(AbGroup::parse("0"), StructuralError);
  CHECK_THROWS_AS(AbGroup::parse("-3"), StructuralError);
}

TEST_CASE("element indexing is a bijection in mixed radix", "[abelian]") {
  AbGroup g({2, 3, 4});
  REQUIRE(g.order() == 24);
  std::size_t expected = 0;
  for (std::int64_t a = 0; a < 2; ++a) {
    for (std::int64_t b = 0; b < 3; ++b) {
      for (std::int64_t c = 0; c < 4; ++c) {
        AbElem e{{a, b, c}};
        CHECK(g.index(e) == expected);
        CHECK(g.element(expected) == e);
        ++expected;
      }
    }
  }
  CHECK_THROWS_AS(g.element(24), StructuralError);
  CHECK_THROWS_AS(g.index(AbElem{{0, 1}}), StructuralError);
}

TEST_CASE("group operations match coordinatewise arithmetic", "[abelian]") {
  AbGroup g({4, 6});
  for (std::size_t i = 0; i < g.order(); ++i) {
    for (std::size_t j = 0; j < g.order(); ++j) {
      auto x = g.element(i);
      auto y = g.element(j);
      AbElem sum{{(x.coords[0] + y.coords[0]) % 4, (x.coords[1] + y.coords[1]) % 6}};
      CHECK(g.add(x, y) == sum);
      CHECK(g.sub(g.add(x, y), y) == x);
    }
    CHECK(g.add(g.element(i), g.neg(g.element(i))) == g.zero());
  }
  CHECK(g.scale(AbElem{{1, 1}}, -1) == AbElem{{3, 5}});
  CHECK(g.reduce(std::vector<std::int64_t>{-1, 13}) == AbElem{{3, 1}});
}

TEST_CASE("group table agrees with element arithmetic", "[abelian]") {
  AbGroup g({2, 6});
  GroupTable t(g);
  for (std::size_t i = 0; i < t.order(); ++i) {
    CHECK(t.neg(i) == g.index(g.neg(g.element(i))));
    for (std::size_t j = 0; j < t.order(); ++j) {
      CHECK(t.add(i, j) == g.index(g.add(g.element(i), g.element(j))));
    }
  }
  CHECK_THROWS_AS(GroupTable(AbGroup({4097})), BoundError);
}

TEST_CASE("subgroup closure equals the set of integer combinations", "[abelian]") {
  AbGroup g({4, 6});
  for (std::size_t a = 0; a < g.order(); a += 5) {
    for (std::size_t b = 0; b < g.order(); b += 7) {
      std::vector<std::size_t> gens{a, b};
      auto sub = subgroup_closure(g, std::span<const std::size_t>(gens));
      std::set<std::size_t> expected;
      auto x = g.element(a);
      auto y = g.element(b);
      for (std::int64_t s = 0; s < 12; ++s) {
        for (std::int64_t t = 0; t < 12; ++t) {
          expected.insert(g.index(g.add(g.scale(x, s), g.scale(y, t))));
        }
      }
      CHECK(sub.members == std::vector<std::size_t>(expected.begin(), expected.end()));
      CHECK(is_full_subgroup(g, sub) == (expected.size() == g.order()));
    }
  }
}

TEST_CASE("modular helpers", "[zmod]") {
  CHECK(mod(-7, 5) == 3);
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  for (std::int64_t n = 2; n < 30; ++n) {
    for (std::int64_t a = 0; a < n; ++a) {
      auto inv = inverse_mod(a, n);
      CHECK(inv.has_value() == (std::gcd(a, n) == 1));
      if (inv) {
        CHECK(a * *inv % n == 1 % n);
      }
    }
  }
  std::vector<std::int64_t> res{1, 2, 3};
  std::vector<std::int64_t> mods{2, 3, 5};
  auto x = crt(std::span<const std::int64_t>(res), std::span<const std::int64_t>(mods));
  CHECK(x == 23);
}

TEST_CASE("Howell form membership equals the enumerated span", "[zmod]") {
  std::vector<std::vector<std::vector<std::int64_t>>> cases{
      {{2, 4, 0}, {0, 6, 3}},
      {{3, 0, 0}, {0, 0, 4}, {6, 6, 6}},
      {{1, 2, 3}},
      {},
  };
  for (std::int64_t m : {6, 8, 12}) {
    for (auto const& rows : cases) {
      HowellForm h(m, 3, rows);
      auto span = brute_span(rows, m, 3);
      CHECK(h.order().value() == span.size());
      for (auto const& v : all_vectors(m, 3)) {
        CHECK(h.contains(v) == (span.count(v) == 1));
      }
      std::uint64_t quotient = 1;
      for (auto r : h.quotient_radices()) {
        quotient *= static_cast<std::uint64_t>(r);
      }
      CHECK(quotient * span.size() == static_cast<std::uint64_t>(m * m * m));
    }
  }
}

TEST_CASE("kernel_mod equals the brute-force kernel", "[zmod]") {
  std::vector<std::vector<std::int64_t>> mat{{2, 3}, {4, 0}, {1, 5}};
  std::int64_t m = 12;
  auto k = kernel_mod(mat, 2, m);
  std::size_t count = 0;
  for (auto const& x : all_vectors(m, 3)) {
    bool in = true;
    for (std::size_t c = 0; c < 2; ++c) {
      std::int64_t s = 0;
      for (std::size_t r = 0; r < 3; ++r) {
        s += x[r] * mat[r][c];
      }
      in = in && s % m == 0;
    }
    count += in ? 1 : 0;
    CHECK(k.contains(x) == in);
  }
  CHECK(k.order().value() == count);
}

TEST_CASE("disjoint set tracks classes", "[union_find]") {
  DisjointSet d(6);
  CHECK(d.num_classes() == 6);
  d.unite(0, 3);
  d.unite(3, 5);
  d.unite(1, 2);
  CHECK(d.num_classes() == 3);
  CHECK(d.find(5) == d.find(0));
  CHECK(d.find(1) != d.find(0));
  auto labels = d.labels();
  CHECK(labels == std::vector<std::uint32_t>{0, 1, 1, 0, 4, 0});
}

TEST_CASE("parallel_for visits every index once for any thread count", "[parallel]") {
  for (unsigned threads : {0U, 1U, 3U}) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i]++; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](auto const& h) { return h.load() == 1; }));
  }
  CHECK_THROWS_AS(parallel_for(10, 2, [](std::size_t i) {
                    if (i == 7) {
                      throw PreconditionError("boom");
                    }
                  }),
                  PreconditionError);
}
