#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "ybe/solution.hpp"

#include "brute_oracles.hpp"

using namespace ybe;

namespace {
  using brute::Table;
  using namespace brute;

  SolutionTable swap_solution_example() {
    // r(x, y) = (y + 1, x - 1) on Z/3 is a permutation solution.
    return cyclic_solution(3);
  }
}  // namespace

TEST_CASE("verify agrees with the definition on every table of size <= 3 and all permutation tables of size 4",
          "[solution]") {
  for (std::size_t n = 1; n <= 3; ++n) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < n * n; ++i) {
      total *= n;
    }
    for (std::size_t code = 0; code < total; ++code) {
      Table t(n * n);
      std::size_t c = code;
      for (auto& v : t) {
        v = static_cast<point_t>(c % n);
        c /= n;
      }
      auto rep = verify_table(n, t);
      REQUIRE(rep.ok() == brute_is_solution(n, t));
      if (!rep.ok()) {
        REQUIRE(rep.witness.has_value());
      }
    }
  }
  std::size_t valid = 0;
  for_each_permutation_table(4, [&](Table const& t) {
    bool expected = brute_is_solution(4, t);
    valid += expected ? 1 : 0;
    REQUIRE(verify_table(4, t).ok() == expected);
  });
  CHECK(valid > 0);
}

TEST_CASE("labelled solutions of size 3 and 4 fall into 5 and 23 isomorphism classes", "[solution]") {
  for (auto [n, classes] : {std::pair<std::size_t, std::size_t>{3, 5}, {4, 23}}) {
    std::set<Table> forms;
    for (auto const& t : all_solutions(n)) {
      forms.insert(canonical_form(n, t));
    }
    CHECK(forms.size() == classes);
  }
}

TEST_CASE("isomorphism_search agrees with canonical forms", "[solution][iso]") {
  auto sols = all_solutions(4);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, sols.size() - 1);
  for (int trial = 0; trial < 300; ++trial) {
    auto const& a = sols[pick(rng)];
    auto const& b = trial % 3 == 0 ? a : sols[pick(rng)];
    auto s = SolutionTable::from_sigma(4, a);
    std::vector<point_t> f{0, 1, 2, 3};
    std::shuffle(f.begin(), f.end(), rng);
    auto t = SolutionTable::from_sigma(4, trial % 3 == 0 ? relabel(4, b, f) : b);
    bool same = canonical_form(4, a) == canonical_form(4, std::vector<point_t>(t.table().begin(), t.table().end()));
    auto found = isomorphism_search(s, t);
    REQUIRE(found.has_value() == same);
    if (found) {
      CHECK(is_isomorphism(s, t, *found));
    }
  }
}

TEST_CASE("orbits, retracts and groups match brute force on all solutions of size 4", "[solution]") {
  for (auto const& t : all_solutions(4)) {
    auto s = SolutionTable::from_sigma(4, t);
    // orbits of the group generated by the sigma_x
    auto group = brute_group(s);
    std::set<point_t> orbit0;
    for (auto const& g : group) {
      orbit0.insert(g[0]);
    }
    CHECK(is_indecomposable(s) == (orbit0.size() == 4));
    auto pg = permutation_group(s);
    REQUIRE(pg.complete());
    CHECK(pg.size() == group.size());
    // retract: points with equal sigma rows are identified
    std::set<Table> rows;
    for (point_t x = 0; x < 4; ++x) {
      rows.insert(Table(t.begin() + x * 4, t.begin() + x * 4 + 4));
    }
    CHECK(is_irretractable(s) == (rows.size() == 4));
    auto ret = retract(s);
    CHECK(ret.solution.size() == rows.size());
    CHECK(verify(ret.solution).ok());
    for (point_t x = 0; x < 4; ++x) {
      std::uint64_t ord = 1;
      Table p(t.begin() + x * 4, t.begin() + x * 4 + 4);
      Table q = p;
      Table id{0, 1, 2, 3};
      while (q != id) {
        Table next(4);
        for (point_t z = 0; z < 4; ++z) {
          next[z] = p[q[z]];
        }
        q = next;
        ++ord;
      }
      CHECK(sigma_order(s, x) == ord);
    }
  }
}

TEST_CASE("simplicity oracles agree with partition enumeration", "[solution][simple]") {
  std::size_t simple_count = 0;
  for (auto const& t : all_solutions(4)) {
    auto s = SolutionTable::from_sigma(4, t);
    bool expected = brute_is_simple(s);
    CHECK(is_simple_oracle(s) == expected);
    CHECK(is_simple_oracle_all_pairs(s) == expected);
    simple_count += expected ? 1 : 0;
  }
  CHECK(simple_count > 0);
  // size 3: cyclic permutation solution has no proper congruence
  CHECK(is_simple_oracle(swap_solution_example()) == brute_is_simple(swap_solution_example()));
  CHECK_THROWS_AS(is_simple_oracle(trivial_solution(1)), PreconditionError);
}

TEST_CASE("principal congruences are the least compatible partitions", "[solution][congruence]") {
  auto sols = all_solutions(4);
  auto parts = all_partitions(4);
  for (std::size_t i = 0; i < sols.size(); i += 7) {
    auto s = SolutionTable::from_sigma(4, sols[i]);
    for (point_t x = 0; x < 4; ++x) {
      for (point_t y = x + 1; y < 4; ++y) {
        // meet of all compatible partitions joining x and y
        std::vector<std::vector<bool>> together(4, std::vector<bool>(4, true));
        for (auto const& part : parts) {
          if (part[x] == part[y] && brute_compatible(s, part)) {
            for (point_t a = 0; a < 4; ++a) {
              for (point_t b = 0; b < 4; ++b) {
                together[a][b] = together[a][b] && part[a] == part[b];
              }
            }
          }
        }
        for (auto order : {WorklistOrder::fifo, WorklistOrder::lifo}) {
          auto c = principal_congruence(s, x, y, order);
          CHECK_FALSE(compatibility_witness(s, c).has_value());
          for (point_t a = 0; a < 4; ++a) {
            for (point_t b = 0; b < 4; ++b) {
              CHECK((c.label(a) == c.label(b)) == together[a][b]);
            }
          }
          auto q = quotient_solution(s, c);
          CHECK(verify(q).ok());
          CHECK(q.size() == c.num_classes());
        }
      }
    }
  }
  CHECK_THROWS_AS(principal_congruence(trivial_solution(3), 1, 1), PreconditionError);
}

TEST_CASE("incompatible partitions produce a witness", "[solution][congruence]") {
  auto s = cyclic_solution(4);
  auto c = Congruence::from_labels({0, 0, 1, 1});
  auto w = compatibility_witness(s, c);
  REQUIRE(w.has_value());
  CHECK_THROWS_AS(quotient_solution(s, c), VerificationError);
  auto ok = Congruence::from_labels({0, 1, 0, 1});
  CHECK_FALSE(compatibility_witness(s, ok).has_value());
}

TEST_CASE("from_sigma rejects invalid tables with a witness", "[solution]") {
  // sigma_0 not bijective
  CHECK_THROWS_AS(SolutionTable::from_sigma(2, {0, 0, 0, 1}), VerificationError);
  // wrong length
  CHECK_THROWS_AS(SolutionTable::from_sigma(2, {0, 1, 0}), Error);
  // bijective rows but not involutive: sigma_0 = id, sigma_1 = swap
  auto rep = verify_table(2, std::vector<point_t>{0, 1, 1, 0});
  CHECK_FALSE(rep.ok());
  REQUIRE(rep.witness.has_value());
  CHECK_FALSE(rep.witness->describe().empty());
  try {
    (void) SolutionTable::from_sigma(2, {0, 1, 1, 0});
    FAIL("expected VerificationError");
  } catch (VerificationError const& e) {
    CHECK(std::string(e.what()).find("fails at") != std::string::npos);
  }
}

TEST_CASE("standard constructions", "[solution]") {
  auto triv = trivial_solution(5);
  CHECK(verify(triv).ok());
  CHECK_FALSE(is_indecomposable(triv));
  CHECK(retract_tower(triv) == std::vector<std::size_t>{5, 1});
  auto cyc = cyclic_solution(5);
  CHECK(is_indecomposable(cyc));
  CHECK(retract_tower(cyc) == std::vector<std::size_t>{5, 1});
  CHECK(permutation_group(cyc).size() == 5);
  CHECK(orbits(triv).size() == 5);
  auto rows = SolutionTable::from_rows({{1, 0}, {1, 0}});
  CHECK(rows.sigma(0, 0) == 1);
  CHECK(rows.sigma_inv(0, 1) == 0);
}

TEST_CASE("group closure reports overflow at the cap", "[solution]") {
  auto g = permutation_group(cyclic_solution(7), 3);
  CHECK_FALSE(g.complete());
  CHECK(g.status() == ClosureStatus::overflow);
}
