#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "ybe/asymprod.hpp"
#include "ybe/brace.hpp"

#include "brute_oracles.hpp"

using namespace ybe;

namespace {
  // Brace on Z/q^2 with a o b = a + b + q a b.
  DenseBrace cyclic_square_brace(std::size_t q) {
    std::size_t n = q * q;
    std::vector<elem_t> add(n * n), mul(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        add[a * n + b] = static_cast<elem_t>((a + b) % n);
        mul[a * n + b] = static_cast<elem_t>((a + b + q * a * b) % n);
      }
    }
    return DenseBrace(n, std::move(add), std::move(mul));
  }

  // Direct product of two dense braces, indexed a * |B2| + b.
  DenseBrace product(DenseBrace const& x, DenseBrace const& y) {
    std::size_t n = x.size() * y.size();
    std::vector<elem_t> add(n * n), mul(n * n);
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        auto u1 = static_cast<elem_t>(u / y.size()), u2 = static_cast<elem_t>(u % y.size());
        auto v1 = static_cast<elem_t>(v / y.size()), v2 = static_cast<elem_t>(v % y.size());
        add[u * n + v] = static_cast<elem_t>(x.add(u1, v1) * y.size() + y.add(u2, v2));
        mul[u * n + v] = static_cast<elem_t>(x.mul(u1, v1) * y.size() + y.mul(u2, v2));
      }
    }
    return DenseBrace(n, std::move(add), std::move(mul));
  }

  // Smallest ideal containing a, by saturation under +, lambda_b and
  // conjugation by every element b.
  std::set<elem_t> naive_ideal(DenseBrace const& br, elem_t a) {
    std::set<elem_t> s{br.zero(), a};
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<elem_t> cur(s.begin(), s.end());
      for (elem_t x : cur) {
        for (elem_t y : cur) {
          grew = s.insert(br.add(x, y)).second || grew;
        }
        for (elem_t b = 0; b < br.size(); ++b) {
          grew = s.insert(br.add(br.neg(b), br.mul(b, x))).second || grew;
          grew = s.insert(br.mul(br.mul(b, x), br.inv(b))).second || grew;
        }
      }
    }
    return s;
  }

  bool naive_simple(DenseBrace const& br) {
    if (br.size() <= 1) {
      return false;
    }
    for (elem_t a = 0; a < br.size(); ++a) {
      if (a != br.zero() && naive_ideal(br, a).size() != br.size()) {
        return false;
      }
    }
    return true;
  }

  std::vector<DenseBrace> sample_braces() {
    std::vector<DenseBrace> out;
    for (std::int64_t n : {1, 2, 3, 4, 5, 6, 8, 9}) {
      out.push_back(trivial_brace(AbGroup({n})));
    }
    out.push_back(trivial_brace(AbGroup({2, 2})));
    out.push_back(cyclic_square_brace(2));
    out.push_back(cyclic_square_brace(3));
    out.push_back(product(cyclic_square_brace(2), trivial_brace(AbGroup({3}))));
    out.push_back(to_dense(bj_quotient(JFamily{AbGroup({2, 2}), {0, 3, 1, 2}})));
    out.push_back(to_dense(theorem_example_brace({2, 3})));
    return out;
  }
}  // namespace

TEST_CASE("verify_axioms agrees with the literal axioms", "[brace]") {
  for (auto const& b : sample_braces()) {
    auto rep = verify_axioms(b);
    CHECK(rep.ok() == brute::brute_axioms(b));
    CHECK(rep.ok());
    CHECK(rep.exhaustive);
    CHECK(verify_lambda_action(b).ok());
  }
  // a o b = a + b + ab on Z/4 is not a brace (2 has no inverse)
  std::vector<elem_t> add(16), mul(16);
  for (elem_t a = 0; a < 4; ++a) {
    for (elem_t b = 0; b < 4; ++b) {
      add[a * 4 + b] = (a + b) % 4;
      mul[a * 4 + b] = (a + b + a * b) % 4;
    }
  }
  DenseBrace bad(4, add, mul);
  auto rep = verify_axioms(bad);
  CHECK_FALSE(rep.ok());
  CHECK_FALSE(brute::brute_axioms(bad));
  REQUIRE(rep.witness.has_value());
  CHECK_FALSE(rep.witness->describe().empty());
}

TEST_CASE("single-entry mutations are always rejected", "[brace][mutation]") {
  std::mt19937_64 rng(11);
  auto braces = sample_braces();
  braces.push_back(trivial_brace(AbGroup({600})));  // sampled triple checks
  for (auto const& b : braces) {
    if (b.size() < 2) {
      continue;
    }
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<elem_t> add(b.add_table().begin(), b.add_table().end());
      std::vector<elem_t> mul(b.mul_table().begin(), b.mul_table().end());
      auto& t = trial % 2 == 0 ? add : mul;
      std::uniform_int_distribution<std::size_t> pos(0, t.size() - 1);
      std::uniform_int_distribution<elem_t> shift(1, static_cast<elem_t>(b.size() - 1));
      auto k = pos(rng);
      t[k] = static_cast<elem_t>((t[k] + shift(rng)) % b.size());
      DenseBrace m(b.size(), std::move(add), std::move(mul));
      auto rep = verify_axioms(m);
      CHECK_FALSE(rep.ok());
      CHECK(rep.witness.has_value());
    }
  }
}

TEST_CASE("large braces are sampled, and the report says so", "[brace]") {
  auto b = trivial_brace(AbGroup({600}));
  auto rep = verify_axioms(b);
  CHECK(rep.ok());
  CHECK_FALSE(rep.exhaustive);
  CHECK(rep.samples == axiom_sample_count);
}

TEST_CASE("malformed tables are structural errors", "[brace]") {
  CHECK_THROWS_AS(DenseBrace(2, {0, 1, 1}, {0, 1, 1, 0}), StructuralError);
  CHECK_THROWS_AS(DenseBrace(2, {0, 1, 1, 2}, {0, 1, 1, 0}), StructuralError);
  CHECK_THROWS_AS(DenseBrace(0, {}, {}), StructuralError);
  CHECK_THROWS_AS(to_dense(bj_quotient(JFamily{AbGroup({6}), {0, 2, 2, 5, 2, 2}})), BoundError);
}

TEST_CASE("simplicity agrees with naive ideal saturation", "[brace][simple]") {
  for (auto const& b : sample_braces()) {
    CHECK(is_simple_brace(b) == naive_simple(b));
    for (elem_t a = 0; a < b.size(); a += 5) {
      auto lib = ideal_generated(b, a);
      auto naive = naive_ideal(b, a);
      CHECK(lib.members == std::vector<elem_t>(naive.begin(), naive.end()));
      CHECK(classify_subset(b, lib.members).ideal);
    }
  }
  // trivial braces are simple exactly on groups of prime order
  CHECK(is_simple_brace(trivial_brace(AbGroup({5}))));
  CHECK_FALSE(is_simple_brace(trivial_brace(AbGroup({6}))));
  CHECK_FALSE(is_simple_brace(trivial_brace(AbGroup())));
  CHECK(is_simple_brace(to_dense(theorem_example_brace({2, 3}))));
}

TEST_CASE("socle, lambda and difference identities", "[brace]") {
  for (auto const& b : sample_braces()) {
    std::vector<elem_t> expected;
    for (elem_t a = 0; a < b.size(); ++a) {
      bool in = true;
      for (elem_t c = 0; c < b.size(); ++c) {
        in = in && b.mul(a, c) == b.add(a, c);
      }
      if (in) {
        expected.push_back(a);
      }
      for (elem_t c = 0; c < b.size(); ++c) {
        CHECK(lambda_inv(b, a, lambda(b, a, c)) == c);
        CHECK(difference(b, a, c).agree());
      }
    }
    auto soc = socle(b);
    CHECK(soc.members == expected);
    CHECK(classify_subset(b, soc.members).ideal);
    auto q = quotient_brace(b, soc);
    CHECK(q.size() * soc.size() == b.size());
    CHECK(brute::brute_axioms(q));
  }
  CHECK(socle(cyclic_square_brace(2)).members == std::vector<elem_t>{0, 2});
}

TEST_CASE("quotients by non-ideals are refused", "[brace]") {
  auto b = cyclic_square_brace(3);
  auto not_subgroup = classify_subset(b, {0, 1});
  CHECK_FALSE(not_subgroup.additive_subgroup);
  CHECK_THROWS_AS(quotient_brace(b, not_subgroup), VerificationError);
}

TEST_CASE("associated solutions satisfy the braid relation", "[brace][solution]") {
  for (auto const& b : sample_braces()) {
    if (b.size() > 36) {
      continue;
    }
    auto s = associated_solution(b);
    CHECK(brute::brute_is_solution(s.size(), std::vector<point_t>(s.table().begin(), s.table().end())));
  }
}

TEST_CASE("lambda orbits under generators equal orbits under all elements", "[brace]") {
  for (auto const& b : sample_braces()) {
    std::vector<elem_t> gens = multiplicative_generators(b);
    for (elem_t x = 0; x < b.size(); x += 3) {
      std::set<elem_t> orbit{x};
      bool grew = true;
      while (grew) {
        grew = false;
        for (elem_t y : std::vector<elem_t>(orbit.begin(), orbit.end())) {
          for (elem_t a = 0; a < b.size(); ++a) {
            grew = orbit.insert(lambda(b, a, y)).second || grew;
          }
        }
      }
      CHECK(lambda_orbit(b, x, std::span<const elem_t>(gens)) == std::vector<elem_t>(orbit.begin(), orbit.end()));
    }
  }
}

TEST_CASE("solution on a generating orbit of the 72-element brace", "[brace][examples]") {
  auto br = theorem_example_brace({2, 3});
  auto d = to_dense(br);
  auto orbit = lambda_orbit(d, theorem_example_seed(br, {2, 3}));
  REQUIRE(orbit.size() == 36);
  CHECK(generates_additively(d, std::span<const elem_t>(orbit)));
  CHECK(classify_subset(d, additive_span(d, std::span<const elem_t>(orbit)).members).left_ideal);
  auto s = solution_from_orbit(d, std::span<const elem_t>(orbit));
  CHECK(brute::brute_is_solution(36, std::vector<point_t>(s.table().begin(), s.table().end())));
  CHECK(is_simple_oracle(s));
  // a set that is not an orbit is refused
  std::vector<elem_t> partial(orbit.begin(), orbit.begin() + 5);
  CHECK_THROWS_AS(solution_from_orbit(d, std::span<const elem_t>(partial)), PreconditionError);
}
