#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "ybe/asymprod.hpp"

#include "brute_oracles.hpp"

using namespace ybe;

namespace {
  JFamily z6_family() {
    return JFamily{AbGroup({6}), {0, 2, 2, 5, 2, 2}};
  }

  JFamily k4_family() {
    return JFamily{AbGroup({2, 2}), {0, 3, 1, 2}};
  }

  Matrix int_mul(Matrix const& a, Matrix const& b) {
    Matrix c(a.size(), std::vector<std::int64_t>(b[0].size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t k = 0; k < b.size(); ++k) {
        for (std::size_t j = 0; j < b[0].size(); ++j) {
          c[i][j] += a[i][k] * b[k][j];
        }
      }
    }
    return c;
  }

  Matrix int_transpose(Matrix const& a) {
    Matrix t(a[0].size(), std::vector<std::int64_t>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < a[0].size(); ++j) {
        t[j][i] = a[i][j];
      }
    }
    return t;
  }
}  // namespace

TEST_CASE("matrix helpers", "[asymprod]") {
  Matrix a{{1, 2}, {3, 4}};
  CHECK(mat_mul(a, a) == Matrix{{7, 10}, {15, 22}});
  CHECK(mat_mul(a, a, 5) == Matrix{{2, 0}, {0, 2}});
  CHECK(mat_transpose(a) == Matrix{{1, 3}, {2, 4}});
  CHECK(mat_pow(a, 3, 7) == mat_reduce(mat_mul(mat_mul(a, a), a), 7));
  CHECK(det_mod_prime(a, 7) == mod(-2, 7));
  CHECK(det_mod_prime(Matrix{{2, 4}, {1, 2}}, 5) == 0);
}

TEST_CASE("companion blocks: order, invariance and the averaging identity", "[asymprod]") {
  for (std::int64_t q : {2, 3, 5, 7, 11}) {
    auto c = companion_matrix(q);
    auto b = gram_block(q);
    auto d = static_cast<std::size_t>(q - 1);
    Matrix id = identity_matrix(d);
    // C^q = I over the integers, and sum_{i<q} (C^i)^t C^i = -2B
    Matrix power = id;
    Matrix acc(d, std::vector<std::int64_t>(d, 0));
    for (std::int64_t i = 0; i < q; ++i) {
      auto term = int_mul(int_transpose(power), power);
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t s = 0; s < d; ++s) {
          acc[r][s] += term[r][s];
        }
      }
      power = int_mul(power, c);
    }
    CHECK(power == id);
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t s = 0; s < d; ++s) {
        CHECK(acc[r][s] == -2 * b[r][s]);
      }
    }
    // C^t B C = B over the integers
    CHECK(int_mul(int_mul(int_transpose(c), b), c) == b);
  }
  for (auto primes : std::vector<std::vector<std::int64_t>>{{2, 3}, {3, 2}, {3, 5, 7}, {2, 3, 5}, {5, 7}}) {
    auto data = companion_data(primes);
    CHECK(data.ok());
    CHECK(data.blocks.size() == primes.size());
  }
  CHECK_THROWS_AS(companion_data({3}), PreconditionError);
  CHECK_THROWS_AS(companion_data({3, 3}), PreconditionError);
  CHECK_THROWS_AS(companion_data({3, 4}), PreconditionError);
}

TEST_CASE("asymmetric products are braces (literal axioms)", "[asymprod]") {
  std::vector<AsymProduct> products{bj_quotient(k4_family()), theorem_example_brace({2, 3}),
                                    mod6_counterexample_brace(2, 3)};
  for (std::int64_t m : {3, 4}) {
    for (auto const& jf : symmetric_families(AbGroup({m}))) {
      if (simple_criterion(jf)) {
        products.push_back(bj_quotient(jf));
        break;
      }
    }
  }
  for (auto const& b : products) {
    CHECK(b.check_spec().ok());
    auto d = to_dense(b);
    if (d.size() <= 100) {
      CHECK(brute::brute_axioms(d));
    }
    CHECK(verify_axioms(d).ok());
    CHECK(verify_lambda_action(d).ok());
    // lambda from the brace operations equals the closed formula
    for (elem_t x = 0; x < d.size(); x += 7) {
      for (elem_t y = 0; y < d.size(); y += 5) {
        CHECK(lambda(d, x, y) == b.encode(b.lambda_elem(b.decode(x), b.decode(y))));
      }
    }
    for (elem_t x = 0; x < d.size(); ++x) {
      CHECK(b.encode(b.decode(x)) == x);
    }
  }
}

TEST_CASE("quotient order equals the permutation group order", "[asymprod][permgroup]") {
  // brute-force group closure on every simple family over Z/3 and Z/2 x Z/2
  for (auto lit : {"3", "2,2"}) {
    for (auto const& jf : symmetric_families(AbGroup::parse(lit))) {
      if (!simple_criterion(jf)) {
        continue;
      }
      auto s = build_solution(jf);
      auto q = bj_quotient(jf);
      CHECK(brute::brute_group(s).size() == q.size());
    }
  }
  auto rep = permgroup_brace_map(k4_family());
  CHECK(rep.ok());
  CHECK(rep.group_order == 32);
}

TEST_CASE("Gram radical", "[asymprod]") {
  auto r6 = gram_radical(z6_family());
  CHECK(r6.order == 1);
  CHECK(r6.brute_force_agrees);
  REQUIRE(r6.brute_force_order.has_value());
  auto r4 = gram_radical(k4_family());
  CHECK(r4.order == 2);
  CHECK(r4.brute_force_agrees);
  for (auto const& jf : symmetric_families(AbGroup({4}))) {
    auto r = gram_radical(jf);
    CHECK(r.brute_force_agrees);
    CHECK(r.brute_force_order.value() == r.order);
  }
}

TEST_CASE("simplicity certificate", "[asymprod][certificate]") {
  auto c3 = simplepermu_certificate(exsimple_family(3));
  CHECK(c3.member);
  CHECK(c3.quotient_order == 72);
  CHECK(c3.enumeration_member == std::optional<bool>(true));
  auto cz = simplepermu_certificate(z6_family());
  CHECK_FALSE(cz.member);
  CHECK(cz.enumeration_member == std::optional<bool>(false));
  // soundness against dense simplicity wherever the quotient is small
  for (auto lit : {"3", "4", "2,2", "5"}) {
    for (auto const& jf : symmetric_families(AbGroup::parse(lit))) {
      if (!simple_criterion(jf)) {
        continue;
      }
      auto cert = simplepermu_certificate(jf);
      if (cert.enumeration_member) {
        CHECK(*cert.enumeration_member == cert.member);
      }
      auto q = bj_quotient(jf);
      if (cert.member && q.size() <= dense_threshold) {
        CHECK(is_simple_brace(to_dense(q)));
      }
    }
  }
  CHECK_THROWS_AS(simplepermu_certificate(JFamily{AbGroup({4}), {1, 1, 1, 1}}), PreconditionError);
}

TEST_CASE("theorem example brace for primes (2,3)", "[asymprod][examples]") {
  auto b = theorem_example_brace({2, 3});
  CHECK(b.size() == 72);
  auto d = to_dense(b);
  CHECK(is_simple_brace(d));
  auto orbit = lambda_orbit(d, theorem_example_seed(b, {2, 3}));
  CHECK(orbit.size() == 36);
  auto iso = theorem_example_solution_iso({2, 3});
  CHECK(iso.delta_formula);
  CHECK(iso.orbit_shape);
  CHECK(iso.isomorphism);
  CHECK(iso.search_agrees);
  CHECK(iso.orbit_size == 36);
}

TEST_CASE("theorem example order formula for larger primes", "[asymprod]") {
  // order p_1^{p_2} p_2^{p_3} ... p_n^{p_1}
  for (auto primes : std::vector<std::vector<std::int64_t>>{{2, 3}, {3, 2}, {3, 5}, {2, 3, 5}}) {
    auto b = theorem_example_brace(primes);
    std::uint64_t expected = 1;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      for (std::int64_t k = 0; k < primes[(i + 1) % primes.size()]; ++k) {
        expected *= static_cast<std::uint64_t>(primes[i]);
      }
    }
    CHECK(b.order() == std::optional<std::uint64_t>(expected));
    CHECK(b.check_spec().ok());
  }
}

TEST_CASE("mod 6 counterexample", "[asymprod][examples]") {
  auto b = mod6_counterexample_brace(2, 3);
  CHECK(b.size() == 288);
  auto d = to_dense(b);
  CHECK(is_simple_brace(d));
  auto gens = multiplicative_generators(d);
  for (elem_t x = 0; x < d.size(); ++x) {
    auto orbit = lambda_orbit(d, x, std::span<const elem_t>(gens));
    CHECK(additive_span(d, std::span<const elem_t>(orbit)).size() < d.size());
  }
  try {
    (void) mod6_counterexample_brace(3, 2);
    FAIL("expected an error");
  } catch (PreconditionError const& e) {
    CHECK(std::string(e.what()) == "mod6 counterexample requires p2 > 2");
  }
}

TEST_CASE("size bounds", "[asymprod]") {
  auto q = bj_quotient(z6_family());
  CHECK(q.size() == 279936);
  try {
    (void) is_simple_brace(q);
    FAIL("expected BoundError");
  } catch (BoundError const& e) {
    CHECK(std::string(e.what()).find("simplepermu_certificate") != std::string::npos);
  }
  auto big = theorem_example_brace({5, 7, 11});
  CHECK_FALSE(big.order().has_value());
  CHECK_THROWS_AS(big.size(), BoundError);
}
