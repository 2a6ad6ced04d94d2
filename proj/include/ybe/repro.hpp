#pragma once

// The reproduction suite: eight end-to-end checks of the published claims,
// each an exact finite computation. Shared by the acceptance test and the
// `repro` CLI command.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ybe/a2family.hpp"
#include "ybe/asymprod.hpp"
#include "ybe/brace.hpp"
#include "ybe/error.hpp"
#include "ybe/solution.hpp"

namespace ybe {

  struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
  };

  namespace detail {
    /// Collects named boolean checks; the criterion passes iff all hold.
    class CheckList {
     public:
      void check(std::string const& what, bool ok) {
        if (!first_) {
          text_ << "; ";
        }
        first_ = false;
        text_ << what << '=' << (ok ? "ok" : "FAIL");
        all_ = all_ && ok;
      }
      void note(std::string const& what) {
        if (!first_) {
          text_ << "; ";
        }
        first_ = false;
        text_ << what;
      }
      [[nodiscard]] bool passed() const noexcept {
        return all_;
      }
      [[nodiscard]] std::string text() const {
        return text_.str();
      }

     private:
      std::ostringstream text_;
      bool first_ = true;
      bool all_ = true;
    };

    inline JFamily z6_example_family() {
      return JFamily{AbGroup({6}), {0, 2, 2, 5, 2, 2}};
    }

    /// Order (0,0),(0,1),(1,0),(1,1); j = (0, (1,1), (0,1), (1,0)).
    inline JFamily k4_example_family() {
      return JFamily{AbGroup({2, 2}), {0, 3, 1, 2}};
    }

    inline void criterion_z6(CheckList& c, unsigned threads) {
      auto jf = z6_example_family();
      auto s = build_solution(jf);
      c.check("verify", verify(s).ok());
      c.check("points=36", s.size() == 36);
      c.check("indecomposable_criterion", indecomposable_criterion(jf));
      c.check("irretractable_criterion", irretractable_criterion(jf));
      c.check("simple_criterion", simple_criterion(jf));
      c.check("indecomposable", is_indecomposable(s));
      c.check("irretractable", is_irretractable(s));
      c.check("simple_oracle", is_simple_oracle(s, threads));
    }

    inline void criterion_k4(CheckList& c, unsigned threads) {
      auto k4 = k4_example_family();
      auto s = build_solution(k4);
      c.check("points=16", s.size() == 16);
      c.check("simple_criterion", simple_criterion(k4));
      c.check("simple_oracle", is_simple_oracle(s, threads));
      auto ord = sigma_order(s, pair_index(k4, 0, 0));
      c.check("sigma_order(0,0)=" + std::to_string(ord), ord == 2);

      auto cs = census(AbGroup({4}), false, threads);
      std::size_t simple = 0;
      std::uint64_t min_order = UINT64_MAX;
      bool orders_ok = true;
      bool non_iso = true;
      for (auto const& e : cs) {
        if (!e.simple_criterion) {
          continue;
        }
        ++simple;
        auto t = build_solution(e.family);
        std::uint64_t m = UINT64_MAX;
        for (point_t x = 0; x < t.size(); ++x) {
          m = std::min(m, sigma_order(t, x));
        }
        min_order = std::min(min_order, m);
        orders_ok = orders_ok && m >= 4;
        non_iso = non_iso && !isomorphism_search(s, t).has_value();
      }
      c.check("z4_families=" + std::to_string(cs.size()), cs.size() == 64);
      c.note("z4_simple=" + std::to_string(simple) + " min_sigma_order=" + std::to_string(min_order));
      c.check("z4_sigma_orders>=4", simple > 0 && orders_ok);
      c.check("non_isomorphic", non_iso);
    }

    inline void criterion_census(CheckList& c, unsigned threads) {
      for (auto const* lit : {"2", "3", "4", "2,2", "5", "6"}) {
        auto group = AbGroup::parse(lit);
        auto cs = census(group, true, threads);
        std::size_t bad = 0;
        std::size_t simple = 0;
        for (auto const& e : cs) {
          bad += e.agrees() && e.simple_oracle && e.indecomposable && e.irretractable ? 0 : 1;
          simple += e.simple_criterion ? 1 : 0;
        }
        c.check(std::string("Z/") + lit + " families=" + std::to_string(cs.size()) + " simple="
                    + std::to_string(simple) + " disagreements=" + std::to_string(bad),
                bad == 0);
      }
    }

    inline void criterion_exsimple(CheckList& c, unsigned threads) {
      auto e3 = exsimple_family(3);
      auto crt = crt_family({2, 3});
      std::vector<std::size_t> expected{2, 1, 5, 4, 5, 1};
      c.check("exsimple(3)=(2,1,5,4,5,1)", e3.j == expected);
      c.check("crt(2,3)=(2,1,5,4,5,1)", crt.j == expected && crt.group.literal() == "6");
      c.check("alternating_sum(3)", alternating_sum_check(e3, 3).ok());
      auto s3 = build_solution(e3);
      c.check("simple_criterion(3)", simple_criterion(e3));
      c.check("simple_oracle(3, 36 points)", s3.size() == 36 && is_simple_oracle(s3, threads));
      auto cert = simplepermu_certificate(e3);
      c.check("certificate(3)", cert.member && cert.enumeration_member.value_or(false));

      auto e7 = exsimple_family(7);
      c.check("valid(7)", !symmetry_violation(e7).has_value());
      c.check("simple_criterion(7)", simple_criterion(e7));
      auto s7 = build_solution(e7);
      c.check("simple_oracle(7, 196 points)", s7.size() == 196 && is_simple_oracle(s7, threads));
      c.check("alternating_sum(7)", alternating_sum_check(e7, 7).ok());
    }

    inline void criterion_example(CheckList& c, unsigned threads) {
      std::vector<std::int64_t> primes{2, 3};
      auto b = theorem_example_brace(primes);
      c.check("order=72", b.size() == 72);
      auto d = to_dense(b);
      c.check("verify_axioms", verify_axioms(d).ok());
      c.check("is_simple_brace", is_simple_brace(d));
      auto seed = theorem_example_seed(b, primes);
      auto orbit = lambda_orbit(d, seed);
      c.check("orbit_size=" + std::to_string(orbit.size()), orbit.size() == 36);
      c.check("generates_additively", generates_additively(d, std::span<const elem_t>(orbit)));
      auto s = solution_from_orbit(d, std::span<const elem_t>(orbit));
      c.check("orbit_solution_simple_oracle", verify(s).ok() && is_simple_oracle(s, threads));
      auto iso = theorem_example_solution_iso(primes);
      c.check("explicit_isomorphism", iso.ok());
      auto crt = crt_family(primes);
      auto diff = crt.group.sub(crt.group.element(crt.j[0]), crt.group.element(crt.j[2]));
      auto v = diff.coords[0];
      c.check("j0-j2=" + std::to_string(v) + " not invertible mod 6", v == 3 && std::gcd(v, std::int64_t{6}) != 1);
    }

    inline void criterion_mod6(CheckList& c) {
      auto b = mod6_counterexample_brace(2, 3);
      c.check("order=288", b.size() == 288);
      auto d = to_dense(b);
      c.check("is_simple_brace", is_simple_brace(d));
      auto gens = multiplicative_generators(d);
      std::size_t largest = 0;
      bool all_proper = true;
      for (elem_t x = 0; x < d.size(); ++x) {
        auto orbit = lambda_orbit(d, x, std::span<const elem_t>(gens));
        auto span = additive_span(d, std::span<const elem_t>(orbit)).size();
        largest = std::max(largest, span);
        all_proper = all_proper && span < d.size();
      }
      c.check("all_orbit_spans_proper (largest=" + std::to_string(largest) + ")", all_proper);
    }

    inline void criterion_prop_b(CheckList& c) {
      for (auto const& [name, jf] : {std::pair{"Z/6", z6_example_family()}, std::pair{"Z/2xZ/2", k4_example_family()}}) {
        auto q = bj_quotient(jf);
        auto rep = permgroup_brace_map(jf);
        c.check(std::string(name) + " |G|=" + std::to_string(rep.group_order) + " |Q|=" + std::to_string(q.size()),
                rep.group_complete && rep.group_order == q.size());
        c.check(std::string(name) + " isomorphism", rep.ok());
      }
    }

    /// Changes one entry of a Latin table to a different value.
    template <typename T>
    void mutate_entry(std::vector<T>& table, std::size_t n, std::mt19937_64& rng) {
      std::uniform_int_distribution<std::size_t> pos(0, table.size() - 1);
      std::uniform_int_distribution<std::size_t> shift(1, n - 1);
      auto k = pos(rng);
      table[k] = static_cast<T>((table[k] + shift(rng)) % n);
    }

    inline void criterion_mutation(CheckList& c) {
      std::mt19937_64 rng(0x5eedb7acULL);
      std::vector<SolutionTable> sols{build_solution(z6_example_family()), build_solution(k4_example_family()),
                                      build_solution(exsimple_family(3)), cyclic_solution(5)};
      std::vector<DenseBrace> braces{trivial_brace(AbGroup({6})), to_dense(theorem_example_brace({2, 3})),
                                     to_dense(bj_quotient(k4_example_family()))};
      std::size_t sol_rejected = 0;
      std::size_t brace_rejected = 0;
      constexpr std::size_t per_kind = 50;
      for (std::size_t i = 0; i < per_kind; ++i) {
        auto const& s = sols[i % sols.size()];
        std::vector<point_t> t(s.table().begin(), s.table().end());
        mutate_entry(t, s.size(), rng);
        auto rep = verify_table(s.size(), std::span<const point_t>(t));
        sol_rejected += !rep.ok() && rep.witness.has_value() ? 1 : 0;
      }
      for (std::size_t i = 0; i < per_kind; ++i) {
        auto const& b = braces[i % braces.size()];
        std::vector<elem_t> add(b.add_table().begin(), b.add_table().end());
        std::vector<elem_t> mul(b.mul_table().begin(), b.mul_table().end());
        mutate_entry(i % 2 == 0 ? add : mul, b.size(), rng);
        DenseBrace m(b.size(), std::move(add), std::move(mul));
        auto rep = verify_axioms(m);
        brace_rejected += !rep.ok() && rep.witness.has_value() ? 1 : 0;
      }
      c.check("solution_mutations_rejected=" + std::to_string(sol_rejected) + "/50", sol_rejected == per_kind);
      c.check("brace_mutations_rejected=" + std::to_string(brace_rejected) + "/50", brace_rejected == per_kind);
    }
  }  // namespace detail

  struct CriterionSpec {
    int id;
    char const* name;
    std::function<void(detail::CheckList&, unsigned)> run;
  };

  inline std::vector<CriterionSpec> const& criteria() {
    static std::vector<CriterionSpec> const all{
        {1, "Z/6 example is simple", detail::criterion_z6},
        {2, "(Z/2)^2 example not isomorphic to any Z/4 family", detail::criterion_k4},
        {3, "criterion/oracle census", detail::criterion_census},
        {4, "Exsimple families", detail::criterion_exsimple},
        {5, "theorem example brace, primes (2,3)", detail::criterion_example},
        {6, "mod 6 counterexample, primes (2,3)", [](detail::CheckList& c, unsigned) { detail::criterion_mod6(c); }},
        {7, "permutation group brace isomorphism", [](detail::CheckList& c, unsigned) { detail::criterion_prop_b(c); }},
        {8, "mutation suite", [](detail::CheckList& c, unsigned) { detail::criterion_mutation(c); }},
    };
    return all;
  }

  inline CriterionResult run_criterion(CriterionSpec const& spec, unsigned threads = 1) {
    CriterionResult r;
    r.id = spec.id;
    r.name = spec.name;
    auto start = std::chrono::steady_clock::now();
    detail::CheckList checks;
    try {
      spec.run(checks, threads);
      r.passed = checks.passed();
      r.detail = checks.text();
    } catch (std::exception const& e) {
      r.passed = false;
      r.detail = checks.text() + (checks.text().empty() ? "" : "; ") + "exception: " + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  }

  inline std::vector<CriterionResult> run_repro(unsigned threads = 1) {
    std::vector<CriterionResult> out;
    for (auto const& spec : criteria()) {
      out.push_back(run_criterion(spec, threads));
    }
    return out;
  }

}  // namespace ybe
