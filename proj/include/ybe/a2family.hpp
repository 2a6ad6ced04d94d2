#pragma once

// Solutions on X = A x A built from a symmetric family (j_a) in a finite
// abelian group A:
//   sigma_{(a1,a2)}(c1,c2) = (c1 + a2, c2 - j_{c1 + a2 - a1}).
// The point (a1, a2) has index idx(a1) * |A| + idx(a2).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ybe/abelian.hpp"
#include "ybe/error.hpp"
#include "ybe/parallel.hpp"
#include "ybe/permutation.hpp"
#include "ybe/solution.hpp"
#include "ybe/zmod.hpp"

namespace ybe {

  /// A family (j_a) indexed by the elements of A; j[i] is the index of
  /// j_{element(i)}.
  struct JFamily {
    AbGroup group;
    std::vector<std::size_t> j;

    friend bool operator==(JFamily const&, JFamily const&) = default;
  };

  /// Builds a family from element values given in index order.
  inline JFamily make_family(AbGroup group, std::vector<AbElem> const& values) {
    JFamily jf{std::move(group), {}};
    jf.j.reserve(values.size());
    for (auto const& v : values) {
      if (!jf.group.contains(v)) {
        throw StructuralError("family value outside the group");
      }
      jf.j.push_back(jf.group.index(v));
    }
    return jf;
  }

  /// Nullopt if j_a = j_{-a} for every a; otherwise the least offending a.
  inline std::optional<std::size_t> symmetry_violation(JFamily const& jf) {
    GroupTable t(jf.group);
    for (std::size_t a = 0; a < t.order(); ++a) {
      if (jf.j[a] != jf.j[t.neg(a)]) {
        return a;
      }
    }
    return std::nullopt;
  }

  inline void validate(JFamily const& jf) {
    std::size_t n = jf.group.order();
    if (jf.j.size() != n) {
      throw StructuralError("family has " + std::to_string(jf.j.size()) + " values, group has order "
                            + std::to_string(n));
    }
    for (std::size_t v : jf.j) {
      if (v >= n) {
        throw StructuralError("family value index out of range");
      }
    }
    if (auto a = symmetry_violation(jf)) {
      GroupTable t(jf.group);
      throw VerificationError("family is not symmetric: j_a != j_{-a} at a = " + std::to_string(*a)
                              + " (j_a = " + std::to_string(jf.j[*a])
                              + ", j_{-a} = " + std::to_string(jf.j[t.neg(*a)]) + ")");
    }
  }

  inline SolutionTable build_solution(JFamily const& jf) {
    validate(jf);
    GroupTable t(jf.group);
    std::size_t m = t.order();
    std::size_t n = m * m;
    std::vector<point_t> sigma(n * n);
    for (std::size_t a1 = 0; a1 < m; ++a1) {
      for (std::size_t a2 = 0; a2 < m; ++a2) {
        std::size_t x = a1 * m + a2;
        for (std::size_t c1 = 0; c1 < m; ++c1) {
          std::size_t first = t.add(c1, a2);
          std::size_t jv = jf.j[t.sub(first, a1)];
          for (std::size_t c2 = 0; c2 < m; ++c2) {
            sigma[x * n + c1 * m + c2] = static_cast<point_t>(first * m + t.sub(c2, jv));
          }
        }
      }
    }
    return SolutionTable::from_sigma(n, std::move(sigma), "A2[" + jf.group.literal() + "]");
  }

  /// Index of (a1, a2) in X = A x A.
  inline point_t pair_index(JFamily const& jf, std::size_t a1, std::size_t a2) {
    return static_cast<point_t>(a1 * jf.group.order() + a2);
  }

  inline bool indecomposable_criterion(JFamily const& jf) {
    validate(jf);
    return is_full_subgroup(jf.group, subgroup_closure(jf.group, std::span<const std::size_t>(jf.j)));
  }

  inline bool irretractable_criterion(JFamily const& jf) {
    validate(jf);
    GroupTable t(jf.group);
    for (std::size_t a = 1; a < t.order(); ++a) {
      bool separated = false;
      for (std::size_t c = 0; c < t.order() && !separated; ++c) {
        separated = jf.j[c] != jf.j[t.add(c, a)];
      }
      if (!separated) {
        return false;
      }
    }
    return true;
  }

  struct VChain {
    std::size_t a = 0;
    std::vector<Subgroup> stages;

    [[nodiscard]] Subgroup const& limit() const {
      return stages.back();
    }
  };

  /// V_{a,1} = gr(j_c - j_{c+a}); V_{a,i} = V_{a,i-1} + gr(j_c - j_{c+v} : v in V_{a,i-1}),
  /// computed until two consecutive stages coincide.
  inline VChain v_chain(JFamily const& jf, std::size_t a) {
    validate(jf);
    if (a == 0 || a >= jf.group.order()) {
      throw PreconditionError("v_chain: a must be a nonzero element");
    }
    GroupTable t(jf.group);
    auto differences = [&](std::span<const std::size_t> shifts) {
      std::vector<std::size_t> gens;
      for (std::size_t v : shifts) {
        for (std::size_t c = 0; c < t.order(); ++c) {
          gens.push_back(t.sub(jf.j[c], jf.j[t.add(c, v)]));
        }
      }
      std::sort(gens.begin(), gens.end());
      gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
      return gens;
    };
    VChain chain{a, {}};
    std::size_t first_shift[] = {a};
    chain.stages.push_back(subgroup_closure(jf.group, std::span<const std::size_t>(differences(first_shift))));
    for (;;) {
      Subgroup const& prev = chain.stages.back();
      auto gens = differences(prev.members);
      gens.insert(gens.end(), prev.members.begin(), prev.members.end());
      Subgroup next = subgroup_closure(jf.group, std::span<const std::size_t>(gens));
      if (next == prev) {
        return chain;
      }
      chain.stages.push_back(std::move(next));
    }
  }

  /// V_a = A for every nonzero a; for finite nontrivial A this is exactly
  /// simplicity of the solution on A x A.
  inline bool simple_criterion(JFamily const& jf) {
    validate(jf);
    if (jf.group.is_trivial()) {
      throw PreconditionError("simple_criterion: the group must be nontrivial");
    }
    for (std::size_t a = 1; a < jf.group.order(); ++a) {
      if (!is_full_subgroup(jf.group, v_chain(jf, a).limit())) {
        return false;
      }
    }
    return true;
  }

  /// p = 2k + 1 prime with k odd. Over Z/2p: j_i = j_{2p-i} = 2i - 1 and
  /// j_{p-i} = j_{p+i} = -(2i - 1) for 1 <= i <= k, j_0 = -2 sum (-1)^i j_i,
  /// j_p = -j_0.
  inline JFamily exsimple_family(std::int64_t p) {
    if (!is_prime(p)) {
      throw PreconditionError("p must be prime");
    }
    if (p == 2 || ((p - 1) / 2) % 2 == 0) {
      throw PreconditionError("k must be odd");
    }
    std::int64_t k = (p - 1) / 2;
    std::int64_t m = 2 * p;
    std::vector<std::int64_t> j(static_cast<std::size_t>(m), 0);
    std::int64_t alternating = 0;
    for (std::int64_t i = 1; i <= k; ++i) {
      std::int64_t v = 2 * i - 1;
      j[static_cast<std::size_t>(i)] = mod(v, m);
      j[static_cast<std::size_t>(m - i)] = mod(v, m);
      j[static_cast<std::size_t>(p - i)] = mod(-v, m);
      j[static_cast<std::size_t>(p + i)] = mod(-v, m);
      alternating += (i % 2 == 0 ? 1 : -1) * v;
    }
    j[0] = mod(-2 * alternating, m);
    j[static_cast<std::size_t>(p)] = mod(2 * alternating, m);
    JFamily jf{AbGroup({m}), {}};
    for (auto v : j) {
      jf.j.push_back(static_cast<std::size_t>(v));
    }
    validate(jf);
    return jf;
  }

  /// Family over Z/m, m = p_1 ... p_n, read through the CRT isomorphism
  /// phi: Z/m -> Z/p_1 x ... x Z/p_n. Component i of phi(j_k) is
  /// 1 - p_{i+1} delta_{k mod p_{i+1}, 0} modulo p_i (indices cyclic).
  inline JFamily crt_family(std::vector<std::int64_t> const& primes) {
    if (primes.size() < 2) {
      throw PreconditionError("crt_family: at least two primes are required");
    }
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (!is_prime(primes[i])) {
        throw PreconditionError("crt_family: " + std::to_string(primes[i]) + " is not prime");
      }
      for (std::size_t l = 0; l < i; ++l) {
        if (primes[l] == primes[i]) {
          throw PreconditionError("crt_family: primes must be pairwise distinct");
        }
      }
    }
    std::int64_t m = 1;
    for (auto p : primes) {
      m *= p;
    }
    std::size_t n = primes.size();
    JFamily jf{AbGroup({m}), std::vector<std::size_t>(static_cast<std::size_t>(m))};
    std::vector<std::int64_t> residues(n);
    for (std::int64_t k = 0; k < m; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        std::int64_t next = primes[(i + 1) % n];
        residues[i] = mod(1 - (k % next == 0 ? next : 0), primes[i]);
      }
      jf.j[static_cast<std::size_t>(k)] = static_cast<std::size_t>(crt(residues, primes));
    }
    validate(jf);
    return jf;
  }

  struct AlternatingSumReport {
    bool sums_vanish = false;
    bool telescoping_product = false;
    std::optional<std::size_t> witness_u;

    [[nodiscard]] bool ok() const noexcept {
      return sums_vanish && telescoping_product;
    }
  };

  /// For a family over Z/2p with k = (p - 1) / 2: checks that
  /// sum_{i=-k}^{k} (-1)^i j_{u+i} = 0 for every u, and that
  /// s_{-k}^{(-1)^k} ... s_{-1}^{-1} s_0^2 s_1^{-1} ... s_k^{(-1)^k} = s_0
  /// with s_i = sigma_{(i,0)} on the built solution.
  inline AlternatingSumReport alternating_sum_check(JFamily const& jf, std::int64_t p) {
    validate(jf);
    std::int64_t m = 2 * p;
    if (jf.group.moduli().size() != 1 || jf.group.moduli()[0] != m) {
      throw PreconditionError("alternating_sum_check: family must live on Z/" + std::to_string(m));
    }
    std::int64_t k = (p - 1) / 2;
    AlternatingSumReport rep;
    rep.sums_vanish = true;
    for (std::int64_t u = 0; u < m; ++u) {
      std::int64_t sum = 0;
      for (std::int64_t i = -k; i <= k; ++i) {
        std::int64_t sign = (i % 2 == 0) ? 1 : -1;
        sum += sign * static_cast<std::int64_t>(jf.j[static_cast<std::size_t>(mod(u + i, m))]);
      }
      if (mod(sum, m) != 0) {
        rep.sums_vanish = false;
        rep.witness_u = static_cast<std::size_t>(u);
        break;
      }
    }
    auto s = build_solution(jf);
    auto sig = [&](std::int64_t i) {
      return s.sigma_perm(pair_index(jf, static_cast<std::size_t>(mod(i, m)), 0));
    };
    Permutation product = Permutation::identity(s.size());
    for (std::int64_t i = -k; i <= k; ++i) {
      std::int64_t e = i == 0 ? 2 : ((i % 2 == 0) ? 1 : -1);
      product = product * sig(i).pow(e);
    }
    rep.telescoping_product = product == sig(0);
    return rep;
  }

  // ---------------------------------------------------------------------
  // Census over all symmetric families on a group
  // ---------------------------------------------------------------------

  inline constexpr std::size_t default_census_order_cap = 6;

  /// Every symmetric family on `group`, in lexicographic order of the values
  /// chosen for the pair representatives {a, -a} (least index first).
  inline std::vector<JFamily> symmetric_families(AbGroup const& group,
                                                 std::size_t order_cap = default_census_order_cap) {
    if (group.order() > order_cap) {
      throw BoundError("census: group order " + std::to_string(group.order()) + " exceeds cap "
                       + std::to_string(order_cap));
    }
    GroupTable t(group);
    std::size_t m = t.order();
    std::vector<std::size_t> reps;
    for (std::size_t a = 0; a < m; ++a) {
      if (t.neg(a) >= a) {
        reps.push_back(a);
      }
    }
    std::size_t total = 1;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      total *= m;
    }
    std::vector<JFamily> out;
    out.reserve(total);
    std::vector<std::size_t> digits(reps.size(), 0);
    for (std::size_t c = 0; c < total; ++c) {
      std::size_t rest = c;
      for (std::size_t i = reps.size(); i-- > 0;) {
        digits[i] = rest % m;
        rest /= m;
      }
      JFamily jf{group, std::vector<std::size_t>(m)};
      for (std::size_t i = 0; i < reps.size(); ++i) {
        jf.j[reps[i]] = digits[i];
        jf.j[t.neg(reps[i])] = digits[i];
      }
      out.push_back(std::move(jf));
    }
    return out;
  }

  struct CensusEntry {
    JFamily family;
    bool indecomposable_criterion = false;
    bool irretractable_criterion = false;
    bool simple_criterion = false;
    // Filled only when the oracle run was requested.
    std::optional<bool> indecomposable;
    std::optional<bool> irretractable;
    std::optional<bool> simple_oracle;

    [[nodiscard]] bool agrees() const noexcept {
      return (!indecomposable || *indecomposable == indecomposable_criterion)
             && (!irretractable || *irretractable == irretractable_criterion)
             && (!simple_oracle || *simple_oracle == simple_criterion);
    }
  };

  inline std::vector<CensusEntry> census(AbGroup const& group,
                                         bool with_oracle,
                                         unsigned threads = 1,
                                         std::size_t order_cap = default_census_order_cap) {
    auto families = symmetric_families(group, order_cap);
    std::vector<CensusEntry> out(families.size());
    parallel_for(families.size(), threads, [&](std::size_t i) {
      CensusEntry e;
      e.family = families[i];
      e.indecomposable_criterion = indecomposable_criterion(e.family);
      e.irretractable_criterion = irretractable_criterion(e.family);
      e.simple_criterion = simple_criterion(e.family);
      if (with_oracle) {
        auto s = build_solution(e.family);
        e.indecomposable = is_indecomposable(s);
        e.irretractable = is_irretractable(s);
        e.simple_oracle = is_simple_oracle(s, 1);
      }
      out[i] = std::move(e);
    });
    return out;
  }

}  // namespace ybe
