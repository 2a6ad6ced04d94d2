#pragma once

// Finite left braces addressed by stable element indices. Any type with
// size/zero/add/neg/mul/inv on indices is a brace realization; DenseBrace
// stores explicit tables.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ybe/abelian.hpp"
#include "ybe/error.hpp"
#include "ybe/solution.hpp"

namespace ybe {

  using elem_t = std::size_t;
  inline constexpr elem_t npos = static_cast<elem_t>(-1);

  template <typename B>
  concept Brace = requires(B const& b, elem_t i) {
    { b.size() } -> std::convertible_to<std::size_t>;
    { b.zero() } -> std::convertible_to<elem_t>;
    { b.add(i, i) } -> std::convertible_to<elem_t>;
    { b.neg(i) } -> std::convertible_to<elem_t>;
    { b.mul(i, i) } -> std::convertible_to<elem_t>;
    { b.inv(i) } -> std::convertible_to<elem_t>;
  };

  /// Brace given by explicit N x N addition and multiplication tables. The
  /// tables are stored as given; neg/inv return npos when no inverse exists,
  /// so that verify_axioms can diagnose malformed input.
  class DenseBrace {
   public:
    DenseBrace() = default;

    DenseBrace(std::size_t n, std::vector<elem_t> add, std::vector<elem_t> mul)
        : n_(n), add_(std::move(add)), mul_(std::move(mul)) {
      if (n == 0 || add_.size() != n * n || mul_.size() != n * n) {
        throw StructuralError("DenseBrace: tables must be N x N with N >= 1");
      }
      for (std::size_t i = 0; i < n * n; ++i) {
        if (add_[i] >= n || mul_[i] >= n) {
          throw StructuralError("DenseBrace: table entry out of range at position "
                                + std::to_string(i));
        }
      }
      zero_ = find_identity(add_);
      one_ = find_identity(mul_);
      neg_ = inverses(add_, zero_);
      inv_ = inverses(mul_, one_);
    }

    [[nodiscard]] std::size_t size() const noexcept {
      return n_;
    }
    [[nodiscard]] elem_t zero() const noexcept {
      return zero_;
    }
    [[nodiscard]] elem_t one() const noexcept {
      return one_;
    }
    [[nodiscard]] elem_t add(elem_t a, elem_t b) const noexcept {
      return add_[a * n_ + b];
    }
    [[nodiscard]] elem_t mul(elem_t a, elem_t b) const noexcept {
      return mul_[a * n_ + b];
    }
    [[nodiscard]] elem_t neg(elem_t a) const noexcept {
      return neg_[a];
    }
    [[nodiscard]] elem_t inv(elem_t a) const noexcept {
      return inv_[a];
    }
    [[nodiscard]] std::span<const elem_t> add_table() const noexcept {
      return add_;
    }
    [[nodiscard]] std::span<const elem_t> mul_table() const noexcept {
      return mul_;
    }

    friend bool operator==(DenseBrace const& a, DenseBrace const& b) {
      return a.n_ == b.n_ && a.add_ == b.add_ && a.mul_ == b.mul_;
    }

   private:
    elem_t find_identity(std::vector<elem_t> const& t) const {
      for (elem_t e = 0; e < n_; ++e) {
        bool ok = true;
        for (elem_t x = 0; x < n_ && ok; ++x) {
          ok = t[e * n_ + x] == x && t[x * n_ + e] == x;
        }
        if (ok) {
          return e;
        }
      }
      return npos;
    }

    std::vector<elem_t> inverses(std::vector<elem_t> const& t, elem_t e) const {
      std::vector<elem_t> out(n_, npos);
      if (e == npos) {
        return out;
      }
      for (elem_t a = 0; a < n_; ++a) {
        for (elem_t b = 0; b < n_; ++b) {
          if (t[a * n_ + b] == e && t[b * n_ + a] == e) {
            out[a] = b;
            break;
          }
        }
      }
      return out;
    }

    std::size_t n_ = 0;
    std::vector<elem_t> add_;
    std::vector<elem_t> mul_;
    elem_t zero_ = npos;
    elem_t one_ = npos;
    std::vector<elem_t> neg_;
    std::vector<elem_t> inv_;
  };

  inline constexpr std::size_t dense_threshold = 4096;

  template <Brace B>
  DenseBrace to_dense(B const& b) {
    std::size_t n = b.size();
    if (n > dense_threshold) {
      throw BoundError("to_dense: brace of order " + std::to_string(n) + " exceeds "
                       + std::to_string(dense_threshold));
    }
    std::vector<elem_t> add(n * n), mul(n * n);
    for (elem_t x = 0; x < n; ++x) {
      for (elem_t y = 0; y < n; ++y) {
        add[x * n + y] = b.add(x, y);
        mul[x * n + y] = b.mul(x, y);
      }
    }
    return DenseBrace(n, std::move(add), std::move(mul));
  }

  /// The trivial brace on a finite abelian group: a o b = a + b.
  inline DenseBrace trivial_brace(AbGroup const& g) {
    GroupTable t(g);
    std::size_t n = t.order();
    std::vector<elem_t> add(n * n);
    for (elem_t x = 0; x < n; ++x) {
      for (elem_t y = 0; y < n; ++y) {
        add[x * n + y] = t.add(x, y);
      }
    }
    auto mul = add;
    return DenseBrace(n, std::move(add), std::move(mul));
  }

  // ---------------------------------------------------------------------
  // Axioms
  // ---------------------------------------------------------------------

  struct BraceWitness {
    std::string property;
    std::vector<elem_t> elements;

    [[nodiscard]] std::string describe() const {
      std::string s = property + " fails at (";
      for (std::size_t i = 0; i < elements.size(); ++i) {
        if (i != 0) {
          s += ", ";
        }
        s += std::to_string(elements[i]);
      }
      return s + ")";
    }
  };

  struct BraceAxiomReport {
    bool additive_group = false;
    bool multiplicative_group = false;
    bool shared_neutral = false;
    bool compatibility = false;
    bool exhaustive = false;
    std::size_t samples = 0;  // triples examined when not exhaustive
    std::optional<BraceWitness> witness;

    [[nodiscard]] bool ok() const noexcept {
      return additive_group && multiplicative_group && shared_neutral && compatibility;
    }
  };

  /// Triple checks are exhaustive up to this order and sampled above it;
  /// pair checks (commutativity, cancellation) are exhaustive up to
  /// dense_threshold.
  inline constexpr std::size_t exhaustive_axiom_order = 512;
  inline constexpr std::size_t axiom_sample_count = 200'000;

  namespace detail {
    template <typename F>
    void for_triples(std::size_t n, bool exhaustive, std::size_t samples, F&& f) {
      if (exhaustive) {
        for (elem_t a = 0; a < n; ++a) {
          for (elem_t b = 0; b < n; ++b) {
            for (elem_t c = 0; c < n; ++c) {
              if (!f(a, b, c)) {
                return;
              }
            }
          }
        }
        return;
      }
      std::mt19937_64 rng(0x5eed'b7acULL);
      std::uniform_int_distribution<elem_t> pick(0, n - 1);
      for (std::size_t s = 0; s < samples; ++s) {
        elem_t a = pick(rng), b = pick(rng), c = pick(rng);
        if (!f(a, b, c)) {
          return;
        }
      }
    }

    /// Nullopt if every row and column of the operation is a bijection;
    /// otherwise (a, b, c) with b != c and op(a, b) = op(a, c), or
    /// (b, c, a) with op(b, a) = op(c, a).
    template <typename Op>
    std::optional<std::vector<elem_t>> latin_witness(std::size_t n, Op&& op) {
      std::vector<elem_t> seen(n);
      for (int side = 0; side < 2; ++side) {
        for (elem_t a = 0; a < n; ++a) {
          std::fill(seen.begin(), seen.end(), npos);
          for (elem_t b = 0; b < n; ++b) {
            elem_t v = side == 0 ? op(a, b) : op(b, a);
            if (v >= n) {
              return std::vector<elem_t>{a, b};
            }
            if (seen[v] != npos) {
              return side == 0 ? std::vector<elem_t>{a, seen[v], b} : std::vector<elem_t>{seen[v], b, a};
            }
            seen[v] = b;
          }
        }
      }
      return std::nullopt;
    }
  }  // namespace detail

  /// Checks (B,+) abelian group, (B,o) group, shared neutral element and
  /// a o (b + c) + a = a o b + a o c.
  template <Brace B>
  BraceAxiomReport verify_axioms(B const& br,
                                 std::size_t exhaustive_limit = exhaustive_axiom_order,
                                 std::size_t samples = axiom_sample_count) {
    BraceAxiomReport rep;
    std::size_t n = br.size();
    rep.exhaustive = n <= exhaustive_limit;
    rep.samples = rep.exhaustive ? 0 : samples;
    auto fail = [&](std::string what, std::vector<elem_t> el) {
      if (!rep.witness) {
        rep.witness = BraceWitness{std::move(what), std::move(el)};
      }
    };
    elem_t z = br.zero();
    bool pairwise_exhaustive = n <= dense_threshold;

    // Additive group.
    rep.additive_group = z != npos;
    if (!rep.additive_group) {
      fail("additive identity", {});
    }
    for (elem_t a = 0; a < n && rep.additive_group; ++a) {
      if (br.add(z, a) != a || br.add(a, z) != a) {
        rep.additive_group = false;
        fail("additive identity", {a});
      } else if (br.neg(a) == npos || br.add(a, br.neg(a)) != z) {
        rep.additive_group = false;
        fail("additive inverse", {a});
      }
    }
    if (rep.additive_group && pairwise_exhaustive) {
      if (auto w = detail::latin_witness(n, [&](elem_t a, elem_t b) { return br.add(a, b); })) {
        rep.additive_group = false;
        fail("cancellation in (B,+)", std::move(*w));
      }
    }
    if (rep.additive_group) {
      auto check_comm = [&](elem_t a, elem_t b) {
        if (br.add(a, b) != br.add(b, a)) {
          rep.additive_group = false;
          fail("commutativity of +", {a, b});
          return false;
        }
        return true;
      };
      if (pairwise_exhaustive) {
        for (elem_t a = 0; a < n && rep.additive_group; ++a) {
          for (elem_t b = a + 1; b < n; ++b) {
            if (!check_comm(a, b)) {
              break;
            }
          }
        }
      } else {
        detail::for_triples(n, false, samples, [&](elem_t a, elem_t b, elem_t) { return check_comm(a, b); });
      }
    }
    if (rep.additive_group) {
      detail::for_triples(n, rep.exhaustive, samples, [&](elem_t a, elem_t b, elem_t c) {
        if (br.add(br.add(a, b), c) != br.add(a, br.add(b, c))) {
          rep.additive_group = false;
          fail("associativity of +", {a, b, c});
          return false;
        }
        return true;
      });
    }

    // Multiplicative group, with the same neutral element.
    rep.shared_neutral = z != npos;
    rep.multiplicative_group = z != npos;
    for (elem_t a = 0; a < n && rep.multiplicative_group; ++a) {
      if (br.mul(z, a) != a || br.mul(a, z) != a) {
        rep.multiplicative_group = false;
        rep.shared_neutral = false;
        fail("zero is the multiplicative identity", {a});
      } else if (br.inv(a) == npos || br.mul(a, br.inv(a)) != z || br.mul(br.inv(a), a) != z) {
        rep.multiplicative_group = false;
        fail("multiplicative inverse", {a});
      }
    }
    if (rep.multiplicative_group && pairwise_exhaustive) {
      if (auto w = detail::latin_witness(n, [&](elem_t a, elem_t b) { return br.mul(a, b); })) {
        rep.multiplicative_group = false;
        fail("cancellation in (B,o)", std::move(*w));
      }
    }
    if (rep.multiplicative_group) {
      detail::for_triples(n, rep.exhaustive, samples, [&](elem_t a, elem_t b, elem_t c) {
        if (br.mul(br.mul(a, b), c) != br.mul(a, br.mul(b, c))) {
          rep.multiplicative_group = false;
          fail("associativity of o", {a, b, c});
          return false;
        }
        return true;
      });
    }

    rep.compatibility = rep.additive_group && rep.multiplicative_group;
    if (rep.compatibility) {
      detail::for_triples(n, rep.exhaustive, samples, [&](elem_t a, elem_t b, elem_t c) {
        if (br.add(br.mul(a, br.add(b, c)), a) != br.add(br.mul(a, b), br.mul(a, c))) {
          rep.compatibility = false;
          fail("a o (b + c) + a = a o b + a o c", {a, b, c});
          return false;
        }
        return true;
      });
    }
    return rep;
  }

  // ---------------------------------------------------------------------
  // Lambda map, socle, difference
  // ---------------------------------------------------------------------

  /// lambda_a(b) = -a + a o b.
  template <Brace B>
  elem_t lambda(B const& br, elem_t a, elem_t b) {
    return br.add(br.neg(a), br.mul(a, b));
  }

  /// Inverse of lambda_a: lambda_{a^{-1}}.
  template <Brace B>
  elem_t lambda_inv(B const& br, elem_t a, elem_t b) {
    return lambda(br, br.inv(a), b);
  }

  struct LambdaActionReport {
    bool additive = false;        // lambda_a(b + c) = lambda_a(b) + lambda_a(c)
    bool action = false;          // lambda_{a o b} = lambda_a lambda_b
    bool exhaustive = false;
    std::optional<BraceWitness> witness;

    [[nodiscard]] bool ok() const noexcept {
      return additive && action;
    }
  };

  template <Brace B>
  LambdaActionReport verify_lambda_action(B const& br,
                                          std::size_t exhaustive_limit = exhaustive_axiom_order,
                                          std::size_t samples = axiom_sample_count) {
    LambdaActionReport rep;
    std::size_t n = br.size();
    rep.exhaustive = n <= exhaustive_limit;
    rep.additive = true;
    rep.action = true;
    detail::for_triples(n, rep.exhaustive, samples, [&](elem_t a, elem_t b, elem_t c) {
      if (lambda(br, a, br.add(b, c)) != br.add(lambda(br, a, b), lambda(br, a, c))) {
        rep.additive = false;
        rep.witness = BraceWitness{"lambda_a(b + c) = lambda_a(b) + lambda_a(c)", {a, b, c}};
        return false;
      }
      if (lambda(br, br.mul(a, b), c) != lambda(br, a, lambda(br, b, c))) {
        rep.action = false;
        rep.witness = BraceWitness{"lambda_{a o b} = lambda_a lambda_b", {a, b, c}};
        return false;
      }
      return true;
    });
    return rep;
  }

  /// A set of element indices of a brace with the closure properties that
  /// have been verified for it.
  struct BraceSubset {
    std::vector<elem_t> members;  // sorted
    bool additive_subgroup = false;
    bool left_ideal = false;
    bool ideal = false;

    [[nodiscard]] std::size_t size() const noexcept {
      return members.size();
    }
    [[nodiscard]] bool contains(elem_t x) const {
      return std::binary_search(members.begin(), members.end(), x);
    }
  };

  /// Greedy generating set of (B, o): each element not yet in the subgroup
  /// generated so far is added.
  template <Brace B>
  std::vector<elem_t> multiplicative_generators(B const& br) {
    std::size_t n = br.size();
    std::vector<char> in(n, 0);
    std::vector<elem_t> members{br.zero()};
    in[br.zero()] = 1;
    std::vector<elem_t> gens;
    for (elem_t g = 0; g < n; ++g) {
      if (in[g]) {
        continue;
      }
      gens.push_back(g);
      // Re-close under right multiplication by every generator.
      for (std::size_t head = 0; head < members.size(); ++head) {
        for (elem_t s : gens) {
          elem_t y = br.mul(members[head], s);
          if (!in[y]) {
            in[y] = 1;
            members.push_back(y);
          }
        }
      }
    }
    return gens;
  }

  /// Closure of S under + and - (cosets are adjoined one generator at a time).
  template <Brace B>
  BraceSubset additive_span(B const& br, std::span<const elem_t> s) {
    std::size_t n = br.size();
    std::vector<char> in(n, 0);
    std::vector<elem_t> members{br.zero()};
    in[br.zero()] = 1;
    for (elem_t g : s) {
      if (g >= n) {
        throw StructuralError("additive_span: element index out of range");
      }
      if (in[g]) {
        continue;
      }
      std::vector<elem_t> base = members;
      elem_t shift = g;
      while (!in[shift]) {
        for (elem_t m : base) {
          elem_t t = br.add(m, shift);
          if (!in[t]) {
            in[t] = 1;
            members.push_back(t);
          }
        }
        shift = br.add(shift, g);
      }
    }
    std::sort(members.begin(), members.end());
    return BraceSubset{std::move(members), true, false, false};
  }

  template <Brace B>
  bool generates_additively(B const& br, std::span<const elem_t> s) {
    return additive_span(br, s).size() == br.size();
  }

  /// soc(B) = {a : lambda_a = id}. When additive generators are supplied,
  /// lambda_a is tested on those only (lambda_a is additive).
  template <Brace B>
  BraceSubset socle(B const& br, std::span<const elem_t> additive_gens) {
    std::vector<elem_t> members;
    for (elem_t a = 0; a < br.size(); ++a) {
      bool fixed = true;
      for (elem_t g : additive_gens) {
        if (lambda(br, a, g) != g) {
          fixed = false;
          break;
        }
      }
      if (fixed) {
        members.push_back(a);
      }
    }
    return BraceSubset{std::move(members), true, true, true};
  }

  template <Brace B>
  BraceSubset socle(B const& br) {
    std::vector<elem_t> all(br.size());
    for (elem_t x = 0; x < br.size(); ++x) {
      all[x] = x;
    }
    return socle(br, std::span<const elem_t>(all));
  }

  struct Difference {
    elem_t direct;          // a + (-b)
    elem_t via_lambda;      // a + lambda_b(b^{-1})
    elem_t via_product;     // a o lambda_{a^{-1} o b}(b^{-1})
    bool product_identity;  // a o b^{-1} = a - lambda_{a o b^{-1}}(b)

    [[nodiscard]] bool agree() const noexcept {
      return direct == via_lambda && direct == via_product && product_identity;
    }
  };

  template <Brace B>
  Difference difference(B const& br, elem_t a, elem_t b) {
    Difference d{};
    elem_t binv = br.inv(b);
    d.direct = br.add(a, br.neg(b));
    d.via_lambda = br.add(a, lambda(br, b, binv));
    d.via_product = br.mul(a, lambda(br, br.mul(br.inv(a), b), binv));
    elem_t ab = br.mul(a, binv);
    d.product_identity = ab == br.add(a, br.neg(lambda(br, ab, b)));
    return d;
  }

  // ---------------------------------------------------------------------
  // Solutions, orbits, ideals
  // ---------------------------------------------------------------------

  /// r_B(a, b) = (lambda_a(b), lambda^{-1}_{lambda_a(b)}(a)) on the carrier.
  template <Brace B>
  SolutionTable associated_solution(B const& br) {
    std::size_t n = br.size();
    if (n > dense_threshold) {
      throw BoundError("associated_solution: brace too large for a dense solution table");
    }
    std::vector<point_t> sigma(n * n);
    for (elem_t a = 0; a < n; ++a) {
      for (elem_t b = 0; b < n; ++b) {
        sigma[a * n + b] = static_cast<point_t>(lambda(br, a, b));
      }
    }
    return SolutionTable::from_sigma(n, std::move(sigma), "r_B");
  }

  /// Closure of {x} under lambda_b for b in `actors` (a generating set of
  /// (B, o) suffices for a finite brace).
  template <Brace B>
  std::vector<elem_t> lambda_orbit(B const& br, elem_t x, std::span<const elem_t> actors) {
    std::vector<char> in(br.size(), 0);
    std::vector<elem_t> orbit{x};
    in[x] = 1;
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      for (elem_t b : actors) {
        elem_t y = lambda(br, b, orbit[head]);
        if (!in[y]) {
          in[y] = 1;
          orbit.push_back(y);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    return orbit;
  }

  template <Brace B>
  std::vector<elem_t> lambda_orbit(B const& br, elem_t x) {
    auto gens = multiplicative_generators(br);
    return lambda_orbit(br, x, std::span<const elem_t>(gens));
  }

  /// Smallest ideal containing the seeds: closure under +, -, lambda_g and
  /// conjugation by g for g in a generating set of (B, o).
  template <Brace B>
  BraceSubset ideal_generated(B const& br, std::span<const elem_t> seeds, std::span<const elem_t> mul_gens) {
    std::size_t n = br.size();
    std::vector<char> in(n, 0);
    std::vector<elem_t> members{br.zero()};
    in[br.zero()] = 1;
    std::vector<elem_t> pending(seeds.begin(), seeds.end());
    std::size_t processed = 0;  // members before this index have had their images queued
    for (;;) {
      while (!pending.empty()) {
        elem_t g = pending.back();
        pending.pop_back();
        if (in[g]) {
          continue;
        }
        std::size_t base_size = members.size();
        elem_t shift = g;
        while (!in[shift]) {
          for (std::size_t i = 0; i < base_size; ++i) {
            elem_t t = br.add(members[i], shift);
            if (!in[t]) {
              in[t] = 1;
              members.push_back(t);
            }
          }
          shift = br.add(shift, g);
        }
      }
      if (processed == members.size() || members.size() == n) {
        break;
      }
      elem_t y = members[processed++];
      for (elem_t g : mul_gens) {
        elem_t l = lambda(br, g, y);
        if (!in[l]) {
          pending.push_back(l);
        }
        elem_t c = br.mul(br.mul(g, y), br.inv(g));
        if (!in[c]) {
          pending.push_back(c);
        }
      }
    }
    std::sort(members.begin(), members.end());
    return BraceSubset{std::move(members), true, true, true};
  }

  template <Brace B>
  BraceSubset ideal_generated(B const& br, elem_t a) {
    auto gens = multiplicative_generators(br);
    elem_t seed[] = {a};
    return ideal_generated(br, std::span<const elem_t>(seed), std::span<const elem_t>(gens));
  }

  /// True iff N > 1 and every nonzero element generates the whole brace as
  /// an ideal. Refuses above the dense threshold unless `allow_large`.
  template <Brace B>
  bool is_simple_brace(B const& br, bool allow_large = false) {
    std::size_t n = br.size();
    if (n > dense_threshold && !allow_large) {
      throw BoundError("is_simple_brace: order " + std::to_string(n) + " exceeds "
                       + std::to_string(dense_threshold)
                       + "; use simplepermu_certificate for braces of this size");
    }
    if (n <= 1) {
      return false;
    }
    auto gens = multiplicative_generators(br);
    for (elem_t a = 0; a < n; ++a) {
      if (a == br.zero()) {
        continue;
      }
      elem_t seed[] = {a};
      if (ideal_generated(br, std::span<const elem_t>(seed), std::span<const elem_t>(gens)).size() != n) {
        return false;
      }
    }
    return true;
  }

  /// Checks the ideal axioms for a subset and returns it with verified flags.
  template <Brace B>
  BraceSubset classify_subset(B const& br, std::vector<elem_t> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    BraceSubset s{std::move(members), false, false, false};
    auto gens = multiplicative_generators(br);
    bool sub = s.contains(br.zero());
    for (elem_t a : s.members) {
      if (!sub) {
        break;
      }
      if (!s.contains(br.neg(a))) {
        sub = false;
      }
      for (elem_t b : s.members) {
        if (!s.contains(br.add(a, b))) {
          sub = false;
          break;
        }
      }
    }
    s.additive_subgroup = sub;
    bool left = sub;
    bool normal = sub;
    for (elem_t y : s.members) {
      for (elem_t g : gens) {
        if (left && !s.contains(lambda(br, g, y))) {
          left = false;
        }
        if (normal && !s.contains(br.mul(br.mul(g, y), br.inv(g)))) {
          normal = false;
        }
      }
    }
    s.left_ideal = left;
    s.ideal = left && normal;
    return s;
  }

  /// B / I on coset representatives (least index per coset, ordered by
  /// representative).
  template <Brace B>
  DenseBrace quotient_brace(B const& br, BraceSubset const& ideal) {
    auto checked = classify_subset(br, ideal.members);
    if (!checked.additive_subgroup) {
      throw VerificationError("quotient_brace: subset is not an additive subgroup");
    }
    if (!checked.left_ideal) {
      throw VerificationError("quotient_brace: subset is not lambda-invariant");
    }
    if (!checked.ideal) {
      throw VerificationError("quotient_brace: subset is not normal in the multiplicative group");
    }
    std::size_t n = br.size();
    std::vector<elem_t> rep_of(n, npos);
    std::vector<elem_t> reps;
    for (elem_t x = 0; x < n; ++x) {
      if (rep_of[x] != npos) {
        continue;
      }
      for (elem_t i : checked.members) {
        rep_of[br.add(x, i)] = x;
      }
      reps.push_back(x);
    }
    std::size_t m = reps.size();
    std::vector<elem_t> position(n, npos);
    for (elem_t k = 0; k < m; ++k) {
      position[reps[k]] = k;
    }
    std::vector<elem_t> add(m * m), mul(m * m);
    for (elem_t a = 0; a < m; ++a) {
      for (elem_t b = 0; b < m; ++b) {
        add[a * m + b] = position[rep_of[br.add(reps[a], reps[b])]];
        mul[a * m + b] = position[rep_of[br.mul(reps[a], reps[b])]];
      }
    }
    return DenseBrace(m, std::move(add), std::move(mul));
  }

  struct OrbitSolutionOptions {
    bool check_simple = true;  // require is_simple_brace (dense scale only)
  };

  /// Solution r(x, y) = (lambda_x(y), lambda^{-1}_{lambda_x(y)}(x)) on a lambda
  /// orbit X; points are numbered by position in the sorted orbit.
  template <Brace B>
  SolutionTable solution_from_orbit(B const& br, std::span<const elem_t> orbit, OrbitSolutionOptions opt = {}) {
    if (br.size() <= 1) {
      throw PreconditionError("solution_from_orbit: brace must be nontrivial");
    }
    std::vector<elem_t> x(orbit.begin(), orbit.end());
    std::sort(x.begin(), x.end());
    if (x.empty() || std::adjacent_find(x.begin(), x.end()) != x.end()) {
      throw PreconditionError("solution_from_orbit: orbit must be a nonempty set");
    }
    auto gens = multiplicative_generators(br);
    if (lambda_orbit(br, x.front(), std::span<const elem_t>(gens)) != x) {
      throw PreconditionError("solution_from_orbit: the set is not a lambda orbit");
    }
    if (!generates_additively(br, std::span<const elem_t>(x))) {
      throw PreconditionError("solution_from_orbit: the orbit does not generate the additive group");
    }
    if (opt.check_simple && !is_simple_brace(br)) {
      throw PreconditionError("solution_from_orbit: the brace is not simple");
    }
    std::size_t n = x.size();
    std::vector<point_t> sigma(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        elem_t v = lambda(br, x[i], x[k]);
        auto it = std::lower_bound(x.begin(), x.end(), v);
        sigma[i * n + k] = static_cast<point_t>(it - x.begin());
      }
    }
    return SolutionTable::from_sigma(n, std::move(sigma), "orbit");
  }

}  // namespace ybe
