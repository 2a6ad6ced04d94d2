#pragma once

// Finite abelian groups presented as products of cyclic groups
// Z/n_1 x ... x Z/n_k. Elements are residue vectors; the mixed-radix index
// has the last coordinate varying fastest.

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ybe/error.hpp"
#include "ybe/zmod.hpp"

namespace ybe {

  struct AbElem {
    std::vector<std::int64_t> coords;

    friend bool operator==(AbElem const&, AbElem const&) = default;
  };

  class AbGroup {
   public:
    /// The trivial group.
    AbGroup() = default;

    explicit AbGroup(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
      order_ = 1;
      for (auto n : moduli_) {
        if (n < 1) {
          throw StructuralError("AbGroup: every modulus must be >= 1, got "
                                + std::to_string(n));
        }
        if (order_ > (std::size_t{1} << 40) / static_cast<std::size_t>(n)) {
          throw BoundError("AbGroup: order too large to index");
        }
        order_ *= static_cast<std::size_t>(n);
      }
    }

    /// Parses a group literal such as "6" or "2,2". An empty literal is the
    /// trivial group.
    static AbGroup parse(std::string_view literal) {
      std::vector<std::int64_t> moduli;
      if (literal.empty()) {
        return AbGroup();
      }
      std::size_t pos = 0;
      while (pos <= literal.size()) {
        std::size_t comma = literal.find(',', pos);
        if (comma == std::string_view::npos) {
          comma = literal.size();
        }
        auto token = literal.substr(pos, comma - pos);
        while (!token.empty() && token.front() == ' ') {
          token.remove_prefix(1);
        }
        while (!token.empty() && token.back() == ' ') {
          token.remove_suffix(1);
        }
        std::int64_t n = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), n);
        if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
          throw StructuralError("bad group literal '" + std::string(literal) + "'");
        }
        moduli.push_back(n);
        pos = comma + 1;
      }
      return AbGroup(std::move(moduli));
    }

    [[nodiscard]] std::span<const std::int64_t> moduli() const noexcept {
      return moduli_;
    }
    [[nodiscard]] std::size_t rank() const noexcept {
      return moduli_.size();
    }
    [[nodiscard]] std::size_t order() const noexcept {
      return order_;
    }
    [[nodiscard]] bool is_trivial() const noexcept {
      return order_ == 1;
    }
    [[nodiscard]] bool is_cyclic_presentation() const noexcept {
      return moduli_.size() == 1;
    }

    /// Least common multiple of the moduli.
    [[nodiscard]] std::int64_t exponent() const noexcept {
      std::int64_t e = 1;
      for (auto n : moduli_) {
        e = std::lcm(e, n);
      }
      return e;
    }

    [[nodiscard]] std::string literal() const {
      std::string s;
      for (std::size_t i = 0; i < moduli_.size(); ++i) {
        if (i != 0) {
          s += ',';
        }
        s += std::to_string(moduli_[i]);
      }
      return s;
    }

    [[nodiscard]] bool contains(AbElem const& g) const noexcept {
      if (g.coords.size() != moduli_.size()) {
        return false;
      }
      for (std::size_t i = 0; i < moduli_.size(); ++i) {
        if (g.coords[i] < 0 || g.coords[i] >= moduli_[i]) {
          return false;
        }
      }
      return true;
    }

    [[nodiscard]] AbElem zero() const {
      return AbElem{std::vector<std::int64_t>(moduli_.size(), 0)};
    }

    [[nodiscard]] AbElem add(AbElem const& g, AbElem const& h) const {
      check(g);
      check(h);
      AbElem r{std::vector<std::int64_t>(moduli_.size())};
      for (std::size_t i = 0; i < moduli_.size(); ++i) {
        r.coords[i] = mod(g.coords[i] + h.coords[i], moduli_[i]);
      }
      return r;
    }

    [[nodiscard]] AbElem neg(AbElem const& g) const {
      check(g);
      AbElem r{std::vector<std::int64_t>(moduli_.size())};
      for (std::size_t i = 0; i < moduli_.size(); ++i) {
        r.coords[i] = mod(-g.coords[i], moduli_[i]);
      }
      return r;
    }

    [[nodiscard]] AbElem sub(AbElem const& g, AbElem const& h) const {
      return add(g, neg(h));
    }

    /// k * g for any integer k.
    [[nodiscard]] AbElem scale(AbElem const& g, std::int64_t k) const {
      check(g);
      AbElem r{std::vector<std::int64_t>(moduli_.size())};
      for (std::size_t i = 0; i < moduli_.size(); ++i) {
        r.coords[i] = mod(mod(k, moduli_[i]) * g.coords[i], moduli_[i]);
      }
      return r;
    }

    /// Reduces an arbitrary integer vector into the group.
    [[nodiscard]] AbElem reduce(std::span<const std::int64_t> coords) const {
      if (coords.size() != moduli_.size()) {
        throw StructuralError("AbGroup::reduce: expected " + std::to_string(moduli_.size())
                              + " coordinates");
      }
      AbElem r{std::vector<std::int64_t>(moduli_.size())};
      for (std::size_t i = 0; i < moduli_.size(); ++i) {
        r.coords[i] = mod(coords[i], moduli_[i]);
      }
      return r;
    }

    [[nodiscard]] std::size_t index(AbElem const& g) const {
      check(g);
      std::size_t idx = 0;
      for (std::size_t i = 0; i < moduli_.size(); ++i) {
        idx = idx * static_cast<std::size_t>(moduli_[i]) + static_cast<std::size_t>(g.coords[i]);
      }
      return idx;
    }

    [[nodiscard]] AbElem element(std::size_t idx) const {
      if (idx >= order_) {
        throw StructuralError("AbGroup::element: index " + std::to_string(idx)
                              + " out of range");
      }
      AbElem r{std::vector<std::int64_t>(moduli_.size())};
      for (std::size_t i = moduli_.size(); i-- > 0;) {
        auto n = static_cast<std::size_t>(moduli_[i]);
        r.coords[i] = static_cast<std::int64_t>(idx % n);
        idx /= n;
      }
      return r;
    }

    /// All elements in ascending index order.
    [[nodiscard]] std::vector<AbElem> enumerate() const {
      std::vector<AbElem> out;
      out.reserve(order_);
      for (std::size_t i = 0; i < order_; ++i) {
        out.push_back(element(i));
      }
      return out;
    }

    friend bool operator==(AbGroup const& a, AbGroup const& b) {
      return a.moduli_ == b.moduli_;
    }

   private:
    void check(AbElem const& g) const {
      if (g.coords.size() != moduli_.size()) {
        throw StructuralError("element with " + std::to_string(g.coords.size())
                              + " coordinates used in group Z/(" + literal() + ")");
      }
      assert(contains(g));
    }

    std::vector<std::int64_t> moduli_;
    std::size_t order_ = 1;
  };

  /// Index-level addition and negation tables for a small group.
  class GroupTable {
   public:
    explicit GroupTable(AbGroup group) : group_(std::move(group)) {
      std::size_t n = group_.order();
      if (n > 4096) {
        throw BoundError("GroupTable: group of order " + std::to_string(n) + " too large");
      }
      elems_ = group_.enumerate();
      add_.resize(n * n);
      neg_.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        neg_[i] = group_.index(group_.neg(elems_[i]));
        for (std::size_t j = 0; j < n; ++j) {
          add_[i * n + j] = group_.index(group_.add(elems_[i], elems_[j]));
        }
      }
    }

    [[nodiscard]] AbGroup const& group() const noexcept {
      return group_;
    }
    [[nodiscard]] std::size_t order() const noexcept {
      return neg_.size();
    }
    [[nodiscard]] std::size_t add(std::size_t i, std::size_t j) const noexcept {
      return add_[i * neg_.size() + j];
    }
    [[nodiscard]] std::size_t neg(std::size_t i) const noexcept {
      return neg_[i];
    }
    [[nodiscard]] std::size_t sub(std::size_t i, std::size_t j) const noexcept {
      return add(i, neg(j));
    }
    [[nodiscard]] AbElem const& element(std::size_t i) const noexcept {
      return elems_[i];
    }

   private:
    AbGroup group_;
    std::vector<AbElem> elems_;
    std::vector<std::size_t> add_;
    std::vector<std::size_t> neg_;
  };

  /// A subgroup given by the sorted indices of its elements.
  struct Subgroup {
    std::vector<std::size_t> members;

    [[nodiscard]] std::size_t size() const noexcept {
      return members.size();
    }
    [[nodiscard]] bool contains(std::size_t idx) const {
      return std::binary_search(members.begin(), members.end(), idx);
    }
    friend bool operator==(Subgroup const&, Subgroup const&) = default;
  };

  /// Smallest subgroup containing the given element indices.
  inline Subgroup subgroup_closure(AbGroup const& group, std::span<const std::size_t> gens) {
    std::vector<char> in(group.order(), 0);
    std::vector<std::size_t> members{0};
    in[0] = 1;
    auto elems = group.enumerate();
    // Adjoining g to a subgroup S gives the union of the cosets S + k g.
    for (std::size_t g : gens) {
      if (g >= group.order()) {
        throw StructuralError("subgroup_closure: generator index out of range");
      }
      if (in[g]) {
        continue;
      }
      std::vector<std::size_t> base = members;
      AbElem shift = elems[g];
      while (!in[group.index(shift)]) {
        for (std::size_t s : base) {
          std::size_t t = group.index(group.add(elems[s], shift));
          if (!in[t]) {
            in[t] = 1;
            members.push_back(t);
          }
        }
        shift = group.add(shift, elems[g]);
      }
    }
    std::sort(members.begin(), members.end());
    return Subgroup{std::move(members)};
  }

  inline Subgroup subgroup_closure(AbGroup const& group, std::span<const AbElem> gens) {
    std::vector<std::size_t> idx;
    idx.reserve(gens.size());
    for (auto const& g : gens) {
      idx.push_back(group.index(g));
    }
    return subgroup_closure(group, std::span<const std::size_t>(idx));
  }

  inline bool is_full_subgroup(AbGroup const& group, Subgroup const& s) {
#ifndef NDEBUG
    for (std::size_t a : s.members) {
      for (std::size_t b : s.members) {
        assert(s.contains(group.index(group.sub(group.element(a), group.element(b)))));
      }
    }
#endif
    return s.size() == group.order();
  }

}  // namespace ybe
