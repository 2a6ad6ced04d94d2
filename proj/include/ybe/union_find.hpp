#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

namespace ybe {

  /// Disjoint sets over 0..n-1. The representative of a class is always its
  /// least element, so partitions read off the structure are canonical.
  class DisjointSet {
   public:
    DisjointSet() = default;

    explicit DisjointSet(std::size_t n) : parent_(n), classes_(n) {
      std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
    }

    [[nodiscard]] std::size_t size() const noexcept {
      return parent_.size();
    }

    [[nodiscard]] std::size_t num_classes() const noexcept {
      return classes_;
    }

    std::uint32_t find(std::uint32_t x) noexcept {
      std::uint32_t root = x;
      while (parent_[root] != root) {
        root = parent_[root];
      }
      while (parent_[x] != root) {
        std::uint32_t next = parent_[x];
        parent_[x] = root;
        x = next;
      }
      return root;
    }

    /// Merges the classes of x and y; returns false if they already coincide.
    bool unite(std::uint32_t x, std::uint32_t y) noexcept {
      std::uint32_t rx = find(x);
      std::uint32_t ry = find(y);
      if (rx == ry) {
        return false;
      }
      if (ry < rx) {
        std::swap(rx, ry);
      }
      parent_[ry] = rx;
      --classes_;
      return true;
    }

    /// Class label (least element) of every point.
    [[nodiscard]] std::vector<std::uint32_t> labels() {
      std::vector<std::uint32_t> out(parent_.size());
      for (std::uint32_t x = 0; x < parent_.size(); ++x) {
        out[x] = find(x);
      }
      return out;
    }

   private:
    std::vector<std::uint32_t> parent_;
    std::size_t classes_ = 0;
  };

}  // namespace ybe
