#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "ybe/error.hpp"

namespace ybe {

  using point_t = std::uint32_t;

  /// A bijection of {0, ..., n-1} stored as its image array.
  class Permutation {
   public:
    Permutation() = default;

    explicit Permutation(std::vector<point_t> image) : image_(std::move(image)) {
      std::vector<char> seen(image_.size(), 0);
      for (point_t y : image_) {
        if (y >= image_.size() || seen[y]) {
          throw StructuralError("Permutation: image is not a bijection");
        }
        seen[y] = 1;
      }
    }

    static Permutation identity(std::size_t n) {
      std::vector<point_t> img(n);
      std::iota(img.begin(), img.end(), point_t{0});
      return Permutation(unchecked, std::move(img));
    }

    [[nodiscard]] std::size_t degree() const noexcept {
      return image_.size();
    }
    [[nodiscard]] point_t operator()(point_t x) const noexcept {
      return image_[x];
    }
    [[nodiscard]] std::span<const point_t> image() const noexcept {
      return image_;
    }

    /// (this * other)(x) = this(other(x)).
    [[nodiscard]] Permutation operator*(Permutation const& other) const {
      if (other.degree() != degree()) {
        throw StructuralError("Permutation: degree mismatch in composition");
      }
      std::vector<point_t> img(image_.size());
      for (std::size_t x = 0; x < img.size(); ++x) {
        img[x] = image_[other.image_[x]];
      }
      return Permutation(unchecked, std::move(img));
    }

    [[nodiscard]] Permutation inverse() const {
      std::vector<point_t> img(image_.size());
      for (std::size_t x = 0; x < img.size(); ++x) {
        img[image_[x]] = static_cast<point_t>(x);
      }
      return Permutation(unchecked, std::move(img));
    }

    [[nodiscard]] Permutation pow(std::int64_t e) const {
      Permutation base = e < 0 ? inverse() : *this;
      std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
      Permutation acc = identity(degree());
      while (k != 0) {
        if (k & 1U) {
          acc = acc * base;
        }
        base = base * base;
        k >>= 1U;
      }
      return acc;
    }

    [[nodiscard]] bool is_identity() const noexcept {
      for (std::size_t x = 0; x < image_.size(); ++x) {
        if (image_[x] != x) {
          return false;
        }
      }
      return true;
    }

    /// Multiplicative order: lcm of the cycle lengths.
    [[nodiscard]] std::uint64_t order() const {
      std::vector<char> seen(image_.size(), 0);
      std::uint64_t ord = 1;
      for (std::size_t x = 0; x < image_.size(); ++x) {
        if (seen[x]) {
          continue;
        }
        std::uint64_t len = 0;
        for (std::size_t y = x; !seen[y]; y = image_[y]) {
          seen[y] = 1;
          ++len;
        }
        ord = std::lcm(ord, len);
      }
      return ord;
    }

    friend bool operator==(Permutation const&, Permutation const&) = default;

   private:
    struct Unchecked {};
    static constexpr Unchecked unchecked{};
    Permutation(Unchecked, std::vector<point_t> image) : image_(std::move(image)) {}

    std::vector<point_t> image_;
  };

}  // namespace ybe
