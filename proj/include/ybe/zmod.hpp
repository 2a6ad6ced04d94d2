#pragma once

// Integer helpers and submodules of (Z/D)^w in Howell normal form.

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ybe/error.hpp"

namespace ybe {

  /// Least non-negative residue of a modulo n (n >= 1).
  constexpr std::int64_t mod(std::int64_t a, std::int64_t n) noexcept {
    std::int64_t r = a % n;
    return r < 0 ? r + n : r;
  }

  constexpr bool is_prime(std::int64_t p) noexcept {
    if (p < 2) {
      return false;
    }
    for (std::int64_t d = 2; d * d <= p; ++d) {
      if (p % d == 0) {
        return false;
      }
    }
    return true;
  }

  /// Returns (g, s, t) with s*a + t*b = g = gcd(a, b).
  struct ExtendedGcd {
    std::int64_t g;
    std::int64_t s;
    std::int64_t t;
  };

  constexpr ExtendedGcd extended_gcd(std::int64_t a, std::int64_t b) noexcept {
    std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
      std::int64_t q = old_r / r;
      std::int64_t tmp = old_r - q * r;
      old_r = r;
      r = tmp;
      tmp = old_s - q * s;
      old_s = s;
      s = tmp;
      tmp = old_t - q * t;
      old_t = t;
      t = tmp;
    }
    if (old_r < 0) {
      return {-old_r, -old_s, -old_t};
    }
    return {old_r, old_s, old_t};
  }

  /// Inverse of a modulo n, or nullopt when gcd(a, n) != 1.
  inline std::optional<std::int64_t> inverse_mod(std::int64_t a, std::int64_t n) {
    auto [g, s, t] = extended_gcd(mod(a, n), n);
    (void) t;
    if (g != 1) {
      return std::nullopt;
    }
    return mod(s, n);
  }

  /// The unique x mod prod(moduli) with x = residues[i] mod moduli[i].
  /// Moduli must be pairwise coprime.
  inline std::int64_t crt(std::span<const std::int64_t> residues,
                          std::span<const std::int64_t> moduli) {
    if (residues.size() != moduli.size()) {
      throw StructuralError("crt: residue and modulus lists differ in length");
    }
    std::int64_t x = 0, m = 1;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      std::int64_t n = moduli[i];
      auto inv = inverse_mod(m, n);
      if (!inv) {
        throw PreconditionError("crt: moduli are not pairwise coprime");
      }
      // x' = x + m * ((r - x) * m^{-1} mod n)
      std::int64_t k = mod((mod(residues[i], n) - mod(x, n)) * *inv, n);
      x += m * k;
      m *= n;
      x = mod(x, m);
    }
    return x;
  }

  /// A submodule of (Z/D)^w kept in Howell form: an echelon basis such that
  /// the rows with pivot column >= c span exactly the elements whose first c
  /// coordinates vanish. Pivot entries are normalized to divisors of D.
  class HowellForm {
   public:
    struct Pivot {
      std::size_t column;
      std::int64_t entry;  // divides modulus
      std::vector<std::int64_t> row;
    };

    HowellForm(std::int64_t modulus, std::size_t width)
        : modulus_(modulus), width_(width) {
      if (modulus < 1) {
        throw StructuralError("HowellForm: modulus must be >= 1");
      }
    }

    HowellForm(std::int64_t modulus,
               std::size_t width,
               std::vector<std::vector<std::int64_t>> rows)
        : HowellForm(modulus, width) {
      for (auto& r : rows) {
        if (r.size() != width) {
          throw StructuralError("HowellForm: row width mismatch");
        }
        for (auto& x : r) {
          x = mod(x, modulus_);
        }
      }
      build(std::move(rows));
    }

    [[nodiscard]] std::int64_t modulus() const noexcept {
      return modulus_;
    }
    [[nodiscard]] std::size_t width() const noexcept {
      return width_;
    }
    [[nodiscard]] std::span<const Pivot> pivots() const noexcept {
      return pivots_;
    }

    /// Canonical representative of v modulo the submodule: every pivot
    /// coordinate lands in [0, entry).
    [[nodiscard]] std::vector<std::int64_t> reduce(std::span<const std::int64_t> v) const {
      std::vector<std::int64_t> out(v.begin(), v.end());
      if (out.size() != width_) {
        throw StructuralError("HowellForm::reduce: width mismatch");
      }
      for (auto& x : out) {
        x = mod(x, modulus_);
      }
      for (auto const& p : pivots_) {
        std::int64_t q = out[p.column] / p.entry;
        if (q != 0) {
          for (std::size_t c = p.column; c < width_; ++c) {
            out[c] = mod(out[c] - q * p.row[c], modulus_);
          }
        }
      }
      return out;
    }

    [[nodiscard]] bool contains(std::span<const std::int64_t> v) const {
      auto r = reduce(v);
      for (auto x : r) {
        if (x != 0) {
          return false;
        }
      }
      return true;
    }

    /// Number of elements, or nullopt when it does not fit in 64 bits.
    [[nodiscard]] std::optional<std::uint64_t> order() const {
      unsigned __int128 n = 1;
      for (auto const& p : pivots_) {
        n *= static_cast<unsigned __int128>(modulus_ / p.entry);
        if (n > static_cast<unsigned __int128>(UINT64_MAX)) {
          return std::nullopt;
        }
      }
      return static_cast<std::uint64_t>(n);
    }

    /// Radix of each coordinate in the canonical quotient representatives:
    /// pivot entry on pivot columns, modulus elsewhere.
    [[nodiscard]] std::vector<std::int64_t> quotient_radices() const {
      std::vector<std::int64_t> radix(width_, modulus_);
      for (auto const& p : pivots_) {
        radix[p.column] = p.entry;
      }
      return radix;
    }

   private:
    static bool is_zero(std::vector<std::int64_t> const& r) {
      for (auto x : r) {
        if (x != 0) {
          return false;
        }
      }
      return true;
    }

    void axpy(std::vector<std::int64_t>& y,
              std::int64_t a,
              std::vector<std::int64_t> const& x) const {
      for (std::size_t c = 0; c < width_; ++c) {
        y[c] = mod(y[c] + a * x[c], modulus_);
      }
    }

    // Unit u with u * g0 = gcd(g0, D) (mod D).
    std::int64_t normalizing_unit(std::int64_t g0) const {
      std::int64_t g = std::gcd(g0, modulus_);
      std::int64_t quotient = modulus_ / g;
      std::int64_t h = g0 / g;
      std::int64_t u0 = quotient == 1 ? 0 : *inverse_mod(h, quotient);
      for (std::int64_t u = u0; u < modulus_ + u0 + 1; u += quotient) {
        std::int64_t cand = mod(u, modulus_);
        if (std::gcd(cand, modulus_) == 1 && mod(cand * g0, modulus_) == g) {
          return cand;
        }
      }
      throw Error("HowellForm: no normalizing unit found");
    }

    void build(std::vector<std::vector<std::int64_t>> pool) {
      std::erase_if(pool, [](auto const& r) { return is_zero(r); });
      for (std::size_t c = 0; c < width_ && !pool.empty(); ++c) {
        std::size_t first = pool.size();
        for (std::size_t i = 0; i < pool.size(); ++i) {
          if (pool[i][c] != 0) {
            first = i;
            break;
          }
        }
        if (first == pool.size()) {
          continue;
        }
        std::vector<std::int64_t> piv = std::move(pool[first]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(first));
        for (auto& r : pool) {
          // Euclid on column c; afterwards r[c] == 0 and piv[c] is the gcd.
          while (r[c] != 0) {
            std::int64_t q = piv[c] / r[c];
            axpy(piv, -q, r);
            std::swap(piv, r);
          }
        }
        std::int64_t u = normalizing_unit(piv[c]);
        for (auto& x : piv) {
          x = mod(x * u, modulus_);
        }
        std::int64_t entry = piv[c];
        auto annihilated = piv;
        for (auto& x : annihilated) {
          x = mod(x * (modulus_ / entry), modulus_);
        }
        std::erase_if(pool, [](auto const& r) { return is_zero(r); });
        if (!is_zero(annihilated)) {
          pool.push_back(std::move(annihilated));
        }
        pivots_.push_back({c, entry, std::move(piv)});
      }
    }

    std::int64_t modulus_;
    std::size_t width_;
    std::vector<Pivot> pivots_;
  };

  /// Kernel of x -> x * M over Z/D, where M is given as `rows.size()` rows of
  /// length `cols`. Returned as a submodule of (Z/D)^{rows.size()}.
  inline HowellForm kernel_mod(std::vector<std::vector<std::int64_t>> const& rows,
                               std::size_t cols,
                               std::int64_t modulus) {
    std::size_t r = rows.size();
    std::vector<std::vector<std::int64_t>> aug;
    aug.reserve(r);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != cols) {
        throw StructuralError("kernel_mod: ragged matrix");
      }
      std::vector<std::int64_t> v(cols + r, 0);
      std::copy(rows[i].begin(), rows[i].end(), v.begin());
      v[cols + i] = 1;
      aug.push_back(std::move(v));
    }
    HowellForm h(modulus, cols + r, std::move(aug));
    std::vector<std::vector<std::int64_t>> gens;
    for (auto const& p : h.pivots()) {
      if (p.column >= cols) {
        gens.emplace_back(p.row.begin() + static_cast<std::ptrdiff_t>(cols), p.row.end());
      }
    }
    return HowellForm(modulus, r, std::move(gens));
  }

}  // namespace ybe
