#pragma once

// Asymmetric products T x H of trivial braces, built from an action alpha of
// H on T and an alpha-invariant symmetric bi-additive form b: T x T -> H:
//   (f, a) o (g, c) = (f + alpha_a(g), a + c)
//   (f, a) + (g, c) = (f + g, a + c + b(f, g))
// T is a product of cyclic coordinates, optionally taken modulo a submodule
// (all coordinates then share one modulus). Elements are indexed by
// idx_T(f) * |H| + idx_H(a), with idx_T mixed radix over canonical
// representatives (last coordinate fastest).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ybe/a2family.hpp"
#include "ybe/abelian.hpp"
#include "ybe/brace.hpp"
#include "ybe/error.hpp"
#include "ybe/solution.hpp"
#include "ybe/zmod.hpp"

namespace ybe {

  using Matrix = std::vector<std::vector<std::int64_t>>;

  inline Matrix identity_matrix(std::size_t d) {
    Matrix m(d, std::vector<std::int64_t>(d, 0));
    for (std::size_t i = 0; i < d; ++i) {
      m[i][i] = 1;
    }
    return m;
  }

  /// Product over Z/modulus (modulus 0 means over Z).
  inline Matrix mat_mul(Matrix const& a, Matrix const& b, std::int64_t modulus = 0) {
    std::size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
    Matrix out(r, std::vector<std::int64_t>(c, 0));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t l = 0; l < k; ++l) {
        if (a[i][l] == 0) {
          continue;
        }
        for (std::size_t j = 0; j < c; ++j) {
          out[i][j] += a[i][l] * b[l][j];
          if (modulus != 0) {
            out[i][j] = mod(out[i][j], modulus);
          }
        }
      }
    }
    return out;
  }

  inline Matrix mat_transpose(Matrix const& a) {
    std::size_t r = a.size(), c = a.empty() ? 0 : a[0].size();
    Matrix out(c, std::vector<std::int64_t>(r));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        out[j][i] = a[i][j];
      }
    }
    return out;
  }

  inline Matrix mat_pow(Matrix const& a, std::int64_t e, std::int64_t modulus) {
    Matrix acc = identity_matrix(a.size());
    for (std::int64_t i = 0; i < e; ++i) {
      acc = mat_mul(acc, a, modulus);
    }
    return acc;
  }

  inline Matrix mat_reduce(Matrix a, std::int64_t modulus) {
    for (auto& row : a) {
      for (auto& x : row) {
        x = mod(x, modulus);
      }
    }
    return a;
  }

  /// Determinant modulo a prime, by Gaussian elimination.
  inline std::int64_t det_mod_prime(Matrix a, std::int64_t p) {
    std::size_t d = a.size();
    a = mat_reduce(std::move(a), p);
    std::int64_t det = 1;
    for (std::size_t c = 0; c < d; ++c) {
      std::size_t piv = d;
      for (std::size_t r = c; r < d; ++r) {
        if (a[r][c] != 0) {
          piv = r;
          break;
        }
      }
      if (piv == d) {
        return 0;
      }
      if (piv != c) {
        std::swap(a[piv], a[c]);
        det = mod(-det, p);
      }
      det = mod(det * a[c][c], p);
      std::int64_t inv = *inverse_mod(a[c][c], p);
      for (std::size_t r = c + 1; r < d; ++r) {
        std::int64_t factor = mod(a[r][c] * inv, p);
        for (std::size_t k = c; k < d; ++k) {
          a[r][k] = mod(a[r][k] - factor * a[c][k], p);
        }
      }
    }
    return det;
  }

  struct AsymElem {
    std::vector<std::int64_t> f;
    std::size_t h = 0;

    friend bool operator==(AsymElem const&, AsymElem const&) = default;
  };

  struct AsymSpecReport {
    bool action = false;          // alpha_0 = id and alpha_{h+h'} = alpha_h alpha_{h'}
    bool form_symmetric = false;  // b(f, g) = b(g, f)
    bool form_invariant = false;  // b(alpha_c f, alpha_c g) = b(f, g)
    bool relations_invariant = true;
    std::string failure;

    [[nodiscard]] bool ok() const noexcept {
      return action && form_symmetric && form_invariant && relations_invariant;
    }
  };

  class AsymProduct {
   public:
    /// alpha[h] acts on column vectors: (alpha_h f)_r = sum_c alpha[h][r][c] f_c.
    /// b(f, g)_i = sum_{r,c} f_r gram[i][r][c] g_c modulo the i-th modulus of H.
    AsymProduct(std::string name,
                std::vector<std::int64_t> t_moduli,
                AbGroup h,
                std::vector<Matrix> alpha,
                std::vector<Matrix> gram,
                std::optional<HowellForm> relations = std::nullopt)
        : name_(std::move(name)),
          t_moduli_(std::move(t_moduli)),
          h_(std::move(h)),
          h_table_(h_.order() <= 4096 ? std::optional<GroupTable>(GroupTable(h_)) : std::nullopt),
          alpha_(std::move(alpha)),
          gram_(std::move(gram)),
          relations_(std::move(relations)) {
      std::size_t w = t_moduli_.size();
      if (alpha_.size() != h_.order()) {
        throw StructuralError("AsymProduct: one action matrix per element of H is required");
      }
      for (auto const& m : alpha_) {
        check_square(m, w, "action");
      }
      if (gram_.size() != h_.rank()) {
        throw StructuralError("AsymProduct: one Gram matrix per cyclic factor of H is required");
      }
      for (auto const& g : gram_) {
        check_square(g, w, "Gram");
      }
      if (relations_) {
        for (auto n : t_moduli_) {
          if (n != relations_->modulus()) {
            throw StructuralError("AsymProduct: relations require a common coordinate modulus");
          }
        }
        if (relations_->width() != w) {
          throw StructuralError("AsymProduct: relation width mismatch");
        }
        radices_ = relations_->quotient_radices();
      } else {
        radices_ = t_moduli_;
      }
      unsigned __int128 total = h_.order();
      for (auto r : radices_) {
        total *= static_cast<unsigned __int128>(r);
      }
      order_ = total > static_cast<unsigned __int128>(UINT64_MAX)
                   ? std::nullopt
                   : std::optional<std::uint64_t>(static_cast<std::uint64_t>(total));
    }

    [[nodiscard]] std::string const& name() const noexcept {
      return name_;
    }
    [[nodiscard]] std::span<const std::int64_t> t_moduli() const noexcept {
      return t_moduli_;
    }
    [[nodiscard]] std::size_t t_width() const noexcept {
      return t_moduli_.size();
    }
    [[nodiscard]] AbGroup const& h_group() const noexcept {
      return h_;
    }
    [[nodiscard]] std::optional<HowellForm> const& relations() const noexcept {
      return relations_;
    }
    [[nodiscard]] std::optional<std::uint64_t> order() const noexcept {
      return order_;
    }
    [[nodiscard]] std::uint64_t t_order() const noexcept {
      std::uint64_t n = 1;
      for (auto r : radices_) {
        n *= static_cast<std::uint64_t>(r);
      }
      return n;
    }

    /// Number of elements; throws when the carrier cannot be indexed.
    [[nodiscard]] std::size_t size() const {
      if (!order_ || *order_ > (std::uint64_t{1} << 40)) {
        throw BoundError("AsymProduct " + name_ + ": carrier too large to index");
      }
      return static_cast<std::size_t>(*order_);
    }

    // --- element level -------------------------------------------------

    [[nodiscard]] std::vector<std::int64_t> canonical(std::vector<std::int64_t> f) const {
      for (std::size_t r = 0; r < f.size(); ++r) {
        f[r] = mod(f[r], t_moduli_[r]);
      }
      if (relations_) {
        f = relations_->reduce(f);
      }
      return f;
    }

    [[nodiscard]] AsymElem make(std::vector<std::int64_t> f, std::size_t h) const {
      if (f.size() != t_width() || h >= h_.order()) {
        throw StructuralError("AsymProduct::make: element outside the carrier");
      }
      return AsymElem{canonical(std::move(f)), h};
    }

    [[nodiscard]] std::vector<std::int64_t> t_add(std::vector<std::int64_t> const& f,
                                                  std::vector<std::int64_t> const& g) const {
      std::vector<std::int64_t> out(f.size());
      for (std::size_t r = 0; r < f.size(); ++r) {
        out[r] = f[r] + g[r];
      }
      return canonical(std::move(out));
    }

    [[nodiscard]] std::vector<std::int64_t> t_neg(std::vector<std::int64_t> const& f) const {
      std::vector<std::int64_t> out(f.size());
      for (std::size_t r = 0; r < f.size(); ++r) {
        out[r] = -f[r];
      }
      return canonical(std::move(out));
    }

    [[nodiscard]] std::vector<std::int64_t> alpha(std::size_t h, std::vector<std::int64_t> const& f) const {
      Matrix const& m = alpha_[h];
      std::size_t w = t_width();
      std::vector<std::int64_t> out(w, 0);
      for (std::size_t r = 0; r < w; ++r) {
        std::int64_t acc = 0;
        for (std::size_t c = 0; c < w; ++c) {
          acc = mod(acc + m[r][c] * f[c], t_moduli_[r]);
        }
        out[r] = acc;
      }
      return canonical(std::move(out));
    }

    /// b(f, g) as the index of an element of H.
    [[nodiscard]] std::size_t form(std::vector<std::int64_t> const& f, std::vector<std::int64_t> const& g) const {
      std::size_t w = t_width();
      std::vector<std::int64_t> out(h_.rank());
      for (std::size_t i = 0; i < h_.rank(); ++i) {
        std::int64_t n = h_.moduli()[i];
        std::int64_t acc = 0;
        for (std::size_t r = 0; r < w; ++r) {
          if (f[r] == 0) {
            continue;
          }
          std::int64_t row = 0;
          for (std::size_t c = 0; c < w; ++c) {
            row = mod(row + gram_[i][r][c] * g[c], n);
          }
          acc = mod(acc + f[r] * row, n);
        }
        out[i] = acc;
      }
      return h_.index(AbElem{std::move(out)});
    }

    [[nodiscard]] std::size_t h_add(std::size_t a, std::size_t c) const {
      return h_table_ ? h_table_->add(a, c) : h_.index(h_.add(h_.element(a), h_.element(c)));
    }
    [[nodiscard]] std::size_t h_neg(std::size_t a) const {
      return h_table_ ? h_table_->neg(a) : h_.index(h_.neg(h_.element(a)));
    }

    [[nodiscard]] AsymElem zero_elem() const {
      return AsymElem{std::vector<std::int64_t>(t_width(), 0), 0};
    }
    [[nodiscard]] AsymElem add_elem(AsymElem const& x, AsymElem const& y) const {
      return AsymElem{t_add(x.f, y.f), h_add(h_add(x.h, y.h), form(x.f, y.f))};
    }
    /// -(g, c) = (-g, b(g, g) - c).
    [[nodiscard]] AsymElem neg_elem(AsymElem const& x) const {
      return AsymElem{t_neg(x.f), h_add(form(x.f, x.f), h_neg(x.h))};
    }
    [[nodiscard]] AsymElem mul_elem(AsymElem const& x, AsymElem const& y) const {
      return AsymElem{t_add(x.f, alpha(x.h, y.f)), h_add(x.h, y.h)};
    }
    /// (f, a)^{-1} = (-alpha_{-a}(f), -a).
    [[nodiscard]] AsymElem inv_elem(AsymElem const& x) const {
      std::size_t na = h_neg(x.h);
      return AsymElem{t_neg(alpha(na, x.f)), na};
    }
    /// lambda_{(f, a)}(g, c) = (alpha_a(g), c - b(f, alpha_a(g))).
    [[nodiscard]] AsymElem lambda_elem(AsymElem const& x, AsymElem const& y) const {
      auto g = alpha(x.h, y.f);
      std::size_t bv = form(x.f, g);
      return AsymElem{g, h_add(y.h, h_neg(bv))};
    }

    // --- index level ---------------------------------------------------

    [[nodiscard]] elem_t encode(AsymElem const& x) const {
      std::size_t t = 0;
      for (std::size_t r = 0; r < x.f.size(); ++r) {
        t = t * static_cast<std::size_t>(radices_[r]) + static_cast<std::size_t>(x.f[r]);
      }
      return t * h_.order() + x.h;
    }

    [[nodiscard]] AsymElem decode(elem_t idx) const {
      AsymElem x{std::vector<std::int64_t>(t_width()), idx % h_.order()};
      idx /= h_.order();
      for (std::size_t r = t_width(); r-- > 0;) {
        auto n = static_cast<std::size_t>(radices_[r]);
        x.f[r] = static_cast<std::int64_t>(idx % n);
        idx /= n;
      }
      return x;
    }

    [[nodiscard]] elem_t zero() const {
      return 0;
    }
    [[nodiscard]] elem_t add(elem_t a, elem_t b) const {
      return encode(add_elem(decode(a), decode(b)));
    }
    [[nodiscard]] elem_t neg(elem_t a) const {
      return encode(neg_elem(decode(a)));
    }
    [[nodiscard]] elem_t mul(elem_t a, elem_t b) const {
      return encode(mul_elem(decode(a), decode(b)));
    }
    [[nodiscard]] elem_t inv(elem_t a) const {
      return encode(inv_elem(decode(a)));
    }

    /// Checks the action law, symmetry and alpha-invariance of the form on
    /// basis vectors of T (both are bi-additive, so this is exhaustive), and
    /// alpha-invariance of the relation submodule.
    [[nodiscard]] AsymSpecReport check_spec() const {
      AsymSpecReport rep;
      std::size_t w = t_width();
      std::vector<std::vector<std::int64_t>> basis;
      for (std::size_t r = 0; r < w; ++r) {
        std::vector<std::int64_t> e(w, 0);
        e[r] = 1;
        basis.push_back(canonical(std::move(e)));
      }
      rep.action = true;
      for (auto const& e : basis) {
        if (alpha(0, e) != e) {
          rep.action = false;
          rep.failure = "alpha_0 is not the identity";
        }
      }
      for (std::size_t a = 0; a < h_.order() && rep.action; ++a) {
        for (std::size_t c = 0; c < h_.order() && rep.action; ++c) {
          for (auto const& e : basis) {
            if (alpha(h_add(a, c), e) != alpha(a, alpha(c, e))) {
              rep.action = false;
              rep.failure = "alpha_{a+c} != alpha_a alpha_c at a=" + std::to_string(a)
                            + ", c=" + std::to_string(c);
              break;
            }
          }
        }
      }
      rep.form_symmetric = true;
      rep.form_invariant = true;
      for (std::size_t r = 0; r < w; ++r) {
        for (std::size_t s = 0; s < w; ++s) {
          if (form(basis[r], basis[s]) != form(basis[s], basis[r])) {
            rep.form_symmetric = false;
            rep.failure = "form not symmetric on basis pair (" + std::to_string(r) + ", "
                          + std::to_string(s) + ")";
          }
          for (std::size_t c = 0; c < h_.order(); ++c) {
            if (form(alpha(c, basis[r]), alpha(c, basis[s])) != form(basis[r], basis[s])) {
              rep.form_invariant = false;
              rep.failure = "form not alpha-invariant at c=" + std::to_string(c);
            }
          }
        }
      }
      if (relations_) {
        for (auto const& p : relations_->pivots()) {
          for (std::size_t c = 0; c < h_.order(); ++c) {
            // alpha applied to the raw generator, before reduction
            std::vector<std::int64_t> img(w, 0);
            for (std::size_t r = 0; r < w; ++r) {
              for (std::size_t k = 0; k < w; ++k) {
                img[r] = mod(img[r] + alpha_[c][r][k] * p.row[k], t_moduli_[r]);
              }
            }
            if (!relations_->contains(img)) {
              rep.relations_invariant = false;
              rep.failure = "relation submodule not alpha-invariant";
            }
          }
        }
      }
      return rep;
    }

   private:
    static void check_square(Matrix const& m, std::size_t w, char const* what) {
      if (m.size() != w) {
        throw StructuralError(std::string("AsymProduct: ") + what + " matrix has wrong size");
      }
      for (auto const& row : m) {
        if (row.size() != w) {
          throw StructuralError(std::string("AsymProduct: ") + what + " matrix is not square");
        }
      }
    }

    std::string name_;
    std::vector<std::int64_t> t_moduli_;
    AbGroup h_;
    std::optional<GroupTable> h_table_;
    std::vector<Matrix> alpha_;
    std::vector<Matrix> gram_;
    std::optional<HowellForm> relations_;
    std::vector<std::int64_t> radices_;
    std::optional<std::uint64_t> order_;
  };

  // ---------------------------------------------------------------------
  // The brace attached to a family (j_a)
  // ---------------------------------------------------------------------
  //
  // The additive group generated by the functions e_a (e_a(x) = delta_{a,x})
  // is represented by coefficient vectors n in (Z/e)^A, e the exponent of A;
  // b(n, m) = sum_{x,y} n_x m_y j_{x-y} and alpha_a(n)(x) = n(x - a).

  namespace detail {
    inline std::vector<Matrix> shift_action(GroupTable const& t, std::int64_t) {
      std::size_t m = t.order();
      std::vector<Matrix> alpha;
      alpha.reserve(m);
      for (std::size_t a = 0; a < m; ++a) {
        Matrix mat(m, std::vector<std::int64_t>(m, 0));
        for (std::size_t x = 0; x < m; ++x) {
          mat[x][t.sub(x, a)] = 1;
        }
        alpha.push_back(std::move(mat));
      }
      return alpha;
    }

    inline std::vector<Matrix> circulant_gram(JFamily const& jf, GroupTable const& t) {
      std::size_t m = t.order();
      std::vector<Matrix> gram(jf.group.rank(), Matrix(m, std::vector<std::int64_t>(m, 0)));
      for (std::size_t x = 0; x < m; ++x) {
        for (std::size_t y = 0; y < m; ++y) {
          auto const& jv = t.element(jf.j[t.sub(x, y)]).coords;
          for (std::size_t i = 0; i < jf.group.rank(); ++i) {
            gram[i][x][y] = jv[i];
          }
        }
      }
      return gram;
    }
  }  // namespace detail

  /// The brace on (Z/e)^A x A generated additively by the elements (e_a, c).
  inline AsymProduct bj_brace(JFamily const& jf) {
    validate(jf);
    GroupTable t(jf.group);
    std::int64_t e = jf.group.exponent();
    std::size_t m = t.order();
    return AsymProduct("B_j[" + jf.group.literal() + "]", std::vector<std::int64_t>(m, e), jf.group,
                       detail::shift_action(t, e), detail::circulant_gram(jf, t));
  }

  /// Index of (e_a, c) in a brace built by bj_brace or bj_quotient.
  inline elem_t basis_point(AsymProduct const& b, std::size_t a, std::size_t c) {
    std::vector<std::int64_t> f(b.t_width(), 0);
    f[a] = 1;
    return b.encode(b.make(std::move(f), c));
  }

  struct GramRadical {
    HowellForm form;                             // the radical as a submodule of (Z/e)^A
    std::uint64_t order = 0;
    std::optional<std::uint64_t> brute_force_order;  // set when enumeration was within bound
    bool brute_force_agrees = true;
  };

  inline constexpr std::uint64_t radical_enumeration_bound = 2'000'000;

  /// {n : b(n, e_a) = 0 for all a}: the kernel over Z/e of
  /// n -> (sum_x n_x (j_{x-a})_i * (e / n_i))_{a, i}. When e^|A| is within
  /// bound, every vector is also tested directly and the counts compared.
  inline GramRadical gram_radical(JFamily const& jf, std::uint64_t enumeration_bound = radical_enumeration_bound) {
    validate(jf);
    GroupTable t(jf.group);
    std::size_t m = t.order();
    std::int64_t e = jf.group.exponent();
    std::size_t k = jf.group.rank();
    std::vector<std::vector<std::int64_t>> rows(m, std::vector<std::int64_t>(m * k, 0));
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t a = 0; a < m; ++a) {
        auto const& jv = t.element(jf.j[t.sub(x, a)]).coords;
        for (std::size_t i = 0; i < k; ++i) {
          rows[x][a * k + i] = jv[i] * (e / jf.group.moduli()[i]);
        }
      }
    }
    GramRadical out{kernel_mod(rows, m * k, e), 0, std::nullopt, true};
    auto ord = out.form.order();
    if (!ord) {
      throw BoundError("gram_radical: radical order does not fit in 64 bits");
    }
    out.order = *ord;

    unsigned __int128 total = 1;
    for (std::size_t x = 0; x < m; ++x) {
      total *= static_cast<unsigned __int128>(e);
    }
    if (total <= enumeration_bound) {
      std::uint64_t count = 0;
      bool consistent = true;
      std::vector<std::int64_t> n(m, 0);
      for (std::uint64_t c = 0; c < static_cast<std::uint64_t>(total); ++c) {
        std::uint64_t rest = c;
        for (std::size_t x = m; x-- > 0;) {
          n[x] = static_cast<std::int64_t>(rest % static_cast<std::uint64_t>(e));
          rest /= static_cast<std::uint64_t>(e);
        }
        bool in = true;
        for (std::size_t a = 0; a < m && in; ++a) {
          for (std::size_t i = 0; i < k && in; ++i) {
            std::int64_t acc = 0;
            for (std::size_t x = 0; x < m; ++x) {
              acc += n[x] * t.element(jf.j[t.sub(x, a)]).coords[i];
            }
            in = mod(acc, jf.group.moduli()[i]) == 0;
          }
        }
        count += in;
        if (in != out.form.contains(n)) {
          consistent = false;
        }
      }
      out.brute_force_order = count;
      out.brute_force_agrees = consistent && count == out.order;
    }
    return out;
  }

  /// ((Z/e)^A / rad) x A: the quotient of the brace generated by the e_a by
  /// its socle rad x {0}.
  inline AsymProduct bj_quotient(JFamily const& jf) {
    validate(jf);
    GroupTable t(jf.group);
    std::int64_t e = jf.group.exponent();
    std::size_t m = t.order();
    auto rad = gram_radical(jf, 0);
    return AsymProduct("Q_j[" + jf.group.literal() + "]", std::vector<std::int64_t>(m, e), jf.group,
                       detail::shift_action(t, e), detail::circulant_gram(jf, t), std::move(rad.form));
  }

  // ---------------------------------------------------------------------
  // Permutation group versus quotient brace
  // ---------------------------------------------------------------------

  struct PermgroupBraceReport {
    std::uint64_t group_order = 0;
    std::uint64_t brace_order = 0;
    bool group_complete = false;
    bool generators_match = false;  // class of x maps to sigma_x
    bool into_group = false;
    bool injective = false;
    bool multiplicative = false;
    bool additive = false;
    std::string failure;

    [[nodiscard]] bool ok() const noexcept {
      return group_complete && generators_match && into_group && injective && multiplicative && additive
             && group_order == brace_order;
    }
  };

  /// Checks that q -> lambda_q restricted to X = {(e_a, c)} is an isomorphism
  /// from bj_quotient(jf) onto the permutation group of build_solution(jf):
  /// every image lies in the group, the map is injective, the orders agree,
  /// Phi(q o x) = Phi(q) sigma_x and Phi(q + y) = Phi(q) sigma_{Phi(q)^{-1}(y)}.
  inline PermgroupBraceReport permgroup_brace_map(JFamily const& jf,
                                                  std::size_t group_cap = default_group_cap) {
    PermgroupBraceReport rep;
    auto s = build_solution(jf);
    auto q = bj_quotient(jf);
    auto group = permutation_group(s, group_cap);
    rep.group_complete = group.complete();
    rep.group_order = group.size();
    rep.brace_order = q.size();
    if (!rep.group_complete) {
      rep.failure = "permutation group exceeds cap";
      return rep;
    }
    GroupTable t(jf.group);
    std::size_t m = t.order();
    std::size_t n = m * m;
    std::size_t nq = q.size();

    auto phi = [&](AsymElem const& x) {
      std::vector<point_t> img(n);
      for (std::size_t c1 = 0; c1 < m; ++c1) {
        std::size_t d1 = t.add(c1, x.h);
        std::vector<std::int64_t> ed(m, 0);
        ed[d1] = 1;
        std::size_t bv = q.form(x.f, ed);
        for (std::size_t c2 = 0; c2 < m; ++c2) {
          img[c1 * m + c2] = static_cast<point_t>(d1 * m + t.sub(c2, bv));
        }
      }
      return img;
    };

    std::vector<elem_t> x_index(n);
    for (std::size_t a1 = 0; a1 < m; ++a1) {
      for (std::size_t a2 = 0; a2 < m; ++a2) {
        x_index[a1 * m + a2] = basis_point(q, a1, a2);
      }
    }
    rep.generators_match = true;
    for (point_t x = 0; x < n; ++x) {
      auto img = phi(q.decode(x_index[x]));
      auto row = s.sigma_row(x);
      if (!std::equal(img.begin(), img.end(), row.begin())) {
        rep.generators_match = false;
        rep.failure = "class of point " + std::to_string(x) + " does not map to sigma_x";
        break;
      }
    }

    // Phi is stored as the index of its image in the group closure.
    std::vector<std::uint32_t> image(nq);
    std::vector<char> hit(group.size(), 0);
    rep.into_group = true;
    rep.injective = true;
    for (elem_t k = 0; k < nq; ++k) {
      auto img = phi(q.decode(k));
      auto idx = group.index_of(img);
      if (!idx) {
        rep.into_group = false;
        rep.failure = "image of brace element " + std::to_string(k) + " is outside the group";
        return rep;
      }
      if (hit[*idx]) {
        rep.injective = false;
        rep.failure = "two brace elements map to the same permutation";
        return rep;
      }
      hit[*idx] = 1;
      image[k] = static_cast<std::uint32_t>(*idx);
    }

    rep.multiplicative = true;
    rep.additive = true;
    std::vector<AsymElem> xs;
    xs.reserve(n);
    for (auto i : x_index) {
      xs.push_back(q.decode(i));
    }
    for (elem_t k = 0; k < nq && rep.multiplicative && rep.additive; ++k) {
      AsymElem qe = q.decode(k);
      auto g = group.element(image[k]);
      std::vector<point_t> ginv(n);
      for (point_t p = 0; p < n; ++p) {
        ginv[g[p]] = p;
      }
      for (point_t x = 0; x < n; ++x) {
        auto prod = group.element(image[q.encode(q.mul_elem(qe, xs[x]))]);
        auto sum = group.element(image[q.encode(q.add_elem(qe, xs[x]))]);
        point_t pre = ginv[x];
        for (point_t p = 0; p < n; ++p) {
          if (prod[p] != g[s.sigma(x, p)]) {
            rep.multiplicative = false;
            rep.failure = "Phi(q o x) != Phi(q) sigma_x at q=" + std::to_string(k) + ", x=" + std::to_string(x);
            break;
          }
          if (sum[p] != g[s.sigma(pre, p)]) {
            rep.additive = false;
            rep.failure = "Phi(q + x) != Phi(q) sigma_{Phi(q)^-1(x)} at q=" + std::to_string(k)
                          + ", x=" + std::to_string(x);
            break;
          }
        }
        if (!rep.multiplicative || !rep.additive) {
          break;
        }
      }
    }
    return rep;
  }

  // ---------------------------------------------------------------------
  // Simplicity certificate for the permutation-group brace
  // ---------------------------------------------------------------------

  struct CertificateReport {
    bool member = false;                     // sigma_(0,0) lies in the span of differences
    std::uint64_t quotient_order = 0;        // 0 when it does not fit
    std::optional<bool> enumeration_member;  // explicit span in the quotient, when small
  };

  inline constexpr std::uint64_t certificate_enumeration_bound = 300'000;

  /// Decides whether the class of (e_0, 0) lies in the additive span of all
  /// differences x_u - x_v in bj_quotient(jf).
  ///
  /// The additive group of the brace generated by the e_a is a quotient of
  /// Z^A x Z^k with twisted sum (f, a) + (g, c) = (f + g, a + c + b(f, g)),
  /// b taken on integer lifts. psi(f, a) = (f, 2a - b(f, f)) is an injective
  /// homomorphism to the untwisted Z^{|A| + k}, so membership becomes a
  /// lattice question. The lattice contains 2e^2 Z^{|A|+k}, so it is decided
  /// in Howell form over Z/2e^2.
  inline CertificateReport simplepermu_certificate(JFamily const& jf,
                                                   std::uint64_t enumeration_bound = certificate_enumeration_bound) {
    if (!simple_criterion(jf)) {
      throw PreconditionError("simplepermu_certificate: the solution of the family is not simple");
    }
    GroupTable t(jf.group);
    std::size_t m = t.order();
    std::size_t k = jf.group.rank();
    std::int64_t e = jf.group.exponent();
    std::int64_t d = 2 * e * e;
    std::size_t w = m + k;
    auto moduli = jf.group.moduli();

    std::vector<std::int64_t> j0 = t.element(jf.j[0]).coords;
    auto rad = gram_radical(jf, 0);

    std::vector<std::vector<std::int64_t>> gens;
    auto psi_point = [&](std::size_t a1, std::size_t a2) {
      std::vector<std::int64_t> v(w, 0);
      v[a1] = 1;
      auto const& c = t.element(a2).coords;
      for (std::size_t i = 0; i < k; ++i) {
        v[m + i] = 2 * c[i] - j0[i];
      }
      return v;
    };
    auto base = psi_point(0, 0);
    for (std::size_t a1 = 0; a1 < m; ++a1) {
      for (std::size_t a2 = 0; a2 < m; ++a2) {
        auto v = psi_point(a1, a2);
        for (std::size_t r = 0; r < w; ++r) {
          v[r] -= base[r];
        }
        gens.push_back(std::move(v));
      }
    }
    // Kernel of the map onto the quotient brace.
    for (std::size_t x = 0; x < m; ++x) {
      std::vector<std::int64_t> v(w, 0);
      v[x] = e;
      for (std::size_t i = 0; i < k; ++i) {
        v[m + i] = -e * e * j0[i];
      }
      gens.push_back(std::move(v));
    }
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<std::int64_t> v(w, 0);
      v[m + i] = 2 * moduli[i];
      gens.push_back(std::move(v));
    }
    for (auto const& p : rad.form.pivots()) {
      std::vector<std::int64_t> v(w, 0);
      std::copy(p.row.begin(), p.row.end(), v.begin());
      for (std::size_t i = 0; i < k; ++i) {
        std::int64_t acc = 0;
        for (std::size_t x = 0; x < m; ++x) {
          for (std::size_t y = 0; y < m; ++y) {
            acc += p.row[x] * p.row[y] * t.element(jf.j[t.sub(x, y)]).coords[i];
          }
        }
        v[m + i] = -acc;
      }
      gens.push_back(std::move(v));
    }
    HowellForm lattice(d, w, std::move(gens));

    CertificateReport rep;
    rep.member = lattice.contains(base);

    auto q = bj_quotient(jf);
    rep.quotient_order = q.order().value_or(0);
    if (q.order() && *q.order() <= enumeration_bound) {
      std::vector<elem_t> diffs;
      elem_t x00 = basis_point(q, 0, 0);
      elem_t neg00 = q.neg(x00);
      for (std::size_t a1 = 0; a1 < m; ++a1) {
        for (std::size_t a2 = 0; a2 < m; ++a2) {
          diffs.push_back(q.add(basis_point(q, a1, a2), neg00));
        }
      }
      auto span = additive_span(q, std::span<const elem_t>(diffs));
      rep.enumeration_member = span.contains(x00);
    }
    return rep;
  }

  // ---------------------------------------------------------------------
  // Companion and Gram matrices
  // ---------------------------------------------------------------------

  /// Cyclic successor index: p_{n+1} is p_1.
  inline std::size_t cyclic_next(std::size_t j, std::size_t n) {
    return (j + 1) % n;
  }

  /// Companion matrix of 1 + x + ... + x^{q-1}: ones below the diagonal and
  /// -1 in the last column, of size q - 1.
  inline Matrix companion_matrix(std::int64_t q) {
    auto d = static_cast<std::size_t>(q - 1);
    Matrix c(d, std::vector<std::int64_t>(d, 0));
    for (std::size_t i = 0; i < d; ++i) {
      if (i >= 1) {
        c[i][i - 1] = 1;
      }
      c[i][d - 1] = -1;
    }
    return c;
  }

  /// (1 - q) on the diagonal and 1 elsewhere, of size q - 1.
  inline Matrix gram_block(std::int64_t q) {
    auto d = static_cast<std::size_t>(q - 1);
    Matrix b(d, std::vector<std::int64_t>(d, 1));
    for (std::size_t i = 0; i < d; ++i) {
      b[i][i] = 1 - q;
    }
    return b;
  }

  struct CompanionBlock {
    std::int64_t modulus;  // p_j
    std::int64_t order;    // p_{j+1}
    Matrix c;              // reduced mod p_j
    Matrix b;              // reduced mod p_j
  };

  struct CompanionReport {
    bool order_ok = false;           // C^q = I and C != I
    bool invertible = false;         // det C != 0 and det (C - I) != 0
    bool invariant = false;          // C^t B C = B
    bool determinant_ok = false;     // det B = -(-q)^{q-2} != 0
    bool averaging_integer = false;  // sum_{i<q} (C^i)^t C^i = -2B over Z
    std::optional<bool> averaging_mod;  // B = -1/2 sum ... mod p_j, p_j odd
    std::string failure;

    [[nodiscard]] bool ok() const noexcept {
      return order_ok && invertible && invariant && determinant_ok && averaging_integer
             && averaging_mod.value_or(true);
    }
  };

  struct CompanionData {
    std::vector<std::int64_t> primes;
    std::vector<CompanionBlock> blocks;
    std::vector<CompanionReport> reports;

    [[nodiscard]] bool ok() const noexcept {
      return std::all_of(reports.begin(), reports.end(), [](auto const& r) { return r.ok(); });
    }
  };

  inline void check_distinct_primes(std::vector<std::int64_t> const& primes, std::size_t min_count) {
    if (primes.size() < min_count) {
      throw PreconditionError("at least " + std::to_string(min_count) + " primes are required");
    }
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (!is_prime(primes[i])) {
        throw PreconditionError(std::to_string(primes[i]) + " is not prime");
      }
      for (std::size_t l = 0; l < i; ++l) {
        if (primes[l] == primes[i]) {
          throw PreconditionError("primes must be pairwise distinct");
        }
      }
    }
  }

  inline CompanionReport check_companion(CompanionBlock const& blk) {
    CompanionReport rep;
    std::int64_t p = blk.modulus, q = blk.order;
    auto d = static_cast<std::size_t>(q - 1);
    Matrix id = identity_matrix(d);
    rep.order_ok = mat_pow(blk.c, q, p) == mat_reduce(id, p) && blk.c != mat_reduce(id, p);
    Matrix cm = blk.c;
    for (std::size_t i = 0; i < d; ++i) {
      cm[i][i] = mod(cm[i][i] - 1, p);
    }
    rep.invertible = det_mod_prime(blk.c, p) != 0 && det_mod_prime(cm, p) != 0;
    rep.invariant = mat_mul(mat_mul(mat_transpose(blk.c), blk.b, p), blk.c, p) == blk.b;
    std::int64_t expected = 1;
    for (std::int64_t i = 0; i < q - 2; ++i) {
      expected = mod(expected * -q, p);
    }
    expected = mod(-expected, p);
    std::int64_t det = det_mod_prime(blk.b, p);
    rep.determinant_ok = det == expected && det != 0;

    // Averaging over the full cyclic group generated by C (q terms).
    Matrix cz = companion_matrix(q);
    Matrix acc(d, std::vector<std::int64_t>(d, 0));
    Matrix power = identity_matrix(d);
    for (std::int64_t i = 0; i < q; ++i) {
      auto term = mat_mul(mat_transpose(power), power);
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
          acc[r][c] += term[r][c];
        }
      }
      power = mat_mul(power, cz);
    }
    Matrix bz = gram_block(q);
    rep.averaging_integer = true;
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        if (acc[r][c] != -2 * bz[r][c]) {
          rep.averaging_integer = false;
        }
      }
    }
    if (p % 2 == 1) {
      std::int64_t half = *inverse_mod(2, p);
      Matrix avg = acc;
      for (auto& row : avg) {
        for (auto& x : row) {
          x = mod(-half * x, p);
        }
      }
      rep.averaging_mod = avg == blk.b;
    }
    if (!rep.ok()) {
      rep.failure = "companion block mod " + std::to_string(p) + " of size " + std::to_string(d)
                    + " fails an invariant";
    }
    return rep;
  }

  inline CompanionData companion_data(std::vector<std::int64_t> const& primes) {
    check_distinct_primes(primes, 2);
    CompanionData data{primes, {}, {}};
    std::size_t n = primes.size();
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t p = primes[j];
      std::int64_t q = primes[cyclic_next(j, n)];
      CompanionBlock blk{p, q, mat_reduce(companion_matrix(q), p), mat_reduce(gram_block(q), p)};
      data.reports.push_back(check_companion(blk));
      data.blocks.push_back(std::move(blk));
    }
    return data;
  }

  namespace detail {
    /// One block of T: a vector space over Z/p acted on by C_j^{x_s} and
    /// contributing u B_j v^t to the H coordinate `form_coord`.
    struct TBlock {
      std::size_t companion;   // index j into the companion data
      std::size_t actor;       // H coordinate whose value is the exponent
      std::size_t form_coord;  // H coordinate receiving the form value
    };

    inline AsymProduct companion_product(std::string name,
                                         CompanionData const& data,
                                         std::vector<TBlock> const& blocks) {
      AbGroup h(data.primes);
      std::vector<std::int64_t> t_moduli;
      std::vector<std::size_t> offset;
      for (auto const& b : blocks) {
        offset.push_back(t_moduli.size());
        auto const& cb = data.blocks[b.companion];
        for (std::int64_t i = 0; i < cb.order - 1; ++i) {
          t_moduli.push_back(cb.modulus);
        }
      }
      std::size_t w = t_moduli.size();
      std::vector<Matrix> alpha;
      for (std::size_t hi = 0; hi < h.order(); ++hi) {
        auto x = h.element(hi).coords;
        Matrix mat(w, std::vector<std::int64_t>(w, 0));
        for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
          auto const& cb = data.blocks[blocks[bi].companion];
          Matrix pw = mat_pow(cb.c, x[blocks[bi].actor], cb.modulus);
          for (std::size_t r = 0; r < pw.size(); ++r) {
            for (std::size_t c = 0; c < pw.size(); ++c) {
              mat[offset[bi] + r][offset[bi] + c] = pw[r][c];
            }
          }
        }
        alpha.push_back(std::move(mat));
      }
      std::vector<Matrix> gram(h.rank(), Matrix(w, std::vector<std::int64_t>(w, 0)));
      for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        auto const& cb = data.blocks[blocks[bi].companion];
        for (std::size_t r = 0; r < cb.b.size(); ++r) {
          for (std::size_t c = 0; c < cb.b.size(); ++c) {
            gram[blocks[bi].form_coord][offset[bi] + r][offset[bi] + c] = cb.b[r][c];
          }
        }
      }
      return AsymProduct(std::move(name), std::move(t_moduli), std::move(h), std::move(alpha), std::move(gram));
    }
  }  // namespace detail

  /// T = prod_j (Z/p_j)^{p_{j+1}-1}, H = prod Z/p_j; block j is acted on by
  /// C_j^{x_{j+1}} and contributes u_j B_j v_j^t to coordinate j of H.
  inline AsymProduct theorem_example_brace(std::vector<std::int64_t> const& primes) {
    auto data = companion_data(primes);
    if (!data.ok()) {
      throw VerificationError("companion data invariant failed");
    }
    std::size_t n = primes.size();
    std::vector<detail::TBlock> blocks;
    for (std::size_t j = 0; j < n; ++j) {
      blocks.push_back({j, cyclic_next(j, n), j});
    }
    std::string label = "example[";
    for (std::size_t j = 0; j < n; ++j) {
      label += (j ? "," : "") + std::to_string(primes[j]);
    }
    return detail::companion_product(label + "]", data, blocks);
  }

  /// ((e_{1,1}, ..., e_{n,1}), 0): the first basis vector in every block.
  inline elem_t theorem_example_seed(AsymProduct const& b, std::vector<std::int64_t> const& primes) {
    std::vector<std::int64_t> f(b.t_width(), 0);
    std::size_t off = 0;
    for (std::size_t j = 0; j < primes.size(); ++j) {
      f[off] = 1;
      off += static_cast<std::size_t>(primes[cyclic_next(j, primes.size())] - 1);
    }
    return b.encode(b.make(std::move(f), 0));
  }

  /// T = V_1^2 x V_2 with V_1 = (Z/p_1)^{p_2-1}, V_2 = (Z/p_2)^{p_1-1},
  /// H = Z/p_1 x Z/p_2.
  inline AsymProduct mod6_counterexample_brace(std::int64_t p1, std::int64_t p2) {
    std::vector<std::int64_t> primes{p1, p2};
    check_distinct_primes(primes, 2);
    if (p2 <= 2) {
      throw PreconditionError("mod6 counterexample requires p2 > 2");
    }
    auto data = companion_data(primes);
    if (!data.ok()) {
      throw VerificationError("companion data invariant failed");
    }
    std::vector<detail::TBlock> blocks{{0, 1, 0}, {0, 1, 0}, {1, 0, 1}};
    return detail::companion_product("mod6[" + std::to_string(p1) + "," + std::to_string(p2) + "]", data,
                                     blocks);
  }

  struct ExampleIsoReport {
    bool delta_formula = false;  // b_j(e C^l, e C^k) = 1 - p_{j+1} delta_{l,k}
    bool orbit_shape = false;    // orbit = {(w, z)} with w_j in the C-orbit of e_{j,1}
    bool isomorphism = false;    // psi x phi^{-1} is a solution isomorphism
    bool search_agrees = false;  // backtracking search also finds an isomorphism
    std::size_t orbit_size = 0;
    std::string failure;

    [[nodiscard]] bool ok() const noexcept {
      return delta_formula && orbit_shape && isomorphism && search_agrees;
    }
  };

  /// Verifies that (w, z) -> (psi(w), phi^{-1}(z)) is an isomorphism from the
  /// solution on the lambda orbit of the seed onto build_solution(crt_family),
  /// where psi(e_{1,1} C_1^{k_1}, ..., e_{n,1} C_n^{k_n}) =
  /// phi^{-1}(k_n mod p_1, k_1 mod p_2, ..., k_{n-1} mod p_n).
  inline ExampleIsoReport theorem_example_solution_iso(std::vector<std::int64_t> const& primes) {
    ExampleIsoReport rep;
    auto br = theorem_example_brace(primes);
    auto data = companion_data(primes);
    std::size_t n = primes.size();

    // Per block: the vectors e_{j,1} (C_j^t)^k, k = 0..p_{j+1}-1, as columns C^k e.
    std::vector<std::vector<std::vector<std::int64_t>>> powers(n);
    for (std::size_t j = 0; j < n; ++j) {
      auto const& cb = data.blocks[j];
      std::size_t d = cb.c.size();
      std::vector<std::int64_t> v(d, 0);
      v[0] = 1;
      for (std::int64_t k = 0; k < cb.order; ++k) {
        powers[j].push_back(v);
        std::vector<std::int64_t> next(d, 0);
        for (std::size_t r = 0; r < d; ++r) {
          for (std::size_t c = 0; c < d; ++c) {
            next[r] = mod(next[r] + cb.c[r][c] * v[c], cb.modulus);
          }
        }
        v = std::move(next);
      }
    }

    rep.delta_formula = true;
    for (std::size_t j = 0; j < n; ++j) {
      auto const& cb = data.blocks[j];
      for (std::size_t l = 0; l < powers[j].size(); ++l) {
        for (std::size_t k = 0; k < powers[j].size(); ++k) {
          std::int64_t acc = 0;
          for (std::size_t r = 0; r < cb.b.size(); ++r) {
            for (std::size_t c = 0; c < cb.b.size(); ++c) {
              acc += powers[j][l][r] * cb.b[r][c] * powers[j][k][c];
            }
          }
          if (mod(acc, cb.modulus) != mod(1 - (l == k ? cb.order : 0), cb.modulus)) {
            rep.delta_formula = false;
            rep.failure = "bilinear value differs from the delta formula";
          }
        }
      }
    }

    auto dense = to_dense(br);
    auto orbit = lambda_orbit(dense, theorem_example_seed(br, primes));
    rep.orbit_size = orbit.size();
    auto sol = solution_from_orbit(dense, std::span<const elem_t>(orbit));
    auto target = build_solution(crt_family(primes));
    std::int64_t m = 1;
    for (auto p : primes) {
      m *= p;
    }

    rep.orbit_shape = true;
    std::vector<point_t> f(orbit.size());
    std::vector<std::int64_t> residues(n);
    for (std::size_t idx = 0; idx < orbit.size() && rep.orbit_shape; ++idx) {
      AsymElem x = br.decode(orbit[idx]);
      std::size_t off = 0;
      std::vector<std::int64_t> ks(n);
      for (std::size_t j = 0; j < n; ++j) {
        std::size_t d = data.blocks[j].c.size();
        std::vector<std::int64_t> wj(x.f.begin() + static_cast<std::ptrdiff_t>(off),
                                     x.f.begin() + static_cast<std::ptrdiff_t>(off + d));
        auto it = std::find(powers[j].begin(), powers[j].end(), wj);
        if (it == powers[j].end()) {
          rep.orbit_shape = false;
          rep.failure = "orbit element " + std::to_string(orbit[idx]) + " has an unexpected block";
          break;
        }
        ks[j] = it - powers[j].begin();
        off += d;
      }
      if (!rep.orbit_shape) {
        break;
      }
      for (std::size_t i = 0; i < n; ++i) {
        residues[i] = mod(ks[(i + n - 1) % n], primes[i]);
      }
      std::int64_t psi = crt(residues, primes);
      auto z = br.h_group().element(x.h).coords;
      std::int64_t phi_inv = crt(z, primes);
      f[idx] = static_cast<point_t>(psi * m + phi_inv);
    }
    if (rep.orbit_shape) {
      rep.orbit_shape = orbit.size() == static_cast<std::size_t>(m * m);
      if (!rep.orbit_shape) {
        rep.failure = "orbit has size " + std::to_string(orbit.size());
      }
    }
    rep.isomorphism = rep.orbit_shape && is_isomorphism(sol, target, f);
    if (rep.orbit_shape && !rep.isomorphism) {
      rep.failure = "psi x phi^{-1} is not a solution isomorphism";
    }
    auto found = isomorphism_search(sol, target);
    rep.search_agrees = found.has_value() && is_isomorphism(sol, target, *found);
    return rep;
  }

}  // namespace ybe
