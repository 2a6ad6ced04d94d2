#pragma once

// Finite involutive non-degenerate set-theoretic solutions of the
// Yang-Baxter equation, stored as the table sigma[x][y] = sigma_x(y).
// gamma is always derived: gamma_y(x) = sigma^{-1}_{sigma_x(y)}(x).

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ybe/error.hpp"
#include "ybe/parallel.hpp"
#include "ybe/permutation.hpp"
#include "ybe/union_find.hpp"

namespace ybe {

  /// A concrete counterexample to one of the solution axioms.
  struct Witness {
    std::string property;
    std::vector<point_t> points;

    [[nodiscard]] std::string describe() const {
      std::string s = property + " fails at (";
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (i != 0) {
          s += ", ";
        }
        s += std::to_string(points[i]);
      }
      return s + ")";
    }
  };

  struct VerifyReport {
    bool shape = false;
    bool left_nondegenerate = false;
    bool right_nondegenerate = false;
    bool involutive = false;
    bool braid = false;
    // sigma_a sigma_{sigma_a^{-1}(c)} is symmetric in (a, c).
    bool symmetric_left_multiplication = false;
    bool criteria_agree = false;
    std::optional<Witness> witness;

    [[nodiscard]] bool ok() const noexcept {
      return shape && left_nondegenerate && right_nondegenerate && involutive && braid
             && symmetric_left_multiplication && criteria_agree;
    }
  };

  namespace detail {
    inline void record(VerifyReport& rep, std::string property, std::vector<point_t> pts) {
      if (!rep.witness) {
        rep.witness = Witness{std::move(property), std::move(pts)};
      }
    }
  }  // namespace detail

  /// Exhaustive check of a raw sigma table (row-major, n*n entries).
  inline VerifyReport verify_table(std::size_t n, std::span<const point_t> sigma) {
    VerifyReport rep;
    if (n == 0 || sigma.size() != n * n) {
      detail::record(rep, "table shape", {});
      return rep;
    }
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      if (sigma[i] >= n) {
        detail::record(rep, "entry range", {static_cast<point_t>(i / n), static_cast<point_t>(i % n)});
        return rep;
      }
    }
    rep.shape = true;

    auto s = [&](std::size_t x, std::size_t y) { return sigma[x * n + y]; };

    std::vector<point_t> sinv(n * n);
    rep.left_nondegenerate = true;
    for (std::size_t x = 0; x < n && rep.left_nondegenerate; ++x) {
      std::vector<std::int64_t> pre(n, -1);
      for (std::size_t y = 0; y < n; ++y) {
        point_t v = s(x, y);
        if (pre[v] >= 0) {
          rep.left_nondegenerate = false;
          detail::record(rep, "left non-degeneracy (sigma_x(y1) = sigma_x(y2))",
                         {static_cast<point_t>(x), static_cast<point_t>(pre[v]),
                          static_cast<point_t>(y)});
          break;
        }
        pre[v] = static_cast<std::int64_t>(y);
        sinv[x * n + v] = static_cast<point_t>(y);
      }
    }
    if (!rep.left_nondegenerate) {
      return rep;
    }

    // gamma[y * n + x] = gamma_y(x)
    std::vector<point_t> gamma(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        gamma[y * n + x] = sinv[s(x, y) * n + x];
      }
    }
    auto g = [&](std::size_t y, std::size_t x) { return gamma[y * n + x]; };

    rep.right_nondegenerate = true;
    for (std::size_t y = 0; y < n && rep.right_nondegenerate; ++y) {
      std::vector<std::int64_t> pre(n, -1);
      for (std::size_t x = 0; x < n; ++x) {
        point_t v = g(y, x);
        if (pre[v] >= 0) {
          rep.right_nondegenerate = false;
          detail::record(rep, "right non-degeneracy (gamma_y(x1) = gamma_y(x2))",
                         {static_cast<point_t>(y), static_cast<point_t>(pre[v]),
                          static_cast<point_t>(x)});
          break;
        }
        pre[v] = static_cast<std::int64_t>(x);
      }
    }

    rep.involutive = true;
    for (std::size_t x = 0; x < n && rep.involutive; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        point_t u = s(x, y), v = g(y, x);
        if (s(u, v) != x || g(v, u) != y) {
          rep.involutive = false;
          detail::record(rep, "involutivity r^2 = id", {static_cast<point_t>(x), static_cast<point_t>(y)});
          break;
        }
      }
    }

    rep.braid = true;
    for (std::size_t x = 0; x < n && rep.braid; ++x) {
      for (std::size_t y = 0; y < n && rep.braid; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          // r12 r23 r12, rightmost applied first
          std::size_t a = s(x, y), b = g(y, x), c = z;
          std::size_t b2 = s(b, c), c2 = g(c, b);
          std::size_t l1 = s(a, b2), l2 = g(b2, a), l3 = c2;
          // r23 r12 r23
          std::size_t p = x, q = s(y, z), r = g(z, y);
          std::size_t p2 = s(p, q), q2 = g(q, p);
          std::size_t m1 = p2, m2 = s(q2, r), m3 = g(r, q2);
          if (l1 != m1 || l2 != m2 || l3 != m3) {
            rep.braid = false;
            detail::record(rep, "braid relation r12 r23 r12 = r23 r12 r23",
                           {static_cast<point_t>(x), static_cast<point_t>(y), static_cast<point_t>(z)});
            break;
          }
        }
      }
    }

    rep.symmetric_left_multiplication = true;
    std::optional<Witness> eq_witness;
    for (std::size_t a = 0; a < n && rep.symmetric_left_multiplication; ++a) {
      for (std::size_t c = 0; c < n && rep.symmetric_left_multiplication; ++c) {
        std::size_t ac = sinv[a * n + c];
        std::size_t ca = sinv[c * n + a];
        for (std::size_t p = 0; p < n; ++p) {
          if (s(a, s(ac, p)) != s(c, s(ca, p))) {
            rep.symmetric_left_multiplication = false;
            eq_witness = Witness{"sigma_a sigma_{sigma_a^-1(c)} = sigma_c sigma_{sigma_c^-1(a)}",
                                 {static_cast<point_t>(a), static_cast<point_t>(c),
                                  static_cast<point_t>(p)}};
            break;
          }
        }
      }
    }
    rep.criteria_agree = rep.symmetric_left_multiplication == rep.braid;
    if (eq_witness) {
      detail::record(rep, eq_witness->property, eq_witness->points);
    }
    return rep;
  }

  class SolutionTable {
   public:
    /// Validates the table exhaustively; throws VerificationError with a
    /// witness when any axiom fails.
    static SolutionTable from_sigma(std::size_t n, std::vector<point_t> sigma, std::string label = {}) {
      VerifyReport rep = verify_table(n, sigma);
      if (!rep.ok()) {
        throw VerificationError("not a solution: "
                                + (rep.witness ? rep.witness->describe() : std::string("unknown")));
      }
      return SolutionTable(n, std::move(sigma), std::move(label));
    }

    static SolutionTable from_rows(std::vector<std::vector<point_t>> const& rows, std::string label = {}) {
      std::size_t n = rows.size();
      std::vector<point_t> flat;
      flat.reserve(n * n);
      for (auto const& r : rows) {
        if (r.size() != n) {
          throw StructuralError("sigma table is not square");
        }
        flat.insert(flat.end(), r.begin(), r.end());
      }
      return from_sigma(n, std::move(flat), std::move(label));
    }

    [[nodiscard]] std::size_t size() const noexcept {
      return n_;
    }
    [[nodiscard]] std::string const& label() const noexcept {
      return label_;
    }
    void set_label(std::string label) {
      label_ = std::move(label);
    }
    [[nodiscard]] point_t sigma(point_t x, point_t y) const noexcept {
      return sigma_[x * n_ + y];
    }
    [[nodiscard]] point_t sigma_inv(point_t x, point_t y) const noexcept {
      return sigma_inv_[x * n_ + y];
    }
    [[nodiscard]] point_t gamma(point_t y, point_t x) const noexcept {
      return gamma_[y * n_ + x];
    }
    [[nodiscard]] std::span<const point_t> sigma_row(point_t x) const noexcept {
      return {sigma_.data() + static_cast<std::size_t>(x) * n_, n_};
    }
    [[nodiscard]] std::span<const point_t> table() const noexcept {
      return sigma_;
    }
    [[nodiscard]] Permutation sigma_perm(point_t x) const {
      auto row = sigma_row(x);
      return Permutation(std::vector<point_t>(row.begin(), row.end()));
    }

    friend bool operator==(SolutionTable const& a, SolutionTable const& b) {
      return a.n_ == b.n_ && a.sigma_ == b.sigma_;
    }

   private:
    SolutionTable(std::size_t n, std::vector<point_t> sigma, std::string label)
        : n_(n), sigma_(std::move(sigma)), sigma_inv_(n * n), gamma_(n * n), label_(std::move(label)) {
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          sigma_inv_[x * n + sigma_[x * n + y]] = static_cast<point_t>(y);
        }
      }
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          gamma_[y * n + x] = sigma_inv_[sigma_[x * n + y] * n + x];
        }
      }
    }

    std::size_t n_ = 0;
    std::vector<point_t> sigma_;
    std::vector<point_t> sigma_inv_;
    std::vector<point_t> gamma_;
    std::string label_;
  };

  inline VerifyReport verify(SolutionTable const& s) {
    return verify_table(s.size(), s.table());
  }

  /// r(x, y) = (y, x).
  inline SolutionTable trivial_solution(std::size_t n) {
    std::vector<point_t> t(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        t[x * n + y] = static_cast<point_t>(y);
      }
    }
    return SolutionTable::from_sigma(n, std::move(t), "trivial(" + std::to_string(n) + ")");
  }

  /// sigma_x = f for every x.
  inline SolutionTable permutation_solution(Permutation const& f) {
    std::size_t n = f.degree();
    std::vector<point_t> t(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        t[x * n + y] = f(static_cast<point_t>(y));
      }
    }
    return SolutionTable::from_sigma(n, std::move(t), "permutation(" + std::to_string(n) + ")");
  }

  /// Permutation solution of the cyclic shift y -> y + 1 on n points.
  inline SolutionTable cyclic_solution(std::size_t n) {
    std::vector<point_t> img(n);
    for (std::size_t y = 0; y < n; ++y) {
      img[y] = static_cast<point_t>((y + 1) % n);
    }
    auto s = permutation_solution(Permutation(std::move(img)));
    s.set_label("cyclic(" + std::to_string(n) + ")");
    return s;
  }

  // ---------------------------------------------------------------------
  // Permutation group generated by the sigma_x
  // ---------------------------------------------------------------------

  enum class ClosureStatus { complete, overflow };

  /// Breadth-first closure of a set of permutations. Elements are stored
  /// flat and indexed by an open-addressing hash table.
  class PermGroupClosure {
   public:
    PermGroupClosure(std::size_t degree, std::vector<Permutation> generators, std::size_t cap)
        : degree_(degree), cap_(cap) {
      for (auto& g : generators) {
        if (g.degree() != degree) {
          throw StructuralError("PermGroupClosure: generator degree mismatch");
        }
        if (std::find(generators_.begin(), generators_.end(), g) == generators_.end()) {
          generators_.push_back(std::move(g));
        }
      }
      run();
    }

    [[nodiscard]] std::size_t degree() const noexcept {
      return degree_;
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return count_;
    }
    [[nodiscard]] std::size_t cap() const noexcept {
      return cap_;
    }
    [[nodiscard]] ClosureStatus status() const noexcept {
      return status_;
    }
    [[nodiscard]] bool complete() const noexcept {
      return status_ == ClosureStatus::complete;
    }
    [[nodiscard]] std::span<const Permutation> generators() const noexcept {
      return generators_;
    }
    [[nodiscard]] std::span<const point_t> element(std::size_t i) const noexcept {
      return {data_.data() + i * degree_, degree_};
    }
    [[nodiscard]] bool contains(std::span<const point_t> perm) const {
      return perm.size() == degree_ && find(perm).has_value();
    }
    [[nodiscard]] std::optional<std::size_t> index_of(std::span<const point_t> perm) const {
      if (perm.size() != degree_) {
        return std::nullopt;
      }
      return find(perm);
    }

   private:
    static std::uint64_t hash(std::span<const point_t> p) noexcept {
      std::uint64_t h = 1469598103934665603ULL;
      for (point_t v : p) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 1099511628211ULL;
      }
      return h;
    }

    std::optional<std::size_t> find(std::span<const point_t> p) const {
      if (slots_.empty()) {
        return std::nullopt;
      }
      std::size_t mask = slots_.size() - 1;
      for (std::size_t i = hash(p) & mask;; i = (i + 1) & mask) {
        std::uint32_t s = slots_[i];
        if (s == 0) {
          return std::nullopt;
        }
        auto e = element(s - 1);
        if (std::equal(e.begin(), e.end(), p.begin())) {
          return s - 1;
        }
      }
    }

    void rehash(std::size_t capacity) {
      slots_.assign(capacity, 0);
      std::size_t mask = capacity - 1;
      for (std::size_t k = 0; k < count_; ++k) {
        std::size_t i = hash(element(k)) & mask;
        while (slots_[i] != 0) {
          i = (i + 1) & mask;
        }
        slots_[i] = static_cast<std::uint32_t>(k + 1);
      }
    }

    // Returns false when the element was already present.
    bool insert(std::span<const point_t> p) {
      if (find(p)) {
        return false;
      }
      data_.insert(data_.end(), p.begin(), p.end());
      ++count_;
      if (2 * count_ > slots_.size()) {
        rehash(std::max<std::size_t>(64, slots_.size() * 2));
      } else {
        std::size_t mask = slots_.size() - 1;
        std::size_t i = hash(p) & mask;
        while (slots_[i] != 0) {
          i = (i + 1) & mask;
        }
        slots_[i] = static_cast<std::uint32_t>(count_);
      }
      return true;
    }

    void run() {
      std::vector<point_t> id(degree_);
      for (std::size_t x = 0; x < degree_; ++x) {
        id[x] = static_cast<point_t>(x);
      }
      insert(id);
      std::vector<point_t> next(degree_);
      for (std::size_t head = 0; head < count_; ++head) {
        for (auto const& g : generators_) {
          auto cur = element(head);
          for (std::size_t x = 0; x < degree_; ++x) {
            next[x] = g(cur[x]);
          }
          if (!find(next)) {
            if (count_ >= cap_) {
              status_ = ClosureStatus::overflow;
              return;
            }
            insert(next);
          }
        }
      }
      status_ = ClosureStatus::complete;
    }

    std::size_t degree_;
    std::size_t cap_;
    std::vector<Permutation> generators_;
    std::vector<point_t> data_;
    std::vector<std::uint32_t> slots_;
    std::size_t count_ = 0;
    ClosureStatus status_ = ClosureStatus::complete;
  };

  inline constexpr std::size_t default_group_cap = 10'000'000;

  inline PermGroupClosure permutation_group(SolutionTable const& s, std::size_t cap = default_group_cap) {
    std::vector<Permutation> gens;
    gens.reserve(s.size());
    for (point_t x = 0; x < s.size(); ++x) {
      gens.push_back(s.sigma_perm(x));
    }
    return PermGroupClosure(s.size(), std::move(gens), cap);
  }

  inline std::uint64_t sigma_order(SolutionTable const& s, point_t x) {
    return s.sigma_perm(x).order();
  }

  // ---------------------------------------------------------------------
  // Orbits and retraction
  // ---------------------------------------------------------------------

  /// Orbits of the group generated by all sigma_x, each sorted, ordered by
  /// least element.
  inline std::vector<std::vector<point_t>> orbits(SolutionTable const& s) {
    DisjointSet ds(s.size());
    for (point_t x = 0; x < s.size(); ++x) {
      for (point_t y = 0; y < s.size(); ++y) {
        ds.unite(y, s.sigma(x, y));
      }
    }
    auto labels = ds.labels();
    std::map<point_t, std::vector<point_t>> by_label;
    for (point_t x = 0; x < s.size(); ++x) {
      by_label[labels[x]].push_back(x);
    }
    std::vector<std::vector<point_t>> out;
    for (auto& [_, v] : by_label) {
      out.push_back(std::move(v));
    }
    return out;
  }

  inline bool is_indecomposable(SolutionTable const& s) {
    return orbits(s).size() == 1;
  }

  /// A partition of the points of a solution. Each point is labelled by the
  /// least element of its class.
  class Congruence {
   public:
    Congruence() = default;

    static Congruence from_labels(std::vector<point_t> const& any_labels) {
      std::size_t n = any_labels.size();
      std::map<point_t, point_t> least;
      for (point_t x = 0; x < n; ++x) {
        least.try_emplace(any_labels[x], x);
      }
      Congruence c;
      c.labels_.resize(n);
      for (point_t x = 0; x < n; ++x) {
        c.labels_[x] = least[any_labels[x]];
      }
      c.classes_ = least.size();
      return c;
    }

    static Congruence from_disjoint_set(DisjointSet& ds) {
      Congruence c;
      c.labels_ = ds.labels();
      c.classes_ = ds.num_classes();
      return c;
    }

    [[nodiscard]] std::size_t size() const noexcept {
      return labels_.size();
    }
    [[nodiscard]] std::size_t num_classes() const noexcept {
      return classes_;
    }
    [[nodiscard]] point_t label(point_t x) const noexcept {
      return labels_[x];
    }
    [[nodiscard]] std::span<const point_t> labels() const noexcept {
      return labels_;
    }
    [[nodiscard]] bool is_total() const noexcept {
      return classes_ == 1;
    }
    [[nodiscard]] bool is_identity() const noexcept {
      return classes_ == labels_.size();
    }

    /// Classes ordered by least element; each class sorted.
    [[nodiscard]] std::vector<std::vector<point_t>> classes() const {
      std::map<point_t, std::vector<point_t>> m;
      for (point_t x = 0; x < labels_.size(); ++x) {
        m[labels_[x]].push_back(x);
      }
      std::vector<std::vector<point_t>> out;
      for (auto& [_, v] : m) {
        out.push_back(std::move(v));
      }
      return out;
    }

    friend bool operator==(Congruence const&, Congruence const&) = default;

   private:
    std::vector<point_t> labels_;
    std::size_t classes_ = 0;
  };

  enum class WorklistOrder { fifo, lifo };

  /// Smallest congruence containing the given pairs. Every merge (p, q) is
  /// queued; processing it merges sigma_p(z)~sigma_q(z), sigma_z(p)~sigma_z(q)
  /// and the same for gamma, for every point z.
  inline Congruence congruence_closure(SolutionTable const& s,
                                       std::span<const std::pair<point_t, point_t>> seeds,
                                       WorklistOrder order = WorklistOrder::fifo) {
    std::size_t n = s.size();
    DisjointSet ds(n);
    std::deque<std::pair<point_t, point_t>> work;
    auto merge = [&](point_t a, point_t b) {
      if (ds.unite(a, b)) {
        work.emplace_back(std::min(a, b), std::max(a, b));
      }
    };
    for (auto [a, b] : seeds) {
      if (a >= n || b >= n) {
        throw StructuralError("congruence_closure: seed point out of range");
      }
      merge(a, b);
    }
    while (!work.empty() && ds.num_classes() > 1) {
      std::pair<point_t, point_t> pq;
      if (order == WorklistOrder::fifo) {
        pq = work.front();
        work.pop_front();
      } else {
        pq = work.back();
        work.pop_back();
      }
      auto [p, q] = pq;
      for (point_t z = 0; z < n; ++z) {
        merge(s.sigma(p, z), s.sigma(q, z));
        merge(s.sigma(z, p), s.sigma(z, q));
        merge(s.gamma(p, z), s.gamma(q, z));
        merge(s.gamma(z, p), s.gamma(z, q));
      }
    }
    return Congruence::from_disjoint_set(ds);
  }

  inline Congruence principal_congruence(SolutionTable const& s,
                                         point_t x,
                                         point_t y,
                                         WorklistOrder order = WorklistOrder::fifo) {
    if (x == y) {
      throw PreconditionError("principal_congruence: points must be distinct");
    }
    std::pair<point_t, point_t> seed{x, y};
    return congruence_closure(s, std::span(&seed, 1), order);
  }

  /// Nullopt if the partition is compatible with sigma and gamma; otherwise
  /// points (x, x', y, y') with x~x', y~y' but sigma_x(y) !~ sigma_x'(y') (or
  /// the gamma analogue).
  inline std::optional<Witness> compatibility_witness(SolutionTable const& s, Congruence const& c) {
    std::size_t n = s.size();
    if (c.size() != n) {
      throw StructuralError("compatibility_witness: partition size mismatch");
    }
    std::map<std::pair<point_t, point_t>, std::pair<point_t, point_t>> sig, gam;
    for (point_t x = 0; x < n; ++x) {
      for (point_t y = 0; y < n; ++y) {
        auto key = std::make_pair(c.label(x), c.label(y));
        auto [it, fresh] = sig.try_emplace(key, x, y);
        if (!fresh) {
          auto [x0, y0] = it->second;
          if (c.label(s.sigma(x0, y0)) != c.label(s.sigma(x, y))) {
            return Witness{"sigma compatibility", {x0, x, y0, y}};
          }
        }
        auto [it2, fresh2] = gam.try_emplace(key, x, y);
        if (!fresh2) {
          auto [x0, y0] = it2->second;
          if (c.label(s.gamma(y0, x0)) != c.label(s.gamma(y, x))) {
            return Witness{"gamma compatibility", {x0, x, y0, y}};
          }
        }
      }
    }
    return std::nullopt;
  }

  /// Induced solution on the classes, ordered by least element.
  inline SolutionTable quotient_solution(SolutionTable const& s, Congruence const& c) {
    if (auto w = compatibility_witness(s, c)) {
      throw VerificationError("partition is not a congruence: " + w->describe());
    }
    auto classes = c.classes();
    std::size_t m = classes.size();
    std::map<point_t, point_t> class_index;
    for (point_t i = 0; i < m; ++i) {
      class_index[classes[i].front()] = i;
    }
    std::vector<point_t> t(m * m);
    for (point_t i = 0; i < m; ++i) {
      for (point_t j = 0; j < m; ++j) {
        point_t v = s.sigma(classes[i].front(), classes[j].front());
        t[i * m + j] = class_index[c.label(v)];
      }
    }
    return SolutionTable::from_sigma(m, std::move(t), s.label().empty() ? "" : s.label() + "/~");
  }

  struct Retraction {
    SolutionTable solution;
    std::vector<point_t> projection;
  };

  /// Quotient by x ~ y iff sigma_x = sigma_y.
  inline Retraction retract(SolutionTable const& s) {
    std::size_t n = s.size();
    std::map<std::vector<point_t>, point_t> first;
    std::vector<point_t> labels(n);
    for (point_t x = 0; x < n; ++x) {
      auto row = s.sigma_row(x);
      auto [it, _] = first.try_emplace(std::vector<point_t>(row.begin(), row.end()), x);
      labels[x] = it->second;
    }
    auto c = Congruence::from_labels(labels);
    auto q = quotient_solution(s, c);
    auto classes = c.classes();
    std::map<point_t, point_t> class_index;
    for (point_t i = 0; i < classes.size(); ++i) {
      class_index[classes[i].front()] = i;
    }
    std::vector<point_t> proj(n);
    for (point_t x = 0; x < n; ++x) {
      proj[x] = class_index[c.label(x)];
    }
    q.set_label(s.label().empty() ? "" : "Ret(" + s.label() + ")");
    return Retraction{std::move(q), std::move(proj)};
  }

  inline bool is_irretractable(SolutionTable const& s) {
    return retract(s).solution.size() == s.size();
  }

  /// Sizes of the iterated retracts, starting with s itself, until the
  /// retract no longer shrinks.
  inline std::vector<std::size_t> retract_tower(SolutionTable const& s) {
    std::vector<std::size_t> sizes{s.size()};
    SolutionTable cur = s;
    for (;;) {
      auto r = retract(cur);
      if (r.solution.size() == cur.size()) {
        return sizes;
      }
      sizes.push_back(r.solution.size());
      cur = std::move(r.solution);
    }
  }

  // ---------------------------------------------------------------------
  // Simplicity oracle
  // ---------------------------------------------------------------------

  /// True iff every principal congruence is total. Congruences are invariant
  /// under the permutation group, so theta(x, y) = theta(g x, g y); only pairs
  /// whose first point is the least element of its orbit are examined.
  inline bool is_simple_oracle(SolutionTable const& s, unsigned threads = 1) {
    std::size_t n = s.size();
    if (n <= 1) {
      throw PreconditionError("is_simple_oracle: a simple solution needs more than one point");
    }
    std::vector<std::pair<point_t, point_t>> pairs;
    for (auto const& orb : orbits(s)) {
      point_t x = orb.front();
      for (point_t y = 0; y < n; ++y) {
        if (y != x) {
          pairs.emplace_back(x, y);
        }
      }
    }
    std::atomic<bool> simple{true};
    parallel_for(pairs.size(), threads, [&](std::size_t i) {
      if (!simple.load(std::memory_order_relaxed)) {
        return;
      }
      if (!principal_congruence(s, pairs[i].first, pairs[i].second).is_total()) {
        simple.store(false, std::memory_order_relaxed);
      }
    });
    return simple.load();
  }

  /// Same verdict, checking every pair x < y.
  inline bool is_simple_oracle_all_pairs(SolutionTable const& s) {
    std::size_t n = s.size();
    if (n <= 1) {
      throw PreconditionError("is_simple_oracle: a simple solution needs more than one point");
    }
    for (point_t x = 0; x < n; ++x) {
      for (point_t y = x + 1; y < n; ++y) {
        if (!principal_congruence(s, x, y).is_total()) {
          return false;
        }
      }
    }
    return true;
  }

  // ---------------------------------------------------------------------
  // Isomorphism search
  // ---------------------------------------------------------------------

  /// True iff f is a bijection with f(sigma_x(y)) = sigma'_{f(x)}(f(y)).
  inline bool is_isomorphism(SolutionTable const& s, SolutionTable const& t, std::span<const point_t> f) {
    std::size_t n = s.size();
    if (t.size() != n || f.size() != n) {
      return false;
    }
    std::vector<char> hit(n, 0);
    for (point_t v : f) {
      if (v >= n || hit[v]) {
        return false;
      }
      hit[v] = 1;
    }
    for (point_t x = 0; x < n; ++x) {
      for (point_t y = 0; y < n; ++y) {
        if (f[s.sigma(x, y)] != t.sigma(f[x], f[y])) {
          return false;
        }
      }
    }
    return true;
  }

  namespace detail {
    struct PointSignature {
      std::uint64_t sigma_order;
      std::size_t orbit_size;
      std::size_t fixed_points;
      auto operator<=>(PointSignature const&) const = default;
    };

    inline std::vector<PointSignature> signatures(SolutionTable const& s) {
      auto orbs = orbits(s);
      std::vector<std::size_t> orbit_size(s.size());
      for (auto const& o : orbs) {
        for (point_t x : o) {
          orbit_size[x] = o.size();
        }
      }
      std::vector<PointSignature> sig(s.size());
      for (point_t x = 0; x < s.size(); ++x) {
        std::size_t fixed = 0;
        for (point_t y = 0; y < s.size(); ++y) {
          fixed += s.sigma(x, y) == y;
        }
        sig[x] = {sigma_order(s, x), orbit_size[x], fixed};
      }
      return sig;
    }

    class IsoSearch {
     public:
      IsoSearch(SolutionTable const& s, SolutionTable const& t)
          : s_(s), t_(t), n_(s.size()), sig_s_(signatures(s)), sig_t_(signatures(t)) {}

      std::optional<std::vector<point_t>> run() {
        auto a = sig_s_, b = sig_t_;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) {
          return std::nullopt;
        }
        State st{std::vector<std::int64_t>(n_, -1), std::vector<std::int64_t>(n_, -1), {}};
        return search(std::move(st));
      }

     private:
      struct State {
        std::vector<std::int64_t> f;
        std::vector<std::int64_t> finv;
        std::vector<point_t> assigned;
      };

      // Assigns f(x) = y and propagates all forced values.
      bool assign(State& st, point_t x, point_t y) const {
        std::deque<point_t> queue;
        auto set = [&](point_t a, point_t b) {
          if (st.f[a] >= 0) {
            return st.f[a] == b;
          }
          if (st.finv[b] >= 0 || sig_s_[a] != sig_t_[b]) {
            return false;
          }
          st.f[a] = b;
          st.finv[b] = a;
          st.assigned.push_back(a);
          queue.push_back(a);
          return true;
        };
        if (!set(x, y)) {
          return false;
        }
        while (!queue.empty()) {
          point_t p = queue.front();
          queue.pop_front();
          std::size_t bound = st.assigned.size();
          for (std::size_t k = 0; k < bound; ++k) {
            point_t q = st.assigned[k];
            for (int dir = 0; dir < 2; ++dir) {
              point_t u = dir == 0 ? p : q;
              point_t v = dir == 0 ? q : p;
              auto fu = static_cast<point_t>(st.f[u]);
              auto fv = static_cast<point_t>(st.f[v]);
              if (!set(s_.sigma(u, v), t_.sigma(fu, fv))) {
                return false;
              }
              if (!set(s_.sigma_inv(u, v), t_.sigma_inv(fu, fv))) {
                return false;
              }
            }
          }
        }
        return true;
      }

      std::optional<std::vector<point_t>> search(State st) const {
        if (st.assigned.size() == n_) {
          std::vector<point_t> f(n_);
          for (point_t x = 0; x < n_; ++x) {
            f[x] = static_cast<point_t>(st.f[x]);
          }
          if (is_isomorphism(s_, t_, f)) {
            return f;
          }
          return std::nullopt;
        }
        // Branch on the unassigned point with the fewest candidates.
        std::int64_t best = -1;
        std::size_t best_count = SIZE_MAX;
        for (point_t x = 0; x < n_; ++x) {
          if (st.f[x] >= 0) {
            continue;
          }
          std::size_t cnt = 0;
          for (point_t y = 0; y < n_; ++y) {
            cnt += st.finv[y] < 0 && sig_s_[x] == sig_t_[y];
          }
          if (cnt < best_count) {
            best_count = cnt;
            best = x;
          }
        }
        if (best_count == 0) {
          return std::nullopt;
        }
        auto x = static_cast<point_t>(best);
        for (point_t y = 0; y < n_; ++y) {
          if (st.finv[y] >= 0 || sig_s_[x] != sig_t_[y]) {
            continue;
          }
          State next = st;
          if (assign(next, x, y)) {
            if (auto r = search(std::move(next))) {
              return r;
            }
          }
        }
        return std::nullopt;
      }

      SolutionTable const& s_;
      SolutionTable const& t_;
      std::size_t n_;
      std::vector<PointSignature> sig_s_;
      std::vector<PointSignature> sig_t_;
    };
  }  // namespace detail

  /// A solution isomorphism s -> t, or nullopt after exhausting the search.
  inline std::optional<std::vector<point_t>> isomorphism_search(SolutionTable const& s, SolutionTable const& t) {
    if (s.size() != t.size()) {
      return std::nullopt;
    }
    return detail::IsoSearch(s, t).run();
  }

}  // namespace ybe
