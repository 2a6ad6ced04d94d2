#pragma once

// Brute-force reference implementations used as test oracles. They follow
// the definitions literally and share no code with the library algorithms.

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "ybe/brace.hpp"
#include "ybe/solution.hpp"

namespace brute {
  using ybe::point_t;
  using ybe::SolutionTable;
  using Table = std::vector<point_t>;

  // Direct check of the definition: r(x, y) = (sigma_x(y), sigma^{-1}_{sigma_x(y)}(x))
  // must be involutive, satisfy the braid relation on X^3, and have bijective
  // sigma_x and gamma_y.
  inline bool brute_is_solution(std::size_t n, Table const& t) {
    for (std::size_t x = 0; x < n; ++x) {
      std::vector<bool> seen(n, false);
      for (std::size_t y = 0; y < n; ++y) {
        if (t[x * n + y] >= n || seen[t[x * n + y]]) {
          return false;
        }
        seen[t[x * n + y]] = true;
      }
    }
    Table inv(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        inv[x * n + t[x * n + y]] = static_cast<point_t>(y);
      }
    }
    auto r = [&](point_t x, point_t y) {
      point_t u = t[x * n + y];
      return std::pair<point_t, point_t>{u, inv[u * n + x]};
    };
    for (point_t y = 0; y < n; ++y) {
      std::vector<bool> seen(n, false);
      for (point_t x = 0; x < n; ++x) {
        auto g = r(x, y).second;
        if (seen[g]) {
          return false;
        }
        seen[g] = true;
      }
    }
    for (point_t x = 0; x < n; ++x) {
      for (point_t y = 0; y < n; ++y) {
        auto [u, v] = r(x, y);
        if (r(u, v) != std::pair<point_t, point_t>{x, y}) {
          return false;
        }
      }
    }
    using Triple = std::array<point_t, 3>;
    auto r12 = [&](Triple a) {
      auto [u, v] = r(a[0], a[1]);
      return Triple{u, v, a[2]};
    };
    auto r23 = [&](Triple a) {
      auto [u, v] = r(a[1], a[2]);
      return Triple{a[0], u, v};
    };
    for (point_t x = 0; x < n; ++x) {
      for (point_t y = 0; y < n; ++y) {
        for (point_t z = 0; z < n; ++z) {
          Triple a{x, y, z};
          if (r12(r23(r12(a))) != r23(r12(r23(a)))) {
            return false;
          }
        }
      }
    }
    return true;
  }

  // Calls fn on every sigma table on n points whose rows are permutations.
  template <typename Fn>
  void for_each_permutation_table(std::size_t n, Fn&& fn) {
    std::vector<point_t> p(n);
    std::iota(p.begin(), p.end(), point_t{0});
    std::vector<std::vector<point_t>> perms;
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::vector<std::size_t> choice(n, 0);
    for (;;) {
      Table t;
      for (auto c : choice) {
        t.insert(t.end(), perms[c].begin(), perms[c].end());
      }
      fn(t);
      std::size_t i = 0;
      while (i < n && ++choice[i] == perms.size()) {
        choice[i++] = 0;
      }
      if (i == n) {
        return;
      }
    }
  }

  inline std::vector<Table> all_solutions(std::size_t n) {
    std::vector<Table> out;
    for_each_permutation_table(n, [&](Table const& t) {
      if (brute_is_solution(n, t)) {
        out.push_back(t);
      }
    });
    return out;
  }

  // Set partitions of {0..n-1} as restricted growth strings.
  inline std::vector<std::vector<point_t>> all_partitions(std::size_t n) {
    std::vector<std::vector<point_t>> out;
    std::vector<point_t> a(n, 0);
    std::function<void(std::size_t, point_t)> rec = [&](std::size_t i, point_t maxv) {
      if (i == n) {
        out.push_back(a);
        return;
      }
      for (point_t v = 0; v <= maxv + 1; ++v) {
        a[i] = v;
        rec(i + 1, std::max(maxv, v));
      }
    };
    rec(1, 0);
    return out;
  }

  // Partition compatible with r: x~x', y~y' implies r(x,y) ~ r(x',y') componentwise.
  inline bool brute_compatible(SolutionTable const& s, std::vector<point_t> const& part) {
    std::size_t n = s.size();
    for (point_t x = 0; x < n; ++x) {
      for (point_t x2 = 0; x2 < n; ++x2) {
        if (part[x] != part[x2]) {
          continue;
        }
        for (point_t y = 0; y < n; ++y) {
          for (point_t y2 = 0; y2 < n; ++y2) {
            if (part[y] != part[y2]) {
              continue;
            }
            if (part[s.sigma(x, y)] != part[s.sigma(x2, y2)] || part[s.gamma(y, x)] != part[s.gamma(y2, x2)]) {
              return false;
            }
          }
        }
      }
    }
    return true;
  }

  inline std::size_t num_blocks(std::vector<point_t> const& part) {
    return static_cast<std::size_t>(*std::max_element(part.begin(), part.end())) + 1;
  }

  // Simple iff n > 1 and every compatible partition is discrete or total.
  inline bool brute_is_simple(SolutionTable const& s) {
    for (auto const& part : all_partitions(s.size())) {
      auto b = num_blocks(part);
      if (b != 1 && b != s.size() && brute_compatible(s, part)) {
        return false;
      }
    }
    return true;
  }

  inline Table relabel(std::size_t n, Table const& t, std::vector<point_t> const& f) {
    Table out(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        out[f[x] * n + f[y]] = f[t[x * n + y]];
      }
    }
    return out;
  }

  inline Table canonical_form(std::size_t n, Table const& t) {
    std::vector<point_t> f(n);
    std::iota(f.begin(), f.end(), point_t{0});
    Table best = t;
    do {
      best = std::min(best, relabel(n, t, f));
    } while (std::next_permutation(f.begin(), f.end()));
    return best;
  }

  inline std::set<Table> brute_group(SolutionTable const& s) {
    std::size_t n = s.size();
    Table id(n);
    std::iota(id.begin(), id.end(), point_t{0});
    std::set<Table> seen{id};
    std::vector<Table> todo{id};
    while (!todo.empty()) {
      auto g = todo.back();
      todo.pop_back();
      for (point_t x = 0; x < n; ++x) {
        Table h(n);
        for (point_t z = 0; z < n; ++z) {
          h[z] = s.sigma(x, g[z]);
        }
        if (seen.insert(h).second) {
          todo.push_back(h);
        }
      }
    }
    return seen;
  }

  // Literal axiom check on the tables.
  inline bool brute_axioms(ybe::DenseBrace const& b) {
    std::size_t n = b.size();
    auto is_group = [&](auto op, bool abelian) {
      ybe::elem_t e = ybe::npos;
      for (ybe::elem_t c = 0; c < n && e == ybe::npos; ++c) {
        bool ok = true;
        for (ybe::elem_t x = 0; x < n; ++x) {
          ok = ok && op(c, x) == x && op(x, c) == x;
        }
        e = ok ? c : ybe::npos;
      }
      if (e == ybe::npos) {
        return ybe::npos;
      }
      for (ybe::elem_t x = 0; x < n; ++x) {
        bool has_inverse = false;
        for (ybe::elem_t y = 0; y < n; ++y) {
          has_inverse = has_inverse || (op(x, y) == e && op(y, x) == e);
          if (abelian && op(x, y) != op(y, x)) {
            return ybe::npos;
          }
          for (ybe::elem_t z = 0; z < n; ++z) {
            if (op(op(x, y), z) != op(x, op(y, z))) {
              return ybe::npos;
            }
          }
        }
        if (!has_inverse) {
          return ybe::npos;
        }
      }
      return e;
    };
    auto plus = [&](ybe::elem_t x, ybe::elem_t y) { return b.add_table()[x * n + y]; };
    auto times = [&](ybe::elem_t x, ybe::elem_t y) { return b.mul_table()[x * n + y]; };
    ybe::elem_t zero = is_group(plus, true);
    ybe::elem_t one = is_group(times, false);
    if (zero == ybe::npos || one == ybe::npos || zero != one) {
      return false;
    }
    for (ybe::elem_t x = 0; x < n; ++x) {
      for (ybe::elem_t y = 0; y < n; ++y) {
        for (ybe::elem_t z = 0; z < n; ++z) {
          if (plus(times(x, plus(y, z)), x) != plus(times(x, y), times(x, z))) {
            return false;
          }
        }
      }
    }
    return true;
  }

}  // namespace brute
