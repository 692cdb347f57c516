#include "treeprop/coloring.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "treeprop/errors.hpp"

namespace treeprop {

Coloring::Coloring(int n, int theta, int fill) : n_(n), theta_(theta) {
  if (n < 0) throw RangeError("coloring size must be non-negative");
  if (theta < 1) throw RangeError("a coloring needs at least one color");
  if (fill < 0 || fill >= theta) throw RangeError("color out of range");
  table_.assign(static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2, fill);
}

std::size_t Coloring::index(int i, int j) const {
  if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_) {
    throw RangeError("pair {" + std::to_string(i) + "," + std::to_string(j) +
                     "} is not a pair from [" + std::to_string(n_) + "]");
  }
  if (i > j) std::swap(i, j);
  const auto a = static_cast<std::size_t>(i);
  const auto n = static_cast<std::size_t>(n_);
  return a * (2 * n - a - 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

int Coloring::at(int i, int j) const { return table_[index(i, j)]; }

void Coloring::set(int i, int j, int color) {
  if (color < 0 || color >= theta_) throw RangeError("color out of range");
  table_[index(i, j)] = color;
}

Xorshift64Star::Xorshift64Star(std::uint64_t seed) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  state_ = z ^ (z >> 31);
  if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t Xorshift64Star::next() {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1DULL;
}

std::uint32_t Xorshift64Star::below(std::uint32_t bound) {
  if (bound == 0) throw RangeError("bound must be positive");
  return static_cast<std::uint32_t>((next() >> 32) % bound);
}

Coloring generate(const ColoringKind& kind, int n, int theta) {
  switch (kind.tag) {
    case ColoringKind::Tag::Constant:
      return Coloring(n, theta, kind.color);
    case ColoringKind::Tag::Random: {
      Coloring c(n, theta);
      Xorshift64Star rng(kind.seed);
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          c.set(i, j, static_cast<int>(rng.below(static_cast<std::uint32_t>(theta))));
        }
      }
      return c;
    }
    case ColoringKind::Tag::OrderDisagreement: {
      if (theta != 2) throw RangeError("order_disagreement colorings use two colors");
      const auto& perm = kind.permutation;
      if (static_cast<int>(perm.size()) != n) throw RangeError("permutation has wrong length");
      std::vector<int> seen(static_cast<std::size_t>(n), 0);
      for (int v : perm) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]++) {
          throw RangeError("not a permutation of {0..n-1}");
        }
      }
      Coloring c(n, 2);
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          c.set(i, j, perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)] ? 1 : 0);
        }
      }
      return c;
    }
  }
  throw RangeError("unknown coloring kind");
}

Coloring restrict_colors(const Coloring& c, int theta_prime) {
  if (theta_prime < 1 || theta_prime > c.theta()) {
    throw PreconditionError("restrict_colors needs 1 <= theta' <= theta");
  }
  Coloring out(c.n(), theta_prime);
  for (int i = 0; i < c.n(); ++i) {
    for (int j = i + 1; j < c.n(); ++j) {
      const int v = c.at(i, j);
      out.set(i, j, v < theta_prime ? v : 0);
    }
  }
  return out;
}

namespace {

bool extend_homogeneous(const Coloring& c, int m, int color, std::vector<int>& chosen,
                        std::vector<int>& candidates) {
  if (static_cast<int>(chosen.size()) == m) return true;
  const int need = m - static_cast<int>(chosen.size());
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (static_cast<int>(candidates.size() - k) < need) return false;
    const int v = candidates[k];
    // The second vertex fixes the color of the whole set.
    const int set_color = chosen.size() == 1 ? c.at(chosen[0], v) : color;
    std::vector<int> next;
    for (std::size_t t = k + 1; t < candidates.size(); ++t) {
      const int u = candidates[t];
      bool ok = c.at(v, u) == set_color || set_color < 0;
      for (std::size_t q = 0; ok && q < chosen.size(); ++q) ok = c.at(chosen[q], u) == set_color;
      if (ok) next.push_back(u);
    }
    chosen.push_back(v);
    if (extend_homogeneous(c, m, set_color, chosen, next)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> find_homogeneous(const Coloring& c, int m) {
  if (m < 0 || m > c.n()) return std::nullopt;
  if (m <= 1) {
    std::vector<int> out;
    for (int i = 0; i < m; ++i) out.push_back(i);
    return out;
  }
  std::vector<int> chosen;
  std::vector<int> candidates;
  for (int i = 0; i < c.n(); ++i) candidates.push_back(i);
  if (extend_homogeneous(c, m, -1, chosen, candidates)) return chosen;
  return std::nullopt;
}

namespace {

using Mask = std::uint32_t;

std::vector<int> members(Mask s) {
  std::vector<int> out;
  for (int i = 0; s; ++i, s >>= 1) {
    if (s & 1u) out.push_back(i);
  }
  return out;
}

struct Pr1Search {
  const Coloring& c;
  int mu;
  std::uint64_t budget;
  std::vector<Mask> blocks;  // candidate members in colex order
  std::vector<Mask> family;
  std::uint64_t visited = 0;
  std::optional<Pr1Failure> failure;

  // -1 if c is not constant on a x b, else that color.
  int cross_color(Mask a, Mask b) const {
    int color = -1;
    for (int x : members(a)) {
      for (int y : members(b)) {
        const int v = c.at(x, y);
        if (color < 0) {
          color = v;
        } else if (color != v) {
          return -1;
        }
      }
    }
    return color;
  }

  bool family_ok() {
    std::vector<char> hit(static_cast<std::size_t>(c.theta()), 0);
    int remaining = c.theta();
    for (std::size_t i = 0; i < family.size() && remaining > 0; ++i) {
      for (std::size_t j = 0; j < family.size() && remaining > 0; ++j) {
        if (i == j) continue;
        const Mask a = family[i];
        const Mask b = family[j];
        // max(a) < min(b)
        if (static_cast<int>(std::bit_width(a)) - 1 >= static_cast<int>(std::countr_zero(b))) continue;
        const int color = cross_color(a, b);
        if (color >= 0 && !hit[static_cast<std::size_t>(color)]) {
          hit[static_cast<std::size_t>(color)] = 1;
          --remaining;
        }
      }
    }
    if (remaining == 0) return true;
    Pr1Failure f;
    for (Mask s : family) f.family.push_back(members(s));
    for (int g = 0; g < c.theta(); ++g) {
      if (!hit[static_cast<std::size_t>(g)]) {
        f.color = g;
        break;
      }
    }
    failure = std::move(f);
    return false;
  }

  // Returns false once a failing family is found.
  bool run(std::size_t start, Mask used) {
    if (static_cast<int>(family.size()) == mu) {
      if (++visited > budget) {
        throw BudgetExceeded("Pr1 check exceeded its family budget", visited - 1);
      }
      return family_ok();
    }
    for (std::size_t k = start; k < blocks.size(); ++k) {
      if (blocks[k] & used) continue;
      family.push_back(blocks[k]);
      const bool ok = run(k + 1, used | blocks[k]);
      family.pop_back();
      if (!ok) return false;
    }
    return true;
  }
};

}  // namespace

Pr1Result check_pr1_finite(const Coloring& c, int mu, int chi, std::uint64_t budget) {
  if (mu < 1 || chi < 2) throw PreconditionError("Pr1 check needs mu >= 1 and chi >= 2");
  if (mu > c.n()) throw PreconditionError("Pr1 check needs mu <= n");
  if (c.n() > 30) throw PreconditionError("Pr1 brute force is limited to n <= 30");

  Pr1Search search{c, mu, budget, {}, {}, 0, std::nullopt};
  const Mask full = c.n() == 0 ? 0 : ((Mask{1} << c.n()) - 1);
  // Numeric order of bitmasks is colex order of the subsets.
  for (Mask s = 1; s <= full && s != 0; ++s) {
    if (std::popcount(s) < chi) search.blocks.push_back(s);
  }
  Pr1Result out;
  out.holds = search.run(0, 0);
  out.failure = std::move(search.failure);
  out.families_checked = search.visited;
  return out;
}

}  // namespace treeprop
