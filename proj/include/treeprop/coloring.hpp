#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace treeprop {

/// A symmetric coloring c: [n]^2 -> theta of unordered pairs from {0..n-1}.
/// Colors are dense integers 0..theta-1; storage is the upper triangle keyed
/// by (min, max).
class Coloring {
 public:
  Coloring() = default;
  /// Every pair gets `fill`. Throws RangeError if fill >= theta or theta < 1.
  Coloring(int n, int theta, int fill = 0);

  int n() const { return n_; }
  int theta() const { return theta_; }

  /// Color of {i, j}; i != j, both < n.
  int at(int i, int j) const;
  void set(int i, int j, int color);

  /// Number of unordered pairs, n(n-1)/2.
  std::size_t pair_count() const { return table_.size(); }
  /// Colors in lexicographic pair order (0,1), (0,2), ..., (n-2,n-1).
  const std::vector<int>& raw() const { return table_; }

  bool operator==(const Coloring&) const = default;

 private:
  std::size_t index(int i, int j) const;

  int n_ = 0;
  int theta_ = 1;
  std::vector<int> table_;
};

/// xorshift64* seeded through splitmix64. The constants are fixed so that
/// ports in other languages reproduce colorings bit for bit:
///   seed:  z = seed + 0x9E3779B97F4A7C15; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
///          z = (z ^ (z >> 27)) * 0x94D049BB133111EB; state = z ^ (z >> 31)
///          (state 0 is replaced by 0x9E3779B97F4A7C15)
///   step:  x ^= x >> 12; x ^= x << 25; x ^= x >> 27; out = x * 0x2545F4914F6CDD1D
class Xorshift64Star {
 public:
  using result_type = std::uint64_t;

  explicit Xorshift64Star(std::uint64_t seed = 0);

  std::uint64_t next();
  /// Uniform in [0, bound) using the high 32 bits of next(); bound >= 1.
  std::uint32_t below(std::uint32_t bound);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return next(); }

 private:
  std::uint64_t state_;
};

struct ColoringKind {
  enum class Tag { Constant, Random, OrderDisagreement };
  Tag tag = Tag::Constant;
  int color = 0;                  // Constant
  std::uint64_t seed = 0;         // Random
  std::vector<int> permutation;   // OrderDisagreement

  static ColoringKind constant(int c) { return {Tag::Constant, c, 0, {}}; }
  static ColoringKind random(std::uint64_t s) { return {Tag::Random, 0, s, {}}; }
  static ColoringKind order_disagreement(std::vector<int> perm) {
    return {Tag::OrderDisagreement, 0, 0, std::move(perm)};
  }
};

/// constant: every pair gets the color (RangeError if >= theta).
/// random: pairs in lexicographic order get Xorshift64Star(seed).below(theta).
/// order_disagreement: c({i,j}) = 1 iff the permutation reverses i < j; theta
/// must be 2 and the permutation a bijection on {0..n-1}.
Coloring generate(const ColoringKind& kind, int n, int theta);

/// c'(p) = c(p) if c(p) < theta_prime, else 0. Requires 1 <= theta' <= theta.
Coloring restrict_colors(const Coloring& c, int theta_prime);

/// Lexicographically least m-subset on which c is constant, or nullopt.
/// Backtracking over candidate sets in lex order; a partial set is extended
/// only by vertices joined to all of it in the set's color.
std::optional<std::vector<int>> find_homogeneous(const Coloring& c, int m);

struct Pr1Failure {
  std::vector<std::vector<int>> family;
  int color = 0;
};

struct Pr1Result {
  bool holds = true;
  std::optional<Pr1Failure> failure;
  std::uint64_t families_checked = 0;
};

/// Finite Pr_1 check: for every family of mu pairwise-disjoint nonempty
/// subsets of {0..n-1}, each of size < chi, and every color gamma < theta,
/// some a, b in the family have max(a) < min(b) and c = gamma on a x b.
///
/// Families are enumerated in colex order with short-circuiting per family.
/// Exponential; `budget` caps the number of families visited and throws
/// BudgetExceeded (carrying the count) when exceeded. Requires mu >= 1 and
/// chi >= 2.
Pr1Result check_pr1_finite(const Coloring& c, int mu, int chi,
                           std::uint64_t budget = 50'000'000);

}  // namespace treeprop
