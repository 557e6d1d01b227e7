#pragma once

#include <cstdint>
#include <vector>

namespace kazhdan::detail {

/// An element a + b*phi of Z[phi], phi the golden ratio (phi^2 = phi + 1).
/// Cartan entries of finite Coxeter groups with m <= 6 all live here.
struct GoldenInt {
  std::int64_t a = 0;
  std::int64_t b = 0;

  friend bool operator==(GoldenInt, GoldenInt) = default;
  friend auto operator<=>(GoldenInt, GoldenInt) = default;  // structural, not numeric
};

GoldenInt operator+(GoldenInt x, GoldenInt y);
GoldenInt operator-(GoldenInt x, GoldenInt y);
GoldenInt operator*(GoldenInt x, GoldenInt y);
/// Exact sign of a + b*phi.
int sign(GoldenInt x);

/// Signed permutation action of the simple reflections on the roots of a
/// finite Coxeter system.
///
/// Roots are numbered so that 0..N-1 are the positive roots (the first
/// `rank` of them simple) and N + r is the negative of root r.
struct RootAction {
  std::size_t positive_count = 0;
  /// perm[s][r] is the index of s(root r).
  std::vector<std::vector<std::uint32_t>> perm;

  bool is_positive(std::uint32_t r) const { return r < positive_count; }
};

/// Throws InvalidCoxeterSystem if the root enumeration exceeds `bound`.
RootAction build_root_action(const std::vector<std::vector<int>>& matrix, std::size_t bound);

/// Positive definiteness of the cosine form, i.e. finiteness of the group.
bool cosine_form_positive_definite(const std::vector<std::vector<int>>& matrix);

}  // namespace kazhdan::detail
