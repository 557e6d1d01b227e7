#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "kazhdan/laurent.hpp"

namespace kazhdan {

/// Index of a simple reflection, in construction order.
using Generator = int;

/// A subset of the simple reflections of a system of rank at most 64.
class GeneratorSet {
 public:
  constexpr GeneratorSet() = default;
  constexpr explicit GeneratorSet(std::uint64_t mask) : mask_(mask) {}
  GeneratorSet(std::initializer_list<Generator> gens) {
    for (Generator s : gens) insert(s);
  }
  static constexpr GeneratorSet all(int rank) {
    return GeneratorSet(rank >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << rank) - 1);
  }

  constexpr bool contains(Generator s) const { return (mask_ >> s) & 1U; }
  constexpr void insert(Generator s) { mask_ |= std::uint64_t{1} << s; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr int count() const { return std::popcount(mask_); }
  constexpr std::uint64_t mask() const { return mask_; }
  constexpr bool is_subset_of(GeneratorSet other) const { return (mask_ & ~other.mask_) == 0; }
  std::vector<Generator> members() const;

  friend constexpr bool operator==(GeneratorSet, GeneratorSet) = default;

 private:
  std::uint64_t mask_ = 0;
};

/// A group element, identified by its position in the system's enumeration.
///
/// Positions follow (length, ShortLex word) order, so comparing elements
/// compares lengths first. Elements are only meaningful together with the
/// CoxeterSystem that produced them.
struct Element {
  std::uint32_t id = 0;
  friend constexpr auto operator<=>(Element, Element) = default;
};

enum class Side { Left, Right };

/// A right coset a*W_I with its extremal representatives.
struct Coset {
  Element min_rep;
  Element max_rep;
  std::vector<Element> members;
};

/// A finite Coxeter system.
///
/// The whole group is enumerated at construction through the action of the
/// simple reflections on the root system, and every later query is a table
/// lookup or a walk along a reduced word. Instances are immutable and may be
/// shared freely between threads.
class CoxeterSystem {
 public:
  static constexpr std::size_t kDefaultElementBound = 10'000'000;

  /// Builds the system for a symmetric Coxeter matrix with unit diagonal and
  /// off-diagonal entries in {2,...,6}. Throws InvalidCoxeterSystem if the
  /// matrix is malformed, the group is infinite, or the enumeration exceeds
  /// `element_bound`.
  CoxeterSystem(std::vector<std::vector<int>> matrix, std::vector<std::string> names,
                std::size_t element_bound = kDefaultElementBound);

  /// Built-in types: "A<n>", "B<n>", "D<n>", "G2", "F4", "H3" with Bourbaki
  /// numbering. Generators are named "s" (rank 1), "s","t" (rank 2) or
  /// "s1".."sn".
  static CoxeterSystem from_type(std::string_view code);
  /// {"rank": n, "matrix": [[...]], "names": [...]}; "names" is optional.
  static CoxeterSystem from_json(const nlohmann::json& j);
  static std::vector<std::string> default_names(int rank);

  int rank() const { return rank_; }
  const std::vector<std::vector<int>>& matrix() const { return matrix_; }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return length_.size(); }
  std::size_t positive_root_count() const { return positive_roots_; }
  /// Stable hex digest of the matrix and the generator names.
  const std::string& fingerprint() const { return fingerprint_; }

  Element identity() const { return Element{0}; }
  Element generator(Generator s) const { return right_multiply(identity(), s); }
  Element element(std::size_t index) const;
  /// Every element once, in (length, ShortLex) order.
  std::vector<Element> all_elements() const;

  int length(Element a) const { return length_[a.id]; }
  /// ShortLex-least reduced word.
  std::vector<Generator> word(Element a) const;
  Element from_word(const std::vector<Generator>& word) const;

  Element left_multiply(Generator s, Element a) const { return Element{left_[a.id * rank_ + s]}; }
  Element right_multiply(Element a, Generator s) const { return Element{right_[a.id * rank_ + s]}; }
  Element multiply(Element a, Element b) const;
  Element inverse(Element a) const { return Element{inverse_[a.id]}; }

  bool is_descent(Element a, Generator s, Side side) const;
  GeneratorSet descents(Element a, Side side) const;

  /// Bruhat order, by the descent recursion.
  bool bruhat_leq(Element y, Element x) const;

  std::vector<Element> parabolic_elements(GeneratorSet I) const;
  Element longest_element(GeneratorSet I) const;
  Element longest_element() const { return longest_element(GeneratorSet::all(rank_)); }
  Element coset_max_rep(GeneratorSet I, Element a) const;
  Element coset_min_rep(GeneratorSet I, Element a) const;
  /// Right cosets a*W_I ordered by their maximal representative.
  std::vector<Coset> cosets(GeneratorSet I) const;

  /// Generator names joined without separator; the identity is "e".
  std::string format(Element a) const;
  /// Parses a word in generator names (not necessarily reduced) and returns
  /// the product. "e" and "" denote the identity. Throws ParseError when the
  /// word has no parse or more than one.
  Element parse(std::string_view word) const;
  /// The letters of the unique parse of `word`, empty for "e".
  std::vector<Generator> parse_letters(std::string_view word) const;
  Generator parse_generator(std::string_view name) const;
  GeneratorSet parse_generators(const std::vector<std::string>& names) const;

 private:
  void enumerate(std::size_t element_bound);

  int rank_;
  std::vector<std::vector<int>> matrix_;
  std::vector<std::string> names_;
  std::string fingerprint_;
  std::size_t positive_roots_ = 0;

  std::vector<std::uint32_t> left_;   // [id * rank + s] -> id of s*a
  std::vector<std::uint32_t> right_;  // [id * rank + s] -> id of a*s
  std::vector<std::uint32_t> inverse_;
  std::vector<int> length_;
};

/// Sum over z in W_I of v^(l(w_I) - 2 l(z)).
LaurentPoly balanced_poincare(const CoxeterSystem& W, GeneratorSet I);

}  // namespace kazhdan
