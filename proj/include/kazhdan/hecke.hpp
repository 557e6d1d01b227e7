#pragma once

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <shared_mutex>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "kazhdan/coxeter.hpp"
#include "kazhdan/laurent.hpp"

namespace kazhdan {

/// A finite sum of standard basis elements H_y with Laurent coefficients in v.
///
/// Hecke algebra conventions are the v-normalized ones throughout:
///   H_s^2 = H_e + (v^-1 - v) H_s,   C_s = H_s + v H_e,
/// where C_x denotes the Kazhdan-Lusztig basis element (underlined H_x).
class HeckeElt {
 public:
  using Terms = std::map<Element, LaurentPoly>;

  HeckeElt() = default;
  explicit HeckeElt(Terms terms);
  /// The standard basis element H_y.
  static HeckeElt standard(Element y);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  LaurentPoly coeff(Element y) const;

  /// Adds c * p * H_y.
  void add_term(Element y, const LaurentPoly& p, Coeff c = 1, Exponent shift = 0);

  HeckeElt& operator+=(const HeckeElt& other);
  HeckeElt& operator-=(const HeckeElt& other);
  friend HeckeElt operator+(HeckeElt a, const HeckeElt& b) { return a += b; }
  friend HeckeElt operator-(HeckeElt a, const HeckeElt& b) { return a -= b; }
  /// Scalar multiplication by a Laurent polynomial.
  friend HeckeElt operator*(const LaurentPoly& p, const HeckeElt& a);
  friend bool operator==(const HeckeElt&, const HeckeElt&) = default;

 private:
  Terms terms_;
};

/// a * H_s (Side::Right) or H_s * a (Side::Left).
HeckeElt mul_by_gen(const CoxeterSystem& W, const HeckeElt& a, Generator s, Side side);

/// The ring involution v -> v^-1, H_x -> (H_{x^-1})^-1.
HeckeElt bar_involution(const CoxeterSystem& W, const HeckeElt& a);

/// Product in the Hecke algebra.
HeckeElt product(const CoxeterSystem& W, const HeckeElt& a, const HeckeElt& b);

/// Memo table of Kazhdan-Lusztig basis elements for one Coxeter system.
///
/// Entries are computed on demand and never change once stored. Concurrent
/// readers see only complete entries; two threads racing on the same element
/// may both compute it, and the first stored copy wins (both are equal).
///
/// Entries can be written to and read from a JSON file tagged with the
/// system's fingerprint. A file for another system or schema is ignored.
class KLCache {
 public:
  explicit KLCache(std::shared_ptr<const CoxeterSystem> W, bool validate = false);

  const CoxeterSystem& system() const { return *W_; }
  std::shared_ptr<const CoxeterSystem> system_ptr() const { return W_; }

  /// When set, each computed entry is checked for unitriangularity,
  /// support in the Bruhat interval and bar invariance before it is stored.
  bool validating() const { return validate_; }

  /// Stored entry for x, or nullptr.
  std::shared_ptr<const HeckeElt> find(Element x) const;
  /// Stores `value` as C_x unless an entry already exists; returns the
  /// stored entry. Runs the validation checks when enabled.
  std::shared_ptr<const HeckeElt> store(Element x, HeckeElt value);

  /// Entries computed by this process (not loaded from disk).
  std::size_t computed_count() const { return computed_.load(); }
  std::size_t size() const;

  enum class LoadStatus { Loaded, Missing, Mismatch, Malformed };

  /// {"schema": 1, "coxeter_hash": ..., "kl": {x: {y: [[exp, coeff], ...]}}},
  /// elements keyed by ShortLex words.
  nlohmann::json to_json() const;
  /// Replaces nothing that is already stored. A mismatched or malformed
  /// document leaves the cache untouched.
  LoadStatus load_json(const nlohmann::json& doc);

  void save(const std::filesystem::path& path) const;
  LoadStatus load(const std::filesystem::path& path);

 private:
  void check_entry(Element x, const HeckeElt& value) const;

  std::shared_ptr<const CoxeterSystem> W_;
  bool validate_;
  mutable std::shared_mutex mutex_;
  std::vector<std::shared_ptr<const HeckeElt>> entries_;
  std::atomic<std::size_t> computed_{0};
};

/// The Kazhdan-Lusztig basis element C_x = H_x + sum_{y<x} h_{y,x} H_y.
///
/// Computed from C_s * C_{sx} for the smallest left descent s of x, minus
/// the mu-corrections mu(z, sx) C_z over z < sx with sz < z.
const HeckeElt& kl_element(KLCache& cache, Element x);

/// Computes every C_x of the system.
void fill_kl_table(KLCache& cache);

/// h_{y,x}(v): the coefficient of H_y in C_x; zero unless y <= x.
LaurentPoly h_poly(KLCache& cache, Element y, Element x);

/// P_{y,x}(q) from h_{y,x}(v) = v^(l(x)-l(y)) P_{y,x}(v^-2).
LaurentPoly kl_polynomial(KLCache& cache, Element y, Element x);
/// The same conversion for a given h-polynomial and length difference.
/// Throws MalformedKL if the result is not a polynomial in q.
LaurentPoly kl_polynomial_from_h(const LaurentPoly& h, int length_difference);

/// Coefficient of v in h_{y,x}.
Coeff mu(KLCache& cache, Element y, Element x);

/// Coefficients c_x with a = sum_x c_x C_x.
std::map<Element, LaurentPoly> to_kl_basis(KLCache& cache, const HeckeElt& a);

/// KL-basis decomposition of C_{s_1} C_{s_2} ... C_{s_k}.
std::map<Element, LaurentPoly> bott_samelson(KLCache& cache, const std::vector<Generator>& word);

}  // namespace kazhdan
