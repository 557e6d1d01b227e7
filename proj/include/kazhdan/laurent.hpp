#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace kazhdan {

using Coeff = std::int64_t;
using Exponent = int;

/// Sparse integer Laurent polynomial in one variable.
///
/// Terms are kept sorted by exponent with no zero coefficients, so two
/// polynomials are equal iff their term lists are equal. The same type is
/// used for the Hecke variable v and the KL variable q; which one a value
/// means is fixed by the function that produced it.
///
/// All coefficient arithmetic is overflow checked and throws
/// CoefficientOverflow instead of wrapping.
class LaurentPoly {
 public:
  using Term = std::pair<Exponent, Coeff>;

  LaurentPoly() = default;
  /// Constant polynomial.
  explicit LaurentPoly(Coeff c);
  /// Normalizes arbitrary (exponent, coefficient) pairs; repeated exponents
  /// are summed.
  LaurentPoly(std::initializer_list<Term> terms);
  explicit LaurentPoly(std::vector<Term> terms);

  static LaurentPoly monomial(Coeff c, Exponent e);
  static LaurentPoly one() { return LaurentPoly(1); }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Coeff coeff(Exponent e) const;
  /// Lowest and highest exponents; only meaningful for nonzero polynomials.
  Exponent low_degree() const { return terms_.front().first; }
  Exponent high_degree() const { return terms_.back().first; }

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(const LaurentPoly& other);
  /// Adds c * v^shift * other without building the temporary.
  LaurentPoly& add_scaled(const LaurentPoly& other, Coeff c, Exponent shift = 0);

  LaurentPoly operator-() const;
  /// Multiplication by v^k.
  LaurentPoly shifted(Exponent k) const;
  LaurentPoly scaled(Coeff c) const;

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

 private:
  std::vector<Term> terms_;
};

LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b);

/// The substitution v -> v^-1.
LaurentPoly bar(const LaurentPoly& a);

/// Sum of all coefficients.
Coeff eval_at_one(const LaurentPoly& a);

/// Exact quotient a / b. Throws InexactDivision if b does not divide a and
/// std::invalid_argument if b is zero.
LaurentPoly div_exact(const LaurentPoly& a, const LaurentPoly& b);

/// An integer or half-integer, stored doubled.
struct HalfInteger {
  int twice = 0;
  static constexpr HalfInteger whole(int n) { return {2 * n}; }
  static constexpr HalfInteger halves(int n) { return {n}; }
  friend bool operator==(HalfInteger, HalfInteger) = default;
};

/// Coefficient of v^(c+j) equals that of v^(c-j) for every j.
bool is_palindromic(const LaurentPoly& a, HalfInteger center);

/// All coefficients nonnegative, and the coefficient sequence between the
/// lowest and highest nonzero degree (internal zeros included) rises weakly
/// and then falls weakly.
bool is_unimodal_nonneg(const LaurentPoly& a);

bool is_nonnegative(const LaurentPoly& a);

/// Human readable form in ascending exponent order, e.g. "1 + 2q - q^3" or
/// "v^-1 + v".
std::string to_string(const LaurentPoly& a, char var = 'v');

/// JSON array of [exponent, coefficient] pairs sorted by exponent.
nlohmann::json to_json(const LaurentPoly& a);
LaurentPoly laurent_from_json(const nlohmann::json& j);

namespace checked {
Coeff add(Coeff a, Coeff b);
Coeff mul(Coeff a, Coeff b);
}  // namespace checked

}  // namespace kazhdan
