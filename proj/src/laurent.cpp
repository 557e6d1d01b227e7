#include "kazhdan/laurent.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "kazhdan/error.hpp"

namespace kazhdan {

namespace checked {

Coeff add(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_add_overflow(a, b, &r)) throw CoefficientOverflow("coefficient overflow in addition");
  return r;
}

Coeff mul(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_mul_overflow(a, b, &r)) throw CoefficientOverflow("coefficient overflow in multiplication");
  return r;
}

}  // namespace checked

namespace {

Exponent shift_exponent(Exponent e, Exponent k) {
  Exponent r;
  if (__builtin_add_overflow(e, k, &r)) throw CoefficientOverflow("exponent overflow");
  return r;
}

// Sorts by exponent, merges duplicates and drops zeros.
void normalize(std::vector<LaurentPoly::Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    Exponent e = terms[i].first;
    Coeff c = 0;
    for (; i < terms.size() && terms[i].first == e; ++i) c = checked::add(c, terms[i].second);
    if (c != 0) terms[out++] = {e, c};
  }
  terms.resize(out);
}

}  // namespace

LaurentPoly::LaurentPoly(Coeff c) {
  if (c != 0) terms_.emplace_back(0, c);
}

LaurentPoly::LaurentPoly(std::initializer_list<Term> terms) : terms_(terms) { normalize(terms_); }

LaurentPoly::LaurentPoly(std::vector<Term> terms) : terms_(std::move(terms)) { normalize(terms_); }

LaurentPoly LaurentPoly::monomial(Coeff c, Exponent e) {
  LaurentPoly p;
  if (c != 0) p.terms_.emplace_back(e, c);
  return p;
}

Coeff LaurentPoly::coeff(Exponent e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, Exponent x) { return t.first < x; });
  return (it != terms_.end() && it->first == e) ? it->second : 0;
}

LaurentPoly& LaurentPoly::add_scaled(const LaurentPoly& other, Coeff c, Exponent shift) {
  if (c == 0 || other.is_zero()) return *this;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end()) {
      merged.push_back(*a++);
      continue;
    }
    Exponent eb = shift_exponent(b->first, shift);
    if (a == terms_.end() || eb < a->first) {
      merged.emplace_back(eb, checked::mul(c, b->second));
      ++b;
    } else if (a->first < eb) {
      merged.push_back(*a++);
    } else {
      Coeff sum = checked::add(a->second, checked::mul(c, b->second));
      if (sum != 0) merged.emplace_back(eb, sum);
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) { return add_scaled(other, 1); }

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) { return add_scaled(other, -1); }

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& other) {
  *this = *this * other;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::map<Exponent, Coeff> acc;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Coeff& slot = acc[shift_exponent(ea, eb)];
      slot = checked::add(slot, checked::mul(ca, cb));
    }
  }
  LaurentPoly r;
  for (const auto& [e, c] : acc)
    if (c != 0) r.terms_.emplace_back(e, c);
  return r;
}

LaurentPoly LaurentPoly::operator-() const { return scaled(-1); }

LaurentPoly LaurentPoly::shifted(Exponent k) const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.first = shift_exponent(t.first, k);
  return r;
}

LaurentPoly LaurentPoly::scaled(Coeff c) const {
  if (c == 0) return {};
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.second = checked::mul(t.second, c);
  return r;
}

LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b) { return a + b; }

LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b) { return a * b; }

LaurentPoly bar(const LaurentPoly& a) {
  std::vector<LaurentPoly::Term> terms;
  terms.reserve(a.size());
  for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) terms.emplace_back(-it->first, it->second);
  return LaurentPoly(std::move(terms));
}

Coeff eval_at_one(const LaurentPoly& a) {
  Coeff s = 0;
  for (const auto& t : a.terms()) s = checked::add(s, t.second);
  return s;
}

LaurentPoly div_exact(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("div_exact: division by zero polynomial");
  if (a.is_zero()) return {};

  // Shift both to ordinary polynomials with nonzero constant term, then do
  // long division from the top degree down.
  const Exponent a_low = a.low_degree();
  const Exponent b_low = b.low_degree();
  const std::size_t b_deg = static_cast<std::size_t>(b.high_degree() - b_low);
  std::vector<Coeff> rem(static_cast<std::size_t>(a.high_degree() - a_low) + 1, 0);
  for (const auto& [e, c] : a.terms()) rem[static_cast<std::size_t>(e - a_low)] = c;
  std::vector<Coeff> den(b_deg + 1, 0);
  for (const auto& [e, c] : b.terms()) den[static_cast<std::size_t>(e - b_low)] = c;

  if (rem.size() < den.size()) throw InexactDivision("div_exact: divisor has larger degree span than dividend");
  std::vector<LaurentPoly::Term> quot;
  const Coeff lead = den.back();
  for (std::size_t top = rem.size(); top-- > b_deg;) {
    Coeff c = rem[top];
    if (c == 0) continue;
    if (c % lead != 0) throw InexactDivision("div_exact: leading coefficient does not divide");
    Coeff q = c / lead;
    std::size_t shift = top - b_deg;
    quot.emplace_back(static_cast<Exponent>(shift) + a_low - b_low, q);
    for (std::size_t k = 0; k <= b_deg; ++k)
      rem[shift + k] = checked::add(rem[shift + k], checked::mul(-q, den[k]));
  }
  for (std::size_t k = 0; k < b_deg && k < rem.size(); ++k)
    if (rem[k] != 0) throw InexactDivision("div_exact: nonzero remainder");
  return LaurentPoly(std::move(quot));
}

bool is_palindromic(const LaurentPoly& a, HalfInteger center) {
  for (const auto& [e, c] : a.terms())
    if (a.coeff(center.twice - e) != c) return false;
  return true;
}

bool is_nonnegative(const LaurentPoly& a) {
  return std::all_of(a.terms().begin(), a.terms().end(), [](const auto& t) { return t.second > 0; });
}

bool is_unimodal_nonneg(const LaurentPoly& a) {
  if (!is_nonnegative(a)) return false;
  if (a.is_zero()) return true;
  bool falling = false;
  Coeff prev = 0;
  for (Exponent e = a.low_degree(); e <= a.high_degree(); ++e) {
    Coeff c = a.coeff(e);
    if (e != a.low_degree()) {
      if (c < prev) falling = true;
      else if (c > prev && falling) return false;
    }
    prev = c;
  }
  return true;
}

std::string to_string(const LaurentPoly& a, char var) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : a.terms()) {
    Coeff mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (e == 0) {
      out += std::to_string(mag);
      continue;
    }
    if (mag != 1) out += std::to_string(mag);
    out += var;
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

nlohmann::json to_json(const LaurentPoly& a) {
  auto j = nlohmann::json::array();
  for (const auto& [e, c] : a.terms()) j.push_back({e, c});
  return j;
}

LaurentPoly laurent_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("Laurent polynomial must be a JSON array of [exponent, coefficient] pairs");
  std::vector<LaurentPoly::Term> terms;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer() || !t[1].is_number_integer())
      throw ParseError("malformed [exponent, coefficient] pair");
    terms.emplace_back(t[0].get<Exponent>(), t[1].get<Coeff>());
  }
  return LaurentPoly(std::move(terms));
}

}  // namespace kazhdan
