#include "kazhdan/lefschetz.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace kazhdan {

LefschetzReport local_lefschetz_poly(KLCache& cache, Element y, Element x) {
  const auto& W = cache.system();
  LefschetzReport r;
  r.y = y;
  r.x = x;
  r.d = W.length(x) - W.length(y);
  if (y == x || !W.bruhat_leq(y, x)) return r;

  const LaurentPoly P = kl_polynomial(cache, y, x);
  const LaurentPoly dual = bar(P).shifted(r.d);
  static const LaurentPoly one_minus_q{{0, 1}, {1, -1}};
  r.poly = div_exact(P - dual, one_minus_q);
  r.palindromic = is_palindromic(r.poly, HalfInteger::halves(r.d - 1));
  r.unimodal = is_unimodal_nonneg(r.poly);
  r.nonneg = is_nonnegative(r.poly);
  return r;
}

LaurentPoly ih_poincare(KLCache& cache, Element x) {
  const auto& W = cache.system();
  LaurentPoly out;
  for (const auto& [y, h] : kl_element(cache, x).terms())
    out.add_scaled(kl_polynomial_from_h(h, W.length(x) - W.length(y)), 1, W.length(y));
  return out;
}

bool LefschetzAudit::passed() const {
  return std::all_of(pairs.begin(), pairs.end(), [](const auto& r) { return r.passed(); }) &&
         std::all_of(global.begin(), global.end(), [](const auto& r) { return r.palindromic; });
}

LefschetzAudit lefschetz_audit(KLCache& cache) {
  const auto& W = cache.system();
  LefschetzAudit audit;
  for (Element x : W.all_elements()) {
    // The support of C_x is exactly the Bruhat interval below x.
    for (const auto& [y, h] : kl_element(cache, x).terms()) audit.pairs.push_back(local_lefschetz_poly(cache, y, x));
    IhReport g;
    g.x = x;
    g.poly = ih_poincare(cache, x);
    g.palindromic = is_palindromic(g.poly, HalfInteger::halves(W.length(x)));
    audit.global.push_back(std::move(g));
  }
  return audit;
}

nlohmann::json to_json(const CoxeterSystem& W, const LefschetzReport& r) {
  nlohmann::json j;
  j["y"] = W.format(r.y);
  j["x"] = W.format(r.x);
  j["d"] = r.d;
  j["poly"] = to_json(r.poly);
  j["palindromic"] = r.palindromic;
  j["unimodal"] = r.unimodal;
  j["nonneg"] = r.nonneg;
  return j;
}

nlohmann::json to_json(const CoxeterSystem& W, const IhReport& r) {
  nlohmann::json j;
  j["x"] = W.format(r.x);
  j["ih"] = to_json(r.poly);
  j["palindromic"] = r.palindromic;
  return j;
}

std::string to_json_lines(const CoxeterSystem& W, const LefschetzAudit& audit) {
  std::string out;
  for (const auto& r : audit.pairs) out += to_json(W, r).dump() + "\n";
  for (const auto& g : audit.global) out += to_json(W, g).dump() + "\n";
  return out;
}

}  // namespace kazhdan
