#include "kazhdan/hecke.hpp"

#include <mutex>
#include <unordered_map>

#include "kazhdan/error.hpp"

namespace kazhdan {

namespace {

// v^-1 - v
const LaurentPoly& quadratic_term() {
  static const LaurentPoly p{{-1, 1}, {1, -1}};
  return p;
}

}  // namespace

HeckeElt::HeckeElt(Terms terms) {
  for (auto& [y, p] : terms)
    if (!p.is_zero()) terms_.emplace(y, std::move(p));
}

HeckeElt HeckeElt::standard(Element y) { return HeckeElt(Terms{{y, LaurentPoly::one()}}); }

LaurentPoly HeckeElt::coeff(Element y) const {
  auto it = terms_.find(y);
  return it == terms_.end() ? LaurentPoly{} : it->second;
}

void HeckeElt::add_term(Element y, const LaurentPoly& p, Coeff c, Exponent shift) {
  if (p.is_zero() || c == 0) return;
  auto [it, inserted] = terms_.try_emplace(y);
  it->second.add_scaled(p, c, shift);
  if (it->second.is_zero()) terms_.erase(it);
}

HeckeElt& HeckeElt::operator+=(const HeckeElt& other) {
  for (const auto& [y, p] : other.terms_) add_term(y, p);
  return *this;
}

HeckeElt& HeckeElt::operator-=(const HeckeElt& other) {
  for (const auto& [y, p] : other.terms_) add_term(y, p, -1);
  return *this;
}

HeckeElt operator*(const LaurentPoly& p, const HeckeElt& a) {
  HeckeElt out;
  if (p.is_zero()) return out;
  for (const auto& [y, c] : a.terms_) out.add_term(y, p * c);
  return out;
}

HeckeElt mul_by_gen(const CoxeterSystem& W, const HeckeElt& a, Generator s, Side side) {
  HeckeElt out;
  for (const auto& [y, c] : a.terms()) {
    Element ys = side == Side::Right ? W.right_multiply(y, s) : W.left_multiply(s, y);
    out.add_term(ys, c);
    if (W.length(ys) < W.length(y)) out.add_term(y, c * quadratic_term());
  }
  return out;
}

HeckeElt bar_involution(const CoxeterSystem& W, const HeckeElt& a) {
  // bar(H_y) = bar(H_{y'}) * (H_s + v - v^-1) for y = y's with y' < y.
  std::unordered_map<std::uint32_t, HeckeElt> memo;
  memo.emplace(W.identity().id, HeckeElt::standard(W.identity()));
  const LaurentPoly correction{{1, 1}, {-1, -1}};
  auto bar_standard = [&](auto&& self, Element y) -> const HeckeElt& {
    if (auto it = memo.find(y.id); it != memo.end()) return it->second;
    auto word = W.word(y);
    Generator s = word.back();
    const HeckeElt& prev = self(self, W.right_multiply(y, s));
    HeckeElt value = mul_by_gen(W, prev, s, Side::Right) + correction * prev;
    return memo.emplace(y.id, std::move(value)).first->second;
  };

  HeckeElt out;
  for (const auto& [y, c] : a.terms()) out += bar(c) * bar_standard(bar_standard, y);
  return out;
}

HeckeElt product(const CoxeterSystem& W, const HeckeElt& a, const HeckeElt& b) {
  HeckeElt out;
  for (const auto& [y, c] : b.terms()) {
    HeckeElt t = a;
    for (Generator s : W.word(y)) t = mul_by_gen(W, t, s, Side::Right);
    out += c * t;
  }
  return out;
}

// --- KLCache ---------------------------------------------------------------

KLCache::KLCache(std::shared_ptr<const CoxeterSystem> W, bool validate)
    : W_(std::move(W)), validate_(validate), entries_(W_->size()) {}

std::shared_ptr<const HeckeElt> KLCache::find(Element x) const {
  std::shared_lock lock(mutex_);
  return entries_.at(x.id);
}

std::size_t KLCache::size() const {
  std::shared_lock lock(mutex_);
  std::size_t n = 0;
  for (const auto& e : entries_) n += e != nullptr;
  return n;
}

std::shared_ptr<const HeckeElt> KLCache::store(Element x, HeckeElt value) {
  if (validate_) check_entry(x, value);
  auto ptr = std::make_shared<const HeckeElt>(std::move(value));
  std::unique_lock lock(mutex_);
  auto& slot = entries_.at(x.id);
  if (!slot) {
    slot = std::move(ptr);
    ++computed_;
  }
  return slot;
}

void KLCache::check_entry(Element x, const HeckeElt& value) const {
  const auto& W = *W_;
  const std::string name = W.format(x);
  if (value.coeff(x) != LaurentPoly::one()) throw MalformedKL("C_" + name + ": coefficient at H_x is not 1");
  for (const auto& [y, h] : value.terms()) {
    if (y == x) continue;
    if (!W.bruhat_leq(y, x)) throw MalformedKL("C_" + name + ": support outside the Bruhat interval");
    if (h.low_degree() < 1) throw MalformedKL("C_" + name + ": coefficient outside vZ[v]");
  }
  if (bar_involution(W, value) != value) throw MalformedKL("C_" + name + ": not bar invariant");
}

// --- KL basis --------------------------------------------------------------

namespace {

HeckeElt compute_kl_element(KLCache& cache, Element x);

const HeckeElt& ensure(KLCache& cache, Element x) {
  if (auto hit = cache.find(x)) return *hit;
  return *cache.store(x, compute_kl_element(cache, x));
}

HeckeElt compute_kl_element(KLCache& cache, Element x) {
  const auto& W = cache.system();
  if (x == W.identity()) return HeckeElt::standard(x);

  Generator s = 0;
  while (!W.is_descent(x, s, Side::Left)) ++s;
  const Element sx = W.left_multiply(s, x);
  const HeckeElt& prev = ensure(cache, sx);

  // C_s * C_{sx}: (H_s + v) H_y = H_{sy} + v H_y if sy > y, else H_{sy} + v^-1 H_y.
  HeckeElt out;
  for (const auto& [y, h] : prev.terms()) {
    Element sy = W.left_multiply(s, y);
    out.add_term(sy, h);
    out.add_term(y, h, 1, W.length(sy) > W.length(y) ? 1 : -1);
  }
  for (const auto& [z, h] : prev.terms()) {
    if (z == sx || !W.is_descent(z, s, Side::Left)) continue;
    Coeff m = h.coeff(1);
    if (m == 0) continue;
    for (const auto& [y, c] : ensure(cache, z).terms()) out.add_term(y, c, -m);
  }
  return out;
}

}  // namespace

const HeckeElt& kl_element(KLCache& cache, Element x) { return ensure(cache, x); }

void fill_kl_table(KLCache& cache) {
  for (Element x : cache.system().all_elements()) ensure(cache, x);
}

LaurentPoly h_poly(KLCache& cache, Element y, Element x) {
  const auto& W = cache.system();
  if (W.length(y) > W.length(x)) return {};
  return kl_element(cache, x).coeff(y);
}

LaurentPoly kl_polynomial_from_h(const LaurentPoly& h, int length_difference) {
  std::vector<LaurentPoly::Term> terms;
  for (const auto& [i, c] : h.terms()) {
    int twice = length_difference - i;
    if (twice < 0 || twice % 2 != 0) throw MalformedKL("h-polynomial " + to_string(h) + " has no KL polynomial for length difference " + std::to_string(length_difference));
    terms.emplace_back(twice / 2, c);
  }
  return LaurentPoly(std::move(terms));
}

LaurentPoly kl_polynomial(KLCache& cache, Element y, Element x) {
  const auto& W = cache.system();
  return kl_polynomial_from_h(h_poly(cache, y, x), W.length(x) - W.length(y));
}

Coeff mu(KLCache& cache, Element y, Element x) { return h_poly(cache, y, x).coeff(1); }

std::map<Element, LaurentPoly> to_kl_basis(KLCache& cache, const HeckeElt& a) {
  std::map<Element, LaurentPoly> out;
  HeckeElt rest = a;
  while (!rest.is_zero()) {
    // The largest id has maximal length, so H_x occurs in no other C_y left.
    auto top = std::prev(rest.terms().end());
    Element x = top->first;
    LaurentPoly c = top->second;
    out.emplace(x, c);
    rest -= c * kl_element(cache, x);
  }
  return out;
}

std::map<Element, LaurentPoly> bott_samelson(KLCache& cache, const std::vector<Generator>& word) {
  const auto& W = cache.system();
  HeckeElt acc = HeckeElt::standard(W.identity());
  for (Generator s : word) acc = product(W, acc, kl_element(cache, W.generator(s)));
  return to_kl_basis(cache, acc);
}

}  // namespace kazhdan
