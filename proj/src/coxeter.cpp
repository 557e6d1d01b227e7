#include "kazhdan/coxeter.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "kazhdan/error.hpp"
#include "root_system.hpp"

namespace kazhdan {

std::vector<Generator> GeneratorSet::members() const {
  std::vector<Generator> out;
  for (Generator s = 0; s < 64; ++s)
    if (contains(s)) out.push_back(s);
  return out;
}

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint32_t>& key) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto k : key) h = (h ^ k) * 1099511628211ULL;
    return h;
  }
};

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) h = (h ^ c) * 1099511628211ULL;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void validate_matrix(const std::vector<std::vector<int>>& m, const std::vector<std::string>& names) {
  const std::size_t n = m.size();
  if (n == 0) throw InvalidCoxeterSystem("Coxeter matrix must have positive rank");
  if (n > 64) throw InvalidCoxeterSystem("rank above 64 is not supported");
  if (names.size() != n) throw InvalidCoxeterSystem("expected one generator name per row of the Coxeter matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw InvalidCoxeterSystem("Coxeter matrix must be square");
    if (m[i][i] != 1) throw InvalidCoxeterSystem("Coxeter matrix diagonal must be 1");
    for (std::size_t j = 0; j < n; ++j) {
      if (m[i][j] != m[j][i]) throw InvalidCoxeterSystem("Coxeter matrix must be symmetric");
      if (i != j && (m[i][j] < 2 || m[i][j] > 6))
        throw InvalidCoxeterSystem("off-diagonal Coxeter matrix entries must lie in {2,...,6} (infinite entries are rejected)");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& name = names[i];
    if (name.empty() || name == "e") throw InvalidCoxeterSystem("invalid generator name '" + name + "'");
    for (char c : name)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
        throw InvalidCoxeterSystem("generator name '" + name + "' must be alphanumeric");
    for (std::size_t j = 0; j < i; ++j)
      if (names[j] == name) throw InvalidCoxeterSystem("duplicate generator name '" + name + "'");
  }
}

}  // namespace

CoxeterSystem::CoxeterSystem(std::vector<std::vector<int>> matrix, std::vector<std::string> names,
                             std::size_t element_bound)
    : rank_(static_cast<int>(matrix.size())), matrix_(std::move(matrix)), names_(std::move(names)) {
  validate_matrix(matrix_, names_);
  if (!detail::cosine_form_positive_definite(matrix_))
    throw InvalidCoxeterSystem("Coxeter matrix defines an infinite group");

  std::string text = std::to_string(rank_) + ";";
  for (const auto& row : matrix_)
    for (int v : row) text += std::to_string(v) + ",";
  for (const auto& nm : names_) text += nm + ";";
  fingerprint_ = fnv1a_hex(text);

  enumerate(element_bound);
}

void CoxeterSystem::enumerate(std::size_t element_bound) {
  const auto roots = detail::build_root_action(matrix_, element_bound);
  positive_roots_ = roots.positive_count;
  const std::size_t n = static_cast<std::size_t>(rank_);

  // An element w is keyed by the images w(alpha_1), ..., w(alpha_n); left
  // multiplication by s is then a lookup in the root permutation of s.
  std::vector<std::uint32_t> keys;
  std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, KeyHash> index;
  std::vector<std::uint32_t> left;
  std::vector<int> level;

  std::vector<std::uint32_t> key(n);
  for (std::size_t i = 0; i < n; ++i) key[i] = static_cast<std::uint32_t>(i);
  index.emplace(key, 0);
  keys.insert(keys.end(), key.begin(), key.end());
  level.push_back(0);

  for (std::size_t cur = 0; cur < level.size(); ++cur) {
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t i = 0; i < n; ++i) key[i] = roots.perm[s][keys[cur * n + i]];
      auto [it, inserted] = index.emplace(key, static_cast<std::uint32_t>(level.size()));
      if (inserted) {
        if (level.size() >= element_bound)
          throw InvalidCoxeterSystem("group enumeration exceeded the bound of " + std::to_string(element_bound) + " elements");
        keys.insert(keys.end(), key.begin(), key.end());
        level.push_back(level[cur] + 1);
      }
      left.push_back(it->second);
    }
  }
  index.clear();
  keys.clear();
  keys.shrink_to_fit();

  // Renumber into (length, ShortLex) order. The ShortLex word of u starts
  // with its smallest left descent s, followed by the word of s*u; so within
  // a level u sorts by (s, position of s*u in the previous level).
  const std::size_t total = level.size();
  std::vector<std::uint32_t> new_id(total, 0);
  std::vector<std::uint32_t> order;
  order.reserve(total);
  std::vector<std::pair<std::uint64_t, std::uint32_t>> bucket;
  std::size_t start = 0;
  while (start < total) {
    std::size_t stop = start;
    while (stop < total && level[stop] == level[start]) ++stop;
    bucket.clear();
    for (std::size_t u = start; u < stop; ++u) {
      std::uint64_t sortkey = 0;
      if (level[u] > 0) {
        for (std::size_t s = 0; s < n; ++s) {
          std::uint32_t p = left[u * n + s];
          if (level[p] < level[u]) {
            sortkey = (static_cast<std::uint64_t>(s) << 32) | new_id[p];
            break;
          }
        }
      }
      bucket.emplace_back(sortkey, static_cast<std::uint32_t>(u));
    }
    std::sort(bucket.begin(), bucket.end());
    for (const auto& [k, u] : bucket) {
      new_id[u] = static_cast<std::uint32_t>(order.size());
      order.push_back(u);
    }
    start = stop;
  }

  left_.assign(total * n, 0);
  length_.assign(total, 0);
  for (std::size_t nu = 0; nu < total; ++nu) {
    std::uint32_t u = order[nu];
    length_[nu] = level[u];
    for (std::size_t s = 0; s < n; ++s) left_[nu * n + s] = new_id[left[u * n + s]];
  }

  // w^-1 = s_k ... s_1 for w = s_1 ... s_k; a*s = (s * a^-1)^-1.
  inverse_.assign(total, 0);
  for (std::size_t a = 0; a < total; ++a) {
    std::uint32_t inv = 0;
    for (Generator s : word(Element{static_cast<std::uint32_t>(a)})) inv = left_[inv * n + static_cast<std::size_t>(s)];
    inverse_[a] = inv;
  }
  right_.assign(total * n, 0);
  for (std::size_t a = 0; a < total; ++a)
    for (std::size_t s = 0; s < n; ++s) right_[a * n + s] = inverse_[left_[inverse_[a] * n + s]];
}

std::vector<std::string> CoxeterSystem::default_names(int rank) {
  if (rank == 1) return {"s"};
  if (rank == 2) return {"s", "t"};
  std::vector<std::string> names;
  for (int i = 1; i <= rank; ++i) names.push_back("s" + std::to_string(i));
  return names;
}

CoxeterSystem CoxeterSystem::from_type(std::string_view code) {
  if (code.size() < 2) throw InvalidCoxeterSystem("unknown Coxeter type '" + std::string(code) + "'");
  const char family = static_cast<char>(std::toupper(static_cast<unsigned char>(code[0])));
  int n = 0;
  auto digits = code.substr(1);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || n < 1)
    throw InvalidCoxeterSystem("unknown Coxeter type '" + std::string(code) + "'");

  std::vector<std::vector<int>> m(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 2));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  auto edge = [&](int i, int j, int label) { m[i][j] = m[j][i] = label; };

  switch (family) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) edge(i, i + 1, 3);
      break;
    case 'B':
      if (n < 2) throw InvalidCoxeterSystem("type B needs rank >= 2");
      for (int i = 0; i + 2 < n; ++i) edge(i, i + 1, 3);
      edge(n - 2, n - 1, 4);
      break;
    case 'D':
      if (n < 4) throw InvalidCoxeterSystem("type D needs rank >= 4");
      for (int i = 0; i + 2 < n; ++i) edge(i, i + 1, 3);
      edge(n - 3, n - 1, 3);
      break;
    case 'G':
      if (n != 2) throw InvalidCoxeterSystem("type G exists only in rank 2");
      edge(0, 1, 6);
      break;
    case 'F':
      if (n != 4) throw InvalidCoxeterSystem("type F exists only in rank 4");
      edge(0, 1, 3);
      edge(1, 2, 4);
      edge(2, 3, 3);
      break;
    case 'H':
      if (n != 3) throw InvalidCoxeterSystem("only H3 is built in");
      edge(0, 1, 5);
      edge(1, 2, 3);
      break;
    default:
      throw InvalidCoxeterSystem("unknown Coxeter type '" + std::string(code) + "'");
  }
  return CoxeterSystem(std::move(m), default_names(n));
}

CoxeterSystem CoxeterSystem::from_json(const nlohmann::json& j) {
  try {
    auto matrix = j.at("matrix").get<std::vector<std::vector<int>>>();
    if (j.contains("rank") && j.at("rank").get<std::size_t>() != matrix.size())
      throw InvalidCoxeterSystem("\"rank\" does not match the matrix size");
    auto names = j.contains("names") ? j.at("names").get<std::vector<std::string>>()
                                     : default_names(static_cast<int>(matrix.size()));
    return CoxeterSystem(std::move(matrix), std::move(names));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidCoxeterSystem(std::string("malformed Coxeter matrix JSON: ") + e.what());
  }
}

Element CoxeterSystem::element(std::size_t index) const {
  if (index >= size()) throw std::out_of_range("element index out of range");
  return Element{static_cast<std::uint32_t>(index)};
}

std::vector<Element> CoxeterSystem::all_elements() const {
  std::vector<Element> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = Element{static_cast<std::uint32_t>(i)};
  return out;
}

std::vector<Generator> CoxeterSystem::word(Element a) const {
  std::vector<Generator> w;
  w.reserve(static_cast<std::size_t>(length(a)));
  while (a.id != 0) {
    for (Generator s = 0; s < rank_; ++s) {
      Element b = left_multiply(s, a);
      if (length(b) < length(a)) {
        w.push_back(s);
        a = b;
        break;
      }
    }
  }
  return w;
}

Element CoxeterSystem::from_word(const std::vector<Generator>& w) const {
  Element a = identity();
  for (Generator s : w) {
    if (s < 0 || s >= rank_) throw std::out_of_range("generator index out of range");
    a = right_multiply(a, s);
  }
  return a;
}

Element CoxeterSystem::multiply(Element a, Element b) const {
  for (Generator s : word(b)) a = right_multiply(a, s);
  return a;
}

bool CoxeterSystem::is_descent(Element a, Generator s, Side side) const {
  Element b = side == Side::Left ? left_multiply(s, a) : right_multiply(a, s);
  return length(b) < length(a);
}

GeneratorSet CoxeterSystem::descents(Element a, Side side) const {
  GeneratorSet d;
  for (Generator s = 0; s < rank_; ++s)
    if (is_descent(a, s, side)) d.insert(s);
  return d;
}

bool CoxeterSystem::bruhat_leq(Element y, Element x) const {
  // For s with sx < x:  y <= x  iff  (sy < y ? sy <= sx : y <= sx).
  while (true) {
    if (y == x) return true;
    if (length(y) >= length(x)) return false;
    if (y.id == 0) return true;
    Generator s = 0;
    while (!is_descent(x, s, Side::Left)) ++s;
    x = left_multiply(s, x);
    if (is_descent(y, s, Side::Left)) y = left_multiply(s, y);
  }
}

std::vector<Element> CoxeterSystem::parabolic_elements(GeneratorSet I) const {
  std::vector<Element> out{identity()};
  std::vector<bool> seen(size(), false);
  seen[0] = true;
  for (std::size_t cur = 0; cur < out.size(); ++cur) {
    for (Generator s : I.members()) {
      Element b = right_multiply(out[cur], s);
      if (!seen[b.id]) {
        seen[b.id] = true;
        out.push_back(b);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Element CoxeterSystem::coset_max_rep(GeneratorSet I, Element a) const {
  for (bool grew = true; grew;) {
    grew = false;
    for (Generator s : I.members()) {
      if (!is_descent(a, s, Side::Right)) {
        a = right_multiply(a, s);
        grew = true;
      }
    }
  }
  return a;
}

Element CoxeterSystem::coset_min_rep(GeneratorSet I, Element a) const {
  for (bool shrank = true; shrank;) {
    shrank = false;
    for (Generator s : I.members()) {
      if (is_descent(a, s, Side::Right)) {
        a = right_multiply(a, s);
        shrank = true;
      }
    }
  }
  return a;
}

Element CoxeterSystem::longest_element(GeneratorSet I) const { return coset_max_rep(I, identity()); }

std::vector<Coset> CoxeterSystem::cosets(GeneratorSet I) const {
  std::vector<Coset> out;
  std::vector<std::int64_t> slot(size(), -1);
  for (Element a : all_elements()) {
    Element top = coset_max_rep(I, a);
    if (slot[top.id] < 0) {
      slot[top.id] = static_cast<std::int64_t>(out.size());
      out.push_back(Coset{a, top, {}});  // first member in id order is the minimum
    }
    out[static_cast<std::size_t>(slot[top.id])].members.push_back(a);
  }
  std::sort(out.begin(), out.end(), [](const Coset& p, const Coset& q) { return p.max_rep < q.max_rep; });
  return out;
}

std::string CoxeterSystem::format(Element a) const {
  if (a.id == 0) return "e";
  std::string out;
  for (Generator s : word(a)) out += names_[static_cast<std::size_t>(s)];
  return out;
}

Generator CoxeterSystem::parse_generator(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<Generator>(i);
  throw ParseError("unknown generator '" + std::string(name) + "'");
}

GeneratorSet CoxeterSystem::parse_generators(const std::vector<std::string>& names) const {
  GeneratorSet out;
  for (const auto& nm : names) out.insert(parse_generator(nm));
  return out;
}

Element CoxeterSystem::parse(std::string_view text) const { return from_word(parse_letters(text)); }

std::vector<Generator> CoxeterSystem::parse_letters(std::string_view text) const {
  if (text.empty() || text == "e") return {};
  // parses[i] counts (capped at 2) the ways to split text[i..] into names.
  const std::size_t len = text.size();
  std::vector<int> parses(len + 1, 0);
  std::vector<Generator> first(len + 1, -1);
  parses[len] = 1;
  for (std::size_t i = len; i-- > 0;) {
    for (std::size_t g = 0; g < names_.size(); ++g) {
      const auto& nm = names_[g];
      if (text.substr(i, nm.size()) == nm && parses[i + nm.size()] > 0) {
        parses[i] = std::min(2, parses[i] + parses[i + nm.size()]);
        first[i] = static_cast<Generator>(g);
      }
    }
  }
  if (parses[0] == 0) throw ParseError("cannot parse '" + std::string(text) + "' as a word in the generators");
  if (parses[0] > 1) throw ParseError("word '" + std::string(text) + "' is ambiguous in the generator names");
  std::vector<Generator> w;
  for (std::size_t i = 0; i < len;) {
    Generator g = first[i];
    w.push_back(g);
    i += names_[static_cast<std::size_t>(g)].size();
  }
  return w;
}

LaurentPoly balanced_poincare(const CoxeterSystem& W, GeneratorSet I) {
  const int top = W.length(W.longest_element(I));
  std::vector<LaurentPoly::Term> terms;
  for (Element z : W.parabolic_elements(I)) terms.emplace_back(top - 2 * W.length(z), 1);
  return LaurentPoly(std::move(terms));
}

}  // namespace kazhdan
