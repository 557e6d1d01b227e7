#include "root_system.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <numbers>

#include "kazhdan/error.hpp"
#include "kazhdan/laurent.hpp"

namespace kazhdan::detail {

GoldenInt operator+(GoldenInt x, GoldenInt y) { return {checked::add(x.a, y.a), checked::add(x.b, y.b)}; }

GoldenInt operator-(GoldenInt x, GoldenInt y) {
  return {checked::add(x.a, checked::mul(-1, y.a)), checked::add(x.b, checked::mul(-1, y.b))};
}

GoldenInt operator*(GoldenInt x, GoldenInt y) {
  // (a + b phi)(c + d phi) = ac + bd + (ad + bc + bd) phi
  std::int64_t bd = checked::mul(x.b, y.b);
  return {checked::add(checked::mul(x.a, y.a), bd),
          checked::add(checked::add(checked::mul(x.a, y.b), checked::mul(x.b, y.a)), bd)};
}

int sign(GoldenInt x) {
  // a + b phi has the sign of (2a + b) + b sqrt5.
  std::int64_t c = checked::add(checked::mul(2, x.a), x.b);
  std::int64_t b = x.b;
  auto sgn = [](std::int64_t t) { return (t > 0) - (t < 0); };
  if (sgn(c) == sgn(b)) return sgn(c);
  if (b == 0) return sgn(c);
  if (c == 0) return sgn(b);
  // Opposite signs: compare c^2 with 5 b^2.
  __int128 c2 = static_cast<__int128>(c) * c;
  __int128 b2 = static_cast<__int128>(b) * b * 5;
  if (c2 == b2) return 0;
  return c2 > b2 ? sgn(c) : sgn(b);
}

namespace {

using Root = std::vector<GoldenInt>;

// A[i][j] such that s_i(alpha_j) = alpha_j - A[i][j] alpha_i. The product
// A[i][j] * A[j][i] equals 4 cos^2(pi / m). Finite Coxeter graphs are forests,
// so orienting the asymmetric entries by index is always symmetrizable.
std::vector<std::vector<GoldenInt>> cartan_matrix(const std::vector<std::vector<int>>& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<GoldenInt>> A(n, std::vector<GoldenInt>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        A[i][j] = {2, 0};
        continue;
      }
      const bool lower = i < j;
      switch (m[i][j]) {
        case 2: A[i][j] = {0, 0}; break;
        case 3: A[i][j] = {-1, 0}; break;
        case 4: A[i][j] = lower ? GoldenInt{-1, 0} : GoldenInt{-2, 0}; break;
        case 5: A[i][j] = {0, -1}; break;
        case 6: A[i][j] = lower ? GoldenInt{-1, 0} : GoldenInt{-3, 0}; break;
        default: throw InvalidCoxeterSystem("unsupported Coxeter matrix entry " + std::to_string(m[i][j]));
      }
    }
  }
  return A;
}

Root reflect(const std::vector<std::vector<GoldenInt>>& A, std::size_t i, const Root& beta) {
  GoldenInt pairing{};
  for (std::size_t j = 0; j < beta.size(); ++j) pairing = pairing + beta[j] * A[i][j];
  Root out = beta;
  out[i] = out[i] - pairing;
  return out;
}

bool is_positive(const Root& r) {
  for (const auto& c : r) {
    int s = sign(c);
    if (s != 0) return s > 0;
  }
  return false;
}

}  // namespace

bool cosine_form_positive_definite(const std::vector<std::vector<int>>& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<double>> B(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) B[i][j] = -std::cos(std::numbers::pi / m[i][j]);
  // Cholesky; finite groups keep every pivot well away from zero.
  for (std::size_t k = 0; k < n; ++k) {
    double d = B[k][k];
    for (std::size_t p = 0; p < k; ++p) d -= B[k][p] * B[k][p];
    if (d <= 1e-9) return false;
    d = std::sqrt(d);
    B[k][k] = d;
    for (std::size_t i = k + 1; i < n; ++i) {
      double s = B[i][k];
      for (std::size_t p = 0; p < k; ++p) s -= B[i][p] * B[k][p];
      B[i][k] = s / d;
    }
  }
  return true;
}

RootAction build_root_action(const std::vector<std::vector<int>>& matrix, std::size_t bound) {
  const std::size_t n = matrix.size();
  const auto A = cartan_matrix(matrix);

  std::vector<Root> roots;
  std::map<Root, std::uint32_t> index;
  std::deque<std::uint32_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    Root r(n);
    r[i] = {1, 0};
    index.emplace(r, static_cast<std::uint32_t>(roots.size()));
    queue.push_back(static_cast<std::uint32_t>(roots.size()));
    roots.push_back(std::move(r));
  }

  // Positive roots only; s_i permutes the positive roots other than alpha_i.
  while (!queue.empty()) {
    std::uint32_t r = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < n; ++i) {
      if (r == i) continue;
      Root g = reflect(A, i, roots[r]);
      if (!is_positive(g)) throw InvalidCoxeterSystem("root enumeration produced a non-positive root");
      auto [it, inserted] = index.emplace(std::move(g), static_cast<std::uint32_t>(roots.size()));
      if (inserted) {
        if (roots.size() >= bound) throw InvalidCoxeterSystem("root system exceeds the enumeration bound; group is infinite or too large");
        roots.push_back(it->first);
        queue.push_back(it->second);
      }
    }
  }

  RootAction act;
  const std::size_t N = roots.size();
  act.positive_count = N;
  act.perm.assign(n, std::vector<std::uint32_t>(2 * N));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint32_t r = 0; r < N; ++r) {
      std::uint32_t img;
      if (r == i) {
        img = static_cast<std::uint32_t>(N + i);
      } else {
        img = index.at(reflect(A, i, roots[r]));
      }
      act.perm[i][r] = img;
      act.perm[i][r + N] = img < N ? static_cast<std::uint32_t>(img + N) : static_cast<std::uint32_t>(img - N);
    }
  }
  return act;
}

}  // namespace kazhdan::detail
