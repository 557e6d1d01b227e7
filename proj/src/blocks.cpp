#include "kazhdan/blocks.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace kazhdan {

namespace {

std::string format_dims(const GradedDims& d) {
  if (d.empty()) return ".";
  std::string out;
  for (const auto& [i, n] : d) {
    if (!out.empty()) out += ' ';
    out += std::to_string(i) + ":" + std::to_string(n);
  }
  return out;
}

}  // namespace

std::size_t BlockData::coset_of(Element a) const {
  Element top = system->coset_max_rep(parabolic, a);
  auto it = std::lower_bound(cosets.begin(), cosets.end(), top,
                             [](const Coset& c, Element x) { return c.max_rep < x; });
  return static_cast<std::size_t>(it - cosets.begin());
}

std::string BlockData::coset_word(std::size_t index) const { return system->format(cosets.at(index).max_rep); }

std::string BlockData::weight_label(std::size_t index) const { return "lambda[" + coset_word(index) + "]"; }

BlockData make_block(std::shared_ptr<const CoxeterSystem> W, GeneratorSet I) {
  if (!I.is_subset_of(GeneratorSet::all(W->rank())))
    throw std::invalid_argument("parabolic subset is not a set of generators of the system");
  BlockData B;
  B.w_long = W->longest_element();
  B.w_iota = W->longest_element(I);
  B.cosets = W->cosets(I);
  B.parabolic = I;
  B.system = std::move(W);
  return B;
}

GradedDims andersen_dims(const BlockData& B, KLCache& cache, std::size_t ybar, std::size_t xbar) {
  GradedDims out;
  const auto h = h_poly(cache, B.cosets.at(ybar).max_rep, B.cosets.at(xbar).max_rep);
  for (const auto& [i, c] : h.terms()) out.emplace(i, c);
  return out;
}

Coeff total_hom_dim(const BlockData& B, KLCache& cache, std::size_t ybar, std::size_t xbar) {
  Coeff total = 0;
  for (const auto& [i, n] : andersen_dims(B, cache, ybar, xbar)) total = checked::add(total, n);
  return total;
}

DimTable andersen_table(const BlockData& B, KLCache& cache) {
  DimTable t;
  for (std::size_t k = 0; k < B.cosets.size(); ++k) {
    t.rows.push_back(B.coset_word(k));
    t.cols.push_back(B.coset_word(k));
  }
  for (std::size_t r = 0; r < B.cosets.size(); ++r) {
    for (std::size_t c = 0; c < B.cosets.size(); ++c) {
      auto d = andersen_dims(B, cache, r, c);
      if (!d.empty()) t.cells.emplace(std::make_pair(r, c), std::move(d));
    }
  }
  return t;
}

nlohmann::json to_json(const DimTable& t) {
  nlohmann::json cells = nlohmann::json::object();
  for (const auto& [rc, dims] : t.cells) {
    nlohmann::json cell = nlohmann::json::object();
    for (const auto& [i, n] : dims) cell[std::to_string(i)] = n;
    cells[std::to_string(rc.first) + "," + std::to_string(rc.second)] = std::move(cell);
  }
  return {{"rows", t.rows}, {"cols", t.cols}, {"cells", std::move(cells)}};
}

std::string to_csv(const DimTable& t) {
  std::string out = "row,col,i,dim\n";
  for (const auto& [rc, dims] : t.cells)
    for (const auto& [i, n] : dims)
      out += t.rows[rc.first] + "," + t.cols[rc.second] + "," + std::to_string(i) + "," + std::to_string(n) + "\n";
  return out;
}

std::string to_text(const DimTable& t) {
  std::vector<std::vector<std::string>> grid(t.rows.size() + 1, std::vector<std::string>(t.cols.size() + 1));
  grid[0][0] = "y\\x";
  for (std::size_t c = 0; c < t.cols.size(); ++c) grid[0][c + 1] = t.cols[c];
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    grid[r + 1][0] = t.rows[r];
    for (std::size_t c = 0; c < t.cols.size(); ++c) {
      auto it = t.cells.find({r, c});
      grid[r + 1][c + 1] = it == t.cells.end() ? "." : format_dims(it->second);
    }
  }
  std::vector<std::size_t> width(t.cols.size() + 1, 0);
  for (const auto& row : grid)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::string out;
  for (const auto& row : grid) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      line += row[c] + std::string(width[c] - row[c].size(), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

Coeff monomial_count(int rank, int k) {
  if (rank < 1) throw std::invalid_argument("monomial_count: rank must be at least 1");
  if (k < 0 || k % 2 != 0) return 0;
  // binomial(m + rank - 1, rank - 1) with m = k / 2, built incrementally so
  // every intermediate value is itself a binomial coefficient.
  const Coeff m = k / 2;
  Coeff c = 1;
  for (Coeff j = 1; j < rank; ++j) c = checked::mul(c, m + j) / j;
  return c;
}

std::vector<Coeff> equivariant_hom_series(const BlockData& B, KLCache& cache, std::size_t ybar, std::size_t xbar,
                                          int rank, int n_max) {
  if (rank < 1) throw std::invalid_argument("equivariant_hom_series: rank must be at least 1");
  if (n_max < 0) throw std::invalid_argument("equivariant_hom_series: n_max must be nonnegative");
  const auto dims = andersen_dims(B, cache, ybar, xbar);
  std::vector<Coeff> out(static_cast<std::size_t>(n_max) + 1, 0);
  for (int n = 0; n <= n_max; ++n) {
    Coeff total = 0;
    for (const auto& [i, h] : dims) total = checked::add(total, checked::mul(h, monomial_count(rank, n - i)));
    out[static_cast<std::size_t>(n)] = total;
  }
  return out;
}

}  // namespace kazhdan
