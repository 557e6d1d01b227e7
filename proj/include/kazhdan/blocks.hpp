#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "kazhdan/coxeter.hpp"
#include "kazhdan/hecke.hpp"

namespace kazhdan {

/// Graded dimensions, degree i -> dimension. Zero entries are not stored.
using GradedDims = std::map<int, Coeff>;

/// A singular block: the ambient system (playing W_lambda-bar) together with
/// the parabolic subset generating the stabilizer W_lambda.
struct BlockData {
  std::shared_ptr<const CoxeterSystem> system;
  GeneratorSet parabolic;
  Element w_long;  // longest element of the system
  Element w_iota;  // longest element of the parabolic subgroup
  std::vector<Coset> cosets;  // right cosets, ordered by maximal representative

  /// Index of the coset containing a.
  std::size_t coset_of(Element a) const;
  /// ShortLex word of the coset's maximal representative.
  std::string coset_word(std::size_t index) const;
  /// Symbolic weight label "lambda[<word>]" standing for w_long * x-bar . lambda.
  std::string weight_label(std::size_t index) const;
};

BlockData make_block(std::shared_ptr<const CoxeterSystem> W, GeneratorSet I);

/// Subquotient dimensions of the Andersen filtration on
/// Hom(Delta(lambda_y), K(lambda_x)): degree i carries the coefficient of v^i
/// in h_{y,x}, for y and x the longest coset representatives. Empty when
/// y is not below x.
GradedDims andersen_dims(const BlockData& B, KLCache& cache, std::size_t ybar, std::size_t xbar);

/// Sum of andersen_dims, i.e. P_{y,x}(1).
Coeff total_hom_dim(const BlockData& B, KLCache& cache, std::size_t ybar, std::size_t xbar);

struct DimTable {
  std::vector<std::string> rows;  // coset words, Delta(lambda_y) side
  std::vector<std::string> cols;  // coset words, K(lambda_x) side
  std::map<std::pair<std::size_t, std::size_t>, GradedDims> cells;  // nonzero cells only

  friend bool operator==(const DimTable&, const DimTable&) = default;
};

DimTable andersen_table(const BlockData& B, KLCache& cache);

/// {"rows": [...], "cols": [...], "cells": {"r,c": {"i": dim}}} with r, c
/// row and column indices.
nlohmann::json to_json(const DimTable& t);
/// One "row,col,i,dim" line per nonzero entry, after a header line.
std::string to_csv(const DimTable& t);
/// Aligned text grid; cells read "i:dim" joined by spaces, "." when empty.
std::string to_text(const DimTable& t);

/// Number of monomials of degree k in `rank` variables of degree 2:
/// binomial(k/2 + rank - 1, rank - 1) for even k >= 0, else 0.
Coeff monomial_count(int rank, int k);

/// dims[n] = sum_i h^i_{y,x} * monomial_count(rank, n - i), n = 0..n_max,
/// the graded dimension of the equivariant Hom space over a polynomial ring
/// with `rank` generators in degree 2.
std::vector<Coeff> equivariant_hom_series(const BlockData& B, KLCache& cache, std::size_t ybar, std::size_t xbar,
                                          int rank, int n_max);

}  // namespace kazhdan
