#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "kazhdan/hecke.hpp"

namespace kazhdan {

/// Local hard-Lefschetz data for a pair y <= x.
struct LefschetzReport {
  Element y;
  Element x;
  int d = 0;         // l(x) - l(y)
  LaurentPoly poly;  // in q
  bool palindromic = true;
  bool unimodal = true;
  bool nonneg = true;

  bool passed() const { return palindromic && unimodal && nonneg; }
};

/// poly = (P_{y,x}(q) - q^d P_{y,x}(q^-1)) / (1 - q) with d = l(x) - l(y):
/// the stalk minus the dual costalk, divided out by the contracting line.
/// For y < x this is a polynomial of degree d - 1, checked for
/// palindromicity about (d - 1)/2, unimodality and nonnegativity. For y = x
/// or y not below x the polynomial is zero and every check holds.
LefschetzReport local_lefschetz_poly(KLCache& cache, Element y, Element x);

/// Sum over y <= x of q^l(y) P_{y,x}(q).
LaurentPoly ih_poincare(KLCache& cache, Element x);

struct IhReport {
  Element x;
  LaurentPoly poly;
  bool palindromic = true;  // about l(x)/2
};

struct LefschetzAudit {
  std::vector<LefschetzReport> pairs;  // every Bruhat-comparable y <= x
  std::vector<IhReport> global;        // every x

  bool passed() const;
};

LefschetzAudit lefschetz_audit(KLCache& cache);

/// One JSON object per report: {"y", "x", "d", "poly", "palindromic",
/// "unimodal", "nonneg"} with elements as ShortLex words.
nlohmann::json to_json(const CoxeterSystem& W, const LefschetzReport& r);
nlohmann::json to_json(const CoxeterSystem& W, const IhReport& r);
/// JSON lines: the pair reports followed by the global reports.
std::string to_json_lines(const CoxeterSystem& W, const LefschetzAudit& audit);

}  // namespace kazhdan
