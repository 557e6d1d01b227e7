#include <doctest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "kazhdan/lefschetz.hpp"

using namespace kazhdan;

namespace {

std::shared_ptr<const CoxeterSystem> sys(const char* code) {
  return std::make_shared<const CoxeterSystem>(CoxeterSystem::from_type(code));
}

// Length generating function by direct enumeration.
LaurentPoly length_series(const CoxeterSystem& W) {
  LaurentPoly p;
  for (Element a : W.all_elements()) p.add_scaled(LaurentPoly(1), 1, W.length(a));
  return p;
}

}  // namespace

TEST_CASE("local_lefschetz_poly examples") {
  auto A2 = sys("A2");
  KLCache c2(A2);
  auto same = local_lefschetz_poly(c2, A2->parse("sts"), A2->parse("sts"));
  CHECK(same.poly.is_zero());
  CHECK(same.passed());
  auto r = local_lefschetz_poly(c2, A2->parse("st"), A2->parse("sts"));
  CHECK(r.d == 1);
  CHECK(r.poly == LaurentPoly(1));
  auto incomparable = local_lefschetz_poly(c2, A2->parse("st"), A2->parse("ts"));
  CHECK(incomparable.poly.is_zero());
  CHECK(incomparable.passed());

  auto A3 = sys("A3");
  KLCache c3(A3);
  Element x = A3->parse("s2s1s3s2");
  auto anchor = local_lefschetz_poly(c3, A3->identity(), x);
  CHECK(anchor.d == 4);
  CHECK(anchor.poly == LaurentPoly{{0, 1}, {1, 2}, {2, 2}, {3, 1}});
  CHECK(anchor.passed());

  // d = 3 and P = 1 + q: (1 + q - q^2 - q^3) / (1 - q) = 1 + 2q + q^2.
  auto s2 = local_lefschetz_poly(c3, A3->parse("s2"), x);
  CHECK(s2.d == 3);
  CHECK(s2.poly == LaurentPoly{{0, 1}, {1, 2}, {2, 1}});
  CHECK(s2.passed());
}

TEST_CASE("ih_poincare") {
  auto A2 = sys("A2");
  KLCache c2(A2);
  CHECK(ih_poincare(c2, A2->identity()) == LaurentPoly(1));
  CHECK(ih_poincare(c2, A2->parse("sts")) == LaurentPoly{{0, 1}, {1, 2}, {2, 2}, {3, 1}});

  auto A3 = sys("A3");
  KLCache c3(A3);
  CHECK(ih_poincare(c3, A3->longest_element()) ==
        LaurentPoly{{0, 1}, {1, 3}, {2, 5}, {3, 6}, {4, 5}, {5, 3}, {6, 1}});

  for (const char* code : {"B2", "B3", "G2", "H3"}) {
    auto W = sys(code);
    KLCache c(W);
    CHECK(ih_poincare(c, W->longest_element()) == length_series(*W));
  }
}

TEST_CASE("ih_poincare consistency on A3 and B2") {
  for (const char* code : {"A3", "B2"}) {
    auto W = sys(code);
    KLCache c(W);
    for (Element x : W->all_elements()) {
      auto p = ih_poincare(c, x);
      CHECK(is_palindromic(p, HalfInteger::halves(W->length(x))));
      CHECK(p.coeff(0) == 1);
      Coeff total = 0;
      for (Element y : W->all_elements()) total += eval_at_one(kl_polynomial(c, y, x));
      CHECK(eval_at_one(p) == total);
    }
  }
}

TEST_CASE("every comparable pair passes in A3, B2 and A4") {
  for (const char* code : {"A3", "B2", "A4"}) {
    auto W = sys(code);
    KLCache c(W);
    std::size_t comparable = 0;
    for (Element x : W->all_elements())
      for (Element y : W->all_elements()) {
        if (!W->bruhat_leq(y, x)) continue;
        ++comparable;
        auto r = local_lefschetz_poly(c, y, x);
        CAPTURE(W->format(y));
        CAPTURE(W->format(x));
        CHECK(r.passed());
        if (y != x) {
          CHECK(r.poly.high_degree() == r.d - 1);
          CHECK(r.poly.low_degree() == 0);
        }
      }
    auto audit = lefschetz_audit(c);
    CHECK(audit.pairs.size() == comparable);
    CHECK(audit.global.size() == W->size());
    CHECK(audit.passed());
  }
}

TEST_CASE("lefschetz_audit on A1") {
  auto W = sys("A1");
  KLCache c(W);
  auto audit = lefschetz_audit(c);
  CHECK(audit.pairs.size() == 3);
  CHECK(audit.passed());
  std::string lines = to_json_lines(*W, audit);
  std::istringstream in(lines);
  std::string line;
  int count = 0;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    CHECK(j.contains("x"));
    ++count;
  }
  CHECK(count == 5);
}

TEST_CASE("report JSON") {
  auto W = sys("A3");
  KLCache c(W);
  auto j = to_json(*W, local_lefschetz_poly(c, W->parse("s2"), W->parse("s2s1s3s2")));
  CHECK(j["y"] == "s2");
  CHECK(j["x"] == "s2s1s3s2");
  CHECK(j["d"] == 3);
  CHECK(j["poly"] == nlohmann::json::parse("[[0,1],[1,2],[2,1]]"));
  CHECK(j["palindromic"] == true);
  CHECK(j["unimodal"] == true);
  CHECK(j["nonneg"] == true);
}
