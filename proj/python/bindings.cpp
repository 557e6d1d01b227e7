#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kazhdan/blocks.hpp"
#include "kazhdan/coxeter.hpp"
#include "kazhdan/error.hpp"
#include "kazhdan/hecke.hpp"
#include "kazhdan/lefschetz.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace kazhdan;

namespace {

using Terms = std::vector<std::pair<int, long long>>;

Terms terms_of(const LaurentPoly& p) {
  Terms out;
  for (const auto& [e, c] : p.terms()) out.emplace_back(e, c);
  return out;
}

// pybind11 holders cannot be shared_ptr<const T>.
using SystemPtr = std::shared_ptr<CoxeterSystem>;

// Python-facing engine: one system plus its KL cache, elements as words.
class KLEngine {
 public:
  explicit KLEngine(SystemPtr W) : W_(std::move(W)), cache_(W_) {}

  const CoxeterSystem& system() const { return *W_; }
  Element el(const std::string& word) const { return W_->parse(word); }

  Terms h_poly(const std::string& y, const std::string& x) { return terms_of(kazhdan::h_poly(cache_, el(y), el(x))); }
  Terms kl_polynomial(const std::string& y, const std::string& x) {
    return terms_of(kazhdan::kl_polynomial(cache_, el(y), el(x)));
  }
  long long mu(const std::string& y, const std::string& x) { return kazhdan::mu(cache_, el(y), el(x)); }

  std::map<std::string, Terms> kl_element(const std::string& x) {
    std::map<std::string, Terms> out;
    for (const auto& [y, h] : kazhdan::kl_element(cache_, el(x)).terms()) out[W_->format(y)] = terms_of(h);
    return out;
  }

  std::vector<std::pair<std::string, Terms>> bott_samelson(const std::string& word) {
    std::vector<std::pair<std::string, Terms>> out;
    for (const auto& [x, m] : kazhdan::bott_samelson(cache_, W_->parse_letters(word)))
      out.emplace_back(W_->format(x), terms_of(m));
    return out;
  }

  std::map<int, long long> andersen_dims(const std::vector<std::string>& parabolic, const std::string& y,
                                         const std::string& x) {
    auto B = block(parabolic);
    std::map<int, long long> out;
    for (const auto& [i, n] : kazhdan::andersen_dims(B, cache_, B.coset_of(el(y)), B.coset_of(el(x)))) out[i] = n;
    return out;
  }

  std::string andersen_table_json(const std::vector<std::string>& parabolic) {
    return to_json(andersen_table(block(parabolic), cache_)).dump();
  }

  std::vector<long long> equivariant_hom_series(const std::vector<std::string>& parabolic, const std::string& y,
                                                const std::string& x, std::optional<int> rank, int n_max) {
    auto B = block(parabolic);
    auto dims = kazhdan::equivariant_hom_series(B, cache_, B.coset_of(el(y)), B.coset_of(el(x)),
                                                rank.value_or(W_->rank()), n_max);
    return {dims.begin(), dims.end()};
  }

  py::dict local_lefschetz(const std::string& y, const std::string& x) {
    auto r = local_lefschetz_poly(cache_, el(y), el(x));
    py::dict d;
    d["d"] = r.d;
    d["poly"] = terms_of(r.poly);
    d["palindromic"] = r.palindromic;
    d["unimodal"] = r.unimodal;
    d["nonneg"] = r.nonneg;
    return d;
  }

  Terms ih_poincare(const std::string& x) { return terms_of(kazhdan::ih_poincare(cache_, el(x))); }

  py::dict audit() {
    auto a = lefschetz_audit(cache_);
    py::dict d;
    d["pairs"] = a.pairs.size();
    d["global"] = a.global.size();
    d["passed"] = a.passed();
    return d;
  }

  void fill() { fill_kl_table(cache_); }
  std::size_t cached() const { return cache_.size(); }
  std::size_t computed() const { return cache_.computed_count(); }
  void save_cache(const std::filesystem::path& p) const { cache_.save(p); }
  std::string load_cache(const std::filesystem::path& p) {
    switch (cache_.load(p)) {
      case KLCache::LoadStatus::Loaded: return "loaded";
      case KLCache::LoadStatus::Missing: return "missing";
      case KLCache::LoadStatus::Mismatch: return "mismatch";
      case KLCache::LoadStatus::Malformed: return "malformed";
    }
    return "malformed";
  }

 private:
  BlockData block(const std::vector<std::string>& parabolic) const {
    return make_block(W_, W_->parse_generators(parabolic));
  }

  std::shared_ptr<const CoxeterSystem> W_;
  KLCache cache_;
};

std::vector<std::string> names_of(const CoxeterSystem& W, GeneratorSet s) {
  std::vector<std::string> out;
  for (Generator g : s.members()) out.push_back(W.names()[static_cast<std::size_t>(g)]);
  return out;
}

}  // namespace

PYBIND11_MODULE(_kazhdan, m) {
  m.doc() = "Kazhdan-Lusztig data for finite Coxeter groups";

  py::register_exception<Error>(m, "KazhdanError", PyExc_ValueError);

  py::class_<CoxeterSystem, SystemPtr>(m, "CoxeterSystem")
      .def_static("from_type", [](const std::string& code) { return std::make_shared<CoxeterSystem>(CoxeterSystem::from_type(code)); },
                  py::arg("code"))
      .def_static(
          "from_matrix",
          [](std::vector<std::vector<int>> matrix, std::optional<std::vector<std::string>> names) {
            auto n = static_cast<int>(matrix.size());
            return std::make_shared<CoxeterSystem>(std::move(matrix),
                                                         names.value_or(CoxeterSystem::default_names(n)));
          },
          py::arg("matrix"), py::arg("names") = py::none())
      .def_property_readonly("rank", &CoxeterSystem::rank)
      .def_property_readonly("names", &CoxeterSystem::names)
      .def_property_readonly("fingerprint", &CoxeterSystem::fingerprint)
      .def("__len__", &CoxeterSystem::size)
      .def("elements",
           [](const CoxeterSystem& W) {
             std::vector<std::string> out;
             for (Element a : W.all_elements()) out.push_back(W.format(a));
             return out;
           })
      .def("canonical", [](const CoxeterSystem& W, const std::string& w) { return W.format(W.parse(w)); })
      .def("length", [](const CoxeterSystem& W, const std::string& w) { return W.length(W.parse(w)); })
      .def("multiply", [](const CoxeterSystem& W, const std::string& a, const std::string& b) {
        return W.format(W.multiply(W.parse(a), W.parse(b)));
      })
      .def("bruhat_leq", [](const CoxeterSystem& W, const std::string& y, const std::string& x) {
        return W.bruhat_leq(W.parse(y), W.parse(x));
      })
      .def(
          "descents",
          [](const CoxeterSystem& W, const std::string& w, const std::string& side) {
            return names_of(W, W.descents(W.parse(w), side == "left" ? Side::Left : Side::Right));
          },
          py::arg("word"), py::arg("side") = "right")
      .def(
          "longest_element",
          [](const CoxeterSystem& W, std::optional<std::vector<std::string>> I) {
            return W.format(I ? W.longest_element(W.parse_generators(*I)) : W.longest_element());
          },
          py::arg("parabolic") = py::none())
      .def("cosets",
           [](const CoxeterSystem& W, const std::vector<std::string>& I) {
             std::vector<std::pair<std::string, std::string>> out;
             for (const auto& c : W.cosets(W.parse_generators(I))) out.emplace_back(W.format(c.min_rep), W.format(c.max_rep));
             return out;
           })
      .def("balanced_poincare", [](const CoxeterSystem& W, const std::vector<std::string>& I) {
        return terms_of(balanced_poincare(W, W.parse_generators(I)));
      });

  py::class_<KLEngine>(m, "KLEngine")
      .def(py::init<SystemPtr>(), py::arg("system"))
      .def("h_poly", &KLEngine::h_poly, py::arg("y"), py::arg("x"))
      .def("kl_polynomial", &KLEngine::kl_polynomial, py::arg("y"), py::arg("x"))
      .def("mu", &KLEngine::mu, py::arg("y"), py::arg("x"))
      .def("kl_element", &KLEngine::kl_element, py::arg("x"))
      .def("bott_samelson", &KLEngine::bott_samelson, py::arg("word"))
      .def("andersen_dims", &KLEngine::andersen_dims, py::arg("parabolic"), py::arg("y"), py::arg("x"))
      .def("andersen_table_json", &KLEngine::andersen_table_json, py::arg("parabolic"))
      .def("equivariant_hom_series", &KLEngine::equivariant_hom_series, py::arg("parabolic"), py::arg("y"),
           py::arg("x"), py::arg("rank") = py::none(), py::arg("n_max") = 10)
      .def("local_lefschetz", &KLEngine::local_lefschetz, py::arg("y"), py::arg("x"))
      .def("ih_poincare", &KLEngine::ih_poincare, py::arg("x"))
      .def("audit", &KLEngine::audit)
      .def("fill", &KLEngine::fill, py::call_guard<py::gil_scoped_release>())
      .def_property_readonly("cached", &KLEngine::cached)
      .def_property_readonly("computed", &KLEngine::computed)
      .def("save_cache", &KLEngine::save_cache)
      .def("load_cache", &KLEngine::load_cache);

  m.def("monomial_count", &monomial_count, py::arg("rank"), py::arg("k"));

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
