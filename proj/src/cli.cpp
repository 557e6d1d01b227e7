#include "kazhdan/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "kazhdan/blocks.hpp"
#include "kazhdan/coxeter.hpp"
#include "kazhdan/hecke.hpp"
#include "kazhdan/lefschetz.hpp"

namespace kazhdan::cli {

namespace {

const std::vector<std::string> kCommands{"kl", "h", "andersen", "bs", "equivariant", "lefschetz", "ih", "audit"};

// Whole-group tables hold every C_x at once; past this size they exhaust memory.
constexpr std::size_t kMaxTableElements = 10'000;

void require_table_size(const CoxeterSystem& W, const std::string& what) {
  if (W.size() > kMaxTableElements)
    throw UsageError(what, "whole-group output is limited to " + std::to_string(kMaxTableElements) +
                               " elements; this group has " + std::to_string(W.size()));
}

void build_app(CLI::App& app, RunConfig& c) {
  app.name("kazhdan");
  app.add_option("--type", c.type_code, "Built-in Coxeter type: A<n>, B<n>, D<n>, G2, F4, H3");
  app.add_option("--matrix", c.matrix_path, "JSON file {\"rank\", \"matrix\", \"names\"}");
  app.add_option("--parabolic", c.parabolic, "Generator names of the singular parabolic subset")->delimiter(',');
  app.add_option("--cmd", c.command, "Command")->required()->check(CLI::IsMember(kCommands));
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--cache", c.cache_path, "KL cache file");
  app.add_flag("--no-cache", c.no_cache, "Do not read or write a KL cache");
  app.add_option("--rank", c.rank, "Number of degree-2 generators of the equivariant coefficient ring");
  app.add_option("--n-max", c.n_max, "Largest degree of the equivariant series");
  app.add_option("--x", c.x, "Element as a word in the generator names");
  app.add_option("--y", c.y, "Element as a word in the generator names");
  app.add_option("--word", c.word, "Bott-Samelson word in the generator names");
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

std::shared_ptr<const CoxeterSystem> load_system(const RunConfig& c) {
  try {
    if (!c.type_code.empty()) return std::make_shared<const CoxeterSystem>(CoxeterSystem::from_type(c.type_code));
    std::ifstream in(c.matrix_path);
    if (!in) throw UsageError("--matrix", "cannot open '" + c.matrix_path + "'");
    auto doc = nlohmann::json::parse(in, nullptr, false);
    if (doc.is_discarded()) throw UsageError("--matrix", "'" + c.matrix_path + "' is not valid JSON");
    return std::make_shared<const CoxeterSystem>(CoxeterSystem::from_json(doc));
  } catch (const InvalidCoxeterSystem& e) {
    throw UsageError(c.type_code.empty() ? "--matrix" : "--type", e.what());
  }
}

Element parse_element(const CoxeterSystem& W, const std::optional<std::string>& text, const std::string& flag) {
  if (!text) throw UsageError(flag, "required by this command");
  try {
    return W.parse(*text);
  } catch (const ParseError& e) {
    throw UsageError(flag, e.what());
  }
}

std::optional<std::filesystem::path> cache_file(const RunConfig& c, const CoxeterSystem& W) {
  if (c.no_cache) return std::nullopt;
  if (c.cache_path) return std::filesystem::path(*c.cache_path);
  if (const char* dir = std::getenv(kCacheDirEnv); dir && *dir)
    return std::filesystem::path(dir) / ("kl-" + W.fingerprint() + ".json");
  return std::nullopt;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

// --- commands ------------------------------------------------------------

struct Context {
  const RunConfig& config;
  const CoxeterSystem& W;
  KLCache& cache;
  std::ostream& out;
};

nlohmann::json kl_pair_json(Context& ctx, Element y, Element x) {
  const auto h = h_poly(ctx.cache, y, x);
  return {{"y", ctx.W.format(y)}, {"x", ctx.W.format(x)}, {"h", to_json(h)},
          {"P", to_json(kl_polynomial(ctx.cache, y, x))}, {"mu", h.coeff(1)}};
}

int cmd_kl(Context& ctx) {
  const auto& c = ctx.config;
  if (c.y && !c.x) throw UsageError("--x", "required when --y is given");
  if (c.x && c.y) {
    Element x = parse_element(ctx.W, c.x, "--x");
    Element y = parse_element(ctx.W, c.y, "--y");
    auto h = h_poly(ctx.cache, y, x);
    auto P = kl_polynomial(ctx.cache, y, x);
    if (c.format == "json") {
      ctx.out << kl_pair_json(ctx, y, x).dump() << "\n";
    } else if (c.format == "csv") {
      ctx.out << "y,x,h,P,mu\n"
              << ctx.W.format(y) << "," << ctx.W.format(x) << "," << to_string(h, 'v') << "," << to_string(P, 'q')
              << "," << h.coeff(1) << "\n";
    } else {
      ctx.out << "h = " << to_string(h, 'v') << "\nP = " << to_string(P, 'q') << "\nmu = " << h.coeff(1) << "\n";
    }
    return 0;
  }

  std::vector<Element> xs;
  if (c.x) xs.push_back(parse_element(ctx.W, c.x, "--x"));
  else {
    require_table_size(ctx.W, "--x");
    xs = ctx.W.all_elements();
  }

  nlohmann::json arr = nlohmann::json::array();
  if (c.format == "csv") ctx.out << "y,x,h,P,mu\n";
  for (Element x : xs) {
    for (const auto& [y, h] : kl_element(ctx.cache, x).terms()) {
      auto P = kl_polynomial(ctx.cache, y, x);
      if (c.format == "json") {
        arr.push_back(kl_pair_json(ctx, y, x));
      } else if (c.format == "csv") {
        ctx.out << ctx.W.format(y) << "," << ctx.W.format(x) << "," << to_string(h, 'v') << "," << to_string(P, 'q')
                << "," << h.coeff(1) << "\n";
      } else {
        ctx.out << ctx.W.format(y) << " " << ctx.W.format(x) << "  h = " << to_string(h, 'v')
                << "  P = " << to_string(P, 'q') << "\n";
      }
    }
  }
  if (c.format == "json") ctx.out << arr.dump() << "\n";
  return 0;
}

int cmd_h(Context& ctx) {
  Element x = parse_element(ctx.W, ctx.config.x, "--x");
  Element y = parse_element(ctx.W, ctx.config.y, "--y");
  auto h = h_poly(ctx.cache, y, x);
  if (ctx.config.format == "json") {
    ctx.out << nlohmann::json{{"y", ctx.W.format(y)}, {"x", ctx.W.format(x)}, {"h", to_json(h)}}.dump() << "\n";
  } else if (ctx.config.format == "csv") {
    ctx.out << "y,x,i,coeff\n";
    for (const auto& [i, n] : h.terms()) ctx.out << ctx.W.format(y) << "," << ctx.W.format(x) << "," << i << "," << n << "\n";
  } else {
    ctx.out << to_string(h, 'v') << "\n";
  }
  return 0;
}

int cmd_andersen(Context& ctx, const BlockData& B) {
  const auto& c = ctx.config;
  if (c.x || c.y) {
    std::size_t xbar = B.coset_of(parse_element(ctx.W, c.x, "--x"));
    std::size_t ybar = B.coset_of(parse_element(ctx.W, c.y, "--y"));
    auto dims = andersen_dims(B, ctx.cache, ybar, xbar);
    if (c.format == "json") {
      nlohmann::json d = nlohmann::json::object();
      for (const auto& [i, n] : dims) d[std::to_string(i)] = n;
      ctx.out << nlohmann::json{{"y", B.coset_word(ybar)}, {"x", B.coset_word(xbar)}, {"dims", d}}.dump() << "\n";
    } else if (c.format == "csv") {
      ctx.out << "row,col,i,dim\n";
      for (const auto& [i, n] : dims) ctx.out << B.coset_word(ybar) << "," << B.coset_word(xbar) << "," << i << "," << n << "\n";
    } else {
      ctx.out << "Hom(Delta(" << B.weight_label(ybar) << "), K(" << B.weight_label(xbar) << "))";
      if (dims.empty()) ctx.out << " = 0";
      for (const auto& [i, n] : dims) ctx.out << "  F^" << i << ": " << n;
      ctx.out << "\n";
    }
    return 0;
  }
  require_table_size(ctx.W, "--x");
  auto table = andersen_table(B, ctx.cache);
  if (c.format == "json") ctx.out << to_json(table).dump() << "\n";
  else if (c.format == "csv") ctx.out << to_csv(table);
  else ctx.out << to_text(table);
  return 0;
}

int cmd_bs(Context& ctx) {
  const auto& c = ctx.config;
  if (!c.word) throw UsageError("--word", "required by this command");
  std::vector<Generator> letters;
  try {
    letters = ctx.W.parse_letters(*c.word);
  } catch (const ParseError& e) {
    throw UsageError("--word", e.what());
  }
  auto decomposition = bott_samelson(ctx.cache, letters);
  if (c.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [x, m] : decomposition) arr.push_back({{"x", ctx.W.format(x)}, {"mult", to_json(m)}});
    ctx.out << nlohmann::json{{"word", *c.word}, {"decomposition", arr}}.dump() << "\n";
  } else if (c.format == "csv") {
    ctx.out << "x,exp,mult\n";
    for (const auto& [x, m] : decomposition)
      for (const auto& [e, n] : m.terms()) ctx.out << ctx.W.format(x) << "," << e << "," << n << "\n";
  } else {
    for (const auto& [x, m] : decomposition) ctx.out << ctx.W.format(x) << ": " << to_string(m, 'v') << "\n";
  }
  return 0;
}

int cmd_equivariant(Context& ctx, const BlockData& B) {
  const auto& c = ctx.config;
  std::size_t xbar = B.coset_of(parse_element(ctx.W, c.x, "--x"));
  std::size_t ybar = B.coset_of(parse_element(ctx.W, c.y, "--y"));
  const int rank = c.rank.value_or(ctx.W.rank());
  auto dims = equivariant_hom_series(B, ctx.cache, ybar, xbar, rank, c.n_max);
  if (c.format == "json") {
    ctx.out << nlohmann::json{{"y", B.coset_word(ybar)}, {"x", B.coset_word(xbar)}, {"rank", rank}, {"dims", dims}}.dump()
            << "\n";
  } else if (c.format == "csv") {
    ctx.out << "n,dim\n";
    for (std::size_t n = 0; n < dims.size(); ++n) ctx.out << n << "," << dims[n] << "\n";
  } else {
    for (std::size_t n = 0; n < dims.size(); ++n) ctx.out << (n ? " " : "") << dims[n];
    ctx.out << "\n";
  }
  return 0;
}

int cmd_lefschetz(Context& ctx) {
  Element x = parse_element(ctx.W, ctx.config.x, "--x");
  Element y = parse_element(ctx.W, ctx.config.y, "--y");
  auto r = local_lefschetz_poly(ctx.cache, y, x);
  if (ctx.config.format == "json") {
    ctx.out << to_json(ctx.W, r).dump() << "\n";
  } else if (ctx.config.format == "csv") {
    ctx.out << "y,x,d,poly,palindromic,unimodal,nonneg\n"
            << ctx.W.format(y) << "," << ctx.W.format(x) << "," << r.d << "," << to_string(r.poly, 'q') << ","
            << bool_text(r.palindromic) << "," << bool_text(r.unimodal) << "," << bool_text(r.nonneg) << "\n";
  } else {
    ctx.out << "d = " << r.d << "\npoly = " << to_string(r.poly, 'q') << "\npalindromic = " << bool_text(r.palindromic)
            << "\nunimodal = " << bool_text(r.unimodal) << "\nnonneg = " << bool_text(r.nonneg) << "\n";
  }
  return r.passed() ? 0 : 2;
}

int cmd_ih(Context& ctx) {
  Element x = parse_element(ctx.W, ctx.config.x, "--x");
  auto poly = ih_poincare(ctx.cache, x);
  bool pal = is_palindromic(poly, HalfInteger::halves(ctx.W.length(x)));
  if (ctx.config.format == "json") {
    ctx.out << to_json(ctx.W, IhReport{x, poly, pal}).dump() << "\n";
  } else if (ctx.config.format == "csv") {
    ctx.out << "x,exp,coeff\n";
    for (const auto& [e, n] : poly.terms()) ctx.out << ctx.W.format(x) << "," << e << "," << n << "\n";
  } else {
    ctx.out << to_string(poly, 'q') << "\n";
  }
  return 0;
}

int cmd_audit(Context& ctx) {
  require_table_size(ctx.W, "--cmd");
  auto audit = lefschetz_audit(ctx.cache);
  const auto pair_ok = std::count_if(audit.pairs.begin(), audit.pairs.end(), [](const auto& r) { return r.passed(); });
  const auto global_ok = std::count_if(audit.global.begin(), audit.global.end(), [](const auto& r) { return r.palindromic; });
  if (ctx.config.format == "json") {
    ctx.out << to_json_lines(ctx.W, audit);
  } else if (ctx.config.format == "csv") {
    ctx.out << "y,x,d,poly,palindromic,unimodal,nonneg\n";
    for (const auto& r : audit.pairs)
      ctx.out << ctx.W.format(r.y) << "," << ctx.W.format(r.x) << "," << r.d << "," << to_string(r.poly, 'q') << ","
              << bool_text(r.palindromic) << "," << bool_text(r.unimodal) << "," << bool_text(r.nonneg) << "\n";
  } else {
    ctx.out << "local pairs: " << audit.pairs.size() << ", passed: " << pair_ok << "\n"
            << "global ih: " << audit.global.size() << ", palindromic: " << global_ok << "\n"
            << "result: " << (audit.passed() ? "PASS" : "FAIL") << "\n";
  }
  return audit.passed() ? 0 : 2;
}

int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto W = load_system(c);
  GeneratorSet I;
  try {
    I = W->parse_generators(c.parabolic);
  } catch (const ParseError& e) {
    throw UsageError("--parabolic", e.what());
  }

  KLCache cache(W);
  auto path = cache_file(c, *W);
  if (path) {
    switch (cache.load(*path)) {
      case KLCache::LoadStatus::Mismatch:
        err << "warning: cache " << path->string() << " belongs to another Coxeter system; ignoring it\n";
        break;
      case KLCache::LoadStatus::Malformed:
        err << "warning: cache " << path->string() << " is malformed; ignoring it\n";
        break;
      default:
        break;
    }
  }

  std::ostringstream buffer;
  Context ctx{c, *W, cache, buffer};
  int status = 0;
  if (c.command == "kl") status = cmd_kl(ctx);
  else if (c.command == "h") status = cmd_h(ctx);
  else if (c.command == "bs") status = cmd_bs(ctx);
  else if (c.command == "lefschetz") status = cmd_lefschetz(ctx);
  else if (c.command == "ih") status = cmd_ih(ctx);
  else if (c.command == "audit") status = cmd_audit(ctx);
  else {
    auto B = make_block(W, I);
    status = c.command == "andersen" ? cmd_andersen(ctx, B) : cmd_equivariant(ctx, B);
  }
  out << buffer.str();

  if (path && (cache.computed_count() > 0 || !std::filesystem::exists(*path))) {
    try {
      cache.save(*path);
    } catch (const std::exception& e) {
      err << "warning: " << e.what() << "\n";
    }
  }
  return status;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig c;
  CLI::App app{"kazhdan"};
  build_app(app, c);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw UsageError("arguments", e.what());
  }
  if (c.type_code.empty() == c.matrix_path.empty()) throw UsageError("--type/--matrix", "give exactly one group specification");
  if (c.n_max < 0) throw UsageError("--n-max", "must be nonnegative");
  if (c.rank && *c.rank < 1) throw UsageError("--rank", "must be at least 1");
  return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(config, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

int run_scenario(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "usage error: --scenario: cannot open '" << path << "'\n";
    return 1;
  }
  int worst = 0;
  for (std::string line; std::getline(in, line);) {
    auto args = split_ws(line);
    if (args.empty() || args.front().starts_with("#")) continue;
    out << "### " << line << "\n";
    int status;
    try {
      status = run(parse_args(args), out, err);
    } catch (const UsageError& e) {
      err << "usage error: " << e.what() << "\n";
      status = 1;
    }
    worst = std::max(worst, status);
  }
  return worst;
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.size() == 2 && args[0] == "--scenario") return run_scenario(args[1], out, err);
  if (args.empty() || std::find(args.begin(), args.end(), "--help") != args.end() ||
      std::find(args.begin(), args.end(), "-h") != args.end()) {
    RunConfig c;
    CLI::App app{"kazhdan: Kazhdan-Lusztig data, Andersen filtration dimensions and Lefschetz audits"};
    build_app(app, c);
    out << app.help() << "  --scenario FILE             Run every line of FILE as a command\n";
    return args.empty() ? 1 : 0;
  }
  try {
    return run(parse_args(args), out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace kazhdan::cli
