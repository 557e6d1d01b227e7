#include <fstream>
#include <mutex>

#include <nlohmann/json.hpp>

#include "kazhdan/error.hpp"
#include "kazhdan/hecke.hpp"

namespace kazhdan {

namespace {
constexpr int kSchema = 1;
}

nlohmann::json KLCache::to_json() const {
  nlohmann::json kl = nlohmann::json::object();
  {
    std::shared_lock lock(mutex_);
    for (std::size_t id = 0; id < entries_.size(); ++id) {
      const auto& entry = entries_[id];
      if (!entry) continue;
      nlohmann::json row = nlohmann::json::object();
      for (const auto& [y, h] : entry->terms()) row[W_->format(y)] = kazhdan::to_json(h);
      kl[W_->format(Element{static_cast<std::uint32_t>(id)})] = std::move(row);
    }
  }
  return {{"schema", kSchema}, {"coxeter_hash", W_->fingerprint()}, {"kl", std::move(kl)}};
}

KLCache::LoadStatus KLCache::load_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("schema") || !doc.contains("coxeter_hash")) return LoadStatus::Malformed;
  if (doc["schema"] != kSchema || doc["coxeter_hash"] != W_->fingerprint()) return LoadStatus::Mismatch;

  std::vector<std::pair<Element, HeckeElt>> parsed;
  try {
    for (const auto& [xword, row] : doc.at("kl").items()) {
      Element x = W_->parse(xword);
      if (W_->format(x) != xword) return LoadStatus::Malformed;
      HeckeElt::Terms terms;
      for (const auto& [yword, poly] : row.items()) terms.emplace(W_->parse(yword), laurent_from_json(poly));
      HeckeElt value(std::move(terms));
      if (value.coeff(x) != LaurentPoly::one()) return LoadStatus::Malformed;
      if (validate_) check_entry(x, value);
      parsed.emplace_back(x, std::move(value));
    }
  } catch (const Error&) {
    return LoadStatus::Malformed;
  } catch (const nlohmann::json::exception&) {
    return LoadStatus::Malformed;
  }

  std::unique_lock lock(mutex_);
  for (auto& [x, value] : parsed) {
    auto& slot = entries_[x.id];
    if (!slot) slot = std::make_shared<const HeckeElt>(std::move(value));
  }
  return LoadStatus::Loaded;
}

void KLCache::save(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write cache file " + tmp.string());
    out << to_json().dump() << '\n';
    if (!out) throw Error("failed writing cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

KLCache::LoadStatus KLCache::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return LoadStatus::Missing;
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) return LoadStatus::Malformed;
  return load_json(doc);
}

}  // namespace kazhdan
