#include "kgtext/extractors/registry.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace kgtext {

using nlohmann::json;

std::string_view to_string(ExtractorKind kind) {
  switch (kind) {
    case ExtractorKind::kBaseline: return "baseline";
    case ExtractorKind::kGold: return "gold";
    case ExtractorKind::kRemote: return "remote";
  }
  return "baseline";
}

bool ExtractorDescriptor::serves(const Term& predicate, Setting setting) const {
  if (!supported_settings.contains(setting)) return false;
  if (predicate_scope.empty()) return true;
  return std::find(predicate_scope.begin(), predicate_scope.end(), predicate.value()) !=
         predicate_scope.end();
}

ExtractorRegistry::ExtractorRegistry() : fallback_(std::make_unique<BaselineExtractor>()) {}

void ExtractorRegistry::add(ExtractorDescriptor descriptor, std::unique_ptr<Extractor> extractor) {
  for (const auto& d : descriptors_) {
    if (d.id == descriptor.id) throw RegistryError("duplicate extractor id '" + descriptor.id + "'");
  }
  if (!extractor) throw RegistryError("extractor '" + descriptor.id + "' has no implementation");
  descriptors_.push_back(std::move(descriptor));
  extractors_.push_back(std::move(extractor));
}

const Extractor& ExtractorRegistry::resolve(const Term& predicate, Setting setting) const {
  for (std::size_t i = 0; i < descriptors_.size(); ++i) {
    if (descriptors_[i].serves(predicate, setting)) return *extractors_[i];
  }
  return *fallback_;
}

ExtractorRegistry ExtractorRegistry::from_json(std::string_view json_text, const TripleStore* store,
                                               const Lexicon* lexicon) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw RegistryError(std::string("registry is not JSON: ") + e.what());
  }
  if (!j.is_array()) throw RegistryError("registry must be a JSON list of descriptors");

  ExtractorRegistry reg;
  for (const auto& item : j) {
    ExtractorDescriptor d;
    try {
      d.id = item.at("id").get<std::string>();
      const auto kind = item.at("kind").get<std::string>();
      if (kind == "baseline") d.kind = ExtractorKind::kBaseline;
      else if (kind == "gold") d.kind = ExtractorKind::kGold;
      else if (kind == "remote") d.kind = ExtractorKind::kRemote;
      else throw RegistryError("unknown extractor kind '" + kind + "'");

      if (item.contains("settings")) {
        d.supported_settings.clear();
        for (const auto& s : item["settings"]) d.supported_settings.insert(parse_setting(s.get<std::string>()));
      }
      if (item.contains("predicates") && item["predicates"].is_array()) {
        d.predicate_scope = item["predicates"].get<std::vector<std::string>>();
      } else if (item.contains("predicates") && item["predicates"] != "all") {
        throw RegistryError("'predicates' must be \"all\" or a list of IRIs");
      }
      if (item.contains("endpoint")) d.endpoint = item["endpoint"].get<std::string>();
      if (item.contains("timeout_ms")) {
        d.remote.timeout = std::chrono::milliseconds(item["timeout_ms"].get<long long>());
      }
      if (item.contains("max_in_flight")) d.remote.max_in_flight = item["max_in_flight"].get<std::size_t>();
    } catch (const json::exception& e) {
      throw RegistryError(std::string("bad descriptor: ") + e.what());
    } catch (const std::invalid_argument& e) {
      throw RegistryError(std::string("bad descriptor: ") + e.what());
    }

    std::unique_ptr<Extractor> ex;
    switch (d.kind) {
      case ExtractorKind::kBaseline: ex = std::make_unique<BaselineExtractor>(d.id); break;
      case ExtractorKind::kGold:
        if (store == nullptr || lexicon == nullptr) {
          throw RegistryError("gold extractor '" + d.id + "' needs a triple store and lexicon");
        }
        ex = std::make_unique<GoldExtractor>(*store, *lexicon, d.id);
        break;
      case ExtractorKind::kRemote:
        if (!d.endpoint) throw RegistryError("remote extractor '" + d.id + "' has no endpoint");
        try {
          ex = std::make_unique<RemoteExtractor>(d.id, Endpoint::parse(*d.endpoint), d.remote);
        } catch (const std::invalid_argument& e) {
          throw RegistryError(e.what());
        }
        break;
    }
    reg.add(std::move(d), std::move(ex));
  }
  return reg;
}

ExtractorRegistry ExtractorRegistry::load(const std::filesystem::path& path,
                                          const TripleStore* store, const Lexicon* lexicon) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RegistryError("cannot open registry " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str(), store, lexicon);
}

std::string ExtractorRegistry::to_json() const {
  json out = json::array();
  for (const auto& d : descriptors_) {
    json item{{"id", d.id}, {"kind", std::string(to_string(d.kind))}};
    json settings = json::array();
    for (Setting s : d.supported_settings) settings.push_back(std::string(to_string(s)));
    item["settings"] = std::move(settings);
    if (d.predicate_scope.empty()) item["predicates"] = "all";
    else item["predicates"] = d.predicate_scope;
    if (d.endpoint) {
      item["endpoint"] = *d.endpoint;
      item["timeout_ms"] = d.remote.timeout.count();
      item["max_in_flight"] = d.remote.max_in_flight;
    }
    out.push_back(std::move(item));
  }
  return out.dump(2);
}

}  // namespace kgtext
