#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kgtext/extractors/remote.hpp"

namespace kgtext {

enum class ExtractorKind { kBaseline, kGold, kRemote };

std::string_view to_string(ExtractorKind kind);

struct ExtractorDescriptor {
  std::string id;
  ExtractorKind kind = ExtractorKind::kBaseline;
  std::set<Setting> supported_settings{Setting::kSP, Setting::kPO};
  /// Empty means every predicate.
  std::vector<std::string> predicate_scope;
  std::optional<std::string> endpoint;
  RemoteOptions remote;

  bool serves(const Term& predicate, Setting setting) const;
};

class RegistryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Routes (predicate, setting) to an extractor. Descriptors are consulted in
/// order; the first that serves the pair wins, and the built-in baseline
/// handles everything else.
class ExtractorRegistry {
 public:
  ExtractorRegistry();

  /// Gold descriptors need `store` and `lexicon`; remote ones need an
  /// endpoint. Throws RegistryError on a duplicate id or bad descriptor.
  static ExtractorRegistry from_json(std::string_view json_text, const TripleStore* store = nullptr,
                                     const Lexicon* lexicon = nullptr);
  static ExtractorRegistry load(const std::filesystem::path& path, const TripleStore* store = nullptr,
                                const Lexicon* lexicon = nullptr);

  void add(ExtractorDescriptor descriptor, std::unique_ptr<Extractor> extractor);

  const Extractor& resolve(const Term& predicate, Setting setting) const;
  const Extractor& fallback() const { return *fallback_; }
  const std::vector<ExtractorDescriptor>& descriptors() const { return descriptors_; }

  std::string to_json() const;

 private:
  std::vector<ExtractorDescriptor> descriptors_;
  std::vector<std::unique_ptr<Extractor>> extractors_;
  std::unique_ptr<Extractor> fallback_;
};

}  // namespace kgtext
