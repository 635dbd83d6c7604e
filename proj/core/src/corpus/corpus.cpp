#include "kgtext/corpus/corpus.hpp"

#include <algorithm>
#include <fstream>

#include "json.hpp"

namespace kgtext {

using nlohmann::json;

Corpus::Corpus(std::vector<Document> docs) : docs_(std::move(docs)) {
  std::sort(docs_.begin(), docs_.end(),
            [](const Document& a, const Document& b) { return a.iri < b.iri; });
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    if (docs_[i].iri.empty()) throw CorpusError("document with empty iri");
    if (!by_iri_.emplace(docs_[i].iri, i).second) {
      throw CorpusError("duplicate document iri: " + docs_[i].iri);
    }
  }
}

const Document* Corpus::find(std::string_view iri) const {
  auto it = by_iri_.find(std::string(iri));
  return it == by_iri_.end() ? nullptr : &docs_[it->second];
}

Corpus load_corpus_jsonl(std::istream& in) {
  std::vector<Document> docs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      Document d;
      d.iri = j.at("iri").get<std::string>();
      d.title = j.value("title", std::string{});
      d.text = j.at("text").get<std::string>();
      docs.push_back(std::move(d));
    } catch (const json::exception& e) {
      throw CorpusError("corpus line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return Corpus(std::move(docs));
}

Corpus load_corpus_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open corpus " + path.string());
  return load_corpus_jsonl(in);
}

void write_corpus_jsonl(std::ostream& out, const Corpus& corpus) {
  for (const Document& d : corpus.documents()) {
    out << json{{"iri", d.iri}, {"title", d.title}, {"text", d.text}}.dump() << '\n';
  }
}

}  // namespace kgtext
