#ifndef HDX_CORPUS_HPP
#define HDX_CORPUS_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "hdx/complex.hpp"

namespace hdx {

struct CorpusEntry {
  std::string name;
  std::string kind;
  std::vector<std::string> tags;
  WeightedComplex complex;

  bool has_tag(const std::string& t) const;
};

// Builds one instance from a generator description such as
// {"kind":"random","sizes":[3,3],"density":0.8,"seed":7,"weights":"facet"}.
// File entries resolve "path" against base_dir.
WeightedComplex instance_from_spec(const nlohmann::json& spec, const std::string& base_dir = ".");

// {"instances": [ {"name": ..., "kind": ..., "tags": [...], ...}, ... ]}
std::vector<CorpusEntry> load_corpus(const std::string& manifest_path);

}  // namespace hdx

#endif  // HDX_CORPUS_HPP
