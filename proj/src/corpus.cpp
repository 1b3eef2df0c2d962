#include "hdx/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "hdx/generators.hpp"
#include "hdx/io.hpp"

namespace hdx {

using nlohmann::json;

bool CorpusEntry::has_tag(const std::string& t) const {
  return std::find(tags.begin(), tags.end(), t) != tags.end();
}

WeightedComplex instance_from_spec(const json& spec, const std::string& base_dir) {
  try {
    const std::string kind = spec.at("kind").get<std::string>();
    if (kind == "single_edge") return single_edge_coloring(spec.at("n").get<int>(), spec.at("k").get<int>());
    if (kind == "coloring") {
      std::vector<Edge> edges;
      for (const auto& e : spec.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
      return coloring_complex(spec.at("vertices").get<int>(), edges, spec.at("colors").get<int>());
    }
    if (kind == "product") {
      if (spec.contains("sizes")) return uniform_product(spec.at("sizes").get<std::vector<int>>());
      std::vector<Vector> marginals;
      for (const auto& m : spec.at("marginals")) {
        auto v = m.get<std::vector<double>>();
        marginals.push_back(Eigen::Map<Vector>(v.data(), static_cast<Eigen::Index>(v.size())));
      }
      return product_complex(marginals);
    }
    if (kind == "random") {
      const std::string w = spec.value("weights", "vertex");
      if (w != "vertex" && w != "facet") throw Error(ErrorCode::InvalidArgument, "weights must be vertex or facet");
      return random_partite(spec.at("sizes").get<std::vector<int>>(), spec.at("density").get<double>(),
                            spec.at("seed").get<std::uint64_t>(), w == "vertex" ? WeightMode::Vertex : WeightMode::Facet)
          .complex;
    }
    if (kind == "file") return read_complex((std::filesystem::path(base_dir) / spec.at("path").get<std::string>()).string());
    throw Error(ErrorCode::InvalidArgument, "unknown instance kind " + kind);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::vector<CorpusEntry> load_corpus(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + manifest_path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.contains("instances")) throw Error(ErrorCode::ParseError, "malformed manifest");
  const std::string base = std::filesystem::path(manifest_path).parent_path().string();
  std::vector<CorpusEntry> out;
  for (const auto& e : j.at("instances")) {
    std::vector<std::string> tags;
    if (e.contains("tags")) tags = e.at("tags").get<std::vector<std::string>>();
    out.push_back({e.at("name").get<std::string>(), e.at("kind").get<std::string>(), std::move(tags),
                   instance_from_spec(e, base.empty() ? "." : base)});
  }
  return out;
}

}  // namespace hdx
