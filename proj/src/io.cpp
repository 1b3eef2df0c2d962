#include "hdx/io.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hdx {

using nlohmann::json;

WeightedComplex complex_from_json(const json& j) {
  try {
    if (!j.is_object() || !j.contains("sides") || !j.contains("facets"))
      throw Error(ErrorCode::ParseError, "expected an object with \"sides\" and \"facets\"");
    auto sides = j.at("sides").get<std::vector<std::vector<int>>>();
    std::vector<std::vector<int>> facets;
    std::vector<double> weights;
    for (const auto& f : j.at("facets")) {
      facets.push_back(f.at("coords").get<std::vector<int>>());
      weights.push_back(f.contains("weight") ? f.at("weight").get<double>() : 1.0);
    }
    return build_complex(sides, facets, weights);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

json complex_to_json(const WeightedComplex& X) {
  json j;
  j["sides"] = X.vertices();
  json facets = json::array();
  for (std::size_t k = 0; k < X.num_facets(); ++k) {
    std::vector<int> coords;
    for (const auto& e : X.facets()[k].entries()) coords.push_back(e.second);
    facets.push_back({{"coords", coords}, {"weight", X.pi()[static_cast<Eigen::Index>(k)]}});
  }
  j["facets"] = facets;
  return j;
}

WeightedComplex parse_complex(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::ParseError, "invalid JSON");
  return complex_from_json(j);
}

WeightedComplex read_complex(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_complex(ss.str());
}

void write_complex(const WeightedComplex& X, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << complex_to_json(X).dump(1) << '\n';
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string complex_digest(const WeightedComplex& X) {
  std::ostringstream os;
  for (std::size_t p = 0; p < X.vertices().size(); ++p) {
    os << 's' << X.side_labels()[p] << ':';
    for (int v : X.vertices()[p]) os << v << ',';
  }
  for (std::size_t k = 0; k < X.num_facets(); ++k)
    os << 'f' << X.facets()[k].label() << '=' << format_double(X.pi()[static_cast<Eigen::Index>(k)]);
  const std::string s = os.str();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

void write_operator_csv(const MarkovOperator& M, std::ostream& os) {
  os << "state";
  for (const auto& f : M.codomain_states) os << ',' << f.label();
  os << '\n';
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    os << M.domain_states[static_cast<std::size_t>(r)].label();
    for (Eigen::Index c = 0; c < M.cols(); ++c) os << ',' << format_double(M.matrix(r, c));
    os << '\n';
  }
}

}  // namespace hdx
