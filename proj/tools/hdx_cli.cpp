#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hdx/certificates.hpp"
#include "hdx/corpus.hpp"
#include "hdx/io.hpp"
#include "hdx/report.hpp"
#include "hdx/sampler.hpp"
#include "hdx/spectra.hpp"
#include "hdx/walks.hpp"

using nlohmann::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 20240601;
constexpr std::size_t kMaxFacets = 5000;

// Input failures exit 2; anything raised later while computing exits 3.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  if (const char* s = std::getenv("HDX_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw InputError("HDX_SEED is not an unsigned integer");
    }
  }
  return kDefaultSeed;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw InputError(path + ": invalid JSON");
  return j;
}

hdx::WeightedComplex load_instance(const std::string& path, const std::string& gen, bool force) {
  try {
    hdx::WeightedComplex X = gen.empty() ? hdx::read_complex(path) : hdx::instance_from_spec(json::parse(gen));
    if (X.num_facets() > kMaxFacets && !force)
      throw InputError("instance has " + std::to_string(X.num_facets()) + " facets; pass --force to analyze it");
    return X;
  } catch (const hdx::Error& e) {
    throw InputError(e.what());
  } catch (const json::exception& e) {
    throw InputError(std::string("generator spec: ") + e.what());
  }
}

std::vector<int> parse_order(const std::string& text, const hdx::WeightedComplex& X) {
  std::vector<int> order;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      order.push_back(std::stoi(tok) - 1);
    } catch (const std::exception&) {
      throw InputError("bad order entry '" + tok + "'");
    }
  }
  try {
    hdx::check_order(X, order);
  } catch (const hdx::Error& e) {
    throw InputError(e.what());
  }
  return order;
}

std::vector<std::vector<int>> parse_orders(const std::string& text, const hdx::WeightedComplex& X) {
  if (text == "canonical") return {hdx::canonical_order(X)};
  if (text == "all") {
    if (X.n() > 5) throw InputError("--orders all is limited to n <= 5");
    return hdx::all_orders(X);
  }
  return {parse_order(text, X)};
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw InputError("cannot write " + out);
  f << text;
}

int summarize_exit(const json& certs, json& summary) {
  int pass = 0, fail = 0, vac = 0;
  for (const auto& c : certs) {
    const auto v = c.at("verdict").get<std::string>();
    pass += v == "pass";
    fail += v == "fail";
    vac += v == "vacuous";
  }
  summary = {{"pass", pass}, {"fail", fail}, {"vacuous", vac}};
  return fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral and entropic analysis of weighted partite complexes"};
  app.require_subcommand(1);

  std::string path, gen, orders = "canonical", pairs = "chain", out;
  bool levels = false, csv = false, force = false;
  auto* analyze = app.add_subcommand("analyze", "Compute the spectral report of one instance");
  analyze->add_option("path", path, "Complex JSON file");
  analyze->add_option("--gen", gen, "Generator spec as JSON instead of a file");
  analyze->add_option("--orders", orders, "all | canonical | comma-separated 1-based order");
  analyze->add_flag("--levels", levels, "Include level distributions");
  analyze->add_option("--pairs", pairs, "chain | all")->check(CLI::IsMember({"chain", "all"}));
  analyze->add_flag("--csv", csv, "Emit a flat CSV row instead of JSON");
  analyze->add_option("--out", out, "Output file");
  analyze->add_flag("--force", force, "Allow more than 5000 facets");

  std::string suite = "all";
  auto* certify = app.add_subcommand("certify", "Check every theorem bound on an instance or a corpus manifest");
  certify->add_option("path", path, "Complex JSON file or corpus manifest")->required();
  certify->add_option("--suite", suite, "all | csv | cwadv | ecc | glauber | trickle")
      ->check(CLI::IsMember({"all", "csv", "cwadv", "ecc", "glauber", "trickle"}));
  certify->add_option("--orders", orders, "canonical | all");
  certify->add_option("--out", out, "Output file");
  certify->add_flag("--force", force, "Allow more than 5000 facets");

  std::string order_text, trajectory;
  int steps = 10, chains = 1000;
  std::uint64_t seed = 0;
  auto* sample = app.add_subcommand("sample", "Run the sweep sampler and report the empirical l1 curve");
  sample->add_option("path", path, "Complex JSON file");
  sample->add_option("--gen", gen, "Generator spec as JSON instead of a file");
  sample->add_option("--order", order_text, "comma-separated 1-based order");
  sample->add_option("--steps", steps, "Number of sweeps")->check(CLI::NonNegativeNumber);
  sample->add_option("--chains", chains, "Chains per start facet")->check(CLI::PositiveNumber);
  auto* seed_opt = sample->add_option("--seed", seed, "Master seed (default from HDX_SEED)");
  sample->add_option("--trajectory", trajectory, "Also write one trajectory (step,facet) to this file");
  sample->add_option("--out", out, "Output file for the curve");
  sample->add_flag("--force", force, "Allow more than 5000 facets");

  std::string spec;
  auto* generate = app.add_subcommand("generate", "Write a generated instance as complex JSON");
  generate->add_option("spec", spec, "Generator spec as JSON")->required();
  generate->add_option("--out", out, "Output file");

  std::string which = "sweep";
  auto* exportc = app.add_subcommand("export", "Write an operator as dense CSV");
  exportc->add_option("path", path, "Complex JSON file");
  exportc->add_option("--gen", gen, "Generator spec as JSON instead of a file");
  exportc->add_option("--operator", which, "sweep | glauber | update:<side> | link | influence");
  exportc->add_option("--order", order_text, "comma-separated 1-based order for sweep");
  exportc->add_option("--out", out, "Output file");
  exportc->add_flag("--force", force, "Allow more than 5000 facets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*analyze) {
      if (path.empty() == gen.empty()) throw InputError("give exactly one of a path or --gen");
      const auto X = load_instance(path, gen, force);
      hdx::AnalyzeOptions opts;
      opts.orders = parse_orders(orders, X);
      opts.all_pairs = pairs == "all";
      opts.levels = levels;
      opts.search.seed = default_seed();
      const auto r = hdx::analyze(X, opts);
      if (csv)
        emit(hdx::csv_header() + "\n" + hdx::csv_row(r, path.empty() ? "generated" : path) + "\n", out);
      else
        emit(hdx::to_json(r).dump(2) + "\n", out);
      return 0;
    }

    if (*certify) {
      if (orders != "canonical" && orders != "all") throw InputError("--orders must be canonical or all");
      const json head = read_json_file(path);
      std::vector<std::pair<std::string, hdx::WeightedComplex>> instances;
      try {
        if (head.is_object() && head.contains("instances")) {
          for (auto& e : hdx::load_corpus(path)) instances.emplace_back(e.name, std::move(e.complex));
        } else {
          instances.emplace_back(path, hdx::complex_from_json(head));
        }
      } catch (const hdx::Error& e) {
        throw InputError(e.what());
      }
      hdx::SuiteOptions opts;
      opts.suite = suite;
      opts.all_orders = orders == "all";
      opts.ecc.eta_search.seed = default_seed();
      json report = {{"report_version", 1}, {"suite", suite}};
      json items = json::array(), all_certs = json::array();
      for (const auto& [name, X] : instances) {
        if (X.num_facets() > kMaxFacets && !force) throw InputError(name + ": more than 5000 facets; pass --force");
        json certs = json::array();
        for (const auto& c : hdx::certify_suite(X, opts)) certs.push_back(hdx::to_json(c));
        json item = {{"name", name}, {"digest", hdx::complex_digest(X)}, {"certificates", certs}};
        if (suite == "all") {
          try {
            const auto mb = hdx::mixing_bounds(X, hdx::canonical_order(X), 0.01);
            item["mixing"] = {{"eps", 0.01}, {"gap", mb.gap}, {"spectral_bound", mb.spectral_bound}};
          } catch (const hdx::Error& e) {
            if (e.code() != hdx::ErrorCode::ZeroGap) throw;
            item["mixing"] = {{"eps", 0.01}, {"gap", 0.0}, {"spectral_bound", nullptr}};
          }
        }
        for (const auto& c : certs) all_certs.push_back(c);
        items.push_back(item);
      }
      json summary;
      const int code = summarize_exit(all_certs, summary);
      report["instances"] = items;
      report["summary"] = summary;
      emit(report.dump(2) + "\n", out);
      return code;
    }

    if (*sample) {
      if (path.empty() == gen.empty()) throw InputError("give exactly one of a path or --gen");
      const auto X = load_instance(path, gen, force);
      const auto order = order_text.empty() ? hdx::canonical_order(X) : parse_order(order_text, X);
      const std::uint64_t s = seed_opt->count() ? seed : default_seed();
      if (!trajectory.empty()) {
        std::ofstream f(trajectory);
        if (!f) throw InputError("cannot write " + trajectory);
        hdx::write_trajectory_csv(X, order, X.facets().front(), steps, s, f);
      }
      std::ostringstream os;
      hdx::write_tvd_csv(hdx::tvd_curve(X, order, steps, chains, s), os);
      emit(os.str(), out);
      return 0;
    }

    if (*generate) {
      const auto X = load_instance("", spec, true);
      emit(hdx::complex_to_json(X).dump(1) + "\n", out);
      return 0;
    }

    if (*exportc) {
      if (path.empty() == gen.empty()) throw InputError("give exactly one of a path or --gen");
      const auto X = load_instance(path, gen, force);
      hdx::MarkovOperator M;
      if (which == "sweep") {
        M = hdx::sequential_sweep(X, order_text.empty() ? hdx::canonical_order(X) : parse_order(order_text, X));
      } else if (which == "glauber") {
        M = hdx::down_up_walk(X);
      } else if (which.rfind("update:", 0) == 0) {
        M = hdx::update_operator(X, std::stoi(which.substr(7)) - 1);
      } else if (which == "link") {
        M = hdx::link_walk(X, hdx::Face{});
      } else if (which == "influence") {
        M = hdx::influence_matrix(X, hdx::Face{});
      } else {
        throw InputError("unknown operator " + which);
      }
      std::ostringstream os;
      hdx::write_operator_csv(M, os);
      emit(os.str(), out);
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
