// flatband: command-line front end over the C API.
//
// Exit codes: 0 success, 1 runtime failure (cap exceeded, numerical),
// 2 usage or validation error, 3 search budget exhausted (partial result
// written), 4 a computed value left its proven bracket.

#include "flatband/flatband.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitBracket = 4;

struct Failure {
  int code;
  std::string message;
};

int exit_code(fb_status s) {
  switch (s) {
    case FB_OK: return 0;
    case FB_ERR_INVALID_ARGUMENT: return kExitUsage;
    case FB_ERR_BUDGET_EXHAUSTED: return kExitBudget;
    case FB_ERR_BRACKET_VIOLATION: return kExitBracket;
    default: return kExitRuntime;
  }
}

void check(fb_status s) {
  if (s != FB_OK) throw Failure{exit_code(s), fb_last_error()};
}

std::string take(char* s) {
  std::string out(s ? s : "");
  fb_string_free(s);
  return out;
}

using TorusPtr = std::unique_ptr<fb_torus, decltype(&fb_torus_destroy)>;
using DecompPtr = std::unique_ptr<fb_decomposition, decltype(&fb_decomposition_destroy)>;

std::vector<int> parse_ints(const std::string& text, std::size_t expected) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Failure{kExitUsage, "not an integer: '" + item + "'"};
    }
  }
  if (out.size() != expected)
    throw Failure{kExitUsage, "expected " + std::to_string(expected) + " comma-separated values, got '" + text + "'"};
  return out;
}

TorusPtr make_torus(const std::string& size) {
  const auto l = parse_ints(size, 3);
  fb_torus* t = nullptr;
  check(fb_torus_create(l[0], l[1], l[2], &t));
  return TorusPtr(t, &fb_torus_destroy);
}

struct Config {
  std::string size = "4,4,4";
  std::string format = "json";
  std::string output;
  std::uint64_t budget_nodes = 0;
  double budget_seconds = 0.0;
  std::size_t limit = 1000;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  double tol = 1e-9;
};

fb_budget budget(const Config& c) { return fb_budget{c.budget_nodes, c.budget_seconds}; }

// Relative output paths land in $FLATBAND_OUTPUT_DIR when it is set.
void write(const Config& c, const std::string& text) {
  if (c.output.empty() || c.output == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::filesystem::path path(c.output);
  if (path.is_relative())
    if (const char* dir = std::getenv("FLATBAND_OUTPUT_DIR"); dir && *dir) path = std::filesystem::path(dir) / path;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Failure{kExitRuntime, "cannot open " + path.string() + " for writing"};
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  if (!out) throw Failure{kExitRuntime, "write to " + path.string() + " failed"};
}

void require_format(const Config& c, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (c.format == f) return;
  std::string list;
  for (const char* f : allowed) list += (list.empty() ? "" : ", ") + std::string(f);
  throw Failure{kExitUsage, "format '" + c.format + "' is not available here (use " + list + ")"};
}

std::string csv_of(const char* kind, const std::string& report) {
  char* out = nullptr;
  check(fb_report_csv(kind, report.c_str(), &out));
  return take(out);
}

int run_lattice(const Config& c, bool line_graph, bool dump) {
  require_format(c, {"json", "dot", "csv"});
  auto t = make_torus(c.size);
  char* out = nullptr;
  if (c.format == "dot") {
    check(fb_lattice_dot(t.get(), line_graph ? 1 : 0, &out));
    write(c, take(out));
    return 0;
  }
  if (dump) {
    require_format(c, {"json"});
    check(fb_lattice_json(t.get(), &out));
    write(c, take(out));
    return 0;
  }
  check(fb_lattice_summary(t.get(), c.tol, &out));
  const std::string summary = take(out);
  if (c.format == "csv") {
    const auto j = json::parse(summary);
    std::ostringstream os;
    os << "spec,vertices,edges,min_degree,max_degree,line_degree,kernel_dim,face_span_rank,flat_band_multiplicity\n";
    const auto& s = j["size"];
    os << s[0] << "x" << s[1] << "x" << s[2] << "," << j["vertices"] << "," << j["edges"] << "," << j["minDegree"]
       << "," << j["maxDegree"] << "," << j["maxLineDegree"] << "," << j["kernelDim"] << "," << j["faceSpanRank"]
       << "," << j["flatBandMultiplicity"] << "\n";
    write(c, os.str());
    return 0;
  }
  write(c, summary);
  return 0;
}

int run_count(const Config& c) {
  require_format(c, {"json", "csv"});
  auto t = make_torus(c.size);
  const auto b = budget(c);
  char* out = nullptr;
  check(fb_decomp_count(t.get(), &b, c.threads, &out));
  const std::string report = take(out);
  write(c, c.format == "csv" ? csv_of("count", report) : report);
  return json::parse(report).at("completed").get<bool>() ? 0 : kExitBudget;
}

int run_enumerate(const Config& c) {
  require_format(c, {"json"});
  auto t = make_torus(c.size);
  const auto b = budget(c);
  char* out = nullptr;
  check(fb_decomp_enumerate(t.get(), c.limit, &b, &out));
  const std::string report = take(out);
  write(c, report);
  const auto j = json::parse(report);
  if (j.at("invalid").get<std::size_t>() > 0 || j.at("profileViolations").get<std::size_t>() > 0)
    throw Failure{kExitRuntime, "enumerated decompositions failed verification"};
  return j.at("completed").get<bool>() ? 0 : kExitBudget;
}

DecompPtr load_or_tower(const fb_torus* t, const std::string& input, const std::string& phase) {
  fb_decomposition* d = nullptr;
  if (!input.empty()) {
    std::ifstream in(input);
    if (!in) throw Failure{kExitUsage, "cannot read " + input};
    std::stringstream ss;
    ss << in.rdbuf();
    check(fb_decomposition_parse(ss.str().c_str(), &d));
  } else {
    const auto p = parse_ints(phase, 3);
    check(fb_tower(t, p[0], p[1], p[2], &d));
  }
  return DecompPtr(d, &fb_decomposition_destroy);
}

int run_towers(const Config& c, const std::string& phase) {
  require_format(c, {"json"});
  auto t = make_torus(c.size);
  auto d = load_or_tower(t.get(), "", phase);
  char* out = nullptr;
  check(fb_decomposition_json(t.get(), d.get(), &out));
  json j = json::parse(take(out));
  check(fb_decomposition_verify(t.get(), d.get(), &out));
  j["verify"] = json::parse(take(out));
  write(c, j.dump(2));
  return j["verify"]["valid"].get<bool>() ? 0 : kExitRuntime;
}

int run_slice(const Config& c, const std::string& input, const std::string& phase, const std::string& plane,
              int layer) {
  require_format(c, {"json", "ascii"});
  auto t = make_torus(c.size);
  auto d = load_or_tower(t.get(), input, phase);
  char* out = nullptr;
  check(fb_decomposition_slice(t.get(), d.get(), plane.c_str(), layer, c.format == "ascii", &out));
  write(c, take(out));
  return 0;
}

int run_packings(const Config& c) {
  require_format(c, {"json", "ascii"});
  const auto l = parse_ints(c.size, 2);
  char* out = nullptr;
  check(fb_packings2d(l[0], l[1], &out));
  const std::string report = take(out);
  const auto j = json::parse(report);
  if (c.format == "json") {
    write(c, report);
  } else {
    std::ostringstream os;
    os << j["count"] << " packings of " << l[0] << "x" << l[1] << ", all classified: " << j["allClassified"] << "\n";
    for (const auto& p : j["packings"]) {
      const int la = l[0], lb = l[1];
      std::vector<std::string> grid(lb, std::string(la, '.'));
      char label = 'A';
      for (const auto& s : p["squares"]) {
        for (int da = 0; da < 2; ++da)
          for (int db = 0; db < 2; ++db)
            grid[(s[1].get<int>() + db) % lb][(s[0].get<int>() + da) % la] = label;
        label = static_cast<char>(label == 'Z' ? 'A' : label + 1);
      }
      os << "\n" << p["class"]["kind"].get<std::string>() << " base " << p["class"]["base"] << "\n";
      for (const auto& row : grid) os << row << "\n";
    }
    write(c, os.str());
  }
  return j["allClassified"].get<bool>() ? 0 : kExitRuntime;
}

int run_manybody(const Config& c, const std::string& action, int length, std::size_t samples, long particles) {
  require_format(c, action == "entropy" ? std::initializer_list<const char*>{"json", "csv"}
                                        : std::initializer_list<const char*>{"json"});
  char* out = nullptr;
  if (action == "column-gram") {
    check(fb_column_gram(length, &out));
    write(c, take(out));
    return 0;
  }
  auto t = make_torus(c.size);
  if (action == "rotated-rank") {
    check(fb_rotated_rank(t.get(), c.threads, &out));
  } else if (action == "span-rank") {
    check(fb_span_rank(t.get(), c.limit, c.threads, &out));
  } else if (action == "zero2") {
    check(fb_zero_modes(t.get(), samples, c.seed, &out));
  } else {
    int ext[3];
    check(fb_torus_extents(t.get(), ext));
    const long critical = 3L * ext[0] * ext[1] * ext[2] / 4;
    const long n = particles < 0 ? critical : particles;
    if (n > critical)
      throw Failure{kExitUsage, "particle number " + std::to_string(n) + " exceeds the critical number " +
                                    std::to_string(critical)};
    check(fb_entropy(static_cast<std::uint64_t>(critical), static_cast<std::uint64_t>(n), &out));
    const std::string report = take(out);
    write(c, c.format == "csv" ? csv_of("entropy", report) : report);
    return 0;
  }
  write(c, take(out));
  return 0;
}

int run_report(const Config& c) {
  require_format(c, {"json", "csv"});
  auto t = make_torus(c.size);
  const auto b = budget(c);
  char* out = nullptr;
  check(fb_report(t.get(), &b, c.threads, &out));
  const std::string report = take(out);
  write(c, c.format == "csv" ? csv_of("bounds", report) : report);
  const auto& omega = json::parse(report).at("omega4");
  return omega.is_null() || omega.at("completed").get<bool>() ? 0 : kExitBudget;
}

void add_common(CLI::App* app, Config& c, bool search) {
  app->add_option("--size", c.size, "extents as L1,L2,L3")->capture_default_str();
  app->add_option("--format", c.format, "json, csv, dot or ascii (per command)")->capture_default_str();
  app->add_option("-o,--output", c.output, "output file (relative paths go under $FLATBAND_OUTPUT_DIR)");
  app->add_option("--threads", c.threads, "worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));
  app->add_option("--seed", c.seed, "seed for random primes and spot checks")->capture_default_str();
  if (search) {
    app->add_option("--budget-nodes", c.budget_nodes, "search node limit (0 = none)")->capture_default_str();
    app->add_option("--budget-seconds", c.budget_seconds, "search time limit (0 = none)")->capture_default_str();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact experiments on the line graph of the cubic torus"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fb_version()));
  Config cfg;

  auto* lattice = app.add_subcommand("lattice", "lattice summary, DOT graphs or a JSON dump");
  add_common(lattice, cfg, false);
  bool line_graph = false, dump = false;
  lattice->add_flag("--line-graph", line_graph, "DOT output of L(G) instead of G");
  lattice->add_flag("--dump", dump, "vertex and edge lists instead of the summary");
  lattice->add_option("--tol", cfg.tol, "zero tolerance for the eigenvalue check")->capture_default_str();

  auto* decomp = app.add_subcommand("decomp", "4-cycle decompositions");
  decomp->require_subcommand(1);
  auto* count = decomp->add_subcommand("count", "exact number of decompositions");
  add_common(count, cfg, true);
  auto* enumerate = decomp->add_subcommand("enumerate", "list decompositions in search order");
  add_common(enumerate, cfg, true);
  enumerate->add_option("--limit", cfg.limit, "maximum number listed")->capture_default_str();
  std::string phase = "0,0,0", input, plane = "XY";
  int layer = 0;
  auto* towers = decomp->add_subcommand("towers", "periodic tower decomposition with verification");
  add_common(towers, cfg, false);
  towers->add_option("--phase", phase, "translate a,b,c with entries 0 or 1")->capture_default_str();
  auto* slice = decomp->add_subcommand("slice", "faces of one orientation in one layer");
  add_common(slice, cfg, false);
  slice->add_option("--phase", phase, "tower translate when no input is given")->capture_default_str();
  slice->add_option("--input", input, "decomposition JSON file");
  slice->add_option("--plane", plane, "XY, YZ or ZX")->capture_default_str();
  slice->add_option("--layer", layer, "coordinate along the plane normal")->capture_default_str();
  auto* packings = decomp->add_subcommand("packings2d", "perfect 2x2 packings of a square torus");
  add_common(packings, cfg, false);
  packings->get_option("--size")->description("extents as La,Lb");

  auto* manybody = app.add_subcommand("manybody", "bosonic product states and zero modes");
  manybody->require_subcommand(1);
  int length = 4;
  std::size_t samples = 10;
  long particles = -1;
  auto* column_gram = manybody->add_subcommand("column-gram", "up/down overlaps of one column");
  add_common(column_gram, cfg, false);
  column_gram->add_option("--length", length, "column length")->capture_default_str();
  auto* rotated = manybody->add_subcommand("rotated-rank", "Gram rank of the rotated tower family");
  add_common(rotated, cfg, false);
  auto* span = manybody->add_subcommand("span-rank", "Gram rank of the first decompositions");
  add_common(span, cfg, false);
  span->add_option("--limit", cfg.limit, "number of decompositions")->capture_default_str();
  auto* zero2 = manybody->add_subcommand("zero2", "two-boson zero modes");
  add_common(zero2, cfg, false);
  zero2->add_option("--samples", samples, "basis vectors checked exactly")->capture_default_str();
  auto* entropy = manybody->add_subcommand("entropy", "dilution count and entropy bound");
  add_common(entropy, cfg, false);
  entropy->add_option("--particles", particles, "boson number (default: critical)");

  auto* report = app.add_subcommand("report", "bounds compared with computed values");
  add_common(report, cfg, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    int code = 0;
    if (*lattice) code = run_lattice(cfg, line_graph, dump);
    else if (*count) code = run_count(cfg);
    else if (*enumerate) code = run_enumerate(cfg);
    else if (*towers) code = run_towers(cfg, phase);
    else if (*slice) code = run_slice(cfg, input, phase, plane, layer);
    else if (*packings) {
      if (packings->count("--size") == 0) cfg.size = "4,4";
      code = run_packings(cfg);
    }
    else if (*column_gram) code = run_manybody(cfg, "column-gram", length, samples, particles);
    else if (*rotated) code = run_manybody(cfg, "rotated-rank", length, samples, particles);
    else if (*span) {
      if (span->count("--limit") == 0) cfg.limit = 16;
      code = run_manybody(cfg, "span-rank", length, samples, particles);
    } else if (*zero2) code = run_manybody(cfg, "zero2", length, samples, particles);
    else if (*entropy) code = run_manybody(cfg, "entropy", length, samples, particles);
    else if (*report) code = run_report(cfg);
    if (code == kExitBudget) std::cerr << "flatband: search budget exhausted; partial result written\n";
    return code;
  } catch (const Failure& f) {
    std::cerr << "flatband: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "flatband: " << e.what() << "\n";
    return kExitRuntime;
  }
}
