// hecke-cf: command-line front end over the heckecf C API.
#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <string>

#include "heckecf/heckecf.h"

namespace {

constexpr const char* kSubcommands =
    "field, generators, embed, tree-validate, map-table, attractor, dual, census, minkowski-eval, "
    "minkowski-invert, hoelder, jsr, density, transfer-check, orbit, poincare";

struct Options {
  int m = 3;
  std::string tree;
  std::string format = "text";
  int level = 8;
  int digits = 20;
  unsigned precision_bits = 256;
  size_t count = 8000;
  std::string seed_preset;
  std::string seed_x = "m=7:L-1";
  std::string seed_y = "1/2";
  std::string mode = "exact";
  std::string output;
  std::string word;
  std::string target = "A";
  std::string x = "0";
  std::string y = "1/2";
  int depth = 30;
  int samples = 0;
  int n_max = 8;
  int witness = 0;
  std::string picture = "unit";
  std::string side = "forward";
  double lo = 0.0, hi = 0.0;
};

struct BufferDeleter {
  void operator()(hcf_buffer* b) const { hcf_buffer_free(b); }
};
struct TreeDeleter {
  void operator()(hcf_tree* t) const { hcf_tree_free(t); }
};
struct AttractorDeleter {
  void operator()(hcf_attractor* a) const { hcf_attractor_free(a); }
};
using Buffer = std::unique_ptr<hcf_buffer, BufferDeleter>;
using Tree = std::unique_ptr<hcf_tree, TreeDeleter>;
using Attractor = std::unique_ptr<hcf_attractor, AttractorDeleter>;

struct Failure {
  hcf_status status;
};

void check(hcf_status s) {
  if (s != HCF_OK) throw Failure{s};
}

// "jump:N" names the m = 3 jump tree; anything else is a leaf list.
Tree load_tree(const Options& o) {
  if (o.tree.empty()) throw CLI::ValidationError("--tree", "this subcommand needs --tree");
  hcf_tree* t = nullptr;
  if (o.tree.rfind("jump:", 0) == 0) {
    int n = 0;
    try {
      n = std::stoi(o.tree.substr(5));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--tree", "jump:N needs an integer N");
    }
    check(hcf_tree_jump(n, &t));
  } else {
    check(hcf_tree_parse(o.m, o.tree.c_str(), &t));
  }
  return Tree(t);
}

Attractor load_attractor(const Options& o) {
  Tree t = load_tree(o);
  hcf_attractor* a = nullptr;
  check(hcf_attractor_compute(t.get(), o.level, &a));
  return Attractor(a);
}

hcf_density_request density_request(const Options& o) {
  return {o.picture.c_str(), o.level, o.lo, o.hi, o.samples > 0 ? o.samples : 20};
}

std::string run_command(const std::string& name, const Options& o) {
  hcf_buffer* raw = nullptr;
  const char* f = o.format.c_str();
  if (name == "field") {
    check(hcf_report_field(o.m, o.digits, f, &raw));
  } else if (name == "generators") {
    check(hcf_report_generators(o.m, f, &raw));
  } else if (name == "embed") {
    check(hcf_report_embed(o.m, o.word.c_str(), o.target.c_str(), f, &raw));
  } else if (name == "tree-validate") {
    check(hcf_report_tree_validate(o.m, o.tree.c_str(), f, &raw));
  } else if (name == "map-table") {
    check(hcf_report_map_table(load_tree(o).get(), f, &raw));
  } else if (name == "attractor") {
    check(hcf_report_attractor(load_attractor(o).get(), o.digits, f, &raw));
  } else if (name == "dual") {
    check(hcf_report_dual(load_attractor(o).get(), o.digits, f, &raw));
  } else if (name == "census") {
    check(hcf_report_census(load_attractor(o).get(), f, &raw));
  } else if (name == "minkowski-eval") {
    check(hcf_report_minkowski_eval(o.m, o.x.c_str(), o.depth, o.samples, f, &raw));
  } else if (name == "minkowski-invert") {
    check(hcf_report_minkowski_invert(o.m, o.y.c_str(), o.depth, o.digits, f, &raw));
  } else if (name == "hoelder") {
    check(hcf_report_hoelder(o.m, o.digits, f, &raw));
  } else if (name == "jsr") {
    check(hcf_report_jsr(o.m, o.n_max, o.witness, f, &raw));
  } else if (name == "density") {
    const hcf_density_request req = density_request(o);
    check(hcf_report_density(load_tree(o).get(), &req, f, &raw));
  } else if (name == "transfer-check") {
    const hcf_density_request req = density_request(o);
    check(hcf_report_transfer_check(load_tree(o).get(), &req, o.side.c_str(), f, &raw));
  } else if (name == "orbit") {
    std::string seed_x = o.seed_x;
    if (!o.seed_preset.empty()) {
      hcf_buffer* preset = nullptr;
      check(hcf_seed_preset(o.seed_preset.c_str(), &preset));
      seed_x = hcf_buffer_data(preset);
      hcf_buffer_free(preset);
    }
    const hcf_orbit_request req{seed_x.c_str(), o.seed_y.c_str(), o.count, o.mode == "interval" ? 1 : 0,
                                o.precision_bits, o.digits};
    check(hcf_report_orbit(load_tree(o).get(), &req, f, &raw));
  } else if (name == "poincare") {
    check(hcf_report_poincare(load_tree(o).get(), o.depth, f, &raw));
  }
  Buffer buf(raw);
  return buf ? std::string(hcf_buffer_data(buf.get()), hcf_buffer_size(buf.get())) : std::string();
}

// Relative --output paths land in $HECKECF_OUT_DIR when it is set.
std::filesystem::path output_path(const std::string& output) {
  std::filesystem::path p(output);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("HECKECF_OUT_DIR"); dir && *dir) return std::filesystem::path(dir) / p;
  }
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hecke-group continued fractions, attractors and densities"};
  app.require_subcommand(1);
  Options o;

  const CLI::IsMember formats({"text", "json", "csv", "svg"});
  auto common = [&](CLI::App* sub) {
    sub->add_option("--m", o.m, "Hecke index m (lambda = 2cos(pi/m))")->check(CLI::Range(3, 200));
    sub->add_option("--format", o.format, "text, json, csv or svg")->check(formats);
    sub->add_option("--output", o.output, "write to this file instead of stdout");
  };
  auto with_tree = [&](CLI::App* sub) {
    sub->add_option("--tree", o.tree, "comma-separated leaf words, or jump:N");
  };
  auto with_level = [&](CLI::App* sub) {
    sub->add_option("--level", o.level, "cover level")->check(CLI::Range(0, 64));
  };
  auto with_digits = [&](CLI::App* sub, int def) {
    o.digits = def;
    sub->add_option("--digits", o.digits, "decimal digits")->check(CLI::Range(1, 1000));
  };

  common(app.add_subcommand("field", "minimal polynomial and lambda"));
  with_digits(app.get_subcommand("field"), 20);
  common(app.add_subcommand("generators", "L, S, F, R and the A_j, B_j matrices"));

  auto* embed = app.add_subcommand("embed", "embed a monoid word as A, B or C");
  common(embed);
  embed->add_option("word,--word", o.word, "monoid word, e.g. 12f")->required();
  embed->add_option("--target", o.target, "A, B or C")->check(CLI::IsMember({"A", "B", "C", "a", "b", "c"}));

  auto* validate = app.add_subcommand("tree-validate", "check a decorated tree");
  common(validate);
  validate->add_option("--tree", o.tree, "comma-separated leaf words")->required();

  auto* map_table = app.add_subcommand("map-table", "branches of the Farey-like map");
  common(map_table);
  with_tree(map_table);

  for (const char* name : {"attractor", "dual", "census"}) {
    auto* sub = app.add_subcommand(name, std::string(name) == "attractor" ? "cover of the dual attractor"
                                         : std::string(name) == "dual"    ? "dual map branches"
                                                                           : "component counts per level");
    common(sub);
    with_tree(sub);
    with_level(sub);
    sub->add_option("--digits", o.digits, "decimal digits")->check(CLI::Range(1, 1000));
  }

  auto* meval = app.add_subcommand("minkowski-eval", "generalized Minkowski function");
  common(meval);
  meval->add_option("--x", o.x, "point in [0, 1/lambda], e.g. 1/3 or m=5:L-1");
  meval->add_option("--depth", o.depth, "digit depth")->check(CLI::Range(0, 100000));
  meval->add_option("--samples", o.samples, "tabulate on a grid of this many steps")->check(CLI::Range(0, 100000));

  auto* minv = app.add_subcommand("minkowski-invert", "cylinder bracket of the inverse");
  common(minv);
  minv->add_option("--y", o.y, "target value in [0, 1], p/q or decimal");
  minv->add_option("--depth", o.depth, "digit depth")->check(CLI::Range(0, 100000));
  minv->add_option("--digits", o.digits, "decimal digits")->check(CLI::Range(1, 1000));

  auto* hoelder = app.add_subcommand("hoelder", "Hoelder exponent of the Minkowski function");
  common(hoelder);
  hoelder->add_option("--digits", o.digits, "decimal digits")->check(CLI::Range(1, 1000));

  auto* jsr = app.add_subcommand("jsr", "joint spectral radius bounds");
  common(jsr);
  jsr->add_option("--n-max", o.n_max, "longest product")->check(CLI::Range(1, 10));
  jsr->add_option("--witness", o.witness, "rows of the optimality witness")->check(CLI::Range(0, 200));

  for (const char* name : {"density", "transfer-check"}) {
    auto* sub = app.add_subcommand(name, std::string(name) == "density" ? "invariant density samples"
                                                                          : "transfer-operator residuals");
    common(sub);
    with_tree(sub);
    with_level(sub);
    sub->add_option("--picture", o.picture, "unit or infinite")->check(CLI::IsMember({"unit", "infinite"}));
    sub->add_option("--samples", o.samples, "sample count")->check(CLI::Range(1, 1000000));
    sub->add_option("--lo", o.lo, "range start");
    sub->add_option("--hi", o.hi, "range end");
    if (std::string(name) == "transfer-check")
      sub->add_option("--side", o.side, "forward or dual")->check(CLI::IsMember({"forward", "dual"}));
  }

  auto* orbit = app.add_subcommand("orbit", "natural-extension orbit");
  common(orbit);
  with_tree(orbit);
  orbit->add_option("--seed-preset", o.seed_preset, "named seed (cubic)")->check(CLI::IsMember({"cubic"}));
  orbit->add_option("--seed-x", o.seed_x, "seed x");
  orbit->add_option("--seed-y", o.seed_y, "seed y");
  orbit->add_option("--count", o.count, "number of points")->check(CLI::Range(0, 100000000));
  orbit->add_option("--mode", o.mode, "exact or interval")->check(CLI::IsMember({"exact", "interval"}));
  orbit->add_option("--precision-bits", o.precision_bits, "interval precision")->check(CLI::Range(16, 1 << 20));
  orbit->add_option("--digits", o.digits, "decimal digits")->check(CLI::Range(1, 40));

  auto* poincare = app.add_subcommand("poincare", "Poincare series partial sums");
  common(poincare);
  with_tree(poincare);
  poincare->add_option("--depth", o.depth, "longest word")->check(CLI::Range(0, 64));

  // Per-subcommand defaults that differ from the shared ones.
  app.get_subcommand("field")->preparse_callback([&](size_t) { o.digits = 20; });
  app.get_subcommand("poincare")->preparse_callback([&](size_t) { o.depth = 10; });
  orbit->preparse_callback([&](size_t) { o.digits = 17; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "hecke-cf: " << e.what() << "\nvalid subcommands: " << kSubcommands << "\n";
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  std::string text;
  try {
    text = run_command(name, o);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "hecke-cf " << name << ": " << e.what() << "\n";
    return 2;
  } catch (const Failure& f) {
    std::cerr << "hecke-cf " << name << ": " << hcf_last_error() << "\n";
    return f.status == HCF_USAGE ? 2 : 1;
  }

  if (o.output.empty() || o.output == "-") {
    std::cout << text;
    return std::cout.good() ? 0 : 1;
  }
  const std::filesystem::path path = output_path(o.output);
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "hecke-cf: cannot write " << path.string() << "\n";
    return 1;
  }
  return 0;
}
