// Command-line front end: compute, verify, render, gen, bench.
//
// Exit codes: 0 success, 2 unreadable input or bad arguments, 3 solver (or
// render) failure, 4 verification failure. Errors are also written to
// standard error as one JSON record.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "smvd/instances.hpp"
#include "smvd/io.hpp"
#include "smvd/render.hpp"
#include "smvd/verify.hpp"

using namespace smvd;

namespace {

constexpr int kParseExit = 2;
constexpr int kSolverExit = 3;
constexpr int kVerifyExit = 4;

int fail(const Error& e, int code) {
  std::cerr << error_record(e) << '\n';
  return code;
}

Metric named_metric(const std::string& name) {
  if (name == "euclidean") return Metric::euclidean();
  if (name == "linf") return Metric::polygonal({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}});
  if (name == "l1") return Metric::polygonal({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  throw Error(ErrorCode::InvalidInput, "unknown metric '" + name + "' (euclidean, linf, l1)");
}

struct ComputeArgs {
  std::string instance, out;
  std::optional<double> eps_area, eps_radius, bbox_scale;
  int threads = 0;
  bool serial = false;
};

int run_compute(const ComputeArgs& a) {
  Instance inst;
  try {
    inst = load_instance(a.instance);
  } catch (const Error& e) {
    return fail(e, kParseExit);
  }
  try {
    SolverConfig cfg = inst.config;
    if (a.eps_area) cfg.tol.eps_area_rel = *a.eps_area;
    if (a.eps_radius) cfg.tol.eps_radius_rel = *a.eps_radius;
    if (a.bbox_scale) cfg.bbox_scale = *a.bbox_scale;
    cfg.threads = a.threads;
    cfg.parallel = !a.serial;
    const StableDiagram d = solve(inst.sites, inst.metric, cfg);
    save_diagram(a.out, d);
    std::printf("solved %zu sites: %ld faces, %ld edges, %ld vertices, %ld primitive calls, %.3f s\n",
                d.regions.size(), d.counts.faces, d.counts.edges, d.counts.vertices, d.stats.primitive_calls,
                d.stats.wall_seconds);
  } catch (const Error& e) {
    return fail(e, kSolverExit);
  }
  return 0;
}

struct VerifyArgs {
  std::string instance, diagram;
  int grid_res = 0;
  long samples = 100000;
  std::uint64_t seed = 1;
};

int run_verify(const VerifyArgs& a) {
  Instance inst;
  StableDiagram d;
  try {
    inst = load_instance(a.instance);
    d = load_diagram(a.diagram);
  } catch (const Error& e) {
    return fail(e, kParseExit);
  }
  VerifyOptions o;
  o.samples = a.samples;
  o.grid_resolution = a.grid_res;
  o.seed = a.seed;
  VerifyReport rep;
  try {
    rep = verify(inst.sites, d, o);
  } catch (const Error& e) {
    return fail(e, kVerifyExit);
  }
  for (const CheckResult& c : rep.checks)
    std::printf("%s %s: %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
  if (!rep.passed()) {
    std::string failed;
    for (const CheckResult& c : rep.checks)
      if (!c.passed) failed += (failed.empty() ? "" : ", ") + c.name;
    std::cerr << error_record(Error(ErrorCode::InvalidInput, "failed: " + failed)) << '\n';
    return kVerifyExit;
  }
  return 0;
}

struct RenderArgs {
  std::string diagram, out;
  RenderOptions opt;
};

int run_render(const RenderArgs& a) {
  try {
    const StableDiagram d = load_diagram(a.diagram);
    std::ofstream out(a.out);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + a.out);
    render_svg(out, d, a.opt);
  } catch (const Error& e) {
    return fail(e, kSolverExit);
  }
  return 0;
}

struct GenArgs {
  std::string kind, out, metric = "euclidean";
  int n = 10, m = 8;
  double appetite_lo = 1.0, appetite_hi = 1.0, spread = 10.0, b = 0.3, appetite = 1.0;
  std::uint64_t seed = 1;
};

int run_gen(const GenArgs& a) {
  try {
    Instance inst;
    inst.metric = named_metric(a.metric);
    if (a.kind == "random") {
      inst.sites = random_instance(a.n, a.appetite_lo, std::max(a.appetite_lo, a.appetite_hi), a.seed, a.spread);
      inst.seed = a.seed;
    } else if (a.kind == "lower-bound") {
      inst.sites = lower_bound_family(a.m);
    } else {
      inst.sites = two_site_fixture(a.b, a.appetite);
    }
    if (a.out.empty() || a.out == "-") {
      write_instance(std::cout, inst);
    } else {
      save_instance(a.out, inst);
    }
  } catch (const Error& e) {
    return fail(e, kParseExit);
  }
  return 0;
}

struct BenchArgs {
  std::vector<int> sizes{10, 20, 40, 80};
  std::uint64_t seed = 1;
  int threads = 0;
  bool serial = false;
  std::string metric = "euclidean";
};

int run_bench(const BenchArgs& a) {
  bool ok = true;
  std::printf("%6s %12s %12s %10s\n", "n", "seconds", "calls", "budget");
  for (int n : a.sizes) {
    try {
      // Constant density: about one unit of appetite per unit of area.
      const auto sites = random_instance(n, 0.5, 3.0, a.seed, std::sqrt(1.75 * n));
      SolverConfig cfg;
      cfg.threads = a.threads;
      cfg.parallel = !a.serial;
      const StableDiagram d = solve(sites, named_metric(a.metric), cfg);
      const long budget = static_cast<long>(n) * (n + 1) / 2 + n;
      ok = ok && d.stats.primitive_calls <= budget;
      std::printf("%6d %12.4f %12ld %10ld\n", n, d.stats.wall_seconds, d.stats.primitive_calls, budget);
    } catch (const Error& e) {
      return fail(e, kSolverExit);
    }
  }
  if (!ok) {
    std::cerr << error_record(Error(ErrorCode::InvalidInput, "primitive-call budget exceeded")) << '\n';
    return kVerifyExit;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable-matching Voronoi diagrams"};
  app.require_subcommand(1);
  int code = 0;

  ComputeArgs ca;
  auto* compute = app.add_subcommand("compute", "Solve an instance file and write a diagram file");
  compute->add_option("instance", ca.instance)->required();
  compute->add_option("out", ca.out)->required();
  compute->add_option("--eps-area", ca.eps_area, "Area tolerance relative to the appetite");
  compute->add_option("--eps-radius", ca.eps_radius, "Radius tolerance relative to the instance scale");
  compute->add_option("--bbox-scale", ca.bbox_scale, "Safety factor on the working box");
  compute->add_option("--threads", ca.threads, "OpenMP threads (0: default)");
  compute->add_flag("--serial", ca.serial, "Run the serial reference path");
  compute->callback([&] { code = run_compute(ca); });

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "Check a diagram against its instance");
  ver->add_option("instance", va.instance)->required();
  ver->add_option("diagram", va.diagram)->required();
  ver->add_option("--grid-res", va.grid_res, "Also compare with the pixel-grid process at this resolution");
  ver->add_option("--samples", va.samples, "Stability samples");
  ver->add_option("--seed", va.seed);
  ver->callback([&] { code = run_verify(va); });

  RenderArgs ra;
  auto* ren = app.add_subcommand("render", "Draw a diagram as SVG");
  ren->add_option("diagram", ra.diagram)->required();
  ren->add_option("out", ra.out)->required();
  ren->add_option("--palette", ra.opt.palette)->check(CLI::IsMember({"hue", "grey"}));
  ren->add_flag("--show-disks", ra.opt.show_disks, "Overlay bounding circles");
  ren->add_flag("--show-voronoi", ra.opt.show_voronoi, "Overlay the standard Voronoi diagram");
  ren->add_option("--width", ra.opt.width, "Image width in pixels");
  ren->callback([&] { code = run_render(ra); });

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "Write a generated instance file");
  gen->add_option("kind", ga.kind)->required()->check(CLI::IsMember({"random", "lower-bound", "two-site"}));
  gen->add_option("-o,--out", ga.out, "Output path (default: standard output)");
  gen->add_option("--n", ga.n, "Number of sites (random)");
  gen->add_option("--m", ga.m, "Half the number of sites (lower-bound)");
  gen->add_option("--appetite-lo", ga.appetite_lo);
  gen->add_option("--appetite-hi", ga.appetite_hi);
  gen->add_option("--spread", ga.spread, "Side of the square holding the sites (random)");
  gen->add_option("--seed", ga.seed);
  gen->add_option("--b", ga.b, "Half distance (two-site)");
  gen->add_option("--appetite", ga.appetite, "Appetite (two-site)");
  gen->add_option("--metric", ga.metric)->check(CLI::IsMember({"euclidean", "linf", "l1"}));
  gen->callback([&] { code = run_gen(ga); });

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Time solves over growing n and check the primitive-call budget");
  bench->add_option("--sizes", ba.sizes)->delimiter(',');
  bench->add_option("--seed", ba.seed);
  bench->add_option("--threads", ba.threads);
  bench->add_flag("--serial", ba.serial);
  bench->add_option("--metric", ba.metric)->check(CLI::IsMember({"euclidean", "linf", "l1"}));
  bench->callback([&] { code = run_bench(ba); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParseExit;
  }
  return code;
}
