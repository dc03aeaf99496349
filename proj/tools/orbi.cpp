// orbi: command-line front end for the atlas / groupoid checks.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "orb/atlas/lemmas.hpp"
#include "orb/io/gallery.hpp"
#include "orb/io/json_io.hpp"
#include "orb/morita/morita.hpp"
#include "orb/preorb/laws.hpp"

using namespace orb;

namespace {

struct Options {
  int samples = 500;
  unsigned long seed = 1;
  std::string out;
  bool strict = false;
};

// One named block of the report.
struct Section {
  std::string name;
  Report report;
};

class Run {
 public:
  Run(std::string command, const Options& o) : cmd_(std::move(command)), opt_(o) {}

  void input(const std::string& path) { inputs_.push_back(path); }
  void add(const std::string& name, const Report& r) { sections_.push_back({name, r}); }
  Json& extra() { return extra_; }
  void error(const std::string& what) { error_ = what; }

  bool pass() const {
    if (!error_.empty()) return false;
    for (const auto& s : sections_)
      if (opt_.strict ? !s.report.ok_strict() : !s.report.ok()) return false;
    return verdict_override_.value_or(true);
  }
  void set_verdict(bool v) { verdict_override_ = v; }

  int finish() const {
    Json sec = Json::array();
    for (const auto& s : sections_) {
      Json j = report_to_json(s.report);
      j["name"] = s.name;
      sec.push_back(j);
    }
    Json doc{{"tool", "orbi"},      {"command", cmd_},  {"inputs", inputs_}, {"samples", opt_.samples},
             {"seed", opt_.seed},   {"strict", opt_.strict}, {"sections", sec},
             {"verdict", pass() ? "pass" : "fail"}};
    if (!error_.empty()) doc["error"] = error_;
    for (auto it = extra_.begin(); it != extra_.end(); ++it) doc[it.key()] = it.value();
    std::string text = doc.dump(2) + "\n";
    if (opt_.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(opt_.out, std::ios::binary);
      f << text;
    }
    // human-readable summary
    for (const auto& s : sections_) {
      std::cerr << (s.report.ok() ? "[pass] " : "[FAIL] ") << s.name << " (" << s.report.checks << " checks)\n";
      for (const auto& v : s.report.violations) std::cerr << "  violation: " << v << "\n";
      for (const auto& w : s.report.warnings) std::cerr << "  warning: " << w << "\n";
    }
    if (!error_.empty()) std::cerr << "error: " << error_ << "\n";
    std::cerr << cmd_ << ": " << (pass() ? "pass" : "fail") << "\n";
    return pass() ? 0 : 1;
  }

 private:
  std::string cmd_;
  Options opt_;
  std::vector<std::string> inputs_;
  std::vector<Section> sections_;
  Json extra_ = Json::object();
  std::string error_;
  std::optional<bool> verdict_override_;
};

int scaled(int samples, int div, int floor) { return std::max(floor, samples / div); }

void cmd_validate(Run& run, const Options& o, const std::string& path) {
  run.input(path);
  auto a = parse_atlas(path);
  run.add("validate_atlas", validate_atlas(*a, o.samples, o.seed));
}

void cmd_groupoid(Run& run, const Options& o, const std::string& path) {
  run.input(path);
  auto a = parse_atlas(path);
  auto G = build_translation_groupoid(a);
  run.add("groupoid axioms", check_groupoid_axioms(*G, o.samples, o.seed));
  auto sp = structural_predicates(*G, scaled(o.samples, 10, 10), o.seed);
  run.add("structural predicates", sp.report);
  run.extra()["predicates"] = {{"etale", sp.etale}, {"proper", sp.proper}, {"effective", sp.effective}};
  run.extra()["isotropy_orders"] = isotropy_orders(*G, scaled(o.samples, 10, 10), o.seed);
  run.extra()["presentation"] = groupoid_to_json(*G);
  run.set_verdict(sp.etale && sp.proper && sp.effective);
}

// Rotation fixtures when every chart is a disc about 0 preserved by the rotations,
// identity systems otherwise.
LawDiagram<PreOrbOps> fixture(const AtlasPtr& a, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> e(0, std::max(1, a->conductor()) - 1);
  int ks[9];
  for (int& k : ks) k = e(rng);
  auto sys = [&](int k) {
    try {
      return rotation_system(a, k, "r" + std::to_string(k));
    } catch (const Error&) {
      return identity_system(a);
    }
  };
  auto cell = [&](int k1, int k2) { return solve_orb_cell(sys(k1), sys(k2)); };
  LawDiagram<PreOrbOps> d;
  d.f = sys(ks[0]);
  d.g = sys(ks[1]);
  d.h = sys(ks[2]);
  d.delta = cell(ks[0], ks[3]);
  d.sigma = cell(ks[3], ks[4]);
  d.tau = cell(ks[4], ks[5]);
  d.eta = cell(ks[1], ks[6]);
  d.mu = cell(ks[6], ks[7]);
  d.gamma = cell(ks[2], ks[8]);
  return d;
}

void cmd_laws(Run& run, const Options& o, const std::string& path) {
  run.input(path);
  auto a = parse_atlas(path);
  std::mt19937_64 rng(o.seed);
  Report cat;
  int n = scaled(o.samples, 50, 1);
  for (int k = 0; k < n; ++k) cat.merge(check_2cat_laws(PreOrbOps{}, fixture(a, rng)), "square " + std::to_string(k) + ": ");
  run.add("2-category laws", cat);
  FunctorF F;
  run.add("2-functor laws", check_functor_laws(F, fixture(a, rng), o.samples, o.seed));
  run.extra()["squares"] = n;
}

void cmd_morita(Run& run, const Options& o, const std::string& sub, const std::string& full) {
  run.input(sub);
  run.input(full);
  auto A = parse_atlas(sub);
  auto B = parse_atlas(full);
  FunctorF F;
  auto m = subatlas_inclusion_morphism(F, A, B);
  MoritaReport r = check_morita(*m, scaled(o.samples, 4, 8), o.seed);
  run.add("condition (i)", r.condition_i);
  run.add("condition (ii)", r.condition_ii);
  run.extra()["morita"] = morita_to_json(r);
}

void cmd_reconstruct(Run& run, const Options& o, const std::string& path) {
  run.input(path);
  auto a = parse_atlas(path);
  FunctorF F;
  auto G = F.object(a);
  auto R = reconstruct_atlas(*G, scaled(o.samples, 50, 4), o.seed);
  run.add("reconstructed atlas", validate_atlas(*R, scaled(o.samples, 4, 8), o.seed));
  auto m = reconstruction_morita_morphism(F, G, R);
  MoritaReport mr = check_morita(*m, scaled(o.samples, 8, 8), o.seed);
  run.add("reconstruction morphism condition (i)", mr.condition_i);
  run.add("reconstruction morphism condition (ii)", mr.condition_ii);
  bool eq = atlases_equivalent(*R, *a, scaled(o.samples, 8, 8), o.seed);
  run.extra()["equivalent_to_input"] = eq;
  run.extra()["atlas"] = atlas_to_json(*R);
  run.set_verdict(eq);
}

void cmd_bijection(Run& run, const Options& o, const std::string& p1, const std::string& p2, const std::string& wpath) {
  run.input(p1);
  run.input(p2);
  auto A = parse_atlas(p1);
  auto B = parse_atlas(p2);
  std::optional<Relabeling> phi;
  if (!wpath.empty()) {
    run.input(wpath);
    Json j;
    try {
      j = Json::parse(read_file(wpath));
    } catch (const Json::parse_error& e) {
      throw Error(ErrorKind::ParseError, wpath + ": " + e.what());
    }
    EquivalenceWitness w = witness_from_json(j, *A, *B);
    phi = w.phi;
    Report wr;
    wr.expect(atlases_equivalent(*A, *B, w, scaled(o.samples, 16, 8), o.seed), "supplied witness does not cover both atlases");
    run.add("supplied witness", wr);
  }
  BijectionVerdict v = bijection_demo(A, B, phi, scaled(o.samples, 16, 16), o.seed);
  run.extra()["atlas_side"] = v.atlas_side;
  run.extra()["groupoid_side"] = v.groupoid_side;
  run.extra()["agree"] = v.agree;
  run.extra()["notes"] = v.notes;
  run.extra()["scope"] = "per-instance comparison of the two verdicts";
  run.set_verdict(v.agree);
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  if (const char* env = std::getenv("ORBI_SAMPLES")) {
    try {
      o.samples = std::stoi(env);
    } catch (const std::exception&) {
      std::cerr << "ORBI_SAMPLES is not an integer\n";
      return 2;
    }
  }
  CLI::App app{"orbi: exact checks for orbifold atlases and their translation groupoids"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--samples", o.samples, "base sample count (env ORBI_SAMPLES, default 500)")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "sampling seed");
  app.add_option("--out", o.out, "write the report (or atlas) here instead of stdout");
  app.add_flag("--strict", o.strict, "warnings count as failures");

  std::string a1, a2, wpath;
  auto* validate = app.add_subcommand("validate", "atlas axioms and chart/embedding checks");
  validate->add_option("atlas", a1)->required()->check(CLI::ExistingFile);
  auto* groupoid = app.add_subcommand("groupoid", "translation groupoid + axiom suite + predicates");
  groupoid->add_option("atlas", a1)->required()->check(CLI::ExistingFile);
  auto* laws = app.add_subcommand("laws", "2-category and 2-functor law suites");
  laws->add_option("atlas", a1)->required()->check(CLI::ExistingFile);
  auto* morita = app.add_subcommand("morita", "Morita check of a sub-atlas inclusion");
  morita->add_option("sub", a1)->required()->check(CLI::ExistingFile);
  morita->add_option("full", a2)->required()->check(CLI::ExistingFile);
  auto* reconstruct = app.add_subcommand("reconstruct", "atlas from the translation groupoid, with checks");
  reconstruct->add_option("atlas", a1)->required()->check(CLI::ExistingFile);
  auto* bijection = app.add_subcommand("bijection", "atlas-side vs groupoid-side equivalence verdicts");
  bijection->add_option("first", a1)->required()->check(CLI::ExistingFile);
  bijection->add_option("second", a2)->required()->check(CLI::ExistingFile);
  bijection->add_option("--witness", wpath, "witness file (spans, optional relabeling)")->check(CLI::ExistingFile);
  auto* gal = app.add_subcommand("gallery", "emit a gallery atlas as JSON");
  GalleryParams gp;
  std::string radius = "1", glue = "1/4";
  bool list = false;
  gal->add_option("name", gp.name, "cone, cone2, football, teardrop, global_quotient, point");
  gal->add_option("--p", gp.p);
  gal->add_option("--q", gp.q);
  gal->add_option("--order", gp.order);
  gal->add_option("--dim", gp.dim);
  gal->add_option("--radius", radius);
  gal->add_option("--glue", glue);
  gal->add_flag("--list", list, "list the named suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (gal->parsed()) {
    if (list) {
      for (const auto& [name, a] : gallery_suite()) std::cout << name << "\n";
      return 0;
    }
    try {
      gp.radius = parse_rational(radius);
      gp.glue = parse_rational(glue);
      auto a = gallery(gp);
      std::string text = serialize_atlas(*a);
      if (o.out.empty())
        std::cout << text;
      else
        std::ofstream(o.out, std::ios::binary) << text;
      return 0;
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }

  std::string name = app.get_subcommands().front()->get_name();
  Run run(name, o);
  try {
    if (validate->parsed()) cmd_validate(run, o, a1);
    if (groupoid->parsed()) cmd_groupoid(run, o, a1);
    if (laws->parsed()) cmd_laws(run, o, a1);
    if (morita->parsed()) cmd_morita(run, o, a1, a2);
    if (reconstruct->parsed()) cmd_reconstruct(run, o, a1);
    if (bijection->parsed()) cmd_bijection(run, o, a1, a2, wpath);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    run.error(e.what());
  }
  return run.finish();
}
