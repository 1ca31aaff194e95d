#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "szegolab/experiment.hpp"
#include "szegolab/version.hpp"

namespace {

struct CommonOpts {
  std::uint64_t seed = 1;
  std::string out = "szego_out";
  bool force = false;
  int workers = 0;
};

struct FlagSpec {
  std::string key;
  std::string flag;
  std::string help;
  std::string default_value;
};

// One subcommand = one experiment kind; every option value lands in the
// flat key-value spec so the cache hash covers exactly what ran.
void add_kind(CLI::App& app, CommonOpts& common, const std::string& kind,
              const std::string& description, const std::vector<FlagSpec>& flags,
              std::vector<std::pair<CLI::App*, szegolab::ExperimentSpec*>>& registry,
              const std::string& alias = "") {
  auto* sub = app.add_subcommand(kind, description);
  sub->fallthrough();  // let --seed/--out/--force/--workers appear after the subcommand
  if (!alias.empty()) sub->alias(alias);
  auto* spec = new szegolab::ExperimentSpec();
  spec->kind = kind;
  for (const FlagSpec& f : flags) {
    if (!f.default_value.empty()) spec->set(f.key, f.default_value);
    auto* opt = sub->add_option_function<std::string>(
        f.flag, [spec, key = f.key](const std::string& v) { spec->set(key, v); }, f.help);
    opt->expected(1);
  }
  registry.emplace_back(sub, spec);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"szego: semiclassical Stark resonance-cluster laboratory"};
  app.set_version_flag("--version", szegolab::kVersionTag);
  app.set_config("--config", "", "flat key=value config file (command line wins)");
  app.require_subcommand(1);

  CommonOpts common;
  app.add_option("--seed", common.seed, "master random seed")->capture_default_str();
  app.add_option("--out", common.out, "output/cache directory")->capture_default_str();
  app.add_flag("--force", common.force, "recompute even on a cache hit");
  app.add_option("--workers", common.workers, "worker threads (0 = hardware)");

  std::vector<std::pair<CLI::App*, szegolab::ExperimentSpec*>> registry;

  add_kind(app, common, "moments", "hydrogen radial moments: recursion vs quadrature oracle",
           {{"nmax", "--nmax", "largest principal quantum number", "20"},
            {"kmax", "--kmax", "largest moment power", "6"}},
           registry);
  add_kind(app, common, "shell-spectrum", "scaled Stark shell matrix spectrum",
           {{"n", "--n", "shell index", "8"},
            {"field", "--field", "field strength F", "0.1"}},
           registry);
  add_kind(app, common, "classical-measure",
           "empirical law of the classical orbit average of F x1",
           {{"field", "--field", "field strength F", "0.1"},
            {"samples", "--samples", "Monte Carlo sample count", "100000"}},
           registry);
  add_kind(app, common, "szego-compare", "quantum cluster averages vs classical functionals",
           {{"n", "--n", "shell list, e.g. 4:40:4 or 10,20,40", "4:40:4"},
            {"field", "--field", "field strength F", "0.1"},
            {"rho", "--rho", "test functions: one,s,s2,s3,s4,exp", "s2"},
            {"samples", "--samples", "Monte Carlo sample count", "1000000"}},
           registry, "compare");
  add_kind(app, common, "resonances", "complex-scaled resonance cluster and trace identity",
           {{"n", "--n", "shell index", "2"},
            {"field", "--field", "reporting field strength F", "0.1"},
            {"K", "--K", "epsilon decay power", "6"},
            {"delta", "--delta", "epsilon decay offset", "0.1"},
            {"theta", "--theta", "dilation angle", "0.3"},
            {"kappa", "--kappa", "Sturmian scale (default 1/N)", ""},
            {"nmax", "--nmax", "radial basis size per l", "40"},
            {"lmax", "--lmax", "angular cutoff", ""},
            {"field-knob", "--field-knob", "effective field placed in the operator", "1e-5"},
            {"mmax", "--mmax", "largest trace moment", "3"}},
           registry);
  add_kind(app, common, "theta-scan", "cluster stability across dilation angles",
           {{"n", "--n", "shell index", "2"},
            {"field", "--field", "reporting field strength F", "0.1"},
            {"thetas", "--thetas", "comma list of angles", "0.15,0.3,0.45"},
            {"kappa", "--kappa", "Sturmian scale (default 1/N)", ""},
            {"nmax", "--nmax", "radial basis size per l", "40"},
            {"lmax", "--lmax", "angular cutoff", ""},
            {"field-knob", "--field-knob", "effective field in the operator", "0"}},
           registry);
  add_kind(app, common, "coherent-check", "coherent-state diagnostics battery",
           {{"lmax", "--lmax", "largest shell for norm checks", "8"},
            {"proj-shell", "--proj-shell", "shell for the projector check", "2"},
            {"proj-samples", "--proj-samples", "projector Monte Carlo samples", "100000"},
            {"tail-shells", "--tail-shells", "shells for the tail trend", "4:10:2"},
            {"tail-r0", "--tail-r0", "tail cutoff radius", "4"},
            {"tail-n", "--tail-n", "tail moment power", "1"},
            {"diag-shells", "--diag-shells", "shells for the dipole diagonal", "4,8,16"},
            {"field", "--field", "field strength F", "0.1"}},
           registry);
  add_kind(app, common, "estimate-checks", "numerical range and quadratic estimate",
           {{"n", "--n", "shell index", "2"},
            {"field", "--field", "reporting field strength F", "0.1"},
            {"theta", "--theta", "dilation angle (3 theta < pi/3)", "0.1"},
            {"samples", "--samples", "random Rayleigh vectors", "10000"},
            {"field-knob", "--field-knob", "field in the V=0 operator", "1e-3"},
            {"nmax", "--nmax", "radial basis size per l", "20"},
            {"kappa", "--kappa", "Sturmian scale (default 1/N)", ""},
            {"lmax", "--lmax", "angular cutoff", ""}},
           registry);
  add_kind(app, common, "report", "log-log convergence slope from a comparison table",
           {{"in", "--in", "path to a compare.json payload", ""},
            {"rho", "--rho", "test function to report on", "s2"},
            {"limit", "--limit", "known limit value (optional)", ""}},
           registry);

  CLI11_PARSE(app, argc, argv);

  for (auto& [sub, spec] : registry) {
    if (!sub->parsed()) continue;
    try {
      spec->set_int("seed", static_cast<long long>(common.seed));
      // empty-valued defaults mean "derive from other parameters"
      std::vector<std::pair<std::string, std::string>> kept;
      for (auto& kv : spec->params)
        if (!kv.second.empty()) kept.push_back(kv);
      spec->params = std::move(kept);
      szegolab::ResultRecord rec =
          szegolab::run_experiment(*spec, common.out, common.force, common.workers);
      std::printf("%s %s (%s)\n", rec.from_cache ? "cached" : "computed", rec.directory.c_str(),
                  rec.spec_hash.c_str());
      for (const auto& [name, body] : rec.files)
        std::printf("  %s (%zu bytes)\n", name.c_str(), body.size());
      return 0;
    } catch (const szegolab::SpecError& e) {
      nlohmann::json err{{"error", "spec"}, {"what", e.what()}};
      std::cerr << err.dump() << "\n";
      return 1;
    } catch (const std::exception& e) {
      nlohmann::json err{{"error", "numerical"}, {"what", e.what()}};
      std::cerr << err.dump() << "\n";
      return 2;
    }
  }
  return 1;
}
