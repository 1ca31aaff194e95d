#include "szegolab/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "szegolab/coherent.hpp"
#include "szegolab/kepler.hpp"
#include "szegolab/scaling.hpp"
#include "szegolab/stark.hpp"
#include "szegolab/version.hpp"

namespace szegolab {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_header(const ExperimentSpec& spec, std::uint64_t seed) {
  std::ostringstream os;
  os << "# spec=" << spec.hash_hex() << " seed=" << seed << " version=" << kVersionTag << "\n";
  return os.str();
}

void stamp(json& j, const ExperimentSpec& spec, std::uint64_t seed) {
  j["spec"] = spec.hash_hex();
  j["seed"] = seed;
  j["version"] = kVersionTag;
}

SemiclassicalConfig config_from(const ExperimentSpec& spec, int shell) {
  return SemiclassicalConfig::make(shell, spec.get_real("field", 0.1),
                                   static_cast<int>(spec.get_int("K", 6)),
                                   spec.get_real("delta", 0.1));
}

using FileList = std::vector<std::pair<std::string, std::string>>;

FileList run_moments(const ExperimentSpec& spec, std::uint64_t seed) {
  int nmax = static_cast<int>(spec.get_int("nmax", 20));
  int kmax = static_cast<int>(spec.get_int("kmax", 6));
  std::ostringstream csv;
  csv << csv_header(spec, seed) << "n,l,k,recursion,oracle,rel_err\n";
  double worst = 0.0;
  long rows = 0;
  for (int n = 1; n <= nmax; ++n)
    for (int l = 0; l < n; ++l)
      for (int k = 0; k <= kmax; ++k) {
        double rec = radial_moment(n, l, k);
        double ora = radial_moment_oracle(n, l, k);
        double rel = std::abs(rec - ora) / std::abs(rec);
        worst = std::max(worst, rel);
        ++rows;
        csv << n << ',' << l << ',' << k << ',' << fmt_real(rec) << ',' << fmt_real(ora) << ','
            << fmt_real(rel) << "\n";
      }
  json j;
  stamp(j, spec, seed);
  j["rows"] = rows;
  j["max_rel_err"] = worst;
  return {{"moments.csv", csv.str()}, {"summary.json", j.dump(2) + "\n"}};
}

FileList run_shell_spectrum(const ExperimentSpec& spec, std::uint64_t seed) {
  int n = static_cast<int>(spec.get_int("n", 8));
  double field = spec.get_real("field", 0.1);
  ClusterSpectrum cs = diagonalize_shell(build_shell_matrix(n, field));
  std::ostringstream csv;
  csv << csv_header(spec, seed) << "index,eigenvalue\n";
  for (std::size_t i = 0; i < cs.values.size(); ++i)
    csv << i << ',' << fmt_real(cs.values[i]) << "\n";
  double m2 = 0.0, m1 = 0.0;
  for (double v : cs.values) {
    m1 += v;
    m2 += v * v;
  }
  json j;
  stamp(j, spec, seed);
  j["shell"] = n;
  j["field"] = field;
  j["center"] = cs.center;
  j["dimension"] = cs.values.size();
  j["mean"] = m1 / static_cast<double>(cs.values.size());
  j["moment2"] = m2 / static_cast<double>(cs.values.size());
  return {{"spectrum.csv", csv.str()}, {"summary.json", j.dump(2) + "\n"}};
}

FileList run_classical_measure(const ExperimentSpec& spec, std::uint64_t seed, int workers) {
  double field = spec.get_real("field", 0.1);
  long samples = spec.get_int("samples", 100000);
  EmpiricalDistribution d = classical_distribution(field, samples, seed, workers);
  std::ostringstream csv;
  csv << csv_header(spec, seed) << "location,weight\n";
  for (std::size_t i = 0; i < d.location.size(); ++i)
    csv << fmt_real(d.location[i]) << ',' << fmt_real(d.weight[i]) << "\n";
  json j;
  stamp(j, spec, seed);
  j["samples"] = samples;
  j["field"] = field;
  j["mean"] = d.moment(1);
  j["moment2"] = d.moment(2);
  j["support_min"] = d.min_location();
  j["support_max"] = d.max_location();
  return {{"distribution.csv", csv.str()}, {"summary.json", j.dump(2) + "\n"}};
}

std::vector<PowerSeries> parse_rhos(const std::string& names, double field) {
  std::vector<PowerSeries> out;
  std::istringstream in(names);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok == "one" || tok == "1") {
      out.push_back(PowerSeries::monomial(0, "one"));
    } else if (tok == "s" || tok == "s1") {
      out.push_back(PowerSeries::monomial(1, "s"));
    } else if (tok == "s2") {
      out.push_back(PowerSeries::monomial(2, "s2"));
    } else if (tok == "s3") {
      out.push_back(PowerSeries::monomial(3, "s3"));
    } else if (tok == "s4") {
      out.push_back(PowerSeries::monomial(4, "s4"));
    } else if (tok == "exp") {
      out.push_back(PowerSeries::exp_scaled(field, 20));
    } else {
      throw SpecError("unknown test function '" + tok + "'");
    }
  }
  if (out.empty()) throw SpecError("no test functions given");
  return out;
}

FileList run_szego_compare(const ExperimentSpec& spec, std::uint64_t seed, int workers) {
  std::vector<int> shells = parse_int_list(spec.get("n", "4:40:4"));
  double field = spec.get_real("field", 0.1);
  long samples = spec.get_int("samples", 1000000);
  std::vector<PowerSeries> rhos = parse_rhos(spec.get("rho", "s2"), field);
  std::vector<SzegoRow> rows = szego_compare(shells, field, rhos, samples, seed, workers);
  json j;
  stamp(j, spec, seed);
  j["field"] = field;
  j["samples"] = samples;
  j["rows"] = json::array();
  for (const SzegoRow& r : rows) {
    json row;
    row["N"] = r.shell;
    row["rho"] = r.rho;
    row["quantum"] = r.quantum;
    row["classical"] = r.classical;
    row["difference"] = r.difference;
    row["mc_std_error"] = r.mc_std_error;
    row["tail_bound"] = r.tail_bound;
    j["rows"].push_back(row);
  }
  return {{"compare.json", j.dump(2) + "\n"}};
}

FileList run_resonances(const ExperimentSpec& spec, std::uint64_t seed) {
  int n = static_cast<int>(spec.get_int("n", 2));
  SemiclassicalConfig cfg = config_from(spec, n);
  double theta = spec.get_real("theta", 0.3);
  double kappa = spec.get_real("kappa", 1.0 / n);
  int nmax = static_cast<int>(spec.get_int("nmax", 40));
  int lmax = static_cast<int>(spec.get_int("lmax", n + 1));
  double knob = spec.get_real("field-knob", 1e-5);
  int mmax = static_cast<int>(spec.get_int("mmax", 3));

  std::vector<TaggedEigenvalue> eigs =
      resonance_eigenvalues_tagged(cfg, theta, kappa, nmax, lmax, knob);
  std::vector<Complex> flat;
  flat.reserve(eigs.size());
  for (const auto& t : eigs) flat.push_back(t.z);
  ResonanceCluster cluster = extract_cluster(flat, n);

  std::ostringstream csv;
  csv << csv_header(spec, seed) << "re_z,im_z,abs_shift,m_block,theta,n_max,kappa\n";
  const double center = cluster.center;
  for (const auto& t : eigs) {
    if (std::abs(t.z - center) >= cluster.selection_radius) continue;
    csv << fmt_real(t.z.real()) << ',' << fmt_real(t.z.imag()) << ','
        << fmt_real(std::abs(t.z - center)) << ',' << t.m << ',' << fmt_real(theta) << ','
        << nmax << ',' << fmt_real(kappa) << "\n";
  }

  std::vector<TraceIdentityRow> rows =
      verify_trace_identity(cfg, theta, kappa, nmax, lmax, mmax, knob);
  json j;
  stamp(j, spec, seed);
  j["shell"] = n;
  j["cluster_count"] = cluster.shifts.size();
  j["selection_radius"] = cluster.selection_radius;
  j["radius_enlarged"] = cluster.radius_enlarged;
  j["field_knob"] = knob;
  j["trace_identity"] = json::array();
  for (const auto& r : rows) {
    json row;
    row["m"] = r.m;
    row["resonance_re"] = r.resonance_side.real();
    row["resonance_im"] = r.resonance_side.imag();
    row["quantum"] = r.quantum_side;
    row["residual"] = r.residual;
    row["budget"] = r.budget;
    j["trace_identity"].push_back(row);
  }
  return {{"resonances.csv", csv.str()}, {"trace.json", j.dump(2) + "\n"}};
}

FileList run_theta_scan(const ExperimentSpec& spec, std::uint64_t seed) {
  int n = static_cast<int>(spec.get_int("n", 2));
  SemiclassicalConfig cfg = config_from(spec, n);
  double kappa = spec.get_real("kappa", 1.0 / n);
  int nmax = static_cast<int>(spec.get_int("nmax", 40));
  int lmax = static_cast<int>(spec.get_int("lmax", n + 1));
  double knob = spec.get_real("field-knob", 0.0);
  std::vector<double> grid;
  {
    std::istringstream in(spec.get("thetas", "0.15,0.3,0.45"));
    std::string tok;
    while (std::getline(in, tok, ',')) grid.push_back(std::stod(tok));
  }
  ThetaScanResult scan = theta_independence_scan(cfg, kappa, nmax, lmax, grid, knob);
  json j;
  stamp(j, spec, seed);
  j["shell"] = n;
  j["thetas"] = scan.thetas;
  j["max_matched_distance"] = scan.max_matched_distance;
  j["center_error"] = scan.center_error;
  j["clusters"] = json::array();
  for (const auto& c : scan.clusters) {
    json row;
    row["count"] = c.shifts.size();
    double worst_im = 0.0;
    for (const Complex& s : c.shifts) worst_im = std::max(worst_im, std::abs(s.imag()));
    row["max_abs_im"] = worst_im;
    row["selection_radius"] = c.selection_radius;
    j["clusters"].push_back(row);
  }
  return {{"scan.json", j.dump(2) + "\n"}};
}

FileList run_coherent_check(const ExperimentSpec& spec, std::uint64_t seed, int workers) {
  json j;
  stamp(j, spec, seed);

  int lmax = static_cast<int>(spec.get_int("lmax", 8));
  SplitStream rng(seed);
  CoherentParam alpha = sample_alpha(rng);
  j["norms"] = json::array();
  for (int l = 1; l <= lmax; ++l) {
    json row;
    row["l"] = l;
    row["momentum_norm"] = momentum_norm(alpha, l, 0.0);
    double s2 = 0.0;
    for (const Complex& c : shell_expansion(alpha, l)) s2 += std::norm(c);
    row["shell_capture"] = s2;
    j["norms"].push_back(row);
  }

  int proj_shell = static_cast<int>(spec.get_int("proj-shell", 2));
  long proj_samples = spec.get_int("proj-samples", 100000);
  ProjectorCheck pc = projector_resolution_check(proj_shell, proj_samples, seed + 1, workers);
  j["projector"] = {{"shell", proj_shell},
                    {"samples", proj_samples},
                    {"in_shell_deviation", pc.in_shell_deviation},
                    {"out_shell_deviation", pc.out_shell_deviation}};

  double r0 = spec.get_real("tail-r0", 4.0);
  int tail_pow = static_cast<int>(spec.get_int("tail-n", 1));
  j["tails"] = json::array();
  for (int N : parse_int_list(spec.get("tail-shells", "4:10:2"))) {
    json row;
    row["N"] = N;
    row["tail"] = tail_mass(alpha, N, r0, tail_pow, 0.0);
    j["tails"].push_back(row);
  }

  double field = spec.get_real("field", 0.1);
  double target = field * orbit_average_x1(alpha, 512);
  j["stark_diagonal"] = json::array();
  for (int N : parse_int_list(spec.get("diag-shells", "4,8,16"))) {
    json row;
    row["N"] = N;
    double v = coherent_stark_diagonal(alpha, N, field);
    row["value"] = v;
    row["orbit_average"] = target;
    row["error"] = std::abs(v - target);
    j["stark_diagonal"].push_back(row);
  }
  return {{"coherent.json", j.dump(2) + "\n"}};
}

FileList run_estimate_checks(const ExperimentSpec& spec, std::uint64_t seed) {
  int n = static_cast<int>(spec.get_int("n", 2));
  SemiclassicalConfig cfg = config_from(spec, n);
  double theta = spec.get_real("theta", 0.1);
  int samples = static_cast<int>(spec.get_int("samples", 10000));
  double knob = spec.get_real("field-knob", 1e-3);
  SturmianBasis basis{spec.get_real("kappa", 1.0 / n), static_cast<int>(spec.get_int("nmax", 20)),
                      static_cast<int>(spec.get_int("lmax", n + 1)), 0};
  int violations = numerical_range_check(cfg, theta, basis, samples, seed, knob);

  json j;
  stamp(j, spec, seed);
  j["numerical_range"] = {{"violations", violations},
                          {"samples", samples},
                          {"theta", theta},
                          {"field", knob}};
  j["quadratic"] = json::array();
  for (Complex a : {Complex(0.0, 1.0), Complex(0.0, 8.0), Complex(0.7, 0.7), Complex(-0.3, 2.0)}) {
    for (const QuadraticMargin& m : quadratic_estimate_check(a)) {
      json row;
      row["psi"] = m.psi;
      row["alpha_re"] = m.alpha.real();
      row["alpha_im"] = m.alpha.imag();
      row["margin"] = m.margin;
      j["quadratic"].push_back(row);
    }
  }
  j["c_scaling_ratio"] = quadratic_estimate_c(Complex(0.0, 8.0)) /
                         quadratic_estimate_c(Complex(0.0, 1.0));
  j["beta_at_right_angle"] = quadratic_estimate_beta(Complex(0.0, 1.0));
  return {{"estimates.json", j.dump(2) + "\n"}};
}

FileList run_report(const ExperimentSpec& spec, std::uint64_t seed) {
  std::string path = spec.get("in");
  if (path.empty()) throw SpecError("report needs --in <compare.json>");
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open input file " + path);
  json src = json::parse(in);
  std::string rho = spec.get("rho", "s2");
  bool has_limit = spec.has("limit");
  double limit = spec.get_real("limit", 0.0);
  std::vector<double> sizes, errors;
  for (const auto& row : src.at("rows")) {
    if (row.at("rho").get<std::string>() != rho) continue;
    sizes.push_back(row.at("N").get<double>());
    double y = has_limit ? std::abs(row.at("quantum").get<double>() - limit)
                         : std::abs(row.at("difference").get<double>());
    errors.push_back(y);
  }
  ConvergenceReport rep = convergence_report(sizes, errors);
  json j;
  stamp(j, spec, seed);
  j["rho"] = rho;
  j["points"] = rep.points;
  j["slope"] = rep.slope;
  j["slope_ci"] = rep.slope_ci;
  j["intercept"] = rep.intercept;
  j["monotone"] = rep.monotone;
  return {{"report.json", j.dump(2) + "\n"}};
}

}  // namespace

void ExperimentSpec::set(const std::string& key, const std::string& value) {
  for (auto& kv : params)
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  params.emplace_back(key, value);
}

void ExperimentSpec::set_int(const std::string& key, long long value) {
  set(key, std::to_string(value));
}

void ExperimentSpec::set_real(const std::string& key, double value) { set(key, fmt_real(value)); }

bool ExperimentSpec::has(const std::string& key) const {
  for (const auto& kv : params)
    if (kv.first == key) return true;
  return false;
}

std::string ExperimentSpec::get(const std::string& key, const std::string& fallback) const {
  for (const auto& kv : params)
    if (kv.first == key) return kv.second;
  return fallback;
}

long long ExperimentSpec::get_int(const std::string& key, long long fallback) const {
  std::string v = get(key);
  return v.empty() ? fallback : std::stoll(v);
}

double ExperimentSpec::get_real(const std::string& key, double fallback) const {
  std::string v = get(key);
  return v.empty() ? fallback : std::stod(v);
}

std::string ExperimentSpec::canonical() const {
  std::vector<std::pair<std::string, std::string>> sorted(params.begin(), params.end());
  std::sort(sorted.begin(), sorted.end());
  std::ostringstream os;
  os << "kind=" << kind << "\n";
  for (const auto& kv : sorted) os << kv.first << "=" << kv.second << "\n";
  return os.str();
}

std::uint64_t ExperimentSpec::hash() const {
  // FNV-1a
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string ExperimentSpec::hash_hex() const {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
  return buf;
}

ConvergenceReport convergence_report(const std::vector<double>& sizes,
                                     const std::vector<double>& errors) {
  if (sizes.size() != errors.size() || sizes.size() < 3)
    throw SpecError("convergence report needs at least 3 matching points");
  ConvergenceReport rep;
  rep.points = static_cast<int>(sizes.size());
  const std::size_t n = sizes.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(sizes[i] > 0.0) || !(errors[i] > 0.0))
      throw SpecError("convergence report needs positive sizes and errors");
    lx[i] = std::log(sizes[i]);
    ly[i] = std::log(errors[i]);
  }
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (errors[i + 1] > errors[i]) rep.monotone = false;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  rep.slope = sxy / sxx;
  rep.intercept = my - rep.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = ly[i] - (rep.intercept + rep.slope * lx[i]);
    ss += r * r;
  }
  if (n > 2) rep.slope_ci = 2.0 * std::sqrt(ss / static_cast<double>(n - 2) / sxx);
  return rep;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  if (text.find(':') != std::string::npos) {
    int lo = 0, hi = 0, step = 1;
    if (std::sscanf(text.c_str(), "%d:%d:%d", &lo, &hi, &step) < 2)
      throw SpecError("bad range syntax '" + text + "'");
    if (step < 1) throw SpecError("range step must be positive");
    for (int v = lo; v <= hi; v += step) out.push_back(v);
  } else {
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(std::stoi(tok));
  }
  if (out.empty()) throw SpecError("empty integer list '" + text + "'");
  return out;
}

ResultRecord run_experiment(const ExperimentSpec& spec, const std::string& out_dir, bool force,
                            int workers) {
  std::uint64_t seed = static_cast<std::uint64_t>(spec.get_int("seed", 1));
  ResultRecord rec;
  rec.spec_hash = spec.hash_hex();
  rec.version = kVersionTag;
  rec.seed = seed;

  fs::path base(out_dir);
  fs::path target = base / (spec.kind + "-" + rec.spec_hash);
  rec.directory = target.string();

  if (!force && fs::exists(target / "record.json")) {
    std::ifstream in(target / "record.json");
    json prev = json::parse(in, nullptr, false);
    if (!prev.is_discarded() && prev.value("spec_hash", "") == rec.spec_hash) {
      bool complete = true;
      for (const auto& name : prev.at("files")) {
        fs::path f = target / name.get<std::string>();
        if (!fs::exists(f)) {
          complete = false;
          break;
        }
        std::ifstream pf(f, std::ios::binary);
        std::ostringstream body;
        body << pf.rdbuf();
        rec.files.emplace_back(name.get<std::string>(), body.str());
      }
      if (complete) {
        rec.from_cache = true;
        return rec;
      }
      rec.files.clear();
    }
  }

  FileList files;
  if (spec.kind == "moments") {
    files = run_moments(spec, seed);
  } else if (spec.kind == "shell-spectrum") {
    files = run_shell_spectrum(spec, seed);
  } else if (spec.kind == "classical-measure") {
    files = run_classical_measure(spec, seed, workers);
  } else if (spec.kind == "szego-compare") {
    files = run_szego_compare(spec, seed, workers);
  } else if (spec.kind == "resonances") {
    files = run_resonances(spec, seed);
  } else if (spec.kind == "theta-scan") {
    files = run_theta_scan(spec, seed);
  } else if (spec.kind == "coherent-check") {
    files = run_coherent_check(spec, seed, workers);
  } else if (spec.kind == "estimate-checks") {
    files = run_estimate_checks(spec, seed);
  } else if (spec.kind == "report") {
    files = run_report(spec, seed);
  } else {
    throw SpecError("unknown experiment kind '" + spec.kind + "'");
  }

  fs::create_directories(base);
  fs::path staging = base / (".staging-" + rec.spec_hash);
  fs::remove_all(staging);
  fs::create_directories(staging);
  json meta;
  meta["spec_hash"] = rec.spec_hash;
  meta["version"] = rec.version;
  meta["seed"] = seed;
  meta["kind"] = spec.kind;
  meta["canonical"] = spec.canonical();
  meta["timestamp"] = static_cast<long long>(
      std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count());
  meta["files"] = json::array();
  for (const auto& [name, body] : files) {
    std::ofstream f(staging / name, std::ios::binary);
    f << body;
    meta["files"].push_back(name);
  }
  {
    std::ofstream f(staging / "record.json");
    f << meta.dump(2) << "\n";
  }
  fs::remove_all(target);
  fs::rename(staging, target);
  rec.files = std::move(files);
  return rec;
}

}  // namespace szegolab
