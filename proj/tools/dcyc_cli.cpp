// dcyc: command-line front end.
#include "dcyc/cyclicity.hpp"
#include "dcyc/energy.hpp"
#include "dcyc/expression.hpp"
#include "dcyc/io.hpp"
#include "dcyc/outer.hpp"
#include "dcyc/regularize.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

namespace {

using namespace dcyc;

enum Exit { kOk = 0, kUsage = 1, kNotMet = 2, kBudget = 3 };

struct Options {
  // set input
  std::string points, arcs, cantor, gap_sequence, set_descriptor;
  std::optional<int> generation;
  // numerics
  std::size_t grid = 4096;
  double tol = 1e-4;
  std::string delta_schedule = "default";
  std::optional<double> alpha, beta, gamma;
  // subcommand specific
  bool sweep = false;
  int points_per_decade = 10;
  int decades = 12;
  std::string modulus, weight;
  std::optional<double> power_alpha;
  double a = kPi;
  std::size_t count = 100;
  bool literal_weights = false;
  // output
  std::string out, format = "json";
  std::uint64_t seed = 1;
  int threads = 0;
};

std::vector<double> split_numbers(const std::string& s, char sep, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (item.empty()) continue;
    if (item == "pi") {
      out.push_back(kPi);
      continue;
    }
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw DescriptorError("malformed number '" + item + "'", what);
    }
  }
  return out;
}

bool has_set(const Options& o) {
  return !o.points.empty() || !o.arcs.empty() || !o.cantor.empty() || !o.gap_sequence.empty() || !o.set_descriptor.empty();
}

/// Turns whichever set flag was given into a canonical descriptor; positions=true places Cantor arcs explicitly.
SetDescriptor resolve_set(const Options& o, int default_generation, bool positions = false) {
  const int given = !o.points.empty() + !o.arcs.empty() + !o.cantor.empty() + !o.gap_sequence.empty() +
                    !o.set_descriptor.empty();
  if (given != 1) throw DescriptorError("give exactly one of --points, --arcs, --cantor, --gap-sequence, --set", "set");
  if (!o.set_descriptor.empty()) return load_set_descriptor(o.set_descriptor);
  Json j;
  if (!o.points.empty()) {
    j = {{"kind", "points"}, {"angles", split_numbers(o.points, ',', "--points")}};
  } else if (!o.arcs.empty()) {
    Json arcs = Json::array();
    std::stringstream ss(o.arcs);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto v = split_numbers(item, ':', "--arcs");
      if (v.size() != 2) throw DescriptorError("expected start:length, got '" + item + "'", "--arcs");
      arcs.push_back({{"start", v[0]}, {"length", v[1]}});
    }
    j = {{"kind", "arcs"}, {"arcs", arcs}};
  } else if (!o.cantor.empty()) {
    j = {{"kind", "cantor"}};
    const Json spec = to_json(parse_cantor_shorthand(o.cantor));
    for (auto& [k, v] : spec.items()) j[k] = v;
    j["generation"] = o.generation.value_or(default_generation);
    j["positions"] = positions;
  } else {
    const GapSequenceSpec g = parse_gap_sequence_shorthand(o.gap_sequence);
    j = {{"kind", "gap_sequence"},
         {"rule", g.rule == GapSequenceSpec::Rule::power ? "power" : "inverse_log_squared"},
         {"scale", g.scale},
         {"exponent", g.exponent},
         {"count", g.count}};
  }
  return parse_set_descriptor(j);
}

WeightProfile resolve_weight(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && text[first] == '{') return weight_from_json(parse_json_text(text));
  if (text.find(':') == std::string::npos && std::filesystem::exists(text)) {
    return weight_from_json(parse_json_text(read_text_file(text)));
  }
  return parse_weight_shorthand(text);
}

/// "default", "dyadic:K0:K1" (δ = π 2^-k), "delta:0.1,0.01" or "log:-5,-50".
std::vector<double> resolve_schedule(const std::string& s) {
  if (s == "default") return default_log_delta_schedule();
  const auto colon = s.find(':');
  const std::string head = s.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : s.substr(colon + 1);
  std::vector<double> out;
  if (head == "dyadic") {
    const auto v = split_numbers(rest, ':', "--delta-schedule");
    if (v.size() != 2 || v[0] != std::floor(v[0]) || v[1] < v[0]) {
      throw DescriptorError("expected dyadic:K0:K1 with K0 <= K1", "--delta-schedule");
    }
    for (int k = static_cast<int>(v[0]); k <= static_cast<int>(v[1]); ++k) out.push_back(std::log(kPi) - k * std::log(2.0));
  } else if (head == "delta") {
    for (double d : split_numbers(rest, ',', "--delta-schedule")) {
      if (!(d > 0.0 && d < kPi)) throw DescriptorError("δ must lie in (0, π)", "--delta-schedule");
      out.push_back(std::log(d));
    }
  } else if (head == "log") {
    out = split_numbers(rest, ',', "--delta-schedule");
  } else {
    throw DescriptorError("unknown schedule '" + s + "'", "--delta-schedule");
  }
  if (out.empty()) throw DescriptorError("empty schedule", "--delta-schedule");
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i] < out[i - 1])) throw DescriptorError("δ values must decrease", "--delta-schedule");
  }
  return out;
}

Json optional_number(const std::optional<double>& v) { return v ? number(*v) : Json(nullptr); }

/// Resolved configuration; the thread count is left out so reports do not depend on it.
Json base_config(const std::string& sub, const Options& o) {
  Json c;
  c["subcommand"] = sub;
  c["grid"] = o.grid;
  c["tol"] = o.tol;
  c["seed"] = o.seed;
  c["format"] = o.format;
  return c;
}

std::string envelope(const Json& config, const Json& result) {
  Json j;
  j["tool"] = "dcyc";
  j["version"] = DCYC_VERSION;
  j["config"] = config;
  j["result"] = result;
  return dump(j);
}

std::string csv_with_header(const Json& config, const CsvTable& t) {
  return "# dcyc " + std::string(DCYC_VERSION) + " config=" + config.dump() + "\n" + to_csv(t);
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    write_text_file(o.out, text);
  }
}

void check_numerics(const Options& o) {
  if (!is_power_of_two(o.grid) || o.grid < 64) throw DescriptorError("grid must be a power of two >= 64", "--grid");
  if (!(o.tol > 0.0)) throw DescriptorError("tolerance must be > 0", "--tol");
  if (o.format != "json" && o.format != "csv") throw DescriptorError("format must be json or csv", "--format");
}

// -------------------------------------------------------------- subcommands

int run_set(const Options& o) {
  const SetDescriptor d = resolve_set(o, 12);
  Json config = base_config("set", o);
  config["set"] = d.json;
  config["sweep"] = o.sweep;
  if (o.sweep) {
    config["points_per_decade"] = o.points_per_decade;
    config["decades"] = o.decades;
  }
  if (o.sweep || o.format == "csv") {
    emit(o, csv_with_header(config, sweep_table(d.set, o.points_per_decade, o.decades)));
    return kOk;
  }
  Json r;
  r["describe"] = d.set.describe();
  r["log_measure"] = number(d.set.log_measure());
  r["measure_zero"] = d.set.measure_zero();
  r["gap_count"] = number(d.set.gap_count());
  r["finite_point_set"] = d.set.is_finite_point_set();
  if (const auto tr = d.set.truncation()) {
    r["truncation"] = {{"log_hausdorff_bound", number(tr->log_hausdorff_bound)},
                       {"log_measure_overestimate", number(tr->log_measure_overestimate)},
                       {"log_exact_above", number(tr->log_exact_above)}};
  }
  r["mu"] = to_json(mu_exponent(d.set));
  r["capcond"] = to_json(d.cantor ? capcond_diagnostic(*d.cantor, d.generation) : capcond_diagnostic(d.set));
  r["carleson_set"] = to_json(carleson_set_test(d.set));
  emit(o, envelope(config, r));
  return kOk;
}

int run_energy(const Options& o) {
  Json config = base_config("energy", o);
  if (!o.modulus.empty()) {
    const ModulusExpression expr = ModulusExpression::parse(o.modulus);
    std::optional<SetDescriptor> d;
    if (has_set(o)) d = resolve_set(o, 10, true);
    config["modulus"] = o.modulus;
    config["set"] = d ? d->json : Json(nullptr);
    const BoundaryModulus m = modulus_from_expression(expr, d ? &d->set : nullptr);
    OuterOptions oo;
    oo.grid = o.grid;
    const OuterFunction f = outer_from_modulus(m, oo);
    CarlesonOptions co;
    co.tol = o.tol;
    const CarlesonEnergy ce = carleson_energy(m, co);
    Json r;
    r["singular_points"] = Json::array();
    for (double s : m.singular_points) r["singular_points"].push_back(s);
    r["series"] = to_json(series_energy(f));
    r["carleson"] = to_json(ce);
    r["modulus_at_zero"] = to_json(modulus_at_zero(m, o.grid));
    r["warnings"] = f.warnings();
    if (o.format == "csv") {
      CsvTable t{{"k", "abs_a_k"}, {}};
      const auto& a = f.taylor();
      for (std::size_t k = 0; k < a.size(); ++k) t.rows.push_back({std::to_string(k), csv_number(std::abs(a[k]))});
      emit(o, csv_with_header(config, t));
    } else {
      emit(o, envelope(config, r));
    }
    return ce.budget_exceeded ? kBudget : kOk;
  }

  // distance functions need arc positions; the power criterion only needs gaps
  const SetDescriptor d = resolve_set(o, 10, !o.power_alpha.has_value());
  config["set"] = d.json;
  if (o.power_alpha) {
    config["power_alpha"] = *o.power_alpha;
    const PowerCriterion pc = power_criterion(d.set, *o.power_alpha);
    emit(o, envelope(config, to_json(pc)));
    return kOk;
  }
  if (o.weight.empty()) throw DescriptorError("energy needs --modulus, --weight or --power-alpha", "energy");
  const WeightProfile w = resolve_weight(o.weight);
  const double gamma = o.gamma.value_or(1.0);
  config["weight"] = to_json(w);
  config["gamma"] = gamma;
  // the base grid must resolve every endpoint: at least 8 nodes per singular point
  const std::size_t endpoints = d.set.measure_zero() ? d.set.arcs().size() : 2 * d.set.arcs().size();
  std::size_t grid = o.grid;
  while (grid < 8 * endpoints) grid *= 2;
  config["effective_grid"] = grid;
  TwoSidedOptions opts;
  opts.grids = {grid, 2 * grid, 4 * grid};
  opts.carleson_options.tol = o.tol;
  const EnergyReport rep = two_sided_report(d.set, w, gamma, opts);
  if (o.format == "csv") {
    CsvTable t{{"grid", "series", "tail", "J", "ratio"}, {}};
    for (const GridEnergy& g : rep.grids) {
      t.rows.push_back({std::to_string(g.grid), csv_number(g.series), csv_number(g.tail), csv_number(rep.j_value),
                        csv_number(g.series / rep.j_value)});
    }
    emit(o, csv_with_header(config, t));
  } else {
    emit(o, envelope(config, to_json(rep)));
  }
  return rep.carleson && rep.carleson->budget_exceeded ? kBudget : kOk;
}

int run_regularize(const Options& o) {
  Json config = base_config("regularize", o);
  WeightProfile phi;
  double alpha = 0.0, beta = 0.0;
  std::optional<Growth> parametric;
  if (!o.weight.empty()) {
    if (!o.alpha || !o.beta) throw DescriptorError("--weight input needs --alpha and --beta", "regularize");
    phi = resolve_weight(o.weight);
    alpha = *o.alpha;
    beta = *o.beta;
    config["phi"] = to_json(phi);
  } else {
    const SetDescriptor d = resolve_set(o, 40);
    config["set"] = d.json;
    const double mu = mu_exponent(d.set).value();
    alpha = o.alpha.value_or(default_alpha(mu));
    beta = o.beta.value_or(default_beta(alpha, mu));
    phi = build_phi(neighborhood_measure(d.set), beta);
    parametric = (d.cantor ? capcond_diagnostic(*d.cantor, d.generation) : capcond_diagnostic(d.set)).verdict;
  }
  config["alpha"] = alpha;
  config["beta"] = beta;
  config["a"] = o.a;
  const PsiResult r = build_psi(phi, alpha, beta, o.a, PsiGrid{}, parametric);
  if (o.format == "csv") {
    emit(o, csv_with_header(config, psi_table(r)));
  } else {
    Json res = to_json(r);
    res["psi_profile"] = to_json(r.psi);
    emit(o, envelope(config, res));
  }
  return kOk;
}

int run_certify(const Options& o) {
  Json config = base_config("certify", o);
  CertificateConfig cc;
  cc.alpha = o.alpha;
  cc.beta = o.beta;
  cc.gamma = o.gamma;
  cc.log_deltas = resolve_schedule(o.delta_schedule);
  config["delta_schedule"] = o.delta_schedule;
  config["log_deltas"] = cc.log_deltas;
  config["alpha"] = optional_number(o.alpha);
  config["beta"] = optional_number(o.beta);
  config["gamma"] = optional_number(o.gamma);
  CyclicityReport rep;
  if (!o.cantor.empty() && !o.generation) {
    // the generation is chosen so the profile is exact below the deepest δ
    const CantorSpec spec = parse_cantor_shorthand(o.cantor);
    Options with_gen = o;
    with_gen.generation = certificate_generation(spec, cc);
    const SetDescriptor d = resolve_set(with_gen, 0);
    config["set"] = d.json;
    rep = theorem_main_check(d.set, cc);
  } else {
    const SetDescriptor d = resolve_set(o, 40);
    config["set"] = d.json;
    rep = theorem_main_check(d.set, cc);
  }
  if (o.format == "csv") {
    emit(o, csv_with_header(config, rep.certificate ? delta_table(*rep.certificate) : delta_table(Certificate{})));
  } else {
    emit(o, envelope(config, to_json(rep)));
  }
  std::cerr << "verdict: " << to_string(rep.conclusion) << " (" << rep.reason << ")\n";
  return rep.conclusion == Conclusion::met ? kOk : kNotMet;
}

int run_fusion(const Options& o) {
  Json config = base_config("fusion-test", o);
  config["count"] = o.count;
  config["literal_weights"] = o.literal_weights;
  std::mt19937_64 rng(o.seed);
  FusionOptions fo;
  fo.carleson.tol = o.tol;
  Json instances = Json::array();
  CsvTable t{{"instance", "points", "moduli", "lhs", "rhs", "holds"}, {}};
  bool all = true;
  bool budget = false;
  for (std::size_t i = 0; i < o.count; ++i) {
    const FusionInstance fi = random_fusion_instance(rng, o.literal_weights);
    const FusionResult fr = fusion_bound_check(fi.set, fi.moduli, fi.assignment, fo);
    all = all && fr.holds;
    budget = budget || fr.budget_exceeded;
    Json inst;
    inst["points"] = fi.points;
    inst["exponents"] = fi.exponents;
    inst["assignment"] = fi.assignment;
    inst["result"] = to_json(fr);
    instances.push_back(inst);
    t.rows.push_back({std::to_string(i), std::to_string(fi.points.size()), std::to_string(fi.moduli.size()), csv_number(fr.lhs),
                      csv_number(fr.rhs), fr.holds ? "1" : "0"});
  }
  Json r;
  r["instances"] = instances;
  r["all_hold"] = all;
  if (o.format == "csv") emit(o, csv_with_header(config, t));
  else emit(o, envelope(config, r));
  if (budget) return kBudget;
  return all ? kOk : kNotMet;
}

void add_set_options(CLI::App* sub, Options& o) {
  sub->add_option("--points", o.points, "comma-separated angles, e.g. 0,pi");
  sub->add_option("--arcs", o.arcs, "comma-separated start:length pairs");
  sub->add_option("--cantor", o.cantor, "geometric:lambda=..., double_exp:rate=...,power=..., explicit:lengths=a;b");
  sub->add_option("--gap-sequence", o.gap_sequence, "inverse_log_squared:scale=..,count=.. or power:...");
  sub->add_option("--set", o.set_descriptor, "JSON set descriptor (file or inline)");
  sub->add_option("--generation", o.generation, "Cantor generation");
}

void add_common_options(CLI::App* sub, Options& o) {
  sub->add_option("--grid", o.grid, "FFT grid size (power of two)");
  sub->add_option("--tol", o.tol, "relative tolerance of the adaptive Carleson quadrature");
  sub->add_option("--out", o.out, "output path, - for stdout");
  sub->add_option("--format", o.format, "json or csv");
  sub->add_option("--seed", o.seed, "seed for randomized suites");
  sub->add_option("--threads", o.threads, "OpenMP threads (0 = runtime default)");
  sub->add_option("--alpha", o.alpha, "override α");
  sub->add_option("--beta", o.beta, "override β");
  sub->add_option("--gamma", o.gamma, "override γ");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dcyc: Dirichlet-space cyclicity toolkit"};
  app.set_version_flag("--version", std::string(DCYC_VERSION));
  app.require_subcommand(1);
  Options o;

  auto* set = app.add_subcommand("set", "describe a set; --sweep emits t, N_E(t), |E_t| as CSV");
  add_set_options(set, o);
  add_common_options(set, o);
  set->add_flag("--sweep", o.sweep, "emit the sweep table");
  set->add_option("--points-per-decade", o.points_per_decade, "sweep density in t");
  set->add_option("--decades", o.decades, "sweep depth below t = π");

  auto* energy = app.add_subcommand("energy", "Dirichlet energy of an outer function");
  add_set_options(energy, o);
  add_common_options(energy, o);
  energy->add_option("--modulus", o.modulus, "boundary modulus expression in zeta");
  energy->add_option("--weight", o.weight, "weight shorthand or JSON profile, used as f_w for the given set");
  energy->add_option("--power-alpha", o.power_alpha, "finiteness criterion for w = t^alpha");

  auto* reg = app.add_subcommand("regularize", "build ψ from φ = min(|E_t|, t^β) or from a given profile");
  add_set_options(reg, o);
  add_common_options(reg, o);
  reg->add_option("--weight", o.weight, "φ as weight shorthand or JSON profile");
  reg->add_option("--a", o.a, "top of the ψ construction");

  auto* cert = app.add_subcommand("certify", "sufficient-condition certificate for cyclicity");
  add_set_options(cert, o);
  add_common_options(cert, o);
  cert->add_option("--delta-schedule", o.delta_schedule, "default | dyadic:K0:K1 | delta:d1,d2,... | log:s1,s2,...");

  auto* fusion = app.add_subcommand("fusion-test", "randomized spliced-modulus energy bound suite");
  add_common_options(fusion, o);
  fusion->add_option("--count", o.count, "number of instances");
  fusion->add_flag("--literal-weights", o.literal_weights, "use t^a/π pieces (violates the hypothesis)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    check_numerics(o);
    if (o.threads > 0) omp_set_num_threads(o.threads);
    if (*set) return run_set(o);
    if (*energy) return run_energy(o);
    if (*reg) return run_regularize(o);
    if (*cert) return run_certify(o);
    if (*fusion) return run_fusion(o);
  } catch (const DescriptorError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: modulus expression: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
