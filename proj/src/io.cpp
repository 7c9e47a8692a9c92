#include "dcyc/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace dcyc {

// ----------------------------------------------------------------- numbers

Json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double number_from(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    if (s == "nan") return std::nan("");
  }
  throw std::invalid_argument("expected a number");
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DescriptorError(std::string("malformed JSON: ") + e.what(), "byte " + std::to_string(e.byte));
  }
}

// --------------------------------------------------------------- files

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("write failed for " + path);
}

// ------------------------------------------------------------ descriptors

namespace {

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw DescriptorError("expected an object", where.empty() ? "/" : where);
  auto it = j.find(key);
  if (it == j.end()) throw DescriptorError("missing field '" + key + "'", where + "/" + key);
  return *it;
}

double num_field(const Json& j, const std::string& key, const std::string& where) {
  const Json& v = field(j, key, where);
  try {
    return number_from(v);
  } catch (const std::invalid_argument&) {
    throw DescriptorError("expected a number", where + "/" + key);
  }
}

double num_or(const Json& j, const std::string& key, double fallback, const std::string& where) {
  return j.contains(key) ? num_field(j, key, where) : fallback;
}

std::vector<double> num_array(const Json& j, const std::string& key, const std::string& where) {
  const Json& a = field(j, key, where);
  if (!a.is_array()) throw DescriptorError("expected an array", where + "/" + key);
  std::vector<double> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number()) throw DescriptorError("expected a number", where + "/" + key + "/" + std::to_string(i));
    out.push_back(a[i].get<double>());
  }
  return out;
}

std::map<std::string, std::string> shorthand_fields(const std::string& s, std::string& head) {
  const auto colon = s.find(':');
  head = s.substr(0, colon);
  std::map<std::string, std::string> out;
  if (colon == std::string::npos) return out;
  std::stringstream rest(s.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw DescriptorError("expected key=value, got '" + item + "'", head);
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

double parse_double(const std::string& v, const std::string& where) {
  if (v == "pi") return kPi;
  double out = 0.0;
  const char* b = v.data();
  const char* e = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(b, e, out);
  if (ec != std::errc() || ptr != e) {
    // allow simple fractions such as 1/3
    const auto slash = v.find('/');
    if (slash != std::string::npos) return parse_double(v.substr(0, slash), where) / parse_double(v.substr(slash + 1), where);
    throw DescriptorError("malformed number '" + v + "'", where);
  }
  return out;
}

std::string gap_rule_name(GapSequenceSpec::Rule r) {
  return r == GapSequenceSpec::Rule::power ? "power" : "inverse_log_squared";
}

GapSequenceSpec::Rule gap_rule_from(const std::string& s, const std::string& where) {
  if (s == "power") return GapSequenceSpec::Rule::power;
  if (s == "inverse_log_squared") return GapSequenceSpec::Rule::inverse_log_squared;
  throw DescriptorError("unknown gap-sequence rule '" + s + "'", where);
}

std::string cantor_rule_name(CantorRule r) {
  switch (r) {
    case CantorRule::geometric: return "geometric";
    case CantorRule::double_exp: return "double_exp";
    case CantorRule::explicit_lengths: return "explicit";
  }
  return "geometric";
}

}  // namespace

Json to_json(const CantorSpec& spec) {
  Json j;
  j["rule"] = cantor_rule_name(spec.rule);
  switch (spec.rule) {
    case CantorRule::geometric: j["ratio"] = spec.ratio; break;
    case CantorRule::double_exp:
      j["rate"] = spec.rate;
      j["power"] = spec.power;
      break;
    case CantorRule::explicit_lengths: j["lengths"] = spec.lengths; break;
  }
  j["l0"] = spec.l0;
  j["base_start"] = spec.base_start;
  return j;
}

CantorSpec cantor_from_json(const Json& j, const std::string& where) {
  const Json& r = field(j, "rule", where);
  if (!r.is_string()) throw DescriptorError("expected a string", where + "/rule");
  const std::string rule = r.get<std::string>();
  const double base = num_or(j, "base_start", 0.0, where);
  if (rule == "geometric") {
    return CantorSpec::geometric(num_field(j, "ratio", where), num_or(j, "l0", kPi / 2, where), base);
  }
  if (rule == "double_exp") {
    return CantorSpec::double_exponential(num_or(j, "rate", 1.0, where), num_or(j, "power", 0.0, where),
                                          num_or(j, "l0", kPi / 2, where), base);
  }
  if (rule == "explicit") return CantorSpec::explicit_lengths(num_array(j, "lengths", where), base);
  throw DescriptorError("unknown Cantor rule '" + rule + "'", where + "/rule");
}

SetDescriptor parse_set_descriptor(const Json& j) {
  const Json& k = field(j, "kind", "");
  if (!k.is_string()) throw DescriptorError("expected a string", "/kind");
  const std::string kind = k.get<std::string>();
  SetDescriptor d;
  if (kind == "points") {
    const auto angles = num_array(j, "angles", "");
    if (angles.empty()) throw DescriptorError("need at least one point", "/angles");
    d.set = CircleSet::from_points(angles);
    d.json = {{"kind", "points"}, {"angles", angles}};
  } else if (kind == "arcs") {
    const Json& a = field(j, "arcs", "");
    if (!a.is_array() || a.empty()) throw DescriptorError("expected a non-empty array", "/arcs");
    std::vector<Arc> arcs;
    Json canon = Json::array();
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string where = "/arcs/" + std::to_string(i);
      const double start = num_field(a[i], "start", where);
      const double length = num_field(a[i], "length", where);
      if (!(length >= 0.0)) throw DescriptorError("arc length must be >= 0", where + "/length");
      arcs.push_back({start, length});
      canon.push_back({{"start", start}, {"length", length}});
    }
    d.set = CircleSet::from_arcs(arcs);
    d.json = {{"kind", "arcs"}, {"arcs", canon}};
  } else if (kind == "cantor") {
    d.cantor = cantor_from_json(j, "");
    const Json& g = field(j, "generation", "");
    if (!g.is_number_integer() || g.get<int>() < 0) throw DescriptorError("expected a non-negative integer", "/generation");
    d.generation = g.get<int>();
    bool positions = false;
    if (j.contains("positions")) {
      if (!j["positions"].is_boolean()) throw DescriptorError("expected a boolean", "/positions");
      positions = j["positions"].get<bool>();
    }
    try {
      d.set = positions ? cantor_generate(*d.cantor, d.generation) : cantor_profile(*d.cantor, d.generation);
    } catch (const InvalidCantorSpec& e) {
      throw DescriptorError(e.what(), "/lengths/" + std::to_string(e.index()));
    }
    d.json = {{"kind", "cantor"}};
    const Json spec = to_json(*d.cantor);
    for (auto& [key, value] : spec.items()) d.json[key] = value;
    d.json["generation"] = d.generation;
    d.json["positions"] = positions;
  } else if (kind == "gap_sequence") {
    GapSequenceSpec spec;
    const Json& r = field(j, "rule", "");
    if (!r.is_string()) throw DescriptorError("expected a string", "/rule");
    spec.rule = gap_rule_from(r.get<std::string>(), "/rule");
    spec.scale = num_or(j, "scale", 1.0, "");
    spec.exponent = num_or(j, "exponent", 2.0, "");
    const Json& c = field(j, "count", "");
    if (!c.is_number_integer() || c.get<long long>() <= 0) throw DescriptorError("expected a positive integer", "/count");
    spec.count = c.get<std::size_t>();
    d.set = gap_sequence_set(spec);
    d.json = {{"kind", "gap_sequence"}, {"rule", gap_rule_name(spec.rule)}, {"scale", spec.scale},
              {"exponent", spec.exponent}, {"count", spec.count}};
  } else {
    throw DescriptorError("unknown set kind '" + kind + "'", "/kind");
  }
  return d;
}

SetDescriptor load_set_descriptor(const std::string& text_or_path) {
  const auto first = text_or_path.find_first_not_of(" \t\n");
  if (first != std::string::npos && text_or_path[first] == '{') return parse_set_descriptor(parse_json_text(text_or_path));
  if (!std::filesystem::exists(text_or_path)) throw DescriptorError("no such descriptor file", text_or_path);
  return parse_set_descriptor(parse_json_text(read_text_file(text_or_path)));
}

CantorSpec parse_cantor_shorthand(const std::string& s) {
  std::string head;
  const auto f = shorthand_fields(s, head);
  auto get = [&](const std::string& key, double fallback) {
    auto it = f.find(key);
    return it == f.end() ? fallback : parse_double(it->second, "--cantor " + key);
  };
  const double l0 = get("l0", kPi / 2);
  const double base = get("base", 0.0);
  if (head == "geometric") {
    auto it = f.find("lambda");
    if (it == f.end()) it = f.find("ratio");
    if (it == f.end()) throw DescriptorError("geometric rule needs lambda=", "--cantor");
    return CantorSpec::geometric(parse_double(it->second, "--cantor lambda"), l0, base);
  }
  if (head == "double_exp") return CantorSpec::double_exponential(get("rate", 1.0), get("power", 0.0), l0, base);
  if (head == "explicit") {
    auto it = f.find("lengths");
    if (it == f.end()) throw DescriptorError("explicit rule needs lengths=a;b;c", "--cantor");
    std::vector<double> lengths;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ';')) lengths.push_back(parse_double(item, "--cantor lengths"));
    return CantorSpec::explicit_lengths(lengths, base);
  }
  throw DescriptorError("unknown Cantor rule '" + head + "'", "--cantor");
}

GapSequenceSpec parse_gap_sequence_shorthand(const std::string& s) {
  std::string head;
  const auto f = shorthand_fields(s, head);
  GapSequenceSpec spec;
  spec.rule = gap_rule_from(head, "--gap-sequence");
  auto get = [&](const std::string& key, double fallback) {
    auto it = f.find(key);
    return it == f.end() ? fallback : parse_double(it->second, "--gap-sequence " + key);
  };
  spec.scale = get("scale", 1.0);
  spec.exponent = get("exponent", 2.0);
  const double count = get("count", 1000.0);
  if (!(count >= 1.0) || count != std::floor(count)) throw DescriptorError("count must be a positive integer", "--gap-sequence count");
  spec.count = static_cast<std::size_t>(count);
  return spec;
}

WeightProfile parse_weight_shorthand(const std::string& s) {
  std::string head;
  const auto f = shorthand_fields(s, head);
  auto get = [&](const std::string& key, double fallback) {
    auto it = f.find(key);
    return it == f.end() ? fallback : parse_double(it->second, "--weight " + key);
  };
  const double c = get("c", 1.0);
  if (head == "power") {
    if (!f.count("p")) throw DescriptorError("power weight needs p=", "--weight");
    return WeightProfile::power(get("p", 1.0), c);
  }
  if (head == "constant") return WeightProfile::constant(c);
  if (head == "exp_power") {
    if (!f.count("k") || !f.count("q")) throw DescriptorError("exp_power weight needs k= and q=", "--weight");
    return WeightProfile::exp_power(get("k", 0.0), get("q", 0.0), c);
  }
  throw DescriptorError("unknown weight family '" + head + "'", "--weight");
}

// ----------------------------------------------------------------- weights

Json to_json(const WeightProfile& w) {
  Json pieces = Json::array();
  for (const WeightPiece& p : w.pieces()) {
    Json j;
    j["family"] = to_string(p.family);
    j["log_lo"] = number(p.log_lo);
    j["log_hi"] = number(p.log_hi);
    switch (p.family) {
      case Family::power:
        j["log_c"] = number(p.log_c);
        j["p"] = p.p;
        j["log_ref"] = number(p.log_ref);
        break;
      case Family::affine:
        j["log_a"] = number(p.log_a);
        j["log_b"] = number(p.log_b);
        break;
      case Family::exp_power:
        j["log_c"] = number(p.log_c);
        j["k"] = p.k;
        j["q"] = p.q;
        break;
      case Family::log_inverse_integral: j["A"] = p.A; break;
    }
    pieces.push_back(j);
  }
  Json out;
  out["pieces"] = pieces;
  if (w.inverse_integral()) out["psi"] = to_json(w.inverse_integral()->psi());
  return out;
}

WeightProfile weight_from_json(const Json& j) {
  const Json& arr = field(j, "pieces", "");
  if (!arr.is_array() || arr.empty()) throw DescriptorError("expected a non-empty array", "/pieces");
  std::vector<WeightPiece> pieces;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "/pieces/" + std::to_string(i);
    const Json& f = field(arr[i], "family", where);
    if (!f.is_string()) throw DescriptorError("expected a string", where + "/family");
    WeightPiece p;
    try {
      p.family = family_from_string(f.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw DescriptorError(e.what(), where + "/family");
    }
    p.log_lo = num_field(arr[i], "log_lo", where);
    p.log_hi = num_field(arr[i], "log_hi", where);
    switch (p.family) {
      case Family::power:
        p.log_c = num_field(arr[i], "log_c", where);
        p.p = num_field(arr[i], "p", where);
        p.log_ref = num_or(arr[i], "log_ref", 0.0, where);
        break;
      case Family::affine:
        p.log_a = num_field(arr[i], "log_a", where);
        p.log_b = num_field(arr[i], "log_b", where);
        break;
      case Family::exp_power:
        p.log_c = num_or(arr[i], "log_c", 0.0, where);
        p.k = num_field(arr[i], "k", where);
        p.q = num_field(arr[i], "q", where);
        break;
      case Family::log_inverse_integral: p.A = num_field(arr[i], "A", where); break;
    }
    pieces.push_back(p);
  }
  std::shared_ptr<const InverseIntegral> g;
  if (j.contains("psi")) g = std::make_shared<const InverseIntegral>(weight_from_json(j["psi"]));
  try {
    return WeightProfile(std::move(pieces), g);
  } catch (const std::invalid_argument& e) {
    throw DescriptorError(e.what(), "/pieces");
  }
}

// ----------------------------------------------------------------- reports

namespace {

Json numbers(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

}  // namespace

Json to_json(const GrowthEvidence& g) {
  return {{"verdict", to_string(g.verdict)},
          {"rule", g.rule},
          {"partial_sums", numbers(g.partial_sums)},
          {"increments", numbers(g.increments)},
          {"ratios", numbers(g.ratios)}};
}

Json to_json(const MuEstimate& m) {
  Json j;
  j["value"] = number(m.value());
  j["closed_form"] = m.closed_form ? number(*m.closed_form) : Json(nullptr);
  j["slope"] = number(m.slope);
  j["intercept"] = number(m.intercept);
  j["rms_residual"] = number(m.rms_residual);
  j["t_lo"] = number(m.t_lo);
  j["t_hi"] = number(m.t_hi);
  j["decades"] = number(m.decades);
  j["inconclusive"] = m.inconclusive;
  j["good_fit"] = m.good_fit();
  return j;
}

Json to_json(const CapcondReport& c) {
  Json j;
  j["verdict"] = to_string(c.verdict);
  j["basis"] = c.basis;
  j["epsilons"] = numbers(c.epsilons);
  j["integrals"] = numbers(c.integrals);
  j["numeric"] = to_json(c.numeric);
  j["series"] = c.series ? to_json(*c.series) : Json(nullptr);
  j["parametric"] = c.parametric ? Json(to_string(*c.parametric)) : Json(nullptr);
  return j;
}

Json to_json(const CarlesonSetReport& c) {
  return {{"verdict", to_string(c.verdict)},
          {"value", number(c.value)},
          {"basis", c.basis},
          {"partial_sums", numbers(c.partial_sums)},
          {"tail_bound", c.tail_bound ? number(*c.tail_bound) : Json(nullptr)}};
}

Json to_json(const SeriesEnergy& s) {
  return {{"value", number(s.value)},
          {"tail_estimate", number(s.tail_estimate)},
          {"likely_infinite", s.likely_infinite},
          {"growth", to_json(s.growth)}};
}

Json to_json(const CarlesonEnergy& c) {
  return {{"value", number(c.value)},     {"error", number(c.error)},   {"converged", c.converged},
          {"budget_exceeded", c.budget_exceeded}, {"panels", c.panels}, {"iterations", c.iterations}};
}

Json to_json(const ModulusAtZero& m) {
  return {{"value", number(m.value)},
          {"log_value", number(m.log_value)},
          {"log_means", numbers(m.log_means)},
          {"richardson_log", number(m.richardson_log)},
          {"richardson_error", number(m.richardson_error)},
          {"finite", m.finite}};
}

Json to_json(const EnergyReport& r) {
  Json grids = Json::array();
  for (const GridEnergy& g : r.grids) grids.push_back({{"grid", g.grid}, {"series", number(g.series)}, {"tail", number(g.tail)}});
  Json j;
  j["series"] = number(r.series_value);
  j["series_tail"] = number(r.series_tail);
  j["series_growth"] = to_string(r.series_growth);
  j["carleson"] = r.carleson ? to_json(*r.carleson) : Json(nullptr);
  j["carleson_note"] = r.carleson_note;
  j["j"] = number(r.j_value);
  j["j_finite"] = r.j_finite;
  j["j_mode"] = to_string(r.j_mode);
  j["gamma"] = number(r.gamma);
  j["ratio_series_j"] = number(r.ratio_series_j);
  j["ratio_carleson_j"] = r.ratio_carleson_j ? number(*r.ratio_carleson_j) : Json(nullptr);
  j["grids"] = grids;
  j["grid_drift"] = number(r.grid_drift);
  j["in_sanity_band"] = r.in_sanity_band;
  j["stable_under_refinement"] = r.stable_under_refinement;
  j["divergence_note"] = r.divergence_note;
  return j;
}

Json to_json(const PowerCriterion& p) {
  return {{"verdict", to_string(p.verdict)}, {"value", number(p.value)}, {"basis", p.basis}};
}

Json to_json(const PsiResult& r) {
  Json j;
  j["alpha"] = r.alpha;
  j["beta"] = r.beta;
  j["a"] = r.a;
  j["nodes"] = r.log_t.size();
  j["clamped_nodes"] = r.clamped_nodes;
  j["max_clamp"] = number(r.max_clamp);
  j["sandwich_holds"] = r.sandwich_holds;
  j["psi_over_t_alpha_increasing"] = r.psi_over_t_alpha_increasing;
  j["decade_epsilons"] = numbers(r.decade_epsilons);
  j["partial_integrals"] = numbers(r.partial_integrals);
  j["divergence"] = to_json(r.divergence);
  j["divergence_evidence"] = r.divergence_evidence;
  j["parametric_divergence"] = r.parametric_divergence ? Json(to_string(*r.parametric_divergence)) : Json(nullptr);
  j["truncation_x"] = number(r.truncation_x);
  return j;
}

Json to_json(const Certificate& c) {
  Json recs = Json::array();
  for (const DeltaRecord& r : c.records) {
    Json j;
    j["log_delta"] = number(r.log_delta);
    j["A"] = number(r.A);
    j["log_eta"] = number(r.log_eta);
    j["ratio"] = number(r.ratio);
    j["log_f0"] = number(r.log_f0);
    j["f0"] = number(r.f0());
    j["J"] = number(r.j);
    j["bad_fractions"] = numbers(r.bad_fractions);
    j["concave"] = r.concave;
    j["knot"] = r.knot;
    j["degenerate_middle"] = r.degenerate_middle;
    j["error"] = r.error;
    recs.push_back(j);
  }
  Json j;
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  j["gamma"] = c.gamma;
  j["mu"] = c.mu;
  j["j_cap"] = c.j_cap;
  j["psi"] = c.psi ? to_json(*c.psi) : Json(nullptr);
  j["records"] = recs;
  j["checks"] = {{"eta_decreasing", c.eta_decreasing},
                 {"eta_monotone_whole", c.eta_monotone_whole},
                 {"eta_monotone_log_threshold", number(c.eta_monotone_log_threshold)},
                 {"eta_small", c.eta_small},
                 {"f0_nondecreasing", c.f0_nondecreasing},
                 {"f0_monotone_whole", c.f0_monotone_whole},
                 {"f0_monotone_log_threshold", number(c.f0_monotone_log_threshold)},
                 {"f0_close", c.f0_close},
                 {"trace_converges", c.trace_converges},
                 {"j_running_min", number(c.j_running_min)},
                 {"j_sup", number(c.j_sup)},
                 {"j_bounded", c.j_bounded},
                 {"concavity_log_threshold",
                  c.concavity_log_threshold ? number(*c.concavity_log_threshold) : Json(nullptr)},
                 {"knot_small_delta", c.knot_small_delta}};
  j["passed"] = c.passed;
  j["failures"] = c.failures;
  return j;
}

Json to_json(const CyclicityReport& r) {
  Json j;
  j["set"] = r.set_descriptor;
  j["mu"] = to_json(r.mu);
  j["capcond"] = to_json(r.capcond);
  j["certificate"] = r.certificate ? to_json(*r.certificate) : Json(nullptr);
  j["conclusion"] = to_string(r.conclusion);
  j["reason"] = r.reason;
  return j;
}

Json to_json(const FusionResult& f) {
  return {{"lhs", number(f.lhs)},
          {"lhs_error", number(f.lhs_error)},
          {"rhs", number(f.rhs)},
          {"piece_energies", numbers(f.piece_energies)},
          {"log_moduli_at_zero", numbers(f.log_moduli_at_zero)},
          {"holds", f.holds},
          {"budget_exceeded", f.budget_exceeded}};
}

// --------------------------------------------------------------------- CSV

std::string to_csv(const CsvTable& t) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return out;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::stringstream ss(text);
  std::string row;
  bool first = true;
  while (std::getline(ss, row)) {
    if (row.empty() || row[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream rs(row);
    std::string cell;
    while (std::getline(rs, cell, ',')) cells.push_back(cell);
    if (first) t.header = std::move(cells);
    else t.rows.push_back(std::move(cells));
    first = false;
  }
  return t;
}

CsvTable delta_table(const Certificate& c) {
  CsvTable t;
  t.header = {"delta", "log_delta", "A", "eta", "log_eta", "f0", "J", "concave", "knot", "error"};
  for (const DeltaRecord& r : c.records) {
    t.rows.push_back({csv_number(r.delta()), csv_number(r.log_delta), csv_number(r.A), csv_number(r.eta()),
                      csv_number(r.log_eta), csv_number(r.f0()), csv_number(r.j), r.concave ? "1" : "0",
                      r.knot ? "1" : "0", r.error.empty() ? "" : "\"" + r.error + "\""});
  }
  return t;
}

CsvTable sweep_table(const CircleSet& set, int points_per_decade, int decades) {
  const StepFunction n = counting_function(set);
  const NeighborhoodMeasure m = neighborhood_measure(set);
  CsvTable t;
  t.header = {"t", "N_E", "E_t"};
  const int total = points_per_decade * decades;
  for (int i = total; i >= 1; --i) {
    const double log_t = std::log(kPi) - static_cast<double>(i) * std::log(10.0) / points_per_decade;
    t.rows.push_back({csv_number(std::exp(log_t)), csv_number(n.at_log(log_t)), csv_number(std::exp(m.log_at(log_t)))});
  }
  return t;
}

CsvTable psi_table(const PsiResult& r) {
  CsvTable t;
  t.header = {"x", "log_t", "log_phi", "u", "u_reg", "log_psi"};
  for (std::size_t i = 0; i < r.log_t.size(); ++i) {
    t.rows.push_back({csv_number(r.regularization.u.x[i]), csv_number(r.log_t[i]), csv_number(r.log_phi[i]),
                      csv_number(r.regularization.u.u[i]), csv_number(r.regularization.u_reg[i]),
                      csv_number(r.log_psi[i])});
  }
  return t;
}

}  // namespace dcyc
