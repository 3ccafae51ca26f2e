#include <functional>
#include <map>
#include <sstream>

#include "wander/cli.hpp"
#include "wander/heights.hpp"
#include "wander/local_analysis.hpp"
#include "wander/parser.hpp"
#include "wander/residue_dyn.hpp"

namespace wander {

using json = nlohmann::ordered_json;

namespace {

json ext(const ExtInt& v) {
  if (v.is_infinite()) return "inf";
  return v.value();
}

json rational(const mpq_class& q) { return q.get_str(); }

json opt_rational(const std::optional<mpq_class>& q) {
  return q ? rational(*q) : json(nullptr);
}

json class_list(const std::vector<ResidueClass>& v) {
  json out = json::array();
  for (const auto& c : v) out.push_back(c.to_string());
  return out;
}

json reduction_json(const RatMap& phi, const ReductionReport& r) {
  json j;
  j["map"] = phi.to_string();
  j["field"] = phi.field().name();
  j["degree"] = phi.degree();
  j["fbar"] = to_string(r.fbar);
  j["gbar"] = to_string(r.gbar);
  j["hbar"] = to_string(r.hbar);
  j["classification"] = r.classification_label();
  j["reduced_map"] = r.reduced_map ? json(r.reduced_map->to_string()) : json(nullptr);
  j["reduced_degree"] = r.reduced_degree;
  j["bad_classes"] = class_list(r.bad_classes);
  return j;
}

json interval_json(const CanonicalHeightInterval& c) {
  return json{{"depth", c.depth},
              {"orbit_height", c.orbit_height.get_str()},
              {"B", c.B.get_str()},
              {"lo", rational(c.lo)},
              {"hi", rational(c.hi)},
              {"exact", c.exact}};
}

json preperiodicity_json(const PreperiodicityResult& p) {
  json j{{"label", p.label()}, {"reason", p.reason}};
  if (p.proof) j["proof"] = interval_json(*p.proof);
  return j;
}

json verdict_json(const GrandOrbitVerdict& v) {
  json j{{"label", v.label()}, {"evidence", v.evidence}};
  if (v.window) {
    j["window"] = json{{"depth", v.window->depth},
                       {"shift", v.window->shift},
                       {"w", rational(v.window->w)},
                       {"x", interval_json(v.window->x_interval)},
                       {"y", interval_json(v.window->y_interval)}};
  }
  return j;
}

std::string step_status(ClassOrbitStep::Status s) {
  switch (s) {
    case ClassOrbitStep::Status::GoodStep: return "GoodStep";
    case ClassOrbitStep::Status::BadClassHit: return "BadClassHit";
    case ClassOrbitStep::Status::Collision: return "Collision";
  }
  return "";
}

json orbit_json(const ClassOrbitReport& r) {
  json steps = json::array();
  for (const auto& s : r.steps) {
    json j{{"step", s.step}, {"class", s.cls.to_string()}, {"status", step_status(s.status)}};
    if (s.status == ClassOrbitStep::Status::Collision) j["collision_with"] = s.collision_with;
    steps.push_back(j);
  }
  return json{{"verdict", r.verdict_label()}, {"steps", steps}};
}

json repelling_json(const RepellingResult& r) {
  json spheres = json::array();
  for (const auto& s : r.spheres) {
    spheres.push_back(json{{"offset_valuation", rational(s.offset)},
                           {"fixed_points", s.count},
                           {"derivative_valuation", opt_rational(s.derivative_valuation)}});
  }
  json j;
  j["found"] = r.found;
  j["offset_valuation"] = r.found ? (r.offset ? rational(*r.offset) : json("inf")) : json(nullptr);
  j["derivative_valuation"] = r.found ? rational(r.derivative_valuation) : json(nullptr);
  j["spheres"] = spheres;
  j["lift_is_fixed"] = r.lift_is_fixed;
  j["lift_derivative_valuation"] = opt_rational(r.lift_derivative_valuation);
  return j;
}

json growth_json(const JuliaGrowthReport& g) {
  json witnesses = json::array();
  for (const auto& [c, w] : g.witnesses) {
    witnesses.push_back(json{{"class", c.to_string()}, {"repelling", repelling_json(w)}});
  }
  return json{{"conclusion", g.conclusion_label()},
              {"reason", g.reason},
              {"witnesses", witnesses},
              {"seeds", class_list(g.seeds)},
              {"counts", g.counts},
              {"r", g.r},
              {"psi_degree", g.psi_degree},
              {"separable", g.separable}};
}

json witness_json(const std::optional<JuliaWitness>& w) {
  if (!w) return nullptr;
  json j{{"route", w->route_label()},
         {"class", w->witness_class.to_string()},
         {"repelling", repelling_json(w->repelling)},
         {"evidence", w->evidence}};
  if (!w->counts.empty()) j["counts"] = w->counts;
  if (!w->backward_orbit.empty()) j["backward_orbit"] = class_list(w->backward_orbit);
  return j;
}

json certificate_json(const WanderingCertificate& c) {
  json distinct = json::array();
  for (const auto& v : c.distinct_from) distinct.push_back(verdict_json(v));
  return json{{"representative", c.representative.to_string()},
              {"class", c.push.pushed.to_string()},
              {"push",
               json{{"last_bad_step", c.push.last_bad_step},
                    {"steps_pushed", c.push.steps_pushed},
                    {"certified", c.push.certified},
                    {"evidence", c.push.evidence}}},
              {"orbit", orbit_json(c.orbit)},
              {"wandering", preperiodicity_json(c.wandering)},
              {"distinct_from", distinct},
              {"revalidated_depth", c.revalidated_depth},
              {"component_types", c.component_types},
              {"julia_upgrade", c.julia_upgrade}};
}

json disk_json(const Disk& d) {
  return json{{"center", d.center.to_string()},
              {"radius_valuation", rational(d.radius_valuation)},
              {"kind", d.kind == Disk::Kind::Open ? "open" : "closed"},
              {"text", d.to_string()}};
}

// A command body fills the report; HypothesesNotMet and module errors are
// handled by run().
struct Context {
  const CommandInput& in;
  Report& report;
  std::optional<Field> field;

  HeightOptions heights() const {
    HeightOptions h;
    h.bit_budget = in.limits.bit_budget;
    return h;
  }

  Field field_or_q() const { return field.value_or(Field::rationals()); }

  const std::string& need(const std::optional<std::string>& v, const char* flag) const {
    if (!v) throw Error(ErrorCode::InvalidArgument, std::string("missing --") + flag);
    return *v;
  }

  RatMap map() {
    auto [phi, fixture] = resolve_map(need(in.map, "map"), field);
    if (fixture) {
      if (field && !in.map->starts_with("example:cyclotomic:") && *field != fixture->field) {
        report.warnings.push_back("fixture " + fixture->name + " is defined over " +
                                  fixture->field.name() + "; --field ignored");
      }
      for (const auto& w : fixture->warnings) report.warnings.push_back(w);
    }
    return phi;
  }

  Disk disk() const {
    const Field f = phi_field;
    const std::string kind = in.kind.value_or("open");
    if (kind != "open" && kind != "closed") {
      throw Error(ErrorCode::InvalidArgument, "--kind must be open or closed");
    }
    mpq_class s;
    try {
      s = mpq_class(in.radius_val.value_or("0"));
    } catch (const std::invalid_argument&) {
      throw Error(ErrorCode::InvalidArgument, "--radius-val must be a rational number");
    }
    s.canonicalize();
    return Disk{parse_scalar(need(in.center, "center"), f), s,
                kind == "open" ? Disk::Kind::Open : Disk::Kind::Closed};
  }

  Field phi_field = Field::rationals();
};

void cmd_classify(Context& c) {
  const RatMap phi = c.map();
  c.report.result = reduction_json(phi, reduce(phi));
}

void cmd_bad_classes(Context& c) {
  const RatMap phi = c.map();
  c.report.result = json{{"map", phi.to_string()}, {"bad_classes", class_list(bad_classes(phi))}};
}

void cmd_orbit(Context& c) {
  const RatMap phi = c.map();
  const ResidueClass b = parse_residue_class(c.need(c.in.cls, "class"), phi.field());
  const int depth = c.in.depth.value_or(5);
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "--depth must be >= 1");
  const ReductionReport r = reduce(phi);
  json j = orbit_json(class_orbit(r, b, depth));
  j["map"] = phi.to_string();
  j["reduced_map"] = r.map().to_string();
  c.report.result = j;
}

void cmd_wander(Context& c) {
  const RatMap phi = c.map();
  const int count = c.in.count.value_or(3);
  const int depth = c.in.depth.value_or(5);
  if (count < 1 || depth < 1) throw Error(ErrorCode::InvalidArgument, "--count and --depth must be >= 1");
  const std::optional<JuliaWitness> witness = julia_witness(phi, c.in.julia_depth.value_or(2));
  c.report.result["map"] = phi.to_string();
  c.report.result["julia_witness"] = witness_json(witness);
  if (c.in.require_julia && !witness) {
    throw Error(ErrorCode::HypothesesNotMet, "--require-julia given but no Julia witness was found");
  }
  CertificateOptions opts;
  opts.heights = c.heights();
  opts.degree_cap = c.in.limits.degree_cap;
  if (c.in.horizon) opts.push_horizon = *c.in.horizon;
  json certs = json::array();
  for (const auto& cert : wandering_domain_certificates(phi, count, depth, witness, opts)) {
    certs.push_back(certificate_json(cert));
  }
  c.report.result["certificates"] = certs;
}

void cmd_julia(Context& c) {
  const RatMap phi = c.map();
  const int depth = c.in.depth.value_or(3);
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "--depth must be >= 1");
  c.report.result["map"] = phi.to_string();
  c.report.result["growth"] = growth_json(julia_class_growth(phi, depth));
  c.report.result["witness"] = witness_json(julia_witness(phi, depth));
}

void cmd_fixedpoints(Context& c) {
  const RatMap phi = c.map();
  const ResidueClass cls = parse_residue_class(c.need(c.in.cls, "class"), phi.field());
  c.report.result = repelling_json(repelling_fixed_class(phi, cls));
  c.report.result["class"] = cls.to_string();
}

void cmd_newton(Context& c) {
  const ValuedPoly p = parse_polynomial(c.need(c.in.poly, "poly"), c.field_or_q());
  const NewtonPolygon np = newton_polygon(p);
  json support = json::array(), segments = json::array(), roots = json::array();
  for (const auto& [i, v] : np.support) support.push_back(json::array({i, v}));
  for (const auto& s : np.segments) {
    segments.push_back(json{{"slope", rational(s.slope)}, {"length", s.length}, {"start", s.start}});
  }
  for (const auto& [v, m] : np.root_valuations()) {
    roots.push_back(json{{"valuation", rational(v)}, {"multiplicity", m}});
  }
  if (np.zero_roots > 0) roots.push_back(json{{"valuation", "inf"}, {"multiplicity", np.zero_roots}});
  c.report.result = json{{"poly", to_string(p)},
                         {"degree", np.degree},
                         {"support", support},
                         {"segments", segments},
                         {"root_valuations", roots}};
}

void cmd_disk_image(Context& c) {
  const RatMap phi = c.map();
  c.phi_field = phi.field();
  const Disk u = c.disk();
  c.report.result = json{{"map", phi.to_string()}, {"disk", disk_json(u)}, {"image", disk_json(disk_image(phi, u))}};
}

void cmd_injectivity(Context& c) {
  const RatMap phi = c.map();
  c.phi_field = phi.field();
  const Disk u = c.disk();
  const InjectivityResult r = injectivity_isometry(phi, u);
  json j{{"map", phi.to_string()}, {"disk", disk_json(u)}, {"injective", r.injective}};
  j["scaling_valuation"] = r.injective ? ext(r.scaling_valuation) : json(nullptr);
  j["witness_index"] = r.injective ? json(nullptr) : json(r.witness_index);
  j["critical_points_in_disk"] =
      r.critical_points_in_disk ? json(*r.critical_points_in_disk) : json(nullptr);
  c.report.result = j;
}

void cmd_conjugate(Context& c) {
  const RatMap phi = c.map();
  const Mobius g = parse_mobius(c.need(c.in.mobius, "mobius"), phi.field());
  const RatMap psi = conjugate(phi, g);
  c.report.result = json{{"map", phi.to_string()},
                         {"mobius", g.to_string()},
                         {"psi", psi.to_string()},
                         {"reduction", reduction_json(psi, reduce(psi))}};
}

json fixture_json(const Fixture& f) {
  json j{{"name", f.name},
         {"description", f.description},
         {"map_text", f.map_text},
         {"field", f.field.name()},
         {"expected",
          json{{"reduced_map", f.reduced_map.empty() ? json(nullptr) : json(f.reduced_map)},
               {"classification", f.classification},
               {"bad_classes", f.bad_classes}}}};
  if (!f.notes.empty()) j["notes"] = f.notes;
  return j;
}

void cmd_example(Context& c) {
  if (c.in.list || !c.in.name) {
    json list = json::array();
    for (const auto& f : fixtures()) list.push_back(json{{"name", f.name}, {"description", f.description}});
    c.report.result = json{{"fixtures", list},
                           {"families", json::array({"cyclotomic:<m>", "ex2.5:<b>,<c>"})}};
    return;
  }
  const Fixture f = load_fixture(*c.in.name, c.field);
  for (const auto& w : f.warnings) c.report.warnings.push_back(w);
  const RatMap phi = f.map();
  const ReductionReport r = reduce(phi);
  json j = fixture_json(f);
  j["reduction"] = reduction_json(phi, r);
  if (!f.classification.empty()) {
    std::vector<std::string> bad;
    for (const auto& b : r.bad_classes) bad.push_back(b.to_string());
    const std::string reduced = r.reduced_map ? r.reduced_map->to_string() : "";
    j["matches_expected"] =
        reduced == f.reduced_map && r.classification_label() == f.classification && bad == f.bad_classes;
  }
  c.report.result = j;
}

const std::map<std::string, std::function<void(Context&)>>& commands() {
  static const std::map<std::string, std::function<void(Context&)>> table{
      {"classify", cmd_classify},       {"bad-classes", cmd_bad_classes},
      {"orbit", cmd_orbit},             {"wander", cmd_wander},
      {"julia", cmd_julia},             {"fixedpoints", cmd_fixedpoints},
      {"newton", cmd_newton},           {"disk-image", cmd_disk_image},
      {"injectivity", cmd_injectivity}, {"conjugate", cmd_conjugate},
      {"example", cmd_example}};
  return table;
}

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// Arrays of scalars print on one line.
bool is_flat(const json& v) {
  if (!v.is_array()) return !v.is_object() || v.empty();
  for (const auto& e : v) {
    if (e.is_structured()) return false;
  }
  return true;
}

std::string flat_text(const json& v) {
  if (!v.is_array()) return scalar_text(v);
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar_text(v[i]);
  return s + "]";
}

void render(std::ostringstream& os, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (is_flat(v)) {
        os << pad << k << ": " << flat_text(v) << "\n";
      } else if (v.is_structured() && !v.empty()) {
        os << pad << k << ":\n";
        render(os, v, indent + 1);
      } else {
        os << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (is_flat(v)) {
        os << pad << "- " << flat_text(v) << "\n";
      } else if (v.is_structured() && !v.empty()) {
        os << pad << "-\n";
        render(os, v, indent + 1);
      } else {
        os << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  }
}

}  // namespace

std::string status_label(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::HypothesesNotMet: return "hypotheses-not-met";
    case Status::Error: return "error";
  }
  return "";
}

json CommandInput::to_json() const {
  json j = json::object();
  auto put = [&](const char* k, const auto& v) {
    if (v) j[k] = *v;
  };
  put("map", map);
  put("field", field);
  put("poly", poly);
  put("class", cls);
  put("center", center);
  put("radius_val", radius_val);
  put("kind", kind);
  put("mobius", mobius);
  put("name", name);
  put("depth", depth);
  put("count", count);
  put("horizon", horizon);
  put("julia_depth", julia_depth);
  if (require_julia) j["require_julia"] = true;
  if (list) j["list"] = true;
  if (limits.degree_cap != kDefaultDegreeCap) j["degree_cap"] = limits.degree_cap;
  if (limits.bit_budget != kDefaultBitBudget) j["bit_budget"] = limits.bit_budget;
  return j;
}

json Report::to_json() const {
  return json{{"command", command},
              {"input", input},
              {"result", result},
              {"warnings", warnings},
              {"status", status_label(status)}};
}

Report Report::from_json(const json& j) {
  Report r;
  r.command = j.at("command").get<std::string>();
  r.input = j.at("input");
  r.result = j.at("result");
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  const std::string s = j.at("status").get<std::string>();
  if (s == "ok") {
    r.status = Status::Ok;
  } else if (s == "hypotheses-not-met") {
    r.status = Status::HypothesesNotMet;
  } else if (s == "error") {
    r.status = Status::Error;
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown report status '" + s + "'");
  }
  return r;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "command: " << command << "\nstatus: " << status_label(status) << "\n";
  if (!input.empty()) {
    os << "input:\n";
    render(os, input, 1);
  }
  os << "result:\n";
  render(os, result, 1);
  for (const auto& w : warnings) os << "warning: " << w << "\n";
  return os.str();
}

int Report::exit_code() const {
  switch (status) {
    case Status::Ok: return 0;
    case Status::HypothesesNotMet: return 2;
    case Status::Error: return 1;
  }
  return 1;
}

Report run(const CommandInput& in) {
  Report report;
  report.command = in.command;
  report.input = in.to_json();
  auto fail = [&](ErrorCode code, const std::string& message) {
    report.result = json{{"code", std::string(to_string(code))}, {"message", message}};
    report.status = code == ErrorCode::HypothesesNotMet ? Status::HypothesesNotMet : Status::Error;
  };
  const auto& table = commands();
  const auto it = table.find(in.command);
  if (it == table.end()) {
    fail(ErrorCode::UnknownCommand, "unknown command '" + in.command + "'");
    return report;
  }
  try {
    Context ctx{in, report, std::nullopt};
    if (in.field) ctx.field = Field::parse(*in.field);
    it->second(ctx);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::HypothesesNotMet) {
      // Keep whatever partial result was computed next to the reason.
      json partial = report.result;
      fail(e.code(), e.what());
      if (!partial.empty()) report.result["partial"] = partial;
    } else {
      fail(e.code(), e.what());
    }
  }
  return report;
}

}  // namespace wander
