#include "report.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <thread>

namespace hypercox::cli {

namespace {

std::string rational_str(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

std::string edge_kind(EdgeKind k) {
  switch (k) {
    case EdgeKind::None: return "orthogonal";
    case EdgeKind::Angle: return "angle";
    case EdgeKind::Thick: return "parallel";
    case EdgeKind::Dashed: return "ultraparallel";
    case EdgeKind::Disjoint: return "disjoint";
  }
  return "?";
}

json wall_names(const WallSet& s, const std::vector<std::string>& names) {
  json out = json::array();
  for (int w : s) out.push_back(names.at(w));
  return out;
}

// Runs f(), turning a domain error into null: some quantities only exist on
// part of the family.
template <class F>
json optional_number(F&& f) {
  try {
    return number(f());
  } catch (const std::domain_error&) {
    return nullptr;
  } catch (const std::out_of_range&) {
    return nullptr;
  }
}

// Start of the Schlafli integration for the open regime containing ft.
std::optional<double> regime_start(const FamilyTime& ft) {
  switch (ft.regime) {
    case Regime::AboveT1: return 1.0;
    case Regime::BetweenT2T1: return kT1;
    case Regime::BelowT2: return kT2;
    default: return std::nullopt;
  }
}

double schlafli_at(double t) {
  auto t0 = regime_start(FamilyTime::from_double(t));
  if (!t0) throw std::domain_error("regime boundary");
  return schlafli_integrate(*t0, closed_form_volume(FamilyTime::from_double(*t0)), {t}).front().vol;
}

std::string fvector_str(const StrataComplex::FVector& f) {
  std::ostringstream os;
  os << '(' << f.walls << ',' << f.faces << ',' << f.edges << ',' << f.vertices << ')';
  return os.str();
}

json fvector_json(const StrataComplex::FVector& f) {
  return {{"walls", f.walls}, {"faces", f.faces},   {"edges", f.edges},
          {"vertices", f.vertices}, {"finite", f.finite}, {"ideal", f.ideal}};
}

MultiQuad parse_entry(const json& v) {
  if (v.is_string()) return MultiQuad::parse(v.get<std::string>());
  if (v.is_number_integer()) return MultiQuad(v.get<long>());
  throw std::invalid_argument("exact entries are integers or strings like \"1/2*sqrt(3)\"");
}

int wall_ref(const json& v, const Polytope<double>& P) {
  if (v.is_number_integer()) {
    int w = v.get<int>();
    if (w < 0 || w >= static_cast<int>(P.size())) throw std::invalid_argument("wall index out of range");
    return w;
  }
  int w = P.index_of(v.get<std::string>());
  if (w < 0) throw std::invalid_argument("unknown wall " + v.get<std::string>());
  return w;
}

IsometryMatrix iso_from_json(const json& j, const std::string& name) {
  if (j.is_null()) return IsometryMatrix::identity();
  if (j.contains("matrix")) {
    IsometryMatrix m{name, j.at("matrix").get<Mat<double>>()};
    if (!m.is_lorentz()) throw std::invalid_argument(name + ": matrix is not an orthochronous isometry");
    return m;
  }
  auto perm = j.at("perm").get<std::vector<int>>();
  auto signs = j.value("signs", std::vector<int>(perm.size(), 1));
  return IsometryMatrix::signed_permutation(name, perm, signs);
}

Polytope<double> polytope_of(const json& j) {
  if (j.contains("preset")) return preset_polytope<double>(parse_preset(j.at("preset").get<std::string>()));
  if (j.contains("t")) return ks_normals<double>(FamilyTime::parse(j.at("t").get<std::string>()));
  if (j.contains("polytope")) return polytope_from_json(j.at("polytope"), "custom").numeric;
  throw std::invalid_argument("assembly file needs \"preset\", \"t\" or \"polytope\"");
}

json cell_json(const FixedCell& c, const std::vector<std::string>& names) {
  return {{"dim", c.dim}, {"copy", c.copy}, {"walls", wall_names(c.key, names)}};
}

std::string csv_cell(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.is_null() ? "" : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
    return buf;
  }
  return v.dump();
}

bool all_scalars(const json& a) {
  for (auto& x : a)
    if (x.is_structured()) return false;
  return true;
}

void text(std::ostringstream& os, const json& v, int indent) {
  std::string pad(indent, ' ');
  for (auto& [k, x] : v.items()) {
    if (x.is_object()) {
      os << pad << k << ":\n";
      text(os, x, indent + 2);
    } else if (x.is_array() && !all_scalars(x)) {
      os << pad << k << ": " << x.size() << '\n';
      for (auto& e : x) {
        if (e.is_object()) {
          std::ostringstream inner;
          text(inner, e, indent + 4);
          std::string s = inner.str();
          s.replace(indent + 2, 2, "- ");
          os << s;
        } else if (e.is_array() && all_scalars(e)) {
          os << pad << "  - (";
          for (std::size_t i = 0; i < e.size(); ++i) os << (i ? ", " : "") << scalar_text(e[i]);
          os << ")\n";
        } else {
          os << pad << "  - " << e.dump() << '\n';
        }
      }
    } else if (x.is_array()) {
      os << pad << k << ": (";
      for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << scalar_text(x[i]);
      os << ")\n";
    } else {
      os << pad << k << ": " << scalar_text(x) << '\n';
    }
  }
}

void flatten(const json& v, const std::string& path, std::vector<std::pair<std::string, json>>& out) {
  if (!v.is_structured()) {
    out.emplace_back(path, v);
    return;
  }
  for (auto& [k, x] : v.items()) flatten(x, path.empty() ? k : path + "." + k, out);
}

}  // namespace

json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

PolytopeInput preset_input(const std::string& name) {
  Preset p = parse_preset(name);
  PolytopeInput in;
  in.label = p.name;
  in.kind = p.kind;
  in.time = p.time;
  if (p.time.exact()) {
    in.exact = preset_polytope<MultiQuad>(p);
    in.numeric = in.exact->numeric();
  } else {
    in.numeric = preset_polytope<double>(p);
  }
  return in;
}

PolytopeInput time_input(const std::string& t) { return preset_input("P@t=" + t); }

PolytopeInput polytope_from_json(const json& j, const std::string& label) {
  const json& list = j.is_array() ? j : j.at("normals");
  PolytopeInput in;
  in.label = j.is_object() ? j.value("name", label) : label;
  Polytope<MultiQuad> ex;
  bool exact = true;
  for (auto& w : list) {
    std::string name = w.at("name").get<std::string>();
    const json& v = w.contains("normal") ? w.at("normal") : w.at("v");
    if (v.size() != 5) throw std::invalid_argument("wall " + name + ": normals live in R^{1,4}");
    Vec<double> d;
    Vec<MultiQuad> e;
    for (auto& x : v) {
      if (x.is_string()) {
        MultiQuad q = MultiQuad::parse(x.get<std::string>());
        d.push_back(q.to_double());
        e.push_back(q);
      } else {
        d.push_back(x.get<double>());
        if (x.is_number_integer())
          e.push_back(MultiQuad(x.get<long>()));
        else
          exact = false;
      }
    }
    in.numeric.names.push_back(name);
    in.numeric.normals.push_back(d);
    ex.names.push_back(name);
    ex.normals.push_back(e);
  }
  if (in.numeric.size() < 5) throw std::invalid_argument("a finite-volume polytope in H^4 has at least 5 walls");
  if (exact) in.exact = std::move(ex);
  return in;
}

json analyze_report(const PolytopeInput& in, StrataMode mode, bool exact) {
  json r;
  r["polytope"] = in.label;
  r["walls"] = in.numeric.names;
  if (in.time) {
    const FamilyTime& ft = *in.time;
    r["time"] = {{"t", number(ft.t)},
                 {"t_squared", ft.t_squared ? json(rational_str(*ft.t_squared)) : json(nullptr)},
                 {"regime", to_string(ft.regime)}};
    r["angles"] = {{"theta", optional_number([&] { return angle_theta(ft); })},
                   {"phi", optional_number([&] { return angle_phi(ft); })},
                   {"psi", optional_number([&] { return angle_psi(ft); })},
                   {"eta", optional_number([&] { return angle_eta(ft); })}};
  }
  bool use_exact = exact && in.exact.has_value();
  r["backend"] = use_exact ? "exact" : "double";
  StrataComplex S = use_exact ? enumerate_strata(*in.exact, mode) : enumerate_strata(in.numeric, mode);
  r["fvector"] = fvector_json(S.fvector());

  CoxeterDiagram D = diagram_of(in.numeric);
  json edges = json::array();
  for (std::size_t i = 0; i < D.size(); ++i)
    for (std::size_t j = i + 1; j < D.size(); ++j) {
      const DiagramEdge& e = D.at(i, j);
      if (e.kind == EdgeKind::None) continue;
      json x = {{"walls", {D.names[i], D.names[j]}}, {"kind", edge_kind(e.kind)}, {"alpha", number(e.alpha)}};
      if (e.kind == EdgeKind::Angle) x["angle"] = number(e.angle);
      edges.push_back(x);
    }
  r["diagram"] = edges;

  bool coxeter = true;
  json faces = json::array();
  for (std::size_t k = 0; k < S.faces.size(); ++k) {
    int label = coxeter_label(S.face_angles[k]);
    coxeter = coxeter && label != 0;
    faces.push_back({{"walls", wall_names(S.faces[k], S.wall_names)},
                     {"angle", number(S.face_angles[k])},
                     {"pi_over", label ? json(label) : json(nullptr)}});
  }
  r["dihedral_angles"] = faces;

  VolumeVerdict verdict = finite_volume_check(S);
  r["finite_volume"] = {{"finite", verdict.finite}, {"reason", verdict.reason}};

  json vol = json::object();
  if (verdict.finite) {
    if (in.kind == 'P' && in.time) {
      vol["closed_form"] = number(closed_form_volume(*in.time));
      vol["schlafli"] = optional_number([&] { return schlafli_at(in.time->t); });
    }
    vol["poincare"] = optional_number([&] { return poincare_volume(S); });
    if (coxeter) {
      Rational chi = orbifold_euler_char(in.numeric, S);
      r["euler_char"] = rational_str(chi);
      vol["gauss_bonnet"] = number(gauss_bonnet_volume(chi));
    }
  }
  r["volume"] = vol;
  return r;
}

Quantity parse_quantity(const std::string& s) {
  static const std::pair<const char*, Quantity> names[] = {
      {"theta", Quantity::Theta},   {"phi", Quantity::Phi},           {"psi", Quantity::Psi},
      {"eta", Quantity::Eta},       {"volume", Quantity::Volume},     {"schlafli", Quantity::Schlafli},
      {"poincare", Quantity::Poincare}, {"fvector", Quantity::FVector}};
  for (auto& [n, q] : names)
    if (s == n) return q;
  throw FlagError("unknown quantity '" + s + "'");
}

std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::Theta: return "theta";
    case Quantity::Phi: return "phi";
    case Quantity::Psi: return "psi";
    case Quantity::Eta: return "eta";
    case Quantity::Volume: return "volume";
    case Quantity::Schlafli: return "schlafli";
    case Quantity::Poincare: return "poincare";
    case Quantity::FVector: return "fvector";
  }
  return "?";
}

json sweep_report(double from, double to, int steps, const std::vector<Quantity>& quantities, int jobs) {
  if (steps < 1) throw FlagError("--steps must be positive");
  if (!(from > 0 && from <= 1 && to > 0 && to <= 1)) throw FlagError("sweep range must lie in (0,1]");
  std::vector<double> ts(steps);
  for (int k = 0; k < steps; ++k) ts[k] = steps == 1 ? from : from + (to - from) * k / (steps - 1);

  std::vector<json> rows(steps);
  for (int k = 0; k < steps; ++k) rows[k] = {{"t", number(ts[k])}};
  bool want_schlafli = false;
  for (Quantity q : quantities) want_schlafli = want_schlafli || q == Quantity::Schlafli;

  // Schlafli runs once per regime so that every value comes from the same
  // integration path whatever the number of threads.
  std::map<Regime, std::vector<int>> by_regime;
  if (want_schlafli)
    for (int k = 0; k < steps; ++k) {
      Regime r = FamilyTime::from_double(ts[k]).regime;
      if (regime_start(FamilyTime::from_double(ts[k]))) by_regime[r].push_back(k);
    }
  std::vector<std::vector<int>> regime_tasks;
  for (auto& [r, idx] : by_regime) regime_tasks.push_back(idx);

  std::vector<std::string> errors(steps + regime_tasks.size());
  std::vector<json> schlafli(steps);
  auto sample = [&](int k) {
    FamilyTime ft = FamilyTime::from_double(ts[k]);
    json& row = rows[k];
    for (Quantity q : quantities) {
      std::string key = to_string(q);
      switch (q) {
        case Quantity::Theta: row[key] = optional_number([&] { return angle_theta(ft); }); break;
        case Quantity::Phi: row[key] = optional_number([&] { return angle_phi(ft); }); break;
        case Quantity::Psi: row[key] = optional_number([&] { return angle_psi(ft); }); break;
        case Quantity::Eta: row[key] = optional_number([&] { return angle_eta(ft); }); break;
        case Quantity::Volume: row[key] = number(closed_form_volume(ft)); break;
        case Quantity::Poincare:
          row[key] = optional_number(
              [&] { return poincare_volume(enumerate_strata(ks_normals<double>(ft), StrataMode::Geometric)); });
          break;
        case Quantity::FVector:
          row[key] = fvector_str(enumerate_strata(ks_normals<double>(ft), StrataMode::Geometric).fvector());
          break;
        case Quantity::Schlafli: break;
      }
    }
  };
  auto regime = [&](const std::vector<int>& idx) {
    std::vector<double> times;
    for (int k : idx) times.push_back(ts[k]);
    double t0 = *regime_start(FamilyTime::from_double(times.front()));
    VolumeCurve c = schlafli_integrate(t0, closed_form_volume(FamilyTime::from_double(t0)), times);
    for (std::size_t i = 0; i < idx.size(); ++i) schlafli[idx[i]] = number(c[i].vol);
  };

  std::size_t total = steps + regime_tasks.size();
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < total;) {
      try {
        if (i < regime_tasks.size())
          regime(regime_tasks[i]);
        else
          sample(static_cast<int>(i - regime_tasks.size()));
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  int n = std::max(1, std::min<int>(jobs, static_cast<int>(total)));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (!e.empty()) throw std::runtime_error("sweep: " + e);
  if (want_schlafli)
    for (int k = 0; k < steps; ++k) rows[k]["schlafli"] = schlafli[k];

  json cols = json::array({"t"});
  for (Quantity q : quantities) cols.push_back(to_string(q));
  json out;
  out["columns"] = cols;
  out["rows"] = rows;
  return out;
}

AssembledComplex assembly_from_json(const json& j, std::optional<InvolutionResult>* involution) {
  Polytope<double> P = polytope_of(j);
  AssembledComplex C;
  if (j.contains("colouring")) {
    C = mirror_complex(P, make_colouring(P, j.at("colouring").get<std::map<std::string, int>>()));
  } else {
    auto copies = j.at("copies").get<std::vector<std::string>>();
    std::vector<PairingRule> rules;
    int n = 0;
    for (auto& r : j.at("rules")) {
      PairingRule p;
      p.copy = r.value("copy", 0);
      p.to_copy = r.value("to_copy", p.copy);
      p.wall = wall_ref(r.at("wall"), P);
      p.to_wall = r.contains("to_wall") ? wall_ref(r.at("to_wall"), P) : p.wall;
      p.iso = iso_from_json(r.value("iso", json(nullptr)), "rule" + std::to_string(n++));
      rules.push_back(p);
    }
    C = pairing_complex(P, copies, rules);
  }
  if (involution && j.contains("involution")) {
    const json& inv = j.at("involution");
    *involution = involution_quotient(C, iso_from_json(inv.at("iso"), "involution"),
                                      inv.at("copy_perm").get<std::vector<int>>());
  }
  return C;
}

json assemble_report(const AssembledComplex& C, const std::string& label,
                     const std::optional<InvolutionResult>& involution) {
  json r;
  r["complex"] = label;
  r["copies"] = C.copies;
  r["walls"] = C.walls();

  auto cycles = face_cycles(C);
  json fc = json::array();
  for (auto& c : cycles) {
    bool singular = std::fabs(c.angle - 2 * std::numbers::pi) > 1e-9;
    fc.push_back({{"length", c.entries.size()},
                  {"angle", number(c.angle)},
                  {"singular", singular},
                  {"trivial_return", c.trivial_return}});
  }
  r["face_cycles"] = fc;

  json ss = json::array();
  for (auto& s : stratum_surfaces(C)) {
    json x = {{"cycles", s.cycles.size()},        {"is_surface", s.is_surface()},
              {"closed", s.closed()},              {"branched_edges", s.branched_edges},
              {"boundary_edges", s.boundary_edges}, {"area", number(s.area)}};
    if (s.is_surface()) {
      json cones = json::array();
      for (double a : s.cone_angles) cones.push_back(number(a));
      x["euler_char"] = s.euler_char;
      x["orientable"] = s.orientable;
      x["cone_angles"] = cones;
      x["punctures"] = s.punctures;
    }
    ss.push_back(x);
  }
  r["surfaces"] = ss;

  json cs = json::array();
  for (auto& c : cusp_cycles(C))
    cs.push_back({{"entries", c.entries.size()}, {"length", c.length}, {"monodromy", c.monodromy}});
  r["cusps"] = cs;

  EulerCharacteristic chi = complex_euler_char(C);
  r["euler_char"] = {{"topological", chi.topological},
                     {"orbifold", chi.orbifold ? json(rational_str(*chi.orbifold)) : json(nullptr)}};

  if (involution) {
    json fixed = json::array();
    for (auto& f : involution->fixed) fixed.push_back(cell_json(f, C.base.names));
    r["involution"] = {{"free", involution->fixed.empty()}, {"fixed", fixed}};
    if (involution->quotient) r["quotient"] = assemble_report(*involution->quotient, label + "/iota");
  }
  return r;
}

ExactGram gram_from_json(const json& j) {
  ExactGram G;
  const json& g = j.at("gram");
  std::size_t n = g.size();
  G.names = j.contains("names") ? j.at("names").get<std::vector<std::string>>() : std::vector<std::string>{};
  if (G.names.empty())
    for (std::size_t i = 0; i < n; ++i) G.names.push_back("e" + std::to_string(i));
  if (G.names.size() != n) throw std::invalid_argument("gram: names and matrix differ in size");
  G.g.assign(n, std::vector<MultiQuad>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (g[i].size() != n) throw std::invalid_argument("gram: matrix is not square");
    for (std::size_t k = 0; k < n; ++k) G.g[i][k] = parse_entry(g[i][k]);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < i; ++k)
      if (G.g[i][k] != G.g[k][i]) throw std::invalid_argument("gram: matrix is not symmetric");
  return G;
}

json commensurability_report(const ExactGram& G, const std::string& label, const std::string& basis) {
  CommensurabilityReport c = commensurability_class(G, basis.empty() ? std::vector<SpanVector>{}
                                                                     : parse_basis(basis, G.names));
  json r;
  r["gram"] = label;
  json b = json::array();
  for (auto& v : c.span.basis) b.push_back(v.str(G.names));
  r["basis"] = b;
  r["generated_lines"] = c.span.generated;
  r["start_wall"] = G.names.at(c.span.start_wall);
  json form = json::array();
  for (auto& row : c.form) {
    json x = json::array();
    for (auto& q : row) x.push_back(rational_str(q));
    form.push_back(x);
  }
  r["form"] = form;
  json diag = json::array();
  for (auto& q : c.diagonal.diagonal) diag.push_back(rational_str(q));
  r["diagonal"] = diag;
  json sq = json::array();
  for (auto& z : c.invariant.diagonal) sq.push_back(z.get_str());
  r["squarefree_diagonal"] = sq;
  r["signature"] = {c.invariant.positive, c.invariant.negative};
  r["determinant_class"] = c.invariant.determinant_class.get_str();
  r["hasse"] = c.invariant.hasse.str();
  r["witt"] = c.invariant.witt.str();
  return r;
}

json acceptance_report(const std::vector<CriterionResult>& results) {
  json list = json::array();
  int failed = 0;
  for (auto& c : results) {
    failed += c.pass ? 0 : 1;
    list.push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"details", c.details}});
  }
  return {{"criteria", list}, {"passed", results.size() - failed}, {"failed", failed}};
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "text") return Format::Text;
  throw FlagError("unknown format '" + s + "'");
}

std::string render(const json& report, Format f) {
  std::ostringstream os;
  switch (f) {
    case Format::Json: return report.dump(2) + "\n";
    case Format::Text: text(os, report, 0); return os.str();
    case Format::Csv: break;
  }
  if (report.contains("rows") && report.contains("columns")) {
    const json& cols = report.at("columns");
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i].get<std::string>();
    os << '\n';
    for (auto& row : report.at("rows")) {
      for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << csv_cell(row.value(cols[i].get<std::string>(), json(nullptr)));
      os << '\n';
    }
    return os.str();
  }
  std::vector<std::pair<std::string, json>> flat;
  flatten(report, "", flat);
  os << "key,value\n";
  for (auto& [k, v] : flat) os << csv_cell(k) << ',' << csv_cell(v) << '\n';
  return os.str();
}

}  // namespace hypercox::cli
