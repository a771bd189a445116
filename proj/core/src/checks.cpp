#include "hypercox/checks.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

#include "hypercox/assembly.hpp"
#include "hypercox/commensurability.hpp"

namespace hypercox {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// Collects sub-checks; a criterion passes when all of them do.
struct Report {
  CriterionResult& r;
  void check(bool ok, const std::string& what) {
    r.details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    if (!ok) r.pass = false;
  }
  void close(double got, double want, double tol, const std::string& what) {
    double err = std::fabs(got - want);
    check(err <= tol, what + ": " + fmt("%.15g", got) + " vs " + fmt("%.15g", want) + " (err " + fmt("%.2e", err) +
                          ", tol " + fmt("%.0e", tol) + ")");
  }
};

std::string fv_str(const StrataComplex::FVector& f) {
  return "(" + std::to_string(f.walls) + "," + std::to_string(f.faces) + "," + std::to_string(f.edges) + "," +
         std::to_string(f.vertices) + ")";
}

void fvectors(Report& rep) {
  struct Case {
    const char* t;
    std::size_t w, f, e, v;
  };
  const Case cases[] = {{"0.95", 24, 108, 144, 60}, {"0.9", 24, 108, 144, 60}, {"0.8", 24, 108, 144, 60},
                        {"t1", 24, 100, 120, 44},   {"0.76", 24, 100, 128, 52}, {"0.75", 24, 100, 128, 52},
                        {"0.72", 24, 100, 128, 52}, {"t2", 22, 92, 116, 46},    {"0.65", 22, 92, 116, 46},
                        {"0.6", 22, 92, 116, 46},   {"tbar", 22, 92, 116, 46},  {"0.5", 22, 92, 116, 46},
                        {"0.3", 22, 92, 116, 46},   {"0.1", 22, 92, 116, 46}};
  for (auto& c : cases) {
    FamilyTime ft = FamilyTime::parse(c.t);
    // Exact arithmetic; Both mode throws if the two backends disagree.
    StrataComplex S = enumerate_strata(ks_normals<MultiQuad>(ft), StrataMode::Both);
    auto f = S.fvector();
    bool ok = f.walls == c.w && f.faces == c.f && f.edges == c.e && f.vertices == c.v;
    rep.check(ok, std::string("t=") + c.t + " f-vector " + fv_str(f) + " expected (" + std::to_string(c.w) + "," +
                      std::to_string(c.f) + "," + std::to_string(c.e) + "," + std::to_string(c.v) + ")");
  }
}

void angles(Report& rep) {
  const double tol = 1e-10;
  rep.close(angle_theta(FamilyTime::parse("t1")), kPi / 3, tol, "theta(t1)");
  rep.close(angle_theta(FamilyTime::parse("sqrt(1/3)")), kPi / 2, tol, "theta(sqrt(1/3))");
  rep.close(cos_theta(FamilyTime::parse("t2")), 1.0 / 3, tol, "cos theta(t2)");
  rep.close(angle_phi(FamilyTime::parse("1")), kPi / 2, tol, "phi(1)");
  rep.close(angle_phi(FamilyTime::parse("t1")), 0, tol, "phi(t1)");
  double prev = angle_phi(FamilyTime::from_double(kT1 + 1e-2));
  bool decreasing = true;
  for (int k = 3; k <= 12; ++k) {
    double v = angle_phi(FamilyTime::from_double(kT1 + std::pow(10.0, -k)));
    decreasing = decreasing && v < prev;
    prev = v;
  }
  rep.check(decreasing && prev < 1e-5, "phi(t1 + 10^-k) decreases to " + fmt("%.3e", prev) + " for k = 2..12");
  rep.close(angle_eta(FamilyTime::from_double(1e-6)), std::acos(-1.0 / 3), tol, "eta(1e-6)");
}

void volumes(Report& rep) {
  const double v0 = 4 * kPi * kPi / 3;
  rep.close(closed_form_volume(FamilyTime::parse("1")), v0, 1e-12, "closed form at 1");
  rep.close(closed_form_volume(FamilyTime::parse("t1")), v0, 1e-12, "closed form at t1");
  rep.close(closed_form_volume(FamilyTime::parse("tbar")), 5 * kPi * kPi / 6, 1e-12, "closed form at tbar");

  struct Regime {
    const char* name;
    double lo, hi, t0;
    const char* start;
  };
  const Regime regimes[] = {{"[t1,1]", kT1, 1.0, 1.0, "1"}, {"[t2,t1]", kT2, kT1, kT1, "t1"}, {"(0,t2]", 0.0, kT2, kT2, "t2"}};
  for (auto& g : regimes) {
    std::vector<double> ts;
    for (int k = 0; k < 100; ++k) ts.push_back(g.lo + (g.hi - g.lo) * (k + 0.5) / 100);
    VolumeCurve c = schlafli_integrate(g.t0, closed_form_volume(FamilyTime::parse(g.start)), ts);
    double err = 0;
    for (auto& s : c) err = std::max(err, std::fabs(s.vol - closed_form_volume(FamilyTime::from_double(s.t))));
    rep.check(err <= 1e-6, std::string("Schlafli vs closed form on ") + g.name + ", 100 samples, max err " +
                               fmt("%.2e", err));
  }

  for (const char* t : {"1", "0.9", "0.8", "t1", "0.75", "0.72", "0.65", "tbar", "0.5", "0.3"}) {
    FamilyTime ft = FamilyTime::parse(t);
    StrataComplex S = enumerate_strata(ks_normals<double>(ft), StrataMode::Geometric);
    rep.close(poincare_volume(S), closed_form_volume(ft), 1e-6, std::string("Poincare formula at t=") + t);
  }

  // The bracket 2 - 3 theta/pi + (3/pi^2) int eta tends to 2 - 3 + 1 = 0.
  rep.close(2 - 3 + 3 / (kPi * kPi) * eta_integral(kPi), 0, 1e-12, "bracket of the volume formula at theta = pi");
  double v3 = closed_form_volume(FamilyTime::from_double(1e-3));
  double v6 = closed_form_volume(FamilyTime::from_double(1e-6));
  rep.check(v6 < v3 && v6 < 1e-4, "Vol decreases to 0: Vol(1e-6) = " + fmt("%.4e", v6) + ", Vol/t -> " +
                                      fmt("%.4f", v6 / 1e-6));
  rep.check(v3 < 1e-4, "Vol(1e-3) = " + fmt("%.4e", v3) +
                           " < 1e-4 (the volume vanishes linearly in t, so this bound is not met)");
}

void coxeter_integrals(Report& rep) {
  rep.close(coxeter_integral(), kPi * kPi / 3, 1e-8, "integral of eta from arccos(1/3) to pi");
  rep.close(spherical_regular_tet_volume(kPi), kPi * kPi, 1e-6, "regular spherical tetrahedron V(pi)");
}

void euler(Report& rep) {
  struct Case {
    const char* preset;
    long num, den;
  };
  for (auto& c : {Case{"1", 1, 1}, Case{"t1", 1, 1}, Case{"tbar", 5, 8}}) {
    FamilyTime ft = FamilyTime::parse(c.preset);
    Polytope<double> P = ks_normals<double>(ft);
    StrataComplex S = enumerate_strata(P, StrataMode::Geometric);
    Rational chi = orbifold_euler_char(P, S);
    Rational want(c.num, c.den);
    rep.check(chi == want, std::string("orbifold chi(P_") + c.preset + ") = " + chi.get_str());
    rep.close(closed_form_volume(ft), gauss_bonnet_volume(chi), 1e-9, std::string("Vol = 4pi^2/3 chi at ") + c.preset);
  }
  struct Complex {
    const char* name;
    std::function<AssembledComplex()> build;
    long want;
  };
  const Complex cs[] = {{"W_1", [] { return w_complex(FamilyTime::parse("1")); }, 8},
                        {"W_tbar", [] { return w_complex(FamilyTime::parse("tbar")); }, 5},
                        {"N_1", [] { return n_complex(FamilyTime::parse("1")); }, 4}};
  for (auto& c : cs) {
    EulerCharacteristic chi = complex_euler_char(c.build());
    bool ok = chi.orbifold && *chi.orbifold == Rational(c.want);
    rep.check(ok, std::string("chi(") + c.name + ") = " + (chi.orbifold ? chi.orbifold->get_str() : "n/a") +
                      " (plain cell count " + std::to_string(chi.topological) + ")");
  }
}

struct SurfaceSig {
  long chi;
  int cones;
  double cone_angle;
  bool operator<(const SurfaceSig& o) const {
    if (chi != o.chi) return chi < o.chi;
    if (cones != o.cones) return cones < o.cones;
    return cone_angle < o.cone_angle - 1e-9;
  }
};

// Multiset of (chi, number of cone points, common cone angle) over the surfaces.
std::map<SurfaceSig, int> signatures(const std::vector<StratumSurface>& ss, bool& uniform) {
  std::map<SurfaceSig, int> out;
  uniform = true;
  for (auto& s : ss) {
    double a = s.cone_angles.empty() ? 0 : s.cone_angles.front();
    for (double b : s.cone_angles) uniform = uniform && std::fabs(b - a) < 1e-9;
    uniform = uniform && s.is_surface() && s.closed() && s.punctures == 0;
    ++out[{s.euler_char, static_cast<int>(s.cone_angles.size()), a}];
  }
  return out;
}

bool angles_match(const std::vector<FaceCycle>& cycles, const std::vector<double>& allowed, std::map<int, int>& count) {
  for (auto& c : cycles) {
    bool found = false;
    for (std::size_t k = 0; k < allowed.size() && !found; ++k)
      if (std::fabs(c.angle - allowed[k]) < 1e-9) {
        ++count[static_cast<int>(k)];
        found = true;
      }
    if (!found) return false;
  }
  return true;
}

void assembly(Report& rep) {
  for (const char* t : {"0.95", "0.9", "0.8"}) {
    FamilyTime ft = FamilyTime::parse(t);
    double th = angle_theta(ft), ph = angle_phi(ft);
    std::string at = std::string(" at t=") + t;
    bool uniform = true;

    AssembledComplex W = w_complex(ft);
    std::map<int, int> wc;
    bool wa = angles_match(face_cycles(W), {2 * th, 4 * ph, 2 * kPi}, wc);
    rep.check(wa && wc[0] == 48 && wc[1] == 16,
              "W face cycles: " + std::to_string(wc[0]) + " of angle 2theta, " + std::to_string(wc[1]) +
                  " of angle 4phi, the rest 2pi" + at);
    auto ws = signatures(stratum_surfaces(W), uniform);
    bool wok = uniform && ws.size() == 2 && ws[{0, 2, 4 * ph}] == 12 && ws[{2, 3, 2 * th}] == 8;
    rep.check(wok, "W surfaces: 12 x (chi 0, two cone points 4phi) and 8 x (chi 2, three cone points 2theta)" + at);

    AssembledComplex N = n_complex(ft);
    std::map<int, int> nc;
    bool na = angles_match(face_cycles(N), {6 * th, 4 * ph, 2 * kPi}, nc);
    rep.check(na && nc[0] > 0 && nc[1] > 0, "N face cycles have angles 6theta, 4phi, 2pi" + at);
    auto ns = signatures(stratum_surfaces(N), uniform);
    bool nok = uniform && ns.size() == 2 && ns[{0, 2, 4 * ph}] == 2 && ns[{0, 4, 6 * th}] == 1;
    rep.check(nok, "N surfaces: 2 x (chi 0, two cone points 4phi) and 1 x (chi 0, four cone points 6theta)" + at);
    auto cusps = cusp_cycles(N);
    bool cok = cusps.size() == 2;
    for (auto& c : cusps) cok = cok && c.length == 6 && c.monodromy == 1;
    rep.check(cok, "N has " + std::to_string(cusps.size()) + " cusp cycles, each of length 6 and monodromy +1" + at);

    InvolutionResult q = involution_quotient(N, minus_identity_spatial(), {3, 2, 1, 0});
    rep.check(q.fixed.empty() && q.quotient.has_value(), "iota acts freely on N" + at);
    if (!q.quotient) continue;
    auto ms = stratum_surfaces(*q.quotient);
    int orientable = 0, nonorientable = 0;
    double alpha = 6 * th, beta = 4 * ph;
    bool areas = true;
    for (auto& s : ms) {
      (s.orientable ? orientable : nonorientable)++;
      double want = s.orientable ? 4 * kPi - 2 * beta : 4 * kPi - 2 * alpha;
      areas = areas && std::fabs(s.area - want) < 1e-9;
    }
    rep.check(ms.size() == 2 && orientable == 1 && nonorientable == 1,
              "M singular set: one orientable and one non-orientable surface" + at);
    rep.check(areas, "M surface areas 4pi - 2beta (torus) and 4pi - 2alpha (Klein bottle)" + at);
  }
}

RationalMatrix random_congruence(const RationalMatrix& Q, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  std::size_t n = Q.size();
  while (true) {
    RationalMatrix A(n, std::vector<Rational>(n));
    for (auto& row : A)
      for (auto& x : row) x = d(rng);
    RationalMatrix B = multiply(multiply(transpose(A), Q), A);
    try {
      diagonalize(B);
      return B;
    } catch (const std::exception&) {
      // singular A; draw again
    }
  }
}

void commensurability(Report& rep) {
  struct Case {
    const char* preset;
    const char* basis;
    std::set<Place> hasse;
  };
  const Case cases[] = {{"Q@1", "H,A,L,M,N", {}},
                        {"Q@t1", "sqrt(5)*H,A,L,M,N", {2, 5}},
                        {"Q@tbar", "sqrt(3)*m3,sqrt(2)*A,sqrt(2)*L,sqrt(2)*M,sqrt(2)*N", {}}};
  std::vector<CommensurabilityReport> reports;
  std::mt19937 rng(20240601);
  for (auto& c : cases) {
    ExactGram G = ExactGram::from_polytope(preset_polytope<MultiQuad>(parse_preset(c.preset)));
    CommensurabilityReport a = commensurability_class(G);
    CommensurabilityReport b = commensurability_class(G, parse_basis(c.basis, G.names));
    RamificationSet want(c.hasse);
    rep.check(a.invariant.hasse == want && b.invariant.hasse == want,
              std::string(c.preset) + " hasse " + a.invariant.hasse.str() + " (generated basis), " +
                  b.invariant.hasse.str() + " (basis " + c.basis + "), expected " + want.str());
    int stable = 0;
    for (int k = 0; k < 100; ++k) stable += form_invariants(random_congruence(b.form, rng)).hasse == want ? 1 : 0;
    rep.check(stable == 100, std::string(c.preset) + " hasse unchanged under " + std::to_string(stable) +
                                 "/100 random changes of basis");
    reports.push_back(a);
  }
  rep.check(commensurable(reports[0], reports[2]), "Q_1 and Q_tbar commensurable");
  rep.check(!commensurable(reports[0], reports[1]), "Q_1 and Q_t1 not commensurable");

  std::uniform_int_distribution<long> num(-300, 300), den(1, 60);
  int good = 0;
  for (int k = 0; k < 500; ++k) {
    Rational a, b;
    do a = Rational(num(rng), den(rng)); while (a == 0);
    do b = Rational(num(rng), den(rng)); while (b == 0);
    a.canonicalize();
    b.canonicalize();
    std::set<Place> places{kInfinity, 2, 3, 5, 7};
    for (const Integer& z : {Integer(a.get_num()), Integer(a.get_den()), Integer(b.get_num()), Integer(b.get_den())})
      for (auto& [p, e] : factorize(abs(z))) places.insert(p.get_si());
    int prod = 1;
    for (Place v : places) prod *= hilbert_symbol(a, b, v);
    good += prod == 1 ? 1 : 0;
  }
  rep.check(good == 500, "Hilbert product formula on " + std::to_string(good) + "/500 random pairs");
}

void consistency(Report& rep) {
  double worst = 0, where = 0;
  for (int k = 0; k <= 50; ++k) {
    FamilyTime ft = k == 0 ? FamilyTime::parse("t1") : k == 50 ? FamilyTime::parse("1")
                                                               : FamilyTime::from_double(kT1 + (1 - kT1) * k / 50);
    double phi = ft.regime == Regime::AtT1 ? 0.0 : angle_phi(ft);
    double err = std::fabs(2 * closed_form_volume(ft) - manifold_volume_formula(6 * angle_theta(ft), 4 * phi));
    if (err > worst) {
      worst = err;
      where = ft.t;
    }
  }
  rep.check(worst <= 1e-9, "2 Vol(P_t) = Vol(M_t) formula in (6theta, 4phi) at 51 points of [t1,1], max err " +
                               fmt("%.2e", worst) + " at t=" + fmt("%.6f", where));
}

using Runner = void (*)(Report&);
const Runner kRunners[] = {fvectors, angles, volumes, coxeter_integrals, euler, assembly, commensurability, consistency};

}  // namespace

const std::vector<CriterionInfo>& acceptance_criteria() {
  static const std::vector<CriterionInfo> list = {{1, "f-vectors"},      {2, "angles"},       {3, "volumes"},
                                                  {4, "coxeter-integral"}, {5, "euler"},      {6, "assembly"},
                                                  {7, "commensurability"}, {8, "consistency"}};
  return list;
}

CriterionResult run_criterion(int id) {
  const auto& list = acceptance_criteria();
  if (id < 1 || id > static_cast<int>(list.size())) throw std::out_of_range("no acceptance criterion " + std::to_string(id));
  CriterionResult r;
  r.id = id;
  r.name = list[id - 1].name;
  r.pass = true;
  Report rep{r};
  try {
    kRunners[id - 1](rep);
  } catch (const std::exception& e) {
    rep.check(false, std::string("exception: ") + e.what());
  }
  return r;
}

std::vector<CriterionResult> run_acceptance(const std::vector<std::string>& filter) {
  std::vector<CriterionResult> out;
  for (auto& c : acceptance_criteria()) {
    bool wanted = filter.empty();
    for (auto& f : filter) wanted = wanted || f == c.name || f == std::to_string(c.id);
    if (wanted) out.push_back(run_criterion(c.id));
  }
  return out;
}

}  // namespace hypercox
