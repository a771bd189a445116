#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "report.hpp"

using namespace hypercox;
using namespace hypercox::cli;

namespace {

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FlagError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FlagError(path + ": " + e.what());
  }
}

StrataMode parse_mode(const std::string& s) {
  if (s == "diagram") return StrataMode::Diagram;
  if (s == "geometric") return StrataMode::Geometric;
  if (s == "both") return StrataMode::Both;
  throw FlagError("unknown mode '" + s + "'");
}

// Inputs that fail to parse are flag errors, not computation errors.
template <class F>
auto flag_value(F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw FlagError(e.what());
  } catch (const std::out_of_range& e) {
    throw FlagError(e.what());
  }
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-volume hyperbolic 4-polytopes: combinatorics, volume, assembly, commensurability"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));

  std::string preset, t, file, mode = "both", basis, gram, pattern;
  bool numeric = false;

  auto* analyze = app.add_subcommand("analyze", "strata, diagram, angles, volume and Euler characteristic");
  auto* a_preset = analyze->add_option("--preset", preset, "P@1, P@t1, P@t2, P@tbar, Q@1, Q@t1, Q@tbar, P@t=<t>");
  auto* a_t = analyze->add_option("--t", t, "family time, decimal or sqrt(p/q)");
  auto* a_file = analyze->add_option("--polytope", file, "polytope JSON")->check(CLI::ExistingFile);
  a_preset->excludes(a_t)->excludes(a_file);
  a_t->excludes(a_file);
  analyze->add_option("--mode", mode, "diagram, geometric or both")
      ->check(CLI::IsMember({"diagram", "geometric", "both"}));
  analyze->add_flag("--numeric", numeric, "use binary64 even when exact normals are available");

  double from = 0.05, to = 1.0;
  int steps = 20, jobs = 1;
  std::string quantities = "theta,phi,volume,schlafli";
  auto* sweep = app.add_subcommand("sweep", "angle and volume curves along the family");
  sweep->add_option("--from", from)->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--to", to)->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--steps", steps)->check(CLI::Range(1, 1000000));
  sweep->add_option("--quantities", quantities, "theta,phi,psi,eta,volume,schlafli,poincare,fvector");
  sweep->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 256));

  auto* assemble = app.add_subcommand("assemble", "glue copies of P_t and describe the result");
  assemble->add_option("--pattern", pattern, "W, N, M or an assembly JSON file")->required();
  assemble->add_option("--t", t, "family time for W, N and M");

  auto* comm = app.add_subcommand("commensurability", "rational quadratic form and its Hasse invariant");
  auto* c_preset = comm->add_option("--preset", preset, "Q@1, Q@t1, Q@tbar or any preset");
  auto* c_gram = comm->add_option("--gram", gram, "Gram JSON")->check(CLI::ExistingFile);
  c_preset->excludes(c_gram);
  comm->add_option("--basis", basis, "e.g. \"sqrt(5)*H, A, L, M, N\"");

  std::string only;
  auto* check = app.add_subcommand("check-paper", "run the acceptance checks");
  check->add_option("--only", only, "comma-separated criterion ids or names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Format fmt = parse_format(format);
    json report;
    int code = 0;
    if (analyze->parsed()) {
      PolytopeInput in;
      if (!preset.empty())
        in = flag_value([&] { return preset_input(preset); });
      else if (!t.empty())
        in = flag_value([&] { return time_input(t); });
      else if (!file.empty())
        in = flag_value([&] { return polytope_from_json(read_json(file), file); });
      else
        throw FlagError("analyze needs --preset, --t or --polytope");
      report = analyze_report(in, parse_mode(mode), !numeric);
    } else if (sweep->parsed()) {
      std::vector<Quantity> qs;
      for (auto& q : split(quantities)) qs.push_back(parse_quantity(q));
      if (qs.empty()) throw FlagError("--quantities is empty");
      report = sweep_report(from, to, steps, qs, jobs);
    } else if (assemble->parsed()) {
      if (pattern == "W" || pattern == "N" || pattern == "M") {
        if (t.empty()) throw FlagError("--pattern " + pattern + " needs --t");
        FamilyTime ft = flag_value([&] { return FamilyTime::parse(t); });
        AssembledComplex C = pattern == "W" ? w_complex(ft) : pattern == "N" ? n_complex(ft) : m_complex(ft);
        report = assemble_report(C, pattern + "@t=" + ft.str());
      } else {
        json j = read_json(pattern);
        std::optional<InvolutionResult> inv;
        AssembledComplex C = flag_value([&] { return assembly_from_json(j, &inv); });
        report = assemble_report(C, j.value("name", pattern), inv);
      }
    } else if (comm->parsed()) {
      if (!preset.empty()) {
        Preset p = flag_value([&] { return parse_preset(preset); });
        if (!p.time.exact()) throw FlagError("commensurability needs a preset with rational t^2");
        ExactGram G = ExactGram::from_polytope(preset_polytope<MultiQuad>(p));
        if (!basis.empty()) flag_value([&] { return parse_basis(basis, G.names); });
        report = commensurability_report(G, p.name, basis);
      } else if (!gram.empty()) {
        ExactGram G = flag_value([&] { return gram_from_json(read_json(gram)); });
        if (!basis.empty()) flag_value([&] { return parse_basis(basis, G.names); });
        report = commensurability_report(G, gram, basis);
      } else {
        throw FlagError("commensurability needs --preset or --gram");
      }
    } else if (check->parsed()) {
      auto results = run_acceptance(split(only));
      if (results.empty()) throw FlagError("--only matches no criterion");
      report = acceptance_report(results);
      code = report.at("failed").get<int>() ? 3 : 0;
    }
    std::cout << render(report, fmt);
    return code;
  } catch (const FlagError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
