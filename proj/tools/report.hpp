#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypercox/assembly.hpp"
#include "hypercox/checks.hpp"
#include "hypercox/commensurability.hpp"
#include "json.hpp"

namespace hypercox::cli {

using nlohmann::json;

// Bad or inconsistent flags; reported with exit code 2.
struct FlagError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A polytope to analyse with whatever is known about where it came from.
struct PolytopeInput {
  std::string label;
  char kind = 'F';  // 'P' family member, 'Q' quotient, 'F' from a file
  std::optional<FamilyTime> time;
  Polytope<double> numeric;
  std::optional<Polytope<MultiQuad>> exact;
};

PolytopeInput preset_input(const std::string& preset);
PolytopeInput time_input(const std::string& t);
// [{"name": "A", "normal": [...]}, ...] or {"name": ..., "normals": [...]};
// coordinates given as strings stay exact.
PolytopeInput polytope_from_json(const json& j, const std::string& label);

json analyze_report(const PolytopeInput& in, StrataMode mode, bool exact);

enum class Quantity { Theta, Phi, Psi, Eta, Volume, Schlafli, Poincare, FVector };
Quantity parse_quantity(const std::string& s);
std::string to_string(Quantity q);

json sweep_report(double from, double to, int steps, const std::vector<Quantity>& quantities, int jobs);

// {"preset": "P@t=0.9" | "polytope": ..., "colouring": {...}} or
// {..., "copies": [...], "rules": [...]}, optionally "involution".
AssembledComplex assembly_from_json(const json& j, std::optional<InvolutionResult>* involution = nullptr);
json assemble_report(const AssembledComplex& C, const std::string& label,
                     const std::optional<InvolutionResult>& involution = std::nullopt);

// {"names": [...], "gram": [["1", "-1/2", ...], ...]}
ExactGram gram_from_json(const json& j);
json commensurability_report(const ExactGram& G, const std::string& label, const std::string& basis);

json acceptance_report(const std::vector<CriterionResult>& results);

enum class Format { Json, Csv, Text };
Format parse_format(const std::string& s);
std::string render(const json& report, Format f);

// Rounded to 12 significant digits; NaN and infinities become null.
json number(double x);

}  // namespace hypercox::cli
