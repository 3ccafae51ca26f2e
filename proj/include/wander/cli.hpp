#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wander/limits.hpp"
#include "wander/ratmap.hpp"

namespace wander {

/// A named map with the reduction data it is expected to have.
struct Fixture {
  std::string name;
  std::string description;
  std::string map_text;
  Field field;
  /// ResidueMap::to_string of the reduction; empty for trivial reduction.
  std::string reduced_map;
  std::string classification;
  std::vector<std::string> bad_classes;
  /// Copied into the warnings of every report that loads the fixture.
  std::vector<std::string> warnings;
  std::vector<std::string> notes;

  RatMap map() const;
};

/// The fixed fixtures, in listing order. Parameterized families appear
/// with their default parameters.
const std::vector<Fixture>& fixtures();

/// "intro", "cyclotomic:<m>", "ex2.1" ... "ex2.4", "ex2.5[:b,c]",
/// "ex6.1" ... "ex6.4". cyclotomic uses the given field (Q by default);
/// the rest carry their own. Throws UnknownExample.
Fixture load_fixture(const std::string& name, std::optional<Field> field = std::nullopt);

/// Resolves "example:NAME" through load_fixture, anything else through
/// parse_map. The fixture, when there is one, is returned too.
std::pair<RatMap, std::optional<Fixture>> resolve_map(const std::string& text,
                                                      std::optional<Field> field);

/// m-th cyclotomic polynomial with integer coefficients, over `field`.
ResiduePoly cyclotomic_polynomial(int m, Field field);

struct CommandInput {
  std::string command;
  std::optional<std::string> map;
  std::optional<std::string> field;
  std::optional<std::string> poly;
  std::optional<std::string> cls;
  std::optional<std::string> center;
  std::optional<std::string> radius_val;
  std::optional<std::string> kind;
  std::optional<std::string> mobius;
  std::optional<std::string> name;
  std::optional<int> depth;
  std::optional<int> count;
  std::optional<int> horizon;
  std::optional<int> julia_depth;
  bool require_julia = false;
  bool list = false;
  Limits limits;

  /// The flags that were given, for the report's input echo.
  nlohmann::ordered_json to_json() const;
};

enum class Status { Ok, HypothesesNotMet, Error };

/// Top-level fields: command, input, result, warnings, status. Errors put
/// {code, message} in result.
struct Report {
  std::string command;
  nlohmann::ordered_json input = nlohmann::ordered_json::object();
  nlohmann::ordered_json result = nlohmann::ordered_json::object();
  std::vector<std::string> warnings;
  Status status = Status::Ok;

  nlohmann::ordered_json to_json() const;
  static Report from_json(const nlohmann::ordered_json& j);
  /// Indented key: value rendering of the same data.
  std::string to_text() const;
  /// 0 ok, 2 hypotheses not met, 1 error.
  int exit_code() const;
};

std::string status_label(Status s);

/// classify, bad-classes, orbit, wander, julia, fixedpoints, newton,
/// disk-image, injectivity, conjugate, example. Never throws: module
/// errors, UnknownCommand and UnknownExample become error reports.
Report run(const CommandInput& input);

}  // namespace wander
