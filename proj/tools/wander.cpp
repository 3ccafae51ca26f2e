#include <iostream>

#include <CLI11.hpp>

#include "wander/cli.hpp"
#include "wander/errors.hpp"

namespace {

using wander::CommandInput;

struct Flags {
  std::string map, field, poly, cls, center, radius_val, kind, mobius, name;
  int depth = 0, count = 0, horizon = 0, julia_depth = 0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-archimedean dynamics over F(T): reduction, residue-class orbits, wandering domains"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  Flags f;
  CommandInput in;
  std::vector<std::pair<CLI::Option*, std::function<void()>>> setters;
  auto str = [&](CLI::App* sub, const char* flag, std::string& target, std::optional<std::string>& dest,
                 const char* help) {
    CLI::Option* o = sub->add_option(flag, target, help);
    setters.emplace_back(o, [&target, &dest]() { dest = target; });
  };
  auto num = [&](CLI::App* sub, const char* flag, int& target, std::optional<int>& dest, const char* help) {
    CLI::Option* o = sub->add_option(flag, target, help);
    setters.emplace_back(o, [&target, &dest]() { dest = target; });
  };
  auto with_map = [&](CLI::App* sub) {
    str(sub, "--map", f.map, in.map, "Map expression in z over F(T), or example:NAME");
    str(sub, "--field", f.field, in.field, "Residue field: q or fp:<p>");
  };
  auto with_disk = [&](CLI::App* sub) {
    with_map(sub);
    str(sub, "--center", f.center, in.center, "Disk center in K");
    str(sub, "--radius-val", f.radius_val, in.radius_val, "Radius valuation s (rational)");
    str(sub, "--kind", f.kind, in.kind, "open or closed");
  };

  CLI::App* s;
  s = app.add_subcommand("classify", "Reduction report");
  with_map(s);
  s = app.add_subcommand("bad-classes", "Bad residue classes");
  with_map(s);
  s = app.add_subcommand("orbit", "Residue-class orbit");
  with_map(s);
  str(s, "--class", f.cls, in.cls, "Start class: rational, inf or galois(<poly>)");
  num(s, "--depth", f.depth, in.depth, "Steps (default 5)");
  s = app.add_subcommand("wander", "Wandering-domain certificates");
  with_map(s);
  num(s, "--count", f.count, in.count, "Number of grand orbits (default 3)");
  num(s, "--depth", f.depth, in.depth, "Orbit depth (default 5)");
  num(s, "--horizon", f.horizon, in.horizon, "Bad-class scan horizon (default 64)");
  num(s, "--julia-depth", f.julia_depth, in.julia_depth, "Preimage depth for the Julia witness (default 2)");
  s->add_flag("--require-julia", in.require_julia, "Fail with status 2 without a Julia witness");
  s = app.add_subcommand("julia", "Julia-class growth");
  with_map(s);
  num(s, "--depth", f.depth, in.depth, "Preimage depth (default 3)");
  s = app.add_subcommand("fixedpoints", "Repelling fixed point in a residue class");
  with_map(s);
  str(s, "--class", f.cls, in.cls, "Rational class or inf");
  s = app.add_subcommand("newton", "Newton polygon of a polynomial in z over F(T)");
  str(s, "--poly", f.poly, in.poly, "Polynomial");
  str(s, "--field", f.field, in.field, "Residue field: q or fp:<p>");
  s = app.add_subcommand("disk-image", "Image of a disk");
  with_disk(s);
  s = app.add_subcommand("injectivity", "Injectivity and scaling on a disk");
  with_disk(s);
  s = app.add_subcommand("conjugate", "g o phi o g^-1 and its reduction");
  with_map(s);
  str(s, "--mobius", f.mobius, in.mobius, "a,b,c,d for (a z + b)/(c z + d)");
  s = app.add_subcommand("example", "Fixture corpus");
  s->add_flag("--list", in.list, "List fixtures");
  str(s, "--name", f.name, in.name, "Fixture name");
  str(s, "--field", f.field, in.field, "Field for cyclotomic:<m>");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  for (auto& [opt, set] : setters) {
    if (opt->count() > 0) set();
  }
  in.command = app.get_subcommands().front()->get_name();

  try {
    in.limits = wander::Limits::from_environment();
  } catch (const wander::Error& e) {
    std::cerr << "wander: " << e.what() << "\n";
    return 1;
  }

  const wander::Report report = wander::run(in);
  if (format == "json") {
    std::cout << report.to_json().dump(2) << "\n";
  } else {
    std::cout << report.to_text();
  }
  return report.exit_code();
}
