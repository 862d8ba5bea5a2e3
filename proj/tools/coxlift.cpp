#include <iostream>

#include <CLI11.hpp>

#include "coxlift/cli.hpp"

int main(int argc, char** argv) {
  coxlift::CliOptions o;
  CLI::App app{"coxlift: Cox rings of root stack lifts"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* c) {
    c->add_option("--out", o.out, "write the JSON result here");
    c->add_option("--log", o.log, "human, json or both")->check(CLI::IsMember({"human", "json", "both"}));
    c->add_option("--step-cap", o.step_cap, "rewriting step cap");
    c->add_option("--spotcheck-bound", o.spotcheck_bound, "degree bound of the factoriality spot check");
  };
  auto* lift = app.add_subcommand("lift", "lift a base morphism to a root stack");
  lift->add_option("problem", o.input)->required()->check(CLI::ExistingFile);
  common(lift);
  auto* verify = app.add_subcommand("verify", "check a lift result against its problem");
  verify->add_option("problem", o.input)->required()->check(CLI::ExistingFile);
  verify->add_option("--result", o.result)->required()->check(CLI::ExistingFile);
  common(verify);
  auto* decompose = app.add_subcommand("decompose", "present a stack as roots over its canonical stack");
  decompose->add_option("stack", o.input)->required()->check(CLI::ExistingFile);
  common(decompose);
  auto* factor = app.add_subcommand("factor", "h-factorize an element");
  factor->add_option("ring", o.input)->required()->check(CLI::ExistingFile);
  factor->add_option("--element", o.element)->required();
  common(factor);
  auto* snf = app.add_subcommand("snf", "canonical form of the group presented by a matrix");
  snf->add_option("--matrix", o.matrix)->required();
  common(snf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  for (auto* c : {lift, verify, decompose, factor, snf})
    if (c->parsed()) o.command = c->get_name();
  // the utilities print their answer only
  if ((o.command == "snf" || o.command == "factor") && !snf->count("--log") && !factor->count("--log"))
    o.log = "human";
  return coxlift::run_command(o, std::cout, std::cerr);
}
