#include <iostream>

#include "CLI11.hpp"
#include "cacsa/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Type checker for the calculus of algebraic constructions with size annotations"};
  std::string file;
  cacsa::RunFlags flags;
  app.add_option("file", file, "source file")->required();
  app.add_option("--fuel", flags.fuel, "rewrite steps allowed per normalization")->check(CLI::PositiveNumber);
  app.add_flag("--dump-constraints", flags.dump_constraints, "print every constraint problem and its solving stages");
  app.add_flag("--trace", flags.trace, "print the inference derivation of each goal");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : cacsa::kExitInvalid;
  }
  cacsa::RunResult r = cacsa::run_file(file, flags);
  std::cout << r.report;
  std::cerr << r.diagnostics;
  return r.exit_code;
}
