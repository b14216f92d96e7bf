#include <iostream>

#include "CLI11.hpp"
#include "clift/document.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Lift complexes, cochain maps and homotopies along square-zero extensions"};
  app.require_subcommand(1);
  clift::cli::Inputs in;
  std::string out;
  std::string which;
  for (const char* name : clift::cli::kCommands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--tower", in.tower, "Tower document");
    sub->add_option("--algebra", in.algebra, "Algebra document");
    sub->add_option("--complex", in.complex, "Complex or problem document");
    sub->add_option("--map", in.map, "Map or problem document");
    sub->add_option("--seed", in.seed, "Seed for gen");
    sub->add_option("--cap", in.cap, "Enumeration cap");
    sub->add_option("--out", out, "Write the report here instead of stdout");
    sub->add_option("--functor", in.functor, "F0, F or F1 (functor-eval)");
    sub->add_option("--threads", in.threads, "Oracle worker threads (0: all cores)");
    sub->add_flag("--trace", in.trace, "Include the crude-lift stages");
    sub->callback([&which, name] { which = name; });
  }
  CLI11_PARSE(app, argc, argv);

  const auto r = clift::cli::run(which, in);
  if (out.empty()) {
    std::cout << r.document;
  } else {
    try {
      clift::write_file(out, r.document);
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return 1;
    }
  }
  std::cerr << which << ": " << r.summary << "\n";
  return r.exit_code;
}
