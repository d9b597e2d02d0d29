// ptcalc: exact verification of Prym-Tyurin presentations.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ptcalc/cli.hpp"

namespace {

constexpr const char* kFooter = R"txt(Commands: verify, product, dihedral-demo, decompose, regress.

Groups:      dihedral:p | z2 | klein | dihedral2:p | phi:p | perm:<deg>:<gen>;<gen>...
Subgroups:   tau, sigma, trivial, G, tau1, tau2, H^2 (or Hsq), H1, H2, M, L(j), Xtilde,
             or ';'-separated generators in cycle "(1 2)(3 4)" or image "[2,1,4,3]" notation.
Reps:        trivial, alternating, W, V(j), W1, W2, U(j), tensor(a,b); separate with ';'.
Signature:   label:s pairs separated by ','. Ck names the k-th conjugacy class of
             nontrivial cyclic subgroups, ordered by subgroup order (then by smallest
             generator); other labels are subgroup names. For `product`, give
             'first|second' (or one signature used for both factors).

Exit codes: 0 all checks pass, 1 a check failed, 2 input error.)txt";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification engine for Prym-Tyurin presentations"};
  app.footer(kFooter);
  ptcalc::RunConfig flags;
  std::string config_path, reps;
  bool show_matrices = false;
  app.add_option("command", flags.command, "verify | product | dihedral-demo | decompose | regress");
  app.add_option("--config", config_path, "JSON config file; flags override its keys")->check(CLI::ExistingFile);
  app.add_option("--group", flags.group, "group spec");
  app.add_option("--subgroup", flags.subgroup, "subgroup name or generators");
  app.add_option("--reps", reps, "representation names separated by ';'");
  app.add_option("--signature", flags.signature, "signature, e.g. C1:6");
  app.add_option("--p", flags.p, "odd prime for dihedral-demo and decompose");
  app.add_option("--s1", flags.s1, "branch count of the first factor");
  app.add_option("--s2", flags.s2, "branch count of the second factor");
  app.add_option("--out", flags.out, "write the report here instead of stdout");
  app.add_option("--format", flags.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--fixtures", flags.fixtures, "fixture directory for regress");
  app.add_flag("--matrices", show_matrices, "include matrix dumps in the text summary");
  app.add_flag("-v,--verbose", flags.verbosity, "more detail on stderr");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (!reps.empty()) flags.reps = ptcalc::detail::split_top_level(reps, ";");

  ptcalc::RunConfig cfg = flags;
  if (!config_path.empty()) {
    try {
      std::ifstream in(config_path);
      cfg = ptcalc::merge_config(ptcalc::config_from_json(ptcalc::Json::parse(in)), flags);
    } catch (const std::exception& e) {
      std::cerr << "ptcalc: cannot read config " << config_path << ": " << e.what() << "\n";
      return 2;
    }
  }
  if (cfg.command.empty()) {
    std::cerr << "ptcalc: no command given\n" << app.help();
    return 2;
  }

  const ptcalc::Report rep = ptcalc::run(cfg);
  if (!rep.error.empty()) std::cerr << "ptcalc: input error: " << rep.error << "\n";
  if (cfg.verbosity > 0)
    for (const auto& c : rep.checks)
      if (!c.passed) std::cerr << "ptcalc: failed: " << c.name << (c.detail.empty() ? "" : " -- " + c.detail) << "\n";

  const std::string body = cfg.format == "text" ? ptcalc::text_summary(rep, show_matrices)
                                                : ptcalc::to_json(rep).dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(cfg.out);
    if (!out) {
      std::cerr << "ptcalc: cannot write " << cfg.out << "\n";
      return 2;
    }
    out << body;
  }
  return rep.exit_code();
}
