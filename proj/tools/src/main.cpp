#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "zslice/errors.hpp"

// Exit codes: 0 success, 1 input or usage error, 2 budget exhausted,
// 3 verification failure.
int main(int argc, char** argv) {
  using namespace zslice::cli;
  CLI::App app{"Z-slice genus and algebraic unknotting number bounds from Seifert matrices"};
  app.require_subcommand(1);
  app.footer(
      "Environment: OBSTRUCT_BUDGET (isometry search candidates, default 100000),\n"
      "PRIME_BOUND (witness prime scan limit, default 1000000).\n"
      "Exit codes: 0 ok, 1 input error, 2 budget exceeded, 3 verification failure.");

  Common common;
  auto json_flag = [&](CLI::App* sub) { sub->add_flag("--json", common.json, "Machine-readable output"); };

  std::string file;
  auto* inv = app.add_subcommand("invariants", "Alexander polynomial, determinant, signature, Arf, pairings");
  inv->add_option("file", file, "Knot file ('-' for stdin)")->required();
  json_flag(inv);

  BoundsArgs bounds;
  auto* bnd = app.add_subcommand("bounds", "Lower and upper bounds for g_Z and u_a, one line per knot");
  bnd->add_option("file", bounds.file, "Knot file ('-' for stdin)")->required();
  bnd->add_option("--threads", bounds.threads, "Worker threads (0: all cores, 1: serial)");
  bnd->add_option("--seed", bounds.seed, "Seed of the upper-bound search");
  bnd->add_option("--moves", bounds.moves, "Move budget of the upper-bound search");
  bnd->add_flag("--no-lt", bounds.no_lt, "Skip Levine-Tristram signatures");
  bnd->add_flag("--no-cor53", bounds.no_cor53, "Skip the linking-form case analysis");
  bnd->add_flag("--no-min-gens", bounds.no_min_gens, "Skip the generator count");
  bnd->add_flag("--no-alex1", bounds.no_alex1, "Skip the Alexander polynomial test");
  json_flag(bnd);

  auto* obs = app.add_subcommand("obstruct", "Linking-form obstructions to g_Z = 1");
  obs->add_option("file", file, "Knot file ('-' for stdin)")->required();
  json_flag(obs);

  DecomposeArgs dec;
  auto* dcm = app.add_subcommand("decompose", "Orthogonal cyclic decomposition of a linking pairing");
  dcm->add_option("file", dec.file, "Knot file: decomposes lk and 2 lk of the double cover");
  dcm->add_option("--matrix", dec.matrix, "Symmetric presentation matrix, rows separated by ';' or ','");
  json_flag(dcm);

  CriterionArgs crit;
  auto* crt = app.add_subcommand("criterion", "2x2 presentation criterion on (a1/q1) + (a2/q2)");
  crt->add_option("--a1", crit.a1)->required();
  crt->add_option("--q1", crit.q1)->required();
  crt->add_option("--a2", crit.a2)->required();
  crt->add_option("--q2", crit.q2)->required();
  crt->add_option("--u", crit.u, "Determinant class mod 4")->required()->check(CLI::IsMember({-1, 1}));
  json_flag(crt);

  auto* nrm = app.add_subcommand("normalize-blanchfield",
                                 "Diagonalize a Hermitian Laurent matrix at t = 1, with certificate");
  nrm->add_option("file", file, "Matrix file: n, then n rows of ';'-separated polynomials")->required();
  json_flag(nrm);

  OddCoverArgs odd;
  auto* voc = app.add_subcommand("verify-odd-cover", "Isometry of cyclic Hermitian pairings over Z[t]/(q^k, Phi_p)");
  voc->add_option("--p", odd.p, "Odd prime p")->required();
  voc->add_option("--q", odd.q, "Prime q != p")->required();
  voc->add_option("--k", odd.k, "Exponent k")->required();
  voc->add_option("--multiplier", odd.multiplier, "Element whose norm should be -1, e.g. 3+6t");
  json_flag(voc);

  SelftestArgs self;
  auto* slf = app.add_subcommand("selftest", "Run the acceptance criteria");
  slf->add_option("criteria", self.criteria, "Criterion numbers (default: all)");
  slf->add_option("--data", self.data, "Knot file for the table reproduction criterion");
  json_flag(slf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    auto& out = std::cout;
    if (*inv) return run_invariants(file, common, out);
    if (*bnd) return run_bounds(bounds, common, out);
    if (*obs) return run_obstruct(file, common, out);
    if (*dcm) return run_decompose(dec, common, out);
    if (*crt) return run_criterion(crit, common, out);
    if (*nrm) return run_normalize(file, common, out);
    if (*voc) return run_verify_odd_cover(odd, common, out);
    if (*slf) return run_selftest(self, common, out);
  } catch (const zslice::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const zslice::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 2;
  } catch (const zslice::VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
