// Checks a split energy given on the command line:
//
//   split_check "exp((1/10)*log(t)^2)" "(1/60)*(z - 1/z)^2"

#include <iostream>

#include "rankone/rankone.hpp"

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: split_check <h(t)> <f(z)>\n";
    return 3;
  }
  try {
    const rankone::SplitEnergy e = rankone::make_split(argv[1], argv[2], "command line");
    const rankone::RankOneVerdict v = rankone::main_check(e);
    rankone::print_text(std::cout, e, v);
    const rankone::InfinitesimalModuli m = rankone::infinitesimal_moduli(e);
    std::cout << "mu = " << m.mu << ", kappa = " << m.kappa << "\n";
    return rankone::exit_for(v.overall);
  } catch (const rankone::Error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 3;
  }
}
