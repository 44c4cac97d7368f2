#include "cli.hpp"

int main(int argc, char** argv) {
  return magnus_torsion::cli::run(argc, argv, std::cout, std::cerr);
}
