#include <cstdlib>
#include <iostream>

#include "nrq/cli/run.hpp"

int main(int argc, char** argv) {
  std::optional<std::string> env_seed;
  if (const char* s = std::getenv("NRQ_SEED")) env_seed = s;
  return nrq::cli::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr, env_seed);
}
