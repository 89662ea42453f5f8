#include <iostream>

#include <ssmc/cli.hpp>

int main(int argc, char** argv) {
  return ssmc::run_cli(argc, argv, std::cout, std::cerr);
}
