#include <iostream>

#include "dlrdb/engine.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dlrdb::run_cli(args, std::cout, std::cerr);
}
