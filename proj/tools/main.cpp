#include <string>
#include <vector>

#include "topoflux/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return topoflux::run_cli(args);
}
