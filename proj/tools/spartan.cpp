#include <string>
#include <vector>

#include "spartan/cli.hpp"

int main(int argc, char** argv) {
  return spartan::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
