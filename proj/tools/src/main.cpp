#include <iostream>
#include <string>
#include <vector>

#include "conicsub_cli/io.hpp"

int main(int argc, char** argv) {
  return conicsub::cli::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
