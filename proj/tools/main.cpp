#include <iostream>

#include "metext/cli.hpp"

int main(int argc, char** argv) {
  return metext::cli_dispatch(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
