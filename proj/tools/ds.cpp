#include "ds_cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return dsm::cli::run_cli(argc, argv, std::cout, std::cerr); }
