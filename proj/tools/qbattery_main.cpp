#include <iostream>

#include "qbattery/cli.hpp"

int main(int argc, char** argv) { return qbattery::cli_main(argc, argv, std::cout, std::cerr); }
