#include <iostream>

#include "parawsd/pipeline.h"

int main(int argc, char** argv) { return parawsd::run_cli(argc, argv, std::cout, std::cerr); }
