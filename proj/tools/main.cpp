#include "cli.hpp"

int main(int argc, char** argv) { return fuzzygh::cli::run(argc, argv); }
