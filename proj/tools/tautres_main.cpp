#include "tautres/cli.hpp"

int main(int argc, char** argv) { return tautres::cli_main(argc, argv); }
