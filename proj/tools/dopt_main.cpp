#include "dopt/cli.hpp"

int main(int argc, char** argv) { return dopt::cli_main(argc, argv); }
