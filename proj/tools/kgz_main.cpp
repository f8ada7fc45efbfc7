#include "kgz/cli.hpp"

int main(int argc, char** argv) { return kgz::cli_run(argc, argv); }
