#include "cli.hpp"

int main(int argc, char** argv) { return pathstat::run_cli(argc, argv); }
