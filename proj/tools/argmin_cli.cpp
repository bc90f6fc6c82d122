#include "argmin/cli.hpp"

int main(int argc, char** argv) { return argmin::run_cli(argc, argv); }
