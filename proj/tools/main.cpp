#include "gqstate/cli.hpp"

int main(int argc, char** argv) { return gqstate::run_cli(argc, argv); }
