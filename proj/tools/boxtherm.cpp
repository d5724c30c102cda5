#include "boxtherm/cli.hpp"

int main(int argc, char** argv) { return boxtherm::run_cli(argc, argv); }
