#include "bracketsum/cli.hpp"

int main(int argc, char** argv) { return bracketsum::run_cli(argc, argv); }
