#include "hiercast/cli.hpp"

int main(int argc, char** argv) { return hiercast::run_cli(argc, argv); }
