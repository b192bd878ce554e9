#include "gvflab/cli.hpp"

int main(int argc, char** argv) { return gvflab::run_cli(argc, argv); }
