#include "quadeq/cli.hpp"

int main(int argc, char** argv) { return quadeq::run_cli(argc, argv); }
