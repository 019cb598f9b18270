#include "uqhyp/cli.hpp"

int main(int argc, char** argv) { return uqhyp::run_cli(argc, argv); }
