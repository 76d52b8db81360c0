#include "nts/cli.hpp"

int main(int argc, char** argv) { return nts::run_cli(argc, argv); }
