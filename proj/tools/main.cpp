#include "bbq/cli.hpp"

int main(int argc, char **argv) { return bbq::cli::main(argc, argv); }
