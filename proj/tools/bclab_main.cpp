#include "bclab/cli.hpp"

int main(int argc, char** argv) { return bclab::cli_main(argc, argv); }
