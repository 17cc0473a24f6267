#include "flexband/cli.hpp"

int main(int argc, char** argv) { return flexband::cli_main(argc, argv); }
