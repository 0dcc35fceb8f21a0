#include "safebo/cli.hpp"

int main(int argc, char** argv) { return safebo::cli_main(argc, argv); }
