#include "schauder/cli.hpp"

int main(int argc, char** argv) { return schauder::cli::run(argc, argv); }
