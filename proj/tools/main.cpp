#include "vortexbound/cli.hpp"

int main(int argc, char** argv) { return vortexbound::cli::run(argc, argv); }
