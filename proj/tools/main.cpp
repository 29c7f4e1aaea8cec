#include "cli.hpp"

int main(int argc, char** argv) { return hsurf::cli::run(argc, argv); }
