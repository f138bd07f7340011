#include "lkt/cli.hpp"

int main(int argc, char** argv) { return lkt::cli::run(argc, argv); }
