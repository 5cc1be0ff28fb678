#include "spectile/cli/dispatch.hpp"

int main(int argc, char** argv) { return spectile::cli::main(argc, argv); }
