#include "tspectra/cli.hpp"

int main(int argc, char** argv) { return tspectra::cli::run(argc, argv); }
