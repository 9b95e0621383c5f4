#include "spk/cli.hpp"

int main(int argc, char** argv) { return spk::cli::run(argc, argv); }
